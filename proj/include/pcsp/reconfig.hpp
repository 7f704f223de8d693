#pragma once

// One-value reconfiguration of polymorphisms between LO_3 and LO_4: the
// reconfiguration graph, trash-colour decompositions and the reduction of
// binary polymorphisms to essentially unary ones.

#include <pcsp/structures.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pcsp {

struct ReconfigGraph {
    std::vector<FunctionTable> vertices; ///< canonical order
    std::vector<std::vector<std::size_t>> adjacency;
    std::vector<std::size_t> component; ///< labels 0.. in order of first vertex
    std::size_t component_count = 0;

    std::size_t edge_count() const;
};

struct TrashDecomposition {
    int coordinate = 0;            ///< i in {1, 2}
    FunctionTable h;               ///< strictly increasing [3] -> [4]
    int trash = 0;                 ///< the colour outside the image of h
    std::vector<Tuple> occurrences; ///< cells (x_1, x_2) with f = trash, row-major
};

/// The unique cell where f and g differ, as 1-based coordinates.
std::optional<Tuple> differ_in_one(const FunctionTable & f, const FunctionTable & g);

/// The multihom {f(a), g(a)} on A^n for polymorphisms A^n -> B differing in
/// one value; the multihom property is re-checked and failure raises
/// LemmaViolation.
Multihom join_multihom(const FunctionTable & f, const FunctionTable & g, const RelStructure & A, const RelStructure & B);

ReconfigGraph reconfig_graph(std::vector<FunctionTable> polys);

/// The decomposition with the fewest trash occurrences; ties go to the
/// smaller i, then the lexicographically smaller h. The trash colour is the
/// one colour outside the image of h.
TrashDecomposition trash_decompose(const FunctionTable & f);

/// Path f = f_0, ..., f_k to an essentially unary polymorphism. Each step
/// rewrites the trash occurrence with the largest x_i (ties: largest other
/// coordinate) to h(x_i).
std::vector<FunctionTable> reduce_to_unary(const FunctionTable & f);

/// The coordinate f depends on; 0 for constants; nullopt for two or more.
std::optional<int> is_essentially_unary(const FunctionTable & f);

int chi_binary(const FunctionTable & f);

bool is_lo34_polymorphism(const FunctionTable & f);

/// Compares the connected components of hom(X, B) inside the multihom
/// poset's order complex with those of the one-value-move graph.
bool complex_components_match(const RelStructure & X, const RelStructure & B);

/// Undirected DOT with one node per vertex, the table as label and the
/// component as colour.
std::string to_dot(const ReconfigGraph & g, const std::string & name = "reconfig");

/// CSV with columns vertex,table,component.
std::string components_csv(const ReconfigGraph & g);

} // namespace pcsp
