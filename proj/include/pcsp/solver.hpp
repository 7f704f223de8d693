#pragma once

// Exhaustive backtracking search for homomorphisms, polymorphisms and
// multihomomorphisms. Results are always returned in canonical order, so the
// search heuristics in SearchConfig never change the output.

#include <pcsp/structures.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace pcsp {

enum class ValueOrder { ascending, descending };

struct SearchConfig {
    /// Permutation of 1..|X|; empty means domain order.
    std::vector<int> variable_order;
    ValueOrder value_order = ValueOrder::ascending;
    /// Stop after this many results and mark the enumeration truncated.
    std::optional<std::size_t> result_cap;
    /// Number of threads; shards partition the values of the first variable.
    int shards = 1;
    /// Upper bound on (2^|B| - 1)^|X| for multihomomorphism search.
    double multihom_candidate_cap = 1e8;
};

template <class T>
struct Enumeration {
    std::vector<T> items;
    bool truncated = false;
};

Enumeration<FunctionTable> enumerate_homomorphisms(const RelStructure & X, const RelStructure & B,
                                                   const SearchConfig & cfg = {});

/// Pol^(n)(A, B) as n-ary tables over |A|.
Enumeration<FunctionTable> enumerate_polymorphisms(const RelStructure & A, const RelStructure & B, int n,
                                                   const SearchConfig & cfg = {});

Enumeration<Multihom> enumerate_multihomomorphisms(const RelStructure & X, const RelStructure & B,
                                                   const SearchConfig & cfg = {});

/// Lexicographically least homomorphism, if any. Ignores the search order
/// fields of cfg; only shards are honoured.
std::optional<FunctionTable> exists_homomorphism(const RelStructure & X, const RelStructure & B,
                                                 const SearchConfig & cfg = {});

/// Largest number of table cells enumerate_polymorphisms accepts.
inline constexpr std::size_t max_polymorphism_cells = 10'000'000;

} // namespace pcsp
