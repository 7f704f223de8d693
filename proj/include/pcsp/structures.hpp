#pragma once

// Finite relational structures, function tables, multihomomorphisms and
// Z_3 actions.
//
// Conventions shared by every module:
//   * domain elements are 1-based integers 1..k;
//   * a tuple (x_1, ..., x_n) over a k-element set is encoded in mixed radix
//     with x_1 most significant, i.e. index = sum_i (x_i - 1) * k^(n - i).
//     Elements of a power A^n use the same encoding, so a polymorphism
//     A^n -> B is literally a unary table on A^n.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pcsp {

using Tuple = std::vector<int>;

/// Encodes (x_1, ..., x_n), 1-based entries, with x_1 most significant.
std::size_t encode_tuple(std::span<const int> tuple, int base);
Tuple decode_tuple(std::size_t index, std::size_t arity, int base);

/// base^exponent, or nullopt when it does not fit into std::size_t.
std::optional<std::size_t> checked_pow(std::size_t base, std::size_t exponent);

struct Relation {
    std::string name;
    std::size_t arity = 0;
    std::vector<Tuple> tuples; ///< duplicate-free, lexicographically sorted
};

/// Default cap on the number of tuples a power materializes eagerly.
inline constexpr std::size_t default_power_tuple_cap = 10'000'000;

/// A finite domain 1..k with named relations.
///
/// Relations are stored as canonical (sorted, duplicate-free) tuple sets.
/// Powers whose relations exceed the materialization cap keep only a
/// reference to the base structure and answer membership on demand.
class RelStructure {
public:
    RelStructure(int domain_size, std::vector<Relation> relations);

    int domain_size() const noexcept { return domain_size_; }
    std::size_t relation_count() const noexcept { return names_.size(); }
    const std::string & relation_name(std::size_t r) const { return names_.at(r); }
    std::size_t arity(std::size_t r) const { return arities_.at(r); }
    std::vector<std::size_t> signature() const { return arities_; }

    /// False for lazily represented powers.
    bool is_materialized() const noexcept { return !lazy_base_; }

    /// Materialized tuple list; throws SizeLimitError on lazy structures.
    const std::vector<Tuple> & tuples(std::size_t r) const;
    /// All relations in canonical form; throws on lazy structures.
    std::vector<Relation> relations() const;

    std::size_t tuple_count(std::size_t r) const;
    bool contains(std::size_t r, std::span<const int> tuple) const;

    /// Visits every tuple; canonical order for materialized structures,
    /// product order of base tuples for lazy powers.
    void for_each_tuple(std::size_t r, const std::function<void(std::span<const int>)> & visit) const;

    bool has_constant_tuple() const;

    bool operator==(const RelStructure & other) const;

private:
    friend RelStructure power(const RelStructure & base, int n, std::size_t tuple_cap);

    RelStructure() = default;
    void build_lookup();

    int domain_size_ = 0;
    std::vector<std::string> names_;
    std::vector<std::size_t> arities_;
    std::vector<std::vector<Tuple>> tuples_;
    std::vector<std::vector<std::uint8_t>> lookup_; ///< dense membership bitmaps when small

    std::shared_ptr<const RelStructure> lazy_base_;
    int lazy_exponent_ = 0;
};

/// A total map A^n -> B stored as a flat table in mixed-radix order.
class FunctionTable {
public:
    FunctionTable(int arity, int in_domain, int out_domain, std::vector<int> table);

    static FunctionTable unary(int out_domain, std::vector<int> values);
    static FunctionTable identity(int domain);

    int arity() const noexcept { return arity_; }
    int in_domain() const noexcept { return in_domain_; }
    int out_domain() const noexcept { return out_domain_; }
    std::size_t size() const noexcept { return table_.size(); }
    const std::vector<int> & values() const noexcept { return table_; }

    int at(std::size_t index) const { return table_.at(index); }
    int operator()(std::span<const int> args) const;
    int operator()(std::initializer_list<int> args) const;

    /// Same table read as a unary map on the power domain in_domain^arity.
    FunctionTable as_unary() const;

    std::string to_string() const;

    auto operator<=>(const FunctionTable &) const = default;
    bool operator==(const FunctionTable &) const = default;

private:
    int arity_;
    int in_domain_;
    int out_domain_;
    std::vector<int> table_;
};

/// Map from each element of A to a nonempty subset of B (bitmask over B).
class Multihom {
public:
    using Mask = std::uint64_t;
    static constexpr int max_out_domain = 64;

    Multihom(int out_domain, std::vector<Mask> images);

    static Multihom from_sets(int out_domain, const std::vector<std::vector<int>> & sets);
    static Multihom from_function(const FunctionTable & f);

    std::size_t in_domain() const noexcept { return images_.size(); }
    int out_domain() const noexcept { return out_domain_; }
    Mask image(int a) const { return images_.at(static_cast<std::size_t>(a - 1)); }
    const std::vector<Mask> & images() const noexcept { return images_; }
    std::vector<int> image_set(int a) const;

    bool is_singleton_valued() const;
    std::optional<FunctionTable> as_function() const;

    /// Componentwise inclusion: this(a) is a subset of other(a) for all a.
    bool subset_of(const Multihom & other) const;
    /// Componentwise union.
    Multihom join(const Multihom & other) const;

    /// All functions f <= this, in lexicographic order.
    std::vector<FunctionTable> selections() const;

    std::string to_string() const;

    auto operator<=>(const Multihom &) const = default;
    bool operator==(const Multihom &) const = default;

private:
    int out_domain_;
    std::vector<Mask> images_;
};

/// An order-3 permutation (omega^3 = id) of a finite 1-based set.
class CyclicAction {
public:
    explicit CyclicAction(std::vector<int> images);

    /// The shift 1 -> 2 -> 3 -> 1 on a 3-element set.
    static CyclicAction ott_shift();

    std::size_t size() const noexcept { return images_.size(); }
    int operator()(int a) const { return images_.at(static_cast<std::size_t>(a - 1)); }
    const std::vector<int> & images() const noexcept { return images_; }
    CyclicAction inverse() const;

    bool is_automorphism_of(const RelStructure & A) const;
    bool has_fixed_point() const;

    bool operator==(const CyclicAction &) const = default;

private:
    std::vector<int> images_;
};

RelStructure make_lo(int k);
RelStructure make_ott();

/// n-fold power; materialized when |R|^n <= tuple_cap, lazy otherwise.
RelStructure power(const RelStructure & A, int n, std::size_t tuple_cap = default_power_tuple_cap);

/// Product B1 x B2 with pairs encoded as (b1 - 1) * |B2| + b2.
RelStructure product(const RelStructure & B1, const RelStructure & B2);

/// Graph on vertices 1..n with a symmetric binary relation "E".
RelStructure make_graph(int n, const std::vector<std::pair<int, int>> & edges);
RelStructure make_complete_graph(int n);

bool same_signature(const RelStructure & X, const RelStructure & B);

bool is_homomorphism(const FunctionTable & f, const RelStructure & X, const RelStructure & B);
bool is_multihomomorphism(const Multihom & m, const RelStructure & X, const RelStructure & B);

/// (g o f)(a) = union over b in f(a) of g(b).
Multihom compose_multihom(const Multihom & g, const Multihom & f);

/// m o omega.
Multihom act_on_multihom(const CyclicAction & omega, const Multihom & m);
FunctionTable act_on_function(const CyclicAction & omega, const FunctionTable & f);

/// Reduction of graph colouring to LO colouring through the edge gadget
/// R(z, z, x_u), R(z, z, x_v), R(x_u, x_v, z). Vertex u is element u; the
/// auxiliary element of the j-th edge (edges in lexicographic order, u < v)
/// is element n + j.
RelStructure graph_to_lo_instance(const RelStructure & G);

} // namespace pcsp
