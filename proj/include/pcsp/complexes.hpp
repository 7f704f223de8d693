#pragma once

// Posets, order complexes, Hom complexes, the L_4 poset, the CW complex Y_2
// and Z_3-CW structures on tori.
//
// Orientation conventions used throughout:
//   * simplices are oriented by increasing vertex index;
//   * product cells c_1 x ... x c_n carry the boundary
//     sum_i (-1)^(dim c_1 + ... + dim c_{i-1}) c_1 x ... x dc_i x ... x c_n.

#include <pcsp/matrix.hpp>
#include <pcsp/structures.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pcsp {

struct CheckResult {
    bool ok = true;
    std::string detail;

    static CheckResult pass() { return {}; }
    static CheckResult fail(std::string why) { return {false, std::move(why)}; }
    explicit operator bool() const noexcept { return ok; }
};

class Poset {
public:
    /// less[i][j] is true iff element i is strictly below element j.
    Poset(std::vector<std::string> labels, std::vector<std::vector<bool>> less);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string & label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string> & labels() const noexcept { return labels_; }
    bool less(std::size_t i, std::size_t j) const { return less_[i][j]; }
    bool comparable(std::size_t i, std::size_t j) const { return less_[i][j] || less_[j][i]; }

    std::vector<std::size_t> minimal_elements() const;
    std::vector<std::size_t> maximal_elements() const;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<bool>> less_;
};

/// A sign and a target cell: omega(c) = sign * target.
struct SignedCell {
    std::size_t target = 0;
    int sign = 1;
    bool operator==(const SignedCell &) const = default;
};

/// Signed permutation of the cells of one dimension.
using CellAction = std::vector<SignedCell>;

/// Finite CW complex with integer boundary matrices and an optional
/// cellular Z_3 action. boundary[d] maps C_d to C_{d-1}; boundary[0] is
/// the zero map to a rank-0 group.
struct CWComplexZ {
    std::vector<std::vector<std::string>> cells;
    std::vector<SparseMatrix> boundary;
    std::optional<std::vector<CellAction>> action;

    int dimension() const noexcept { return static_cast<int>(cells.size()) - 1; }
    std::size_t cell_count(int d) const;
    /// Boundary C_d -> C_{d-1}, a zero matrix outside the stored range.
    SparseMatrix boundary_matrix(int d) const;
    /// Matrix of omega on C_d; throws InvalidParameter without an action.
    SparseMatrix action_matrix(int d) const;
    std::int64_t euler_characteristic() const;

    /// Checks dd = 0, action shape, omega^3 = id and omega d = d omega.
    CheckResult verify() const;
    /// True iff omega fixes no cell (as an unoriented cell).
    bool action_is_free() const;
};

class SimplicialComplexZ {
public:
    SimplicialComplexZ(std::vector<std::string> vertex_labels, std::vector<std::vector<std::vector<int>>> faces);

    std::size_t vertex_count() const noexcept { return labels_.size(); }
    const std::vector<std::string> & vertex_labels() const noexcept { return labels_; }
    int dimension() const noexcept { return static_cast<int>(faces_.size()) - 1; }
    /// Faces of dimension d, each sorted, lexicographically ordered.
    const std::vector<std::vector<int>> & faces(int d) const { return faces_.at(static_cast<std::size_t>(d)); }
    std::size_t face_count(int d) const;
    std::optional<std::size_t> face_index(const std::vector<int> & face) const;
    std::vector<std::vector<int>> maximal_faces() const;

    /// Every proper nonempty subset of a face is a face and nothing repeats.
    bool is_closed() const;

    /// Cellular chain complex; a vertex permutation (0-based images) induces
    /// the signed action on faces.
    CWComplexZ to_cw(const std::optional<std::vector<std::size_t>> & vertex_action = std::nullopt) const;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<std::vector<int>>> faces_;
};

/// Chains of P as faces, up to dimension max_dim when given.
SimplicialComplexZ order_complex(const Poset & P, std::optional<int> max_dim = std::nullopt);

struct HomComplex {
    std::vector<Multihom> vertices; ///< canonical multihom order
    Poset poset;
    SimplicialComplexZ complex;
    /// vertex_action[i] = index of vertices[i] o omega, when A carries an action.
    std::optional<std::vector<std::size_t>> vertex_action;

    std::vector<std::size_t> fixed_vertices() const;
    bool action_is_free() const { return vertex_action && fixed_vertices().empty(); }
    CWComplexZ to_cw() const { return complex.to_cw(vertex_action); }
};

/// Hom(A, B). omega defaults to the cyclic shift when A is ott.
HomComplex hom_complex(const RelStructure & A, const RelStructure & B,
                       std::optional<CyclicAction> omega = std::nullopt, std::optional<int> max_dim = std::nullopt);

/// The nine-cycle of homomorphisms ott -> LO_3 through which S^1 maps
/// equivariantly into Hom(ott, LO_3).
std::vector<Tuple> invariant_cycle();

/// Consecutive unions are multihomomorphisms and the edge set is
/// omega-invariant. The last vertex joins the first; a listing that repeats
/// the first vertex at the end is read the same way.
CheckResult check_invariant_cycle(const std::vector<Tuple> & cycle);
bool verify_invariant_cycle(const std::vector<Tuple> & cycle);
/// Checks the standard cycle; throws LemmaViolation on failure.
bool verify_invariant_cycle();

/// An element (level, exponent) of [3] x Z_3; levels 1..3, exponents 0..2.
using L4Point = std::pair<int, int>;
/// A face of L_4: points with pairwise distinct levels, sorted.
using L4Face = std::vector<L4Point>;

/// [3] x Z_3 with (a, x) < (b, y) iff a < b; element (a, k) has index 3(a-1)+k.
Poset l4_poset();
/// All nonempty faces, ordered by size then lexicographically.
std::vector<L4Face> l4_faces();
Poset l4_face_poset();
bool is_l4_face(const L4Face & face);
/// omega acts on L_4 by k -> k - 1, which makes phi equivariant for m -> m o omega.
L4Face act_on_l4_face(const L4Face & face);
/// phi(m) = { (f(j) - 1, j mod 3) : f <= m homomorphism, j the position of max f }.
L4Face phi_map(const Multihom & m);

enum class Y2Fault { none, flipped_disc_sign };

/// Three vertices, three edges (de_i = v_{i+1} - v_i) and three discs
/// (dd_i = e_0 + e_1 + e_2); omega shifts every index by one.
CWComplexZ make_y2(Y2Fault fault = Y2Fault::none);

enum class TorusMode { diagonal, first_coordinate };

inline constexpr int max_torus_dimension = 8;

/// Cell bookkeeping for the product CW structure on T^n. Factor cells of a
/// circle with k vertices are numbered v_0..v_{k-1}, e_0..e_{k-1}; product
/// cells of each dimension are listed in mixed-radix order of their factors.
class TorusCells {
public:
    TorusCells(int n, TorusMode mode);

    int n() const noexcept { return n_; }
    TorusMode mode() const noexcept { return mode_; }
    /// Vertices on factor i (1-based): 3 or 1.
    int factor_size(int i) const;

    std::size_t cell_count(int d) const { return d < 0 || d > n_ ? 0 : by_dim_[static_cast<std::size_t>(d)].size(); }
    /// Factor codes of cell idx in dimension d: code < k is vertex, else edge code - k.
    std::vector<int> factors(int d, std::size_t idx) const;
    std::size_t index(const std::vector<int> & factor_codes) const;

    /// Index of the vertex (v_{j_1}, ..., v_{j_n}).
    std::size_t vertex(const std::vector<int> & j) const;
    /// Index of the edge in direction i starting at vertex j.
    std::size_t edge(int i, const std::vector<int> & j) const;

private:
    int n_;
    TorusMode mode_;
    std::vector<int> radix_;
    std::vector<std::vector<std::uint64_t>> by_dim_;
    std::vector<std::uint32_t> position_;
    std::vector<std::uint64_t> weight_;
};

CWComplexZ torus_cw(int n, TorusMode mode);

/// Checks the comparison maps alpha(m) = (p_1 o m, p_2 o m) and
/// beta(m_1, m_2)(x) = m_1(x) x m_2(x) between Hom(A, B1 x B2) and
/// Hom(A, B1) x Hom(A, B2): monotone, equivariant, alpha o beta = id and
/// beta(alpha(m)) >= m.
CheckResult product_comparison(const RelStructure & A, const RelStructure & B1, const RelStructure & B2,
                               std::optional<CyclicAction> omega = std::nullopt);

} // namespace pcsp
