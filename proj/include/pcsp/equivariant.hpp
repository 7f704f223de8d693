#pragma once

// Equivariant chain maps from the diagonal-action torus T^n to Y_2:
// monomial maps, coordinate cycles with their fillings, and the i-degree.

#include <pcsp/complexes.hpp>
#include <pcsp/matrix.hpp>
#include <pcsp/minions.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pcsp {

using Chain = std::vector<std::int64_t>;

inline constexpr int default_exponent_bound = 4;

/// Exponent vector of z_1^a_1 ... z_n^a_n with sum a_i = 1 (mod 3).
class MonomialSpec {
public:
    explicit MonomialSpec(std::vector<int> alpha, int bound = default_exponent_bound);

    int n() const noexcept { return static_cast<int>(alpha_.size()); }
    int operator[](int i) const { return alpha_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<int> & exponents() const noexcept { return alpha_; }
    std::string to_string() const;

private:
    std::vector<int> alpha_;
};

/// beta_j = sum of alpha_i over pi(i) = j.
MonomialSpec monomial_minor(const MonomialSpec & alpha, const MinorMap & pi);

/// F[d] : C_d(T^n) -> C_d(Y_2) for d = 0, 1, 2, diagonal action on T^n.
struct EquivariantChainMap {
    int n = 0;
    std::array<SparseMatrix, 3> F;
};

/// The diagonal-action torus, built once per n.
const CWComplexZ & diagonal_torus(int n);
const CWComplexZ & y2_complex();

/// Sum of the three i-direction edges with every other coordinate at v_0.
Chain coordinate_cycle(int n, int i);

struct CycleData {
    Chain x; ///< coordinate cycle x_i
    Chain b; ///< d b = x - omega x
    Chain B; ///< d B = x - omega^2 x
};

/// Integer solutions with free variables set to zero; cached per (n, i).
/// With PCSP_TOPO_CACHE set, fillings are also kept in that directory.
CycleData compute_fillings(int n, int i);

/// F_0 sends (v_j1, ..., v_jn) to v_s with s = sum alpha_k j_k; F_1 sends an
/// i-edge at j to the walk of |alpha_i| edges from v_s; F_2 = 0.
EquivariantChainMap monomial_chain_map(const MonomialSpec & alpha);

struct ChainMapCheck {
    bool ok = true;
    std::string detail;
    int dimension = -1;                ///< source dimension of the failing cell
    std::optional<std::size_t> cell;   ///< first failing cell
    explicit operator bool() const noexcept { return ok; }
};

/// Checks dF = Fd in every dimension (including F_2 d_3 = 0) and F omega = omega F.
ChainMapCheck verify_chain_map(const EquivariantChainMap & F);

/// (e^0(F_1 x_i) + d^0(F_2 b_i) + d^0(F_2 B_i)) mod 3, in 0..2.
int degree(const EquivariantChainMap & F, int i);

struct GammaResult {
    std::vector<int> degrees;
    bool valid = false; ///< degrees sum to 1 mod 3
    std::optional<AffineMapZ3> map;
};

GammaResult gamma_vector(const EquivariantChainMap & F);

/// h_0 : C_0(T^n) -> C_1(Y_2), h_1 : C_1(T^n) -> C_2(Y_2).
struct ChainHomotopy {
    int n = 0;
    SparseMatrix h0;
    SparseMatrix h1;
};

ChainHomotopy zero_homotopy(int n);
/// Entries in -2..2 on orbit representatives, extended equivariantly.
ChainHomotopy random_equivariant_homotopy(int n, std::uint64_t seed);
bool is_equivariant(const ChainHomotopy & h);
/// F + dh + hd.
EquivariantChainMap apply_homotopy(const EquivariantChainMap & F, const ChainHomotopy & h);
EquivariantChainMap chain_homotopy_perturb(const EquivariantChainMap & F, std::uint64_t seed);

} // namespace pcsp
