#pragma once

// Homology and cohomology of cell complexes, modules over the group ring
// Lambda = Z[Z_3], and Bredon cochains of free Z_3-complexes.

#include <pcsp/complexes.hpp>
#include <pcsp/matrix.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pcsp {

/// coboundary[d] maps C^d to C^{d+1}; ranks[d] = rank of C^d.
struct CochainComplex {
    std::vector<std::size_t> ranks;
    std::vector<SparseMatrix> coboundary;

    int top() const noexcept { return static_cast<int>(ranks.size()) - 1; }
    std::size_t rank(int d) const { return d < 0 || d > top() ? 0 : ranks[static_cast<std::size_t>(d)]; }
    /// delta^d, a zero matrix outside the stored range.
    SparseMatrix coboundary_matrix(int d) const;
    CheckResult verify() const;
};

AbelianGroup homology(const CWComplexZ & X, int d);
AbelianGroup homology(const SimplicialComplexZ & K, int d);
/// Rank of H_d over the rationals, by fraction-free elimination.
std::size_t rational_betti(const CWComplexZ & X, int d);

CochainComplex cellular_cochains(const CWComplexZ & X);
AbelianGroup cohomology(const CochainComplex & C, int d);

/// Matrix of omega on H_2(Y_2) in the basis beta_0 = d_0 - d_1, beta_1 = d_1 - d_2.
IntMatrix h2_action_matrix(const CWComplexZ & Y2);

/// n_0 + n_1 omega + n_2 omega^2.
struct LambdaElement {
    std::array<std::int64_t, 3> c{0, 0, 0};

    static LambdaElement omega_power(int k, std::int64_t coefficient = 1);
    LambdaElement operator+(const LambdaElement & o) const;
    LambdaElement operator*(const LambdaElement & o) const;
    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }
    std::int64_t augmentation() const { return c[0] + c[1] + c[2]; }
    std::string to_string() const;
    bool operator==(const LambdaElement &) const = default;
};

/// Free abelian group Z^k with omega acting by W (W^3 = 1).
class LambdaModule {
public:
    LambdaModule(std::string name, IntMatrix W);

    static LambdaModule trivial();      ///< Z
    static LambdaModule cyclic();       ///< Z_cyc, omega a cyclic shift of Z^3
    static LambdaModule group_ring();   ///< Lambda acting on itself
    static LambdaModule m_module();     ///< H_2(Y_2)
    static LambdaModule ideal();        ///< I = (1 + omega + omega^2)
    /// Z, Zcyc, Lambda, M or I.
    static LambdaModule by_name(const std::string & name);

    const std::string & name() const noexcept { return name_; }
    std::size_t rank() const noexcept { return W_.rows(); }
    const IntMatrix & omega() const noexcept { return W_; }
    /// Action of lambda as a k x k matrix.
    IntMatrix act(const LambdaElement & lambda) const;

private:
    std::string name_;
    IntMatrix W_;
};

/// Checks that lambda (1, 0) = 0 exactly when lambda lies in I, over
/// |n_i| <= bound, and that W^2 + W + 1 = 0.
bool annihilator_is_ideal(const LambdaModule & N, int bound = 3);

/// Where a cell sits in its orbit: cell = sign * omega^power * representative.
struct OrbitPosition {
    std::size_t orbit = 0;
    int power = 0;
    int sign = 1;
};

struct EquivariantChainComplexFree {
    /// representatives[d][j]: cell index of the j-th orbit representative.
    std::vector<std::vector<std::size_t>> representatives;
    /// position[d][c] for every cell c of dimension d.
    std::vector<std::vector<OrbitPosition>> position;
    /// boundary[d][i][j]: coefficient of representative i (dim d-1) in the
    /// boundary of representative j (dim d).
    std::vector<std::vector<std::vector<LambdaElement>>> boundary;

    int top() const noexcept { return static_cast<int>(representatives.size()) - 1; }
    std::size_t rank(int d) const;
    /// Lambda-linear dd = 0.
    CheckResult verify() const;
};

/// Orbit representatives are the least cell index of each orbit.
EquivariantChainComplexFree equivariant_chain_complex(const CWComplexZ & X);

/// Hom_Lambda(C_*, N): C^d = N^{rank_d}, coordinate (orbit j, component t) at j k + t.
CochainComplex bredon_cochain_complex(const EquivariantChainComplexFree & E, const LambdaModule & N);
AbelianGroup bredon_cohomology(const CWComplexZ & X, const LambdaModule & N, int d);

/// Cellular chain complex of X / Z_3 with the orbit representatives as cells.
CWComplexZ quotient_complex(const CWComplexZ & X);

/// Cochain-level p^*: C^d(X / Z_3) -> C^d(X), (p^* f)(c) = sign(c) f(orbit(c)).
SparseMatrix pstar_cochain_map(const EquivariantChainComplexFree & E, int d);

/// Diagonal matrix with C(n-1, d-1) threes followed by C(n-1, d) ones.
IntMatrix pstar_diagonal_matrix(int n, int d);
/// Cokernel of the diagonal matrix with C(n-1, d-1) threes and C(n-1, d) ones.
AbelianGroup pstar_diagonal_cokernel(int n, int d);
/// H^d(T^n) / p^* H^d(T^n / Z_3) for the first-coordinate action.
AbelianGroup pstar_cochain_cokernel(int n, int d);
/// Both routes; throws ComputationError when they disagree.
AbelianGroup quotient_pstar_cokernel(int n, int d);

} // namespace pcsp
