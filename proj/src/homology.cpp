#include <pcsp/errors.hpp>
#include <pcsp/homology.hpp>

#include <algorithm>
#include <limits>
#include <sstream>

namespace pcsp {

namespace {

std::size_t binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

std::int64_t to_int64(const Integer & v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw SizeLimitError("integer does not fit into 64 bits");
    return static_cast<std::int64_t>(v);
}

/// Columns of b and c side by side.
SparseMatrix hconcat(const SparseMatrix & b, const SparseMatrix & c)
{
    SparseMatrix out(b.rows(), b.cols() + c.cols());
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (auto [i, v] : b.column(j))
            out.add(i, j, v);
    for (std::size_t j = 0; j < c.cols(); ++j)
        for (auto [i, v] : c.column(j))
            out.add(i, b.cols() + j, v);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Chain and cochain homology

SparseMatrix CochainComplex::coboundary_matrix(int d) const
{
    if (d >= 0 && d < static_cast<int>(coboundary.size()))
        return coboundary[static_cast<std::size_t>(d)];
    return SparseMatrix(rank(d + 1), rank(d));
}

CheckResult CochainComplex::verify() const
{
    for (int d = 0; d <= top(); ++d) {
        const auto b = coboundary_matrix(d);
        if (b.rows() != rank(d + 1) || b.cols() != rank(d))
            return CheckResult::fail("coboundary in degree " + std::to_string(d) + " has the wrong shape");
        if (!(coboundary_matrix(d + 1) * b).is_zero())
            return CheckResult::fail("coboundary squared is nonzero in degree " + std::to_string(d));
    }
    return CheckResult::pass();
}

AbelianGroup homology(const CWComplexZ & X, int d)
{
    if (d < 0 || d > X.dimension())
        return {};
    const auto in = elementary_divisors(X.boundary_matrix(d));
    const auto out = elementary_divisors(X.boundary_matrix(d + 1));
    return AbelianGroup::from_divisors(X.cell_count(d) - in.rank - out.rank, out.divisors);
}

AbelianGroup homology(const SimplicialComplexZ & K, int d)
{
    return homology(K.to_cw(), d);
}

std::size_t rational_betti(const CWComplexZ & X, int d)
{
    if (d < 0 || d > X.dimension())
        return 0;
    return X.cell_count(d) - rational_rank(X.boundary_matrix(d).to_dense()) -
           rational_rank(X.boundary_matrix(d + 1).to_dense());
}

CochainComplex cellular_cochains(const CWComplexZ & X)
{
    CochainComplex C;
    for (int d = 0; d <= X.dimension(); ++d) {
        C.ranks.push_back(X.cell_count(d));
        C.coboundary.push_back(X.boundary_matrix(d + 1).transpose());
    }
    return C;
}

AbelianGroup cohomology(const CochainComplex & C, int d)
{
    if (d < 0 || d > C.top())
        return {};
    const auto out = elementary_divisors(C.coboundary_matrix(d));
    const auto in = elementary_divisors(C.coboundary_matrix(d - 1));
    return AbelianGroup::from_divisors(C.rank(d) - out.rank - in.rank, in.divisors);
}

IntMatrix h2_action_matrix(const CWComplexZ & Y2)
{
    if (Y2.dimension() != 2 || Y2.cell_count(2) != 3 || !Y2.action)
        throw InvalidParameter("expected Y_2 with its action");
    const IntMatrix d2 = Y2.boundary_matrix(2).to_dense();
    const IntMatrix basis{{1, 0}, {-1, 1}, {0, -1}};
    if (!(d2 * basis).is_zero())
        throw InternalError("beta_0 or beta_1 is not a cycle");
    if (Y2.boundary_matrix(3).cols() != 0)
        throw InternalError("Y_2 has cells above dimension 2");
    const IntMatrix kernel = kernel_basis(d2);
    if (kernel.cols() != 2)
        throw InternalError("H_2(Y_2) does not have rank 2");
    for (std::size_t j = 0; j < kernel.cols(); ++j)
        if (!solve_integer(basis, kernel * std::vector<Integer>{j == 0 ? 1 : 0, j == 1 ? 1 : 0}))
            throw InternalError("beta_0, beta_1 do not span the 2-cycles");
    const IntMatrix w = Y2.action_matrix(2).to_dense();
    IntMatrix out(2, 2);
    for (std::size_t j = 0; j < 2; ++j) {
        std::vector<Integer> beta{basis(0, j), basis(1, j), basis(2, j)};
        auto y = solve_integer(basis, w * beta);
        if (!y)
            throw InternalError("omega moves a cycle out of the span of beta_0, beta_1");
        out(0, j) = (*y)[0];
        out(1, j) = (*y)[1];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lambda

LambdaElement LambdaElement::omega_power(int k, std::int64_t coefficient)
{
    LambdaElement e;
    e.c[static_cast<std::size_t>(((k % 3) + 3) % 3)] = coefficient;
    return e;
}

LambdaElement LambdaElement::operator+(const LambdaElement & o) const
{
    return {{c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]}};
}

LambdaElement LambdaElement::operator*(const LambdaElement & o) const
{
    LambdaElement out;
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            out.c[(a + b) % 3] += c[a] * o.c[b];
    return out;
}

std::string LambdaElement::to_string() const
{
    std::ostringstream out;
    out << c[0] << (c[1] < 0 ? "" : "+") << c[1] << "w" << (c[2] < 0 ? "" : "+") << c[2] << "w^2";
    return out.str();
}

LambdaModule::LambdaModule(std::string name, IntMatrix W) : name_(std::move(name)), W_(std::move(W))
{
    if (W_.rows() != W_.cols() || W_.rows() == 0)
        throw InvalidParameter("module action must be a nonempty square matrix");
    if (!(W_ * W_ * W_ == IntMatrix::identity(W_.rows())))
        throw InvalidParameter("module action does not cube to the identity");
}

LambdaModule LambdaModule::trivial()
{
    return LambdaModule("Z", IntMatrix{{1}});
}

LambdaModule LambdaModule::cyclic()
{
    return LambdaModule("Zcyc", IntMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
}

LambdaModule LambdaModule::group_ring()
{
    return LambdaModule("Lambda", IntMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
}

LambdaModule LambdaModule::m_module()
{
    return LambdaModule("M", IntMatrix{{0, -1}, {1, -1}});
}

LambdaModule LambdaModule::ideal()
{
    return LambdaModule("I", IntMatrix{{1}});
}

LambdaModule LambdaModule::by_name(const std::string & name)
{
    if (name == "Z")
        return trivial();
    if (name == "Zcyc" || name == "Z_cyc")
        return cyclic();
    if (name == "Lambda")
        return group_ring();
    if (name == "M")
        return m_module();
    if (name == "I")
        return ideal();
    throw InvalidParameter("unknown coefficient module " + name);
}

IntMatrix LambdaModule::act(const LambdaElement & lambda) const
{
    IntMatrix out(rank(), rank());
    IntMatrix p = IntMatrix::identity(rank());
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j)
                out(i, j) += lambda.c[k] * p(i, j);
        p = p * W_;
    }
    return out;
}

bool annihilator_is_ideal(const LambdaModule & N, int bound)
{
    const auto & W = N.omega();
    if (!(W * W + W + IntMatrix::identity(N.rank())).is_zero())
        return false;
    std::vector<Integer> generator(N.rank(), 0);
    generator[0] = 1;
    for (int a = -bound; a <= bound; ++a)
        for (int b = -bound; b <= bound; ++b)
            for (int c = -bound; c <= bound; ++c) {
                const LambdaElement lambda{{a, b, c}};
                const auto v = N.act(lambda) * generator;
                const bool kills = std::all_of(v.begin(), v.end(), [](const Integer & x) { return x == 0; });
                const bool in_ideal = a == b && b == c;
                if (kills != in_ideal)
                    return false;
            }
    return true;
}

// ---------------------------------------------------------------------------
// Equivariant chains

std::size_t EquivariantChainComplexFree::rank(int d) const
{
    if (d < 0 || d > top())
        return 0;
    return representatives[static_cast<std::size_t>(d)].size();
}

CheckResult EquivariantChainComplexFree::verify() const
{
    for (int d = 2; d <= top(); ++d) {
        const auto & outer = boundary[static_cast<std::size_t>(d - 1)];
        const auto & inner = boundary[static_cast<std::size_t>(d)];
        for (std::size_t i = 0; i < rank(d - 2); ++i)
            for (std::size_t j = 0; j < rank(d); ++j) {
                LambdaElement sum;
                for (std::size_t m = 0; m < rank(d - 1); ++m)
                    sum = sum + outer[i][m] * inner[m][j];
                if (!sum.is_zero())
                    return CheckResult::fail("Lambda boundary squared is nonzero in dimension " + std::to_string(d));
            }
    }
    return CheckResult::pass();
}

EquivariantChainComplexFree equivariant_chain_complex(const CWComplexZ & X)
{
    if (!X.action)
        throw InvalidParameter("complex carries no Z_3 action");
    if (!X.action_is_free())
        throw InvalidParameter("Z_3 action is not free on cells");
    EquivariantChainComplexFree E;
    for (int d = 0; d <= X.dimension(); ++d) {
        const auto & a = (*X.action)[static_cast<std::size_t>(d)];
        std::vector<std::size_t> reps;
        std::vector<OrbitPosition> pos(a.size());
        std::vector<bool> seen(a.size(), false);
        for (std::size_t c = 0; c < a.size(); ++c) {
            if (seen[c])
                continue;
            const std::size_t orbit = reps.size();
            reps.push_back(c);
            std::size_t cell = c;
            int sign = 1;
            for (int k = 0; k < 3; ++k) {
                if (seen[cell])
                    throw InvalidParameter("Z_3 action is not free on cells");
                seen[cell] = true;
                pos[cell] = OrbitPosition{orbit, k, sign};
                sign *= a[cell].sign;
                cell = a[cell].target;
            }
            if (cell != c || sign != 1)
                throw InvalidParameter("action does not have order three");
        }
        E.representatives.push_back(std::move(reps));
        E.position.push_back(std::move(pos));
    }
    for (int d = 0; d <= X.dimension(); ++d) {
        const auto b = X.boundary_matrix(d);
        std::vector<std::vector<LambdaElement>> lam(E.rank(d - 1), std::vector<LambdaElement>(E.rank(d)));
        for (std::size_t j = 0; j < E.rank(d); ++j)
            for (auto [c, v] : b.column(E.representatives[static_cast<std::size_t>(d)][j])) {
                const auto & p = E.position[static_cast<std::size_t>(d - 1)][c];
                lam[p.orbit][j] = lam[p.orbit][j] + LambdaElement::omega_power(p.power, v * p.sign);
            }
        E.boundary.push_back(std::move(lam));
    }
    return E;
}

CochainComplex bredon_cochain_complex(const EquivariantChainComplexFree & E, const LambdaModule & N)
{
    const std::size_t k = N.rank();
    CochainComplex C;
    for (int d = 0; d <= E.top(); ++d) {
        C.ranks.push_back(E.rank(d) * k);
        SparseMatrix delta(E.rank(d + 1) * k, E.rank(d) * k);
        if (d < E.top())
            for (std::size_t j = 0; j < E.rank(d + 1); ++j)
                for (std::size_t i = 0; i < E.rank(d); ++i) {
                    const auto & lambda = E.boundary[static_cast<std::size_t>(d + 1)][i][j];
                    if (lambda.is_zero())
                        continue;
                    const IntMatrix block = N.act(lambda);
                    for (std::size_t r = 0; r < k; ++r)
                        for (std::size_t s = 0; s < k; ++s)
                            delta.add(j * k + r, i * k + s, to_int64(block(r, s)));
                }
        C.coboundary.push_back(std::move(delta));
    }
    return C;
}

AbelianGroup bredon_cohomology(const CWComplexZ & X, const LambdaModule & N, int d)
{
    return cohomology(bredon_cochain_complex(equivariant_chain_complex(X), N), d);
}

CWComplexZ quotient_complex(const CWComplexZ & X)
{
    const auto E = equivariant_chain_complex(X);
    CWComplexZ Q;
    for (int d = 0; d <= E.top(); ++d) {
        std::vector<std::string> names;
        for (std::size_t r : E.representatives[static_cast<std::size_t>(d)])
            names.push_back("[" + X.cells[static_cast<std::size_t>(d)][r] + "]");
        Q.cells.push_back(std::move(names));
        SparseMatrix b(E.rank(d - 1), E.rank(d));
        for (std::size_t i = 0; i < E.rank(d - 1); ++i)
            for (std::size_t j = 0; j < E.rank(d); ++j)
                b.add(i, j, E.boundary[static_cast<std::size_t>(d)][i][j].augmentation());
        Q.boundary.push_back(std::move(b));
    }
    return Q;
}

SparseMatrix pstar_cochain_map(const EquivariantChainComplexFree & E, int d)
{
    if (d < 0 || d > E.top())
        return {};
    const auto & pos = E.position[static_cast<std::size_t>(d)];
    SparseMatrix p(pos.size(), E.rank(d));
    for (std::size_t c = 0; c < pos.size(); ++c)
        p.add(c, pos[c].orbit, pos[c].sign);
    return p;
}

IntMatrix pstar_diagonal_matrix(int n, int d)
{
    if (n < 1 || n > max_torus_dimension)
        throw InvalidParameter("torus dimension out of range");
    const std::size_t threes = binomial(n - 1, d - 1);
    const std::size_t size = threes + binomial(n - 1, d);
    IntMatrix m(size, size);
    for (std::size_t i = 0; i < size; ++i)
        m(i, i) = i < threes ? 3 : 1;
    return m;
}

AbelianGroup pstar_diagonal_cokernel(int n, int d)
{
    const auto m = pstar_diagonal_matrix(n, d);
    std::vector<Integer> divisors;
    for (std::size_t i = 0; i < m.rows(); ++i)
        divisors.push_back(m(i, i));
    return AbelianGroup::from_divisors(0, divisors);
}

AbelianGroup pstar_cochain_cokernel(int n, int d)
{
    const auto X = torus_cw(n, TorusMode::first_coordinate);
    if (d < 0 || d > n)
        return {};
    const auto E = equivariant_chain_complex(X);
    const auto CX = cellular_cochains(X);
    const auto CQ = bredon_cochain_complex(E, LambdaModule::trivial());
    const IntMatrix zx = kernel_basis(CX.coboundary_matrix(d).to_dense());
    const IntMatrix zq = kernel_basis(CQ.coboundary_matrix(d).to_dense());
    const auto images = pstar_cochain_map(E, d) * SparseMatrix::from_dense(zq);
    const auto S = hconcat(images, CX.coboundary_matrix(d - 1));
    const auto s = elementary_divisors(S);
    return AbelianGroup::from_divisors(zx.cols() - s.rank, s.divisors);
}

AbelianGroup quotient_pstar_cokernel(int n, int d)
{
    const auto diagonal = pstar_diagonal_cokernel(n, d);
    const auto cochain = pstar_cochain_cokernel(n, d);
    if (!(diagonal == cochain)) {
        const auto X = torus_cw(n, TorusMode::first_coordinate);
        const auto E = equivariant_chain_complex(X);
        throw ComputationError("coker p* disagrees for n = " + std::to_string(n) + ", d = " + std::to_string(d) +
                               ": diagonal route gives " + diagonal.to_string() + ", cochain route gives " +
                               cochain.to_string() + "\ndiagonal p*:\n" + pstar_diagonal_matrix(n, d).to_string() +
                               "\ncochain p*:\n" + pstar_cochain_map(E, d).to_dense().to_string());
    }
    return cochain;
}

} // namespace pcsp
