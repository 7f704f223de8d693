#include <doctest.h>

#include <pcsp/equivariant.hpp>
#include <pcsp/errors.hpp>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>

using namespace pcsp;

namespace {

std::vector<std::vector<int>> exponent_vectors(int n, int lo, int hi)
{
    std::vector<std::vector<int>> out;
    std::vector<int> a(static_cast<std::size_t>(n), lo);
    while (true) {
        int sum = 0;
        for (int v : a)
            sum += v;
        if (((sum % 3) + 3) % 3 == 1)
            out.push_back(a);
        std::size_t k = 0;
        while (k < a.size() && a[k] == hi)
            a[k++] = lo;
        if (k == a.size())
            break;
        ++a[k];
    }
    return out;
}

std::vector<int> residues(const std::vector<int> & a)
{
    std::vector<int> r;
    for (int v : a)
        r.push_back(((v % 3) + 3) % 3);
    return r;
}

/// phi_k(edge) = 1 iff the edge runs in direction k from level 0.
Chain direction_cocycle(int n, int k)
{
    TorusCells cells(n, TorusMode::diagonal);
    Chain phi(cells.cell_count(1), 0);
    for (std::size_t e = 0; e < phi.size(); ++e)
        if (cells.factors(1, e)[static_cast<std::size_t>(k - 1)] == 3)
            phi[e] = 1;
    return phi;
}

std::int64_t pair(const Chain & a, const Chain & b)
{
    std::int64_t s = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += a[k] * b[k];
    return s;
}

bool is_zero(const Chain & c)
{
    return std::all_of(c.begin(), c.end(), [](std::int64_t v) { return v == 0; });
}

} // namespace

TEST_CASE("coordinate cycles")
{
    CHECK(coordinate_cycle(1, 1) == Chain{1, 1, 1});
    for (int n = 1; n <= 4; ++n) {
        const auto & T = diagonal_torus(n);
        for (int i = 1; i <= n; ++i) {
            auto x = coordinate_cycle(n, i);
            CHECK(is_zero(T.boundary_matrix(1) * x));
            CHECK(std::count(x.begin(), x.end(), 1) == 3);
            for (int k = 1; k <= n; ++k)
                CHECK(pair(direction_cocycle(n, k), x) == (k == i ? 1 : 0));
        }
        for (int k = 1; k <= n; ++k)
            CHECK(is_zero(T.boundary_matrix(2).transpose() * direction_cocycle(n, k)));
    }
    CHECK_THROWS_AS(coordinate_cycle(2, 3), InvalidParameter);
}

TEST_CASE("fillings")
{
    auto one = compute_fillings(1, 1);
    CHECK(one.b.empty());
    CHECK(one.B.empty());
    for (int n = 2; n <= 4; ++n) {
        const auto & T = diagonal_torus(n);
        const auto w = T.action_matrix(1);
        for (int i = 1; i <= n; ++i) {
            auto f = compute_fillings(n, i);
            auto wx = w * f.x;
            auto w2x = w * wx;
            Chain r1(f.x.size()), r2(f.x.size());
            for (std::size_t k = 0; k < f.x.size(); ++k) {
                r1[k] = f.x[k] - wx[k];
                r2[k] = f.x[k] - w2x[k];
            }
            CHECK(T.boundary_matrix(2) * f.b == r1);
            CHECK(T.boundary_matrix(2) * f.B == r2);
            CHECK(compute_fillings(n, i).b == f.b);
        }
    }
}

TEST_CASE("filling cache directory")
{
    const auto dir = std::filesystem::temp_directory_path() / "pcsp-topo-test-cache";
    std::filesystem::remove_all(dir);
    ::setenv("PCSP_TOPO_CACHE", dir.c_str(), 1);
    auto f = compute_fillings(3, 3);
    ::unsetenv("PCSP_TOPO_CACHE");
    CHECK(std::filesystem::exists(dir / "fillings-n3-i3.txt"));
    CHECK(f.b == compute_fillings(3, 3).b);
    std::filesystem::remove_all(dir);
}

TEST_CASE("monomial specs")
{
    CHECK_THROWS_AS(MonomialSpec({1, 1}), InvalidParameter);
    CHECK_THROWS_AS(MonomialSpec({7}), InvalidParameter);
    CHECK_THROWS_AS(MonomialSpec({}), InvalidParameter);
    CHECK(MonomialSpec({4}).n() == 1);
    auto beta = monomial_minor(MonomialSpec({1, 1, 2}), MinorMap(2, {1, 1, 2}));
    CHECK(beta.exponents() == std::vector<int>{2, 2});
}

TEST_CASE("monomial chain maps")
{
    auto id = monomial_chain_map(MonomialSpec({1}));
    CHECK(id.F[1].to_dense() == IntMatrix::identity(3));

    auto F = monomial_chain_map(MonomialSpec({2, -1}));
    TorusCells cells(2, TorusMode::diagonal);
    const auto e1 = cells.edge(1, {0, 0});
    const auto e2 = cells.edge(2, {0, 0});
    CHECK(F.F[1].at(0, e1) == 1);
    CHECK(F.F[1].at(1, e1) == 1);
    CHECK(F.F[1].at(2, e1) == 0);
    CHECK(F.F[1].at(2, e2) == -1);
    CHECK(F.F[1].column(e2).size() == 1);
    CHECK(F.F[2].is_zero());

    for (int n = 1; n <= 3; ++n)
        for (const auto & a : exponent_vectors(n, -2, 2))
            CHECK(verify_chain_map(monomial_chain_map(MonomialSpec(a))));
}

TEST_CASE("verification reports the failing cell")
{
    auto F = monomial_chain_map(MonomialSpec({1, 0}));
    TorusCells cells(2, TorusMode::diagonal);
    const auto e = cells.edge(2, {1, 2});
    F.F[1].add(0, e, 1);
    auto r = verify_chain_map(F);
    CHECK_FALSE(r);
    CHECK(r.dimension == 1);
    CHECK(r.cell == e);

    EquivariantChainMap constant = monomial_chain_map(MonomialSpec({1, 0}));
    constant.F[1] = SparseMatrix(3, constant.F[1].cols());
    constant.F[0] = SparseMatrix(3, constant.F[0].cols());
    for (std::size_t v = 0; v < constant.F[0].cols(); ++v)
        constant.F[0].add(0, v, 1);
    auto c = verify_chain_map(constant);
    CHECK_FALSE(c);
    CHECK(c.detail.find("omega") != std::string::npos);
    CHECK_FALSE(gamma_vector(constant).valid);
}

TEST_CASE("degrees of monomial maps")
{
    CHECK(gamma_vector(monomial_chain_map(MonomialSpec({1, 0, 0}))).degrees == std::vector<int>{1, 0, 0});
    CHECK(gamma_vector(monomial_chain_map(MonomialSpec({2, -1}))).degrees == std::vector<int>{2, 2});
    auto g = gamma_vector(monomial_chain_map(MonomialSpec({1, 1, 2})));
    REQUIRE(g.map);
    CHECK(*g.map == AffineMapZ3({1, 1, 2}));

    for (int n = 1; n <= 3; ++n) {
        std::map<std::vector<int>, std::vector<int>> by_class;
        std::set<std::vector<int>> vectors;
        for (const auto & a : exponent_vectors(n, -2, 2)) {
            auto gamma = gamma_vector(monomial_chain_map(MonomialSpec(a)));
            CHECK(gamma.valid);
            CHECK(gamma.degrees == residues(a));
            vectors.insert(gamma.degrees);
            auto [it, fresh] = by_class.emplace(residues(a), gamma.degrees);
            if (!fresh)
                CHECK(it->second == gamma.degrees);
        }
        std::size_t expected = 1;
        for (int k = 1; k < n; ++k)
            expected *= 3;
        CHECK(vectors.size() == expected);
        CHECK(by_class.size() == expected);
    }
}

TEST_CASE("gamma commutes with minors on monomials")
{
    for (auto [n, m] : {std::pair{3, 2}, std::pair{2, 1}})
        for (const auto & a : exponent_vectors(n, -2, 2)) {
            const MonomialSpec alpha(a);
            const auto g = *gamma_vector(monomial_chain_map(alpha)).map;
            for (const auto & pi : all_minor_maps(n, m)) {
                auto minor = gamma_vector(monomial_chain_map(monomial_minor(alpha, pi)));
                REQUIRE(minor.map);
                CHECK(*minor.map == affine_minor(g, pi));
            }
        }
}

TEST_CASE("degrees survive equivariant chain homotopies")
{
    auto F = monomial_chain_map(MonomialSpec({1, 1, 2}));
    auto same = apply_homotopy(F, zero_homotopy(3));
    for (int d = 0; d <= 2; ++d)
        CHECK(same.F[static_cast<std::size_t>(d)] == F.F[static_cast<std::size_t>(d)]);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto h = random_equivariant_homotopy(3, seed);
        CHECK(is_equivariant(h));
        auto G = apply_homotopy(F, h);
        CHECK(verify_chain_map(G));
        CHECK(gamma_vector(G).degrees == std::vector<int>{1, 1, 2});
    }
    auto a = chain_homotopy_perturb(F, 42);
    auto b = chain_homotopy_perturb(F, 42);
    CHECK(a.F[1] == b.F[1]);
    CHECK_FALSE(chain_homotopy_perturb(F, 7).F[2].is_zero());
}

TEST_CASE("gamma on monomial classes preserves minors")
{
    std::map<AffineMapZ3, AffineMapZ3> xi;
    for (int n = 1; n <= 3; ++n)
        for (const auto & a : all_affine_maps(n))
            xi.emplace(a, *gamma_vector(monomial_chain_map(MonomialSpec(a.coefficients()))).map);
    const auto violation = check_minor_preservation<AffineMapZ3, AffineMapZ3>(
        xi, [](const AffineMapZ3 & a) { return a.arity(); }, affine_minor, affine_minor, 3,
        [](const AffineMapZ3 & a) { return a.to_string(); });
    CHECK_FALSE(violation);
    for (const auto & [a, g] : xi)
        CHECK(g == a);
}
