#include <doctest.h>

#include <pcsp/minions.hpp>
#include <pcsp/solver.hpp>

using namespace pcsp;

TEST_CASE("minors of tables")
{
    FunctionTable f(2, 3, 4, {1, 1, 4, 2, 2, 2, 3, 3, 3});
    CHECK(minor_table(f, MinorMap::identity(2)) == f);
    CHECK(minor_table(f, MinorMap(1, {1, 1})).values() == std::vector<int>{1, 2, 3});
    auto swapped = minor_table(f, MinorMap(2, {2, 1}));
    CHECK(swapped({3, 1}) == f({1, 3}));
    CHECK_THROWS_AS(minor_table(f, MinorMap(1, {1})), SignatureMismatch);
    CHECK_THROWS_AS(MinorMap(2, {1, 3}), InvalidParameter);
}

TEST_CASE("minors of affine maps")
{
    CHECK(affine_minor(AffineMapZ3({2, 2}), MinorMap(1, {1, 1})) == AffineMapZ3({1}));
    CHECK(affine_minor(AffineMapZ3({1, 1, 2}), MinorMap(2, {2, 2, 1})) == AffineMapZ3({2, 2}));
    for (int n = 1; n <= 3; ++n)
        for (int i = 1; i <= n; ++i)
            for (int m = 1; m <= 3; ++m)
                for (const auto & pi : all_minor_maps(n, m))
                    CHECK(affine_minor(AffineMapZ3::projection(n, i), pi) == AffineMapZ3::projection(m, pi(i)));
    CHECK_THROWS_AS(AffineMapZ3({1, 1}), InvalidParameter);
    CHECK(AffineMapZ3({2, -1}) == AffineMapZ3({2, 2}));
}

TEST_CASE("evaluation")
{
    CHECK(affine_eval(AffineMapZ3({1}), {2}) == 2);
    CHECK(affine_eval(AffineMapZ3({2, 2}), {1, 2}) == 0);
    for (int n = 1; n <= 4; ++n)
        for (const auto & a : all_affine_maps(n))
            CHECK(affine_eval(a, std::vector<int>(static_cast<std::size_t>(n), 1)) == 1);
}

TEST_CASE("minor then evaluate commutes with evaluate after reindexing")
{
    for (int n = 1; n <= 4; ++n)
        for (const auto & a : all_affine_maps(n))
            for (int m = 1; m <= 3; ++m)
                for (const auto & pi : all_minor_maps(n, m)) {
                    auto b = affine_minor(a, pi);
                    for (std::size_t idx = 0; idx < *checked_pow(3, static_cast<std::size_t>(m)); ++idx) {
                        auto x = decode_tuple(idx, static_cast<std::size_t>(m), 3);
                        for (auto & v : x)
                            --v;
                        std::vector<int> xpi;
                        for (int i = 1; i <= n; ++i)
                            xpi.push_back(x[static_cast<std::size_t>(pi(i) - 1)]);
                        CHECK(affine_eval(b, x) == affine_eval(a, xpi));
                    }
                }
}

TEST_CASE("projection detection")
{
    CHECK(is_projection(AffineMapZ3({1, 0, 0})) == 1);
    CHECK_FALSE(is_projection(AffineMapZ3({0, 2, 2})));
    CHECK_FALSE(is_projection(AffineMapZ3({2, 2})));
    CHECK(all_affine_maps(4).size() == 27);
}

TEST_CASE("subminion closure")
{
    auto c = subminion_closure({AffineMapZ3({1, 1, 2})}, 2);
    CHECK(c.count(AffineMapZ3({2, 2})) == 1);

    std::set<AffineMapZ3> projections;
    for (int n = 1; n <= 3; ++n)
        for (int i = 1; i <= n; ++i)
            projections.insert(AffineMapZ3::projection(n, i));
    CHECK(subminion_closure({AffineMapZ3({1, 0})}, 3) == projections);
    CHECK(subminion_closure(projections, 3) == projections);

    for (int n = 1; n <= 4; ++n)
        for (const auto & a : all_affine_maps(n)) {
            auto cl = subminion_closure({a}, 4);
            CHECK(subminion_closure(cl, 4) == cl);
            for (const auto & b : cl)
                CHECK(b.arity() <= 4);
            if (!is_projection(a))
                CHECK(cl.count(AffineMapZ3({2, 2})) == 1);
            else
                for (const auto & b : cl)
                    CHECK(is_projection(b));
        }
    CHECK_THROWS_AS(subminion_closure({}, 7), SizeLimitError);
    CHECK_THROWS_AS(subminion_closure({AffineMapZ3({1, 0, 0, 0, 0, 0, 0})}, 2), SizeLimitError);
    CHECK_THROWS_AS(subminion_closure({}, 0), InvalidParameter);
}

TEST_CASE("closure is monotone")
{
    auto small = subminion_closure({AffineMapZ3({1, 0})}, 3);
    auto big = subminion_closure({AffineMapZ3({1, 0}), AffineMapZ3({2, 2})}, 3);
    for (const auto & a : small)
        CHECK(big.count(a) == 1);
}

namespace {

using Xi = std::map<AffineMapZ3, AffineMapZ3>;

std::optional<MinorViolation<AffineMapZ3, AffineMapZ3>> check(const Xi & xi, int bound)
{
    return check_minor_preservation<AffineMapZ3, AffineMapZ3>(
        xi, [](const AffineMapZ3 & a) { return a.arity(); }, affine_minor, affine_minor, bound,
        [](const AffineMapZ3 & a) { return a.to_string(); });
}

} // namespace

TEST_CASE("minor preservation checks")
{
    Xi identity;
    for (int n = 1; n <= 3; ++n)
        for (const auto & a : all_affine_maps(n))
            identity.emplace(a, a);
    CHECK_FALSE(check(identity, 3));

    Xi collapse;
    collapse.emplace(AffineMapZ3({1}), AffineMapZ3({1}));
    for (const auto & a : all_affine_maps(2))
        collapse.emplace(a, AffineMapZ3({1, 0}));
    auto bad = check(collapse, 2);
    REQUIRE(bad);
    CHECK(bad->key == AffineMapZ3({1}));
    CHECK(bad->pi == MinorMap(2, {2}));
    CHECK(bad->image_then_minor == AffineMapZ3({0, 1}));
    CHECK(bad->minor_then_image == AffineMapZ3({1, 0}));

    Xi partial;
    partial.emplace(AffineMapZ3({1, 0}), AffineMapZ3({1, 0}));
    try {
        check(partial, 2);
        FAIL("expected a missing key");
    } catch (const MissingKeyError & e) {
        CHECK(e.key() == "(1)");
    }
}

TEST_CASE("polymorphism minors stay polymorphisms")
{
    auto p2 = enumerate_polymorphisms(make_lo(3), make_lo(4), 2).items;
    auto p1 = enumerate_polymorphisms(make_lo(3), make_lo(4), 1).items;
    for (const auto & f : p2) {
        for (const auto & pi : all_minor_maps(2, 1))
            CHECK(std::binary_search(p1.begin(), p1.end(), minor_table(f, pi)));
        for (const auto & pi : all_minor_maps(2, 2))
            CHECK(std::binary_search(p2.begin(), p2.end(), minor_table(f, pi)));
    }
}
