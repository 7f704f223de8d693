#include <doctest.h>

#include "oracles.hpp"

#include <pcsp/errors.hpp>
#include <pcsp/solver.hpp>
#include <pcsp/structures.hpp>

using namespace pcsp;

TEST_CASE("LO_k relations")
{
    auto lo3 = make_lo(3);
    CHECK(lo3.contains(0, Tuple{1, 1, 2}));
    CHECK(lo3.contains(0, Tuple{1, 2, 3}));
    CHECK_FALSE(lo3.contains(0, Tuple{2, 2, 1}));
    CHECK(make_lo(2).tuple_count(0) == 3);
    CHECK(make_lo(2).tuples(0) == std::vector<Tuple>{{1, 1, 2}, {1, 2, 1}, {2, 1, 1}});
    for (int k = 1; k <= 5; ++k)
        CHECK(make_lo(k).tuples(0) == oracle::lo(k).rel);
    CHECK(lo3.tuple_count(0) == 15);
    CHECK(make_lo(4).tuple_count(0) == 42);
    CHECK_THROWS_AS(make_lo(0), InvalidParameter);
}

TEST_CASE("LO_k is invariant under coordinate permutations")
{
    for (int k = 1; k <= 5; ++k) {
        auto lo = make_lo(k);
        for (const auto & t : lo.tuples(0)) {
            Tuple p = t;
            std::sort(p.begin(), p.end());
            do
                CHECK(lo.contains(0, p));
            while (std::next_permutation(p.begin(), p.end()));
        }
    }
}

TEST_CASE("ott")
{
    auto o = make_ott();
    CHECK(o.tuple_count(0) == 6);
    CHECK_FALSE(o.contains(0, Tuple{1, 1, 2}));
    CHECK(CyclicAction({1, 2, 3}).is_automorphism_of(o));
    CHECK(CyclicAction::ott_shift().is_automorphism_of(o));
}

TEST_CASE("powers")
{
    auto lo3 = make_lo(3);
    CHECK(power(lo3, 1) == lo3);
    auto sq = power(lo3, 2);
    CHECK(sq.domain_size() == 9);
    CHECK(sq.tuple_count(0) == 225);
    // ((1,1),(1,1),(2,2)) encodes to (1,1,5).
    CHECK(sq.contains(0, Tuple{1, 1, 5}));
    for (int k = 2; k <= 4; ++k)
        for (int n = 1; n <= 3; ++n) {
            auto p = power(make_lo(k), n);
            auto expected = checked_pow(make_lo(k).tuple_count(0), static_cast<std::size_t>(n));
            CHECK(p.tuple_count(0) == *expected);
        }
}

TEST_CASE("lazy powers agree with materialized powers")
{
    auto lo3 = make_lo(3);
    auto eager = power(lo3, 2);
    auto lazy = power(lo3, 2, 10);
    CHECK(eager.is_materialized());
    CHECK_FALSE(lazy.is_materialized());
    CHECK(lazy.tuple_count(0) == 225);
    std::size_t visited = 0;
    lazy.for_each_tuple(0, [&](std::span<const int> t) {
        CHECK(eager.contains(0, t));
        ++visited;
    });
    CHECK(visited == 225);
    for (int a = 1; a <= 9; ++a)
        for (int b = 1; b <= 9; ++b)
            for (int c = 1; c <= 9; ++c)
                CHECK(lazy.contains(0, Tuple{a, b, c}) == eager.contains(0, Tuple{a, b, c}));
    CHECK_THROWS_AS(lazy.tuples(0), SizeLimitError);
    CHECK_THROWS_AS(power(lo3, 40), SizeLimitError);
}

TEST_CASE("homomorphism predicate")
{
    auto lo3 = make_lo(3);
    auto lo4 = make_lo(4);
    CHECK(is_homomorphism(FunctionTable::identity(3), lo3, lo3));
    CHECK(is_homomorphism(FunctionTable::unary(4, {1, 2, 3}), lo3, lo4));
    CHECK_FALSE(is_homomorphism(FunctionTable::unary(4, {1, 1, 2}), lo3, lo4));
    CHECK_THROWS_AS(is_homomorphism(FunctionTable::identity(4), lo3, lo4), SignatureMismatch);
}

TEST_CASE("multihomomorphism predicate")
{
    auto o = make_ott();
    auto lo3 = make_lo(3);
    CHECK(is_multihomomorphism(Multihom::from_sets(3, {{1}, {1}, {2, 3}}), o, lo3));
    CHECK(is_multihomomorphism(Multihom::from_sets(3, {{1, 2}, {1, 2}, {3}}), o, lo3));
    CHECK_FALSE(is_multihomomorphism(Multihom::from_sets(3, {{1}, {2}, {2}}), o, lo3));
    for (const auto & h : enumerate_homomorphisms(o, lo3).items)
        CHECK(is_multihomomorphism(Multihom::from_function(h), o, lo3));
    CHECK_THROWS_AS(Multihom::from_sets(3, {{1}, {}, {2}}), MalformedMultihom);
}

TEST_CASE("multihom composition")
{
    auto f = Multihom::from_sets(3, {{1}, {2}, {3}});
    auto id4 = Multihom::from_sets(4, {{1}, {2}, {3}, {4}});
    auto g = Multihom::from_sets(4, {{1}, {2}, {3, 4}});
    CHECK(compose_multihom(g, f).image_set(3) == std::vector<int>{3, 4});
    CHECK(compose_multihom(id4, g) == g);
    auto s1 = Multihom::from_function(FunctionTable::unary(3, {2, 3, 1}));
    auto s2 = Multihom::from_function(FunctionTable::unary(3, {3, 3, 1}));
    CHECK(compose_multihom(s2, s1) == Multihom::from_function(FunctionTable::unary(3, {3, 1, 3})));
    CHECK_THROWS_AS(compose_multihom(f, id4), SignatureMismatch);
}

TEST_CASE("action on multihoms")
{
    auto w = CyclicAction::ott_shift();
    auto m = Multihom::from_function(FunctionTable::unary(3, {2, 1, 1}));
    CHECK(act_on_multihom(w, m) == Multihom::from_function(FunctionTable::unary(3, {1, 1, 2})));
    auto x = Multihom::from_sets(4, {{1, 2}, {3}, {1, 4}});
    CHECK(act_on_multihom(w, act_on_multihom(w, act_on_multihom(w, x))) == x);
    auto r = FunctionTable::unary(3, {1, 2, 3});
    auto r1 = act_on_function(w, r);
    auto r2 = act_on_function(w, r1);
    CHECK(r != r1);
    CHECK(r1 != r2);
    CHECK(r != r2);
    CHECK(act_on_function(w, r2) == r);
}

TEST_CASE("freeness of the Z_3 action")
{
    auto w = CyclicAction::ott_shift();
    for (int k : {3, 4}) {
        auto lo = make_lo(k);
        CHECK_FALSE(lo.has_constant_tuple());
        for (const auto & m : enumerate_multihomomorphisms(make_ott(), lo).items)
            CHECK(act_on_multihom(w, m) != m);
    }
    // Negative control: a constant tuple gives a fixed point.
    RelStructure c(2, {Relation{"R", 3, {{1, 1, 1}, {1, 2, 2}}}});
    CHECK(c.has_constant_tuple());
    auto homs = enumerate_homomorphisms(make_ott(), c).items;
    bool fixed = false;
    for (const auto & h : homs)
        fixed = fixed || act_on_function(w, h) == h;
    CHECK(fixed);
}

TEST_CASE("cyclic action validation")
{
    CHECK_THROWS_AS(CyclicAction({2, 1}), InvalidParameter);
    CHECK_THROWS_AS(CyclicAction({1, 1, 2}), InvalidParameter);
    CHECK(CyclicAction({2, 3, 1, 4}).has_fixed_point());
    CHECK_FALSE(CyclicAction::ott_shift().has_fixed_point());
    CHECK(CyclicAction::ott_shift().inverse() == CyclicAction({3, 1, 2}));
}

TEST_CASE("graph gadget")
{
    auto edge = graph_to_lo_instance(make_graph(2, {{1, 2}}));
    CHECK(edge.domain_size() == 3);
    CHECK(is_homomorphism(FunctionTable::unary(3, {2, 3, 1}), edge, make_lo(3)));
    auto tri = graph_to_lo_instance(make_complete_graph(3));
    CHECK_FALSE(exists_homomorphism(tri, make_lo(3)));
    CHECK(exists_homomorphism(tri, make_lo(4)));
    auto empty = graph_to_lo_instance(make_graph(3, {}));
    CHECK(empty.tuple_count(0) == 0);
    CHECK(exists_homomorphism(empty, make_lo(3)));
    RelStructure loop(2, {Relation{"E", 2, {{1, 1}, {1, 2}, {2, 1}}}});
    CHECK_THROWS_AS(graph_to_lo_instance(loop), InvalidInstance);
}

TEST_CASE("graph gadget matches colourability on small graphs")
{
    for (int n = 1; n <= 4; ++n)
        for (const auto & edges : oracle::all_graphs(n))
            for (int k : {3, 4}) {
                const bool colour = oracle::colourable(n, edges, k - 1);
                CHECK(colour == oracle::gadget_lo_solvable(n, edges, k));
                CHECK(colour == exists_homomorphism(graph_to_lo_instance(make_graph(n, edges)), make_lo(k)).has_value());
            }
}

TEST_CASE("product structure")
{
    auto lo2 = make_lo(2);
    auto p = product(lo2, make_lo(3));
    CHECK(p.domain_size() == 6);
    CHECK(p.tuple_count(0) == 3 * 15);
    // ((1,1),(1,2),(2,3)) -> (1, 2, 6)
    CHECK(p.contains(0, Tuple{1, 2, 6}));
}
