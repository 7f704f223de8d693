#include <doctest.h>

#include "oracles.hpp"

#include <pcsp/errors.hpp>
#include <pcsp/reconfig.hpp>
#include <pcsp/solver.hpp>

#include <set>

using namespace pcsp;

namespace {

const std::vector<FunctionTable> & binary_polys()
{
    static const auto p = enumerate_polymorphisms(make_lo(3), make_lo(4), 2).items;
    return p;
}

FunctionTable table(std::vector<int> v)
{
    return FunctionTable(2, 3, 4, std::move(v));
}

FunctionTable unary_in(int coord, std::vector<int> h)
{
    std::vector<int> v;
    for (int x = 1; x <= 3; ++x)
        for (int y = 1; y <= 3; ++y)
            v.push_back(h[static_cast<std::size_t>((coord == 1 ? x : y) - 1)]);
    return table(v);
}

} // namespace

TEST_CASE("one-value differences")
{
    auto f = table({1, 1, 4, 2, 2, 2, 3, 3, 3});
    auto g = table({1, 1, 1, 2, 2, 2, 3, 3, 3});
    CHECK_FALSE(differ_in_one(f, f));
    CHECK(differ_in_one(f, g) == Tuple{1, 3});
    auto h = table({2, 1, 1, 2, 2, 2, 3, 3, 4});
    CHECK_FALSE(differ_in_one(g, h));
}

TEST_CASE("joins of one-value pairs")
{
    auto f = table({1, 1, 4, 2, 2, 2, 3, 3, 3});
    auto g = table({1, 1, 1, 2, 2, 2, 3, 3, 3});
    auto m = join_multihom(f, g, make_lo(3), make_lo(4));
    CHECK(m.image_set(3) == std::vector<int>{1, 4});
    for (int a = 1; a <= 9; ++a)
        if (a != 3)
            CHECK(m.image_set(a).size() == 1);
    CHECK_THROWS_AS(join_multihom(f, f, make_lo(3), make_lo(4)), InvalidParameter);

    auto graph = reconfig_graph(binary_polys());
    for (std::size_t a = 0; a < graph.vertices.size(); ++a)
        for (std::size_t b : graph.adjacency[a])
            CHECK_NOTHROW(join_multihom(graph.vertices[a], graph.vertices[b], make_lo(3), make_lo(4)));
}

TEST_CASE("reconfiguration graphs")
{
    auto g2 = reconfig_graph(binary_polys());
    CHECK(g2.vertices.size() == 68);
    CHECK(g2.component_count == 2);

    std::vector<std::pair<int, int>> edges;
    for (std::size_t a = 0; a < binary_polys().size(); ++a)
        for (std::size_t b = a + 1; b < binary_polys().size(); ++b) {
            int diff = 0;
            for (std::size_t i = 0; i < 9; ++i)
                diff += binary_polys()[a].at(i) != binary_polys()[b].at(i);
            if (diff == 1)
                edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    CHECK(g2.edge_count() == edges.size());
    CHECK(oracle::components(68, edges) == 2);

    auto g1 = reconfig_graph(enumerate_polymorphisms(make_lo(3), make_lo(4), 1).items);
    CHECK(g1.vertices.size() == 4);
    CHECK(g1.component_count == 1);

    auto single = reconfig_graph({table({1, 1, 4, 2, 2, 2, 3, 3, 3})});
    CHECK(single.component_count == 1);
    CHECK(single.edge_count() == 0);
}

TEST_CASE("trash-colour decompositions")
{
    auto d = trash_decompose(table({1, 1, 4, 2, 2, 2, 3, 3, 3}));
    CHECK(d.coordinate == 1);
    CHECK(d.h.values() == std::vector<int>{1, 2, 3});
    CHECK(d.trash == 4);
    CHECK(d.occurrences == std::vector<Tuple>{{1, 3}});

    auto e = trash_decompose(unary_in(2, {1, 3, 4}));
    CHECK(e.coordinate == 2);
    CHECK(e.h.values() == std::vector<int>{1, 3, 4});
    CHECK(e.trash == 2);
    CHECK(e.occurrences.empty());

    for (const auto & f : binary_polys()) {
        auto t = trash_decompose(f);
        for (int x = 1; x <= 3; ++x)
            for (int y = 1; y <= 3; ++y) {
                const int v = f({x, y});
                const int expected = t.h.at(static_cast<std::size_t>((t.coordinate == 1 ? x : y) - 1));
                CHECK((v == expected || v == t.trash));
            }
    }
}

TEST_CASE("structure of binary polymorphisms")
{
    std::size_t unary = 0;
    for (const auto & f : binary_polys()) {
        for (int c = 1; c <= 4; ++c) {
            std::set<int> rows, cols;
            for (int x = 1; x <= 3; ++x)
                for (int y = 1; y <= 3; ++y)
                    if (f({x, y}) == c) {
                        rows.insert(x);
                        cols.insert(y);
                    }
            CHECK((rows.size() <= 1 || cols.size() <= 1));
        }
        for (int a = 1; a <= 3; ++a)
            for (int b = a + 1; b <= 3; ++b)
                for (int c = 1; c <= 3; ++c)
                    for (int d = c + 1; d <= 3; ++d)
                        CHECK(f({a, c}) < f({b, d}));
        if (is_essentially_unary(f))
            ++unary;
    }
    CHECK(unary == 8);
}

TEST_CASE("reduction to essentially unary maps")
{
    auto path = reduce_to_unary(table({1, 1, 4, 2, 2, 2, 3, 3, 3}));
    REQUIRE(path.size() == 2);
    CHECK(path.back() == unary_in(1, {1, 2, 3}));
    CHECK(reduce_to_unary(unary_in(1, {2, 3, 4})).size() == 1);

    for (const auto & f : binary_polys()) {
        auto p = reduce_to_unary(f);
        CHECK(p.size() - 1 == trash_decompose(f).occurrences.size());
        for (std::size_t k = 0; k + 1 < p.size(); ++k)
            CHECK(differ_in_one(p[k], p[k + 1]));
        for (const auto & g : p)
            CHECK(is_lo34_polymorphism(g));
        CHECK(is_essentially_unary(p.back()).value_or(0) > 0);
    }
}

TEST_CASE("essential arity")
{
    CHECK(is_essentially_unary(unary_in(1, {1, 2, 3})) == 1);
    CHECK_FALSE(is_essentially_unary(table({1, 1, 4, 2, 2, 2, 3, 3, 3})));
    CHECK(is_essentially_unary(table(std::vector<int>(9, 2))) == 0);
}

TEST_CASE("chi on binary polymorphisms")
{
    CHECK(chi_binary(unary_in(2, {2, 3, 4})) == 2);
    CHECK(chi_binary(table({1, 1, 4, 2, 2, 2, 3, 3, 3})) == 1);
    auto g = reconfig_graph(binary_polys());
    std::vector<std::set<int>> labels(g.component_count);
    std::vector<int> unary_count(g.component_count, 0);
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        const int chi = chi_binary(g.vertices[v]);
        labels[g.component[v]].insert(chi);
        if (auto c = is_essentially_unary(g.vertices[v])) {
            CHECK(*c == chi);
            ++unary_count[g.component[v]];
        }
    }
    REQUIRE(labels.size() == 2);
    CHECK(labels[0].size() == 1);
    CHECK(labels[1].size() == 1);
    CHECK(*labels[0].begin() != *labels[1].begin());
    CHECK(unary_count == std::vector<int>{4, 4});
}

TEST_CASE("complex connectivity matches one-value moves")
{
    CHECK(complex_components_match(make_ott(), make_lo(3)));
    CHECK(complex_components_match(make_ott(), make_lo(4)));
    CHECK(complex_components_match(make_ott(), make_lo(2)));
}

TEST_CASE("exports")
{
    auto g = reconfig_graph(enumerate_polymorphisms(make_lo(3), make_lo(4), 1).items);
    auto dot = to_dot(g);
    CHECK(dot == to_dot(g));
    CHECK(dot.find("v3 [label=") != std::string::npos);
    CHECK(dot.find("v4") == std::string::npos);
    auto empty = to_dot(reconfig_graph({}));
    CHECK(empty.find("--") == std::string::npos);
    auto csv = components_csv(g);
    CHECK(csv.rfind("vertex,table,component\n0,1 2 3,0\n", 0) == 0);
}
