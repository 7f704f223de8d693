#include <doctest.h>

#include <pcsp/errors.hpp>
#include <pcsp/io.hpp>
#include <pcsp/reconfig.hpp>
#include <pcsp/solver.hpp>
#include <pcsp/verify.hpp>

#include <filesystem>
#include <set>

using namespace pcsp;

TEST_CASE("structures round-trip")
{
    for (const auto & A : {make_lo(3), make_lo(4), make_ott(), make_complete_graph(3)}) {
        const auto j = to_json(A);
        CHECK(j["kind"] == "structure");
        CHECK(j["version"] == schema_version);
        CHECK(structure_from_json(j) == A);
    }
    const auto j = to_json(make_lo(3));
    CHECK(j.dump().find(R"("tuples":[[1,1,2],[1,1,3])") != std::string::npos);

    const auto plain = Json::parse(R"({"domain_size": 2, "relations": [{"name": "R", "arity": 3, "tuples": [[2,1,1],[1,1,2]]}]})");
    const auto A = structure_from_json(plain);
    CHECK(A.tuples(0) == std::vector<Tuple>{{1, 1, 2}, {2, 1, 1}});
    CHECK(to_json(A)["relations"][0]["tuples"][0] == Json::array({1, 1, 2}));

    CHECK_THROWS_AS(structure_from_json(Json::parse(R"({"kind": "chain_map", "version": 1})")), IoError);
    CHECK_THROWS_AS(structure_from_json(Json::parse(R"({"kind": "structure", "version": 99})")), IoError);
    CHECK_THROWS_AS(structure_from_json(Json::parse(R"({"domain_size": 2})")), IoError);
}

TEST_CASE("function tables round-trip")
{
    const auto polys = enumerate_polymorphisms(make_lo(3), make_lo(4), 2).items;
    const auto j = to_json(polys);
    CHECK(j.is_array());
    CHECK(j.size() == 68);
    CHECK(function_tables_from_json(j) == polys);
    CHECK_THROWS_AS(function_tables_from_json(Json::object()), IoError);
}

TEST_CASE("complexes round-trip")
{
    std::vector<CWComplexZ> complexes{make_y2(), torus_cw(2, TorusMode::diagonal), torus_cw(3, TorusMode::first_coordinate),
                                      hom_complex(make_ott(), make_lo(3)).to_cw(), order_complex(l4_poset()).to_cw()};
    for (const auto & X : complexes) {
        const auto Y = cw_complex_from_json(Json::parse(to_json(X).dump()));
        CHECK(Y.cells == X.cells);
        CHECK(Y.action == X.action);
        REQUIRE(Y.boundary.size() == X.boundary.size());
        for (std::size_t d = 0; d < X.boundary.size(); ++d)
            CHECK(Y.boundary[d].to_dense() == X.boundary[d].to_dense());
    }
    auto bad = to_json(make_y2());
    bad["boundary"][2]["entries"][0][2] = -1;
    CHECK_THROWS_AS(cw_complex_from_json(bad), IoError);
}

TEST_CASE("chain maps round-trip")
{
    const auto F = monomial_chain_map(MonomialSpec({2, -1}));
    const auto G = chain_map_from_json(Json::parse(to_json(F).dump()));
    CHECK(G.n == 2);
    for (std::size_t d = 0; d < 3; ++d)
        CHECK(G.F[d].to_dense() == F.F[d].to_dense());
    CHECK(gamma_vector(G).degrees == std::vector<int>{2, 2});
}

TEST_CASE("files")
{
    const auto dir = std::filesystem::temp_directory_path() / "pcsp-topo-io-test";
    std::filesystem::create_directories(dir);
    write_json_file(dir / "lo4.json", to_json(make_lo(4)));
    CHECK(structure_from_json(read_json_file(dir / "lo4.json")) == make_lo(4));
    write_text_file(dir / "bad.json", "{");
    CHECK_THROWS_AS(read_json_file(dir / "bad.json"), IoError);
    CHECK_THROWS_AS(read_text_file(dir / "missing.json"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("DOT export")
{
    const auto empty = to_dot(reconfig_graph({}));
    CHECK(empty.find("label") == std::string::npos);
    CHECK(empty.rfind("graph", 0) == 0);

    const auto unary = reconfig_graph(enumerate_polymorphisms(make_lo(3), make_lo(4), 1).items);
    const auto dot1 = to_dot(unary);
    std::size_t nodes = 0;
    for (std::size_t p = dot1.find("[label="); p != std::string::npos; p = dot1.find("[label=", p + 1))
        ++nodes;
    CHECK(nodes == 4);

    const auto binary = reconfig_graph(enumerate_polymorphisms(make_lo(3), make_lo(4), 2).items);
    const auto dot2 = to_dot(binary);
    CHECK(dot2 == to_dot(binary));
    std::set<std::string> colours;
    for (std::size_t p = dot2.find("color="); p != std::string::npos; p = dot2.find("color=", p + 1))
        colours.insert(dot2.substr(p, dot2.find_first_of(",]", p) - p));
    CHECK(colours.size() == 2);
}

TEST_CASE("reports serialize statuses")
{
    VerificationReport r{"demo", {{"a", "t", CheckStatus::pass, 0.5, ""}, {"b", "t", CheckStatus::fail, 0.25, "broken"}}};
    const auto j = to_json(r);
    CHECK(j["kind"] == "verification_report");
    CHECK(j["status"] == "fail");
    CHECK(j["checks"][0]["status"] == "pass");
    CHECK(j["checks"][1]["status"] == "fail");
    CHECK_FALSE(j["checks"][0].contains("elapsed"));
    CHECK(to_json(r, true)["checks"][1]["elapsed"] == 0.25);
}
