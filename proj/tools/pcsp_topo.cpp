#include <pcsp/equivariant.hpp>
#include <pcsp/errors.hpp>
#include <pcsp/homology.hpp>
#include <pcsp/io.hpp>
#include <pcsp/minions.hpp>
#include <pcsp/reconfig.hpp>
#include <pcsp/solver.hpp>
#include <pcsp/verify.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

using namespace pcsp;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;
constexpr int exit_resource = 3;

struct Global {
    bool json = false;
    bool timing = false;
};

std::vector<int> parse_ints(const std::string & text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
        if (item.empty())
            throw InvalidParameter("empty entry in list \"" + text + "\"");
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != item.size())
            throw InvalidParameter("not an integer: " + item);
        out.push_back(v);
    }
    if (out.empty())
        throw InvalidParameter("empty list");
    return out;
}

/// lo<k>, ott, k<n> (complete graph) or a JSON structure file.
RelStructure named_structure(const std::string & name)
{
    if (name == "ott")
        return make_ott();
    auto number = [&](std::size_t skip) {
        const auto rest = name.substr(skip);
        if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw InvalidParameter("unknown structure " + name);
        return std::stoi(rest);
    };
    if (name.rfind("lo", 0) == 0 && name.find('.') == std::string::npos)
        return make_lo(number(2));
    if (name.size() > 1 && name[0] == 'k' && std::isdigit(static_cast<unsigned char>(name[1])))
        return make_complete_graph(number(1));
    return structure_from_json(read_json_file(name));
}

TorusMode parse_mode(const std::string & s)
{
    if (s == "diagonal")
        return TorusMode::diagonal;
    if (s == "first-coordinate" || s == "first")
        return TorusMode::first_coordinate;
    throw InvalidParameter("unknown torus mode " + s);
}

void emit(const Global & g, const Json & j, const std::string & human)
{
    if (g.json)
        std::cout << j.dump(2) << '\n';
    else
        std::cout << human;
}

struct ComplexOptions {
    std::string kind = "hom";
    std::string from = "ott";
    std::string to = "lo3";
    int n = 2;
    std::string mode = "diagonal";
    std::optional<int> max_dim;
};

void add_complex_options(CLI::App * cmd, ComplexOptions & o)
{
    cmd->add_option("--kind", o.kind, "hom, l4, y2 or torus")
        ->check(CLI::IsMember({"hom", "l4", "y2", "torus"}))
        ->capture_default_str();
    cmd->add_option("--from", o.from, "source structure of Hom(A, B)")->capture_default_str();
    cmd->add_option("--to", o.to, "target structure of Hom(A, B)")->capture_default_str();
    cmd->add_option("--n", o.n, "torus dimension")->capture_default_str();
    cmd->add_option("--mode", o.mode, "torus action: diagonal or first-coordinate")->capture_default_str();
    cmd->add_option("--max-dim", o.max_dim, "order complex dimension cap");
}

CWComplexZ build_complex(const ComplexOptions & o)
{
    if (o.kind == "l4")
        return order_complex(l4_poset(), o.max_dim).to_cw();
    if (o.kind == "y2")
        return make_y2();
    if (o.kind == "torus")
        return torus_cw(o.n, parse_mode(o.mode));
    return hom_complex(named_structure(o.from), named_structure(o.to), std::nullopt, o.max_dim).to_cw();
}

std::uint64_t fnv1a(const std::string & s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s)
        h = (h ^ c) * 1099511628211ull;
    return h;
}

/// Function-table enumerations, cached under PCSP_TOPO_CACHE when set.
std::vector<FunctionTable> cached_tables(const RelStructure & A, const RelStructure & B, const std::string & what,
                                         int arity, const SearchConfig & cfg)
{
    const Json key{{"what", what}, {"arity", what == "homomorphisms" ? 1 : arity},
                   {"from", to_json(A)}, {"to", to_json(B)}};
    std::filesystem::path file;
    if (const char * dir = std::getenv("PCSP_TOPO_CACHE"); dir && *dir) {
        std::ostringstream name;
        name << "enum-" << what << '-' << std::hex << fnv1a(key.dump()) << ".json";
        file = std::filesystem::path(dir) / name.str();
        if (std::filesystem::exists(file)) {
            const auto j = read_json_file(file);
            if (j.value("key", Json()) == key)
                return function_tables_from_json(j.at("items"));
        }
    }
    auto fs = what == "homomorphisms" ? enumerate_homomorphisms(A, B, cfg).items
                                      : enumerate_polymorphisms(A, B, arity, cfg).items;
    if (!file.empty()) {
        std::filesystem::create_directories(file.parent_path());
        write_json_file(file, Json{{"key", key}, {"items", to_json(fs)}});
    }
    return fs;
}

std::string csv_quote(const std::string & s)
{
    return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

int run(int argc, char ** argv)
{
    CLI::App app{"Computations around PCSP(LO_3, LO_4): polymorphisms, minions, reconfiguration, "
                 "homomorphism complexes, Bredon cohomology and degrees"};
    app.name("pcsp-topo");
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_flag("--timing", g.timing, "report elapsed times");

    int result = exit_pass;

    // enum
    auto * en = app.add_subcommand("enum", "enumerate polymorphisms, homomorphisms or multihomomorphisms");
    std::string en_from = "lo3", en_to = "lo4", en_what = "polymorphisms", en_out;
    int en_arity = 2, en_shards = 1;
    en->add_option("--from", en_from, "source structure (lo<k>, ott, k<n> or a JSON file)")->capture_default_str();
    en->add_option("--to", en_to, "target structure")->capture_default_str();
    en->add_option("--arity", en_arity, "polymorphism arity")->capture_default_str();
    en->add_option("--what", en_what)->check(CLI::IsMember({"polymorphisms", "homomorphisms", "multihoms"}))->capture_default_str();
    en->add_option("--shards", en_shards, "search threads")->capture_default_str();
    en->add_option("--out", en_out, "write the tables as a JSON array");
    en->callback([&] {
        const auto A = named_structure(en_from);
        const auto B = named_structure(en_to);
        SearchConfig cfg;
        cfg.shards = en_shards;
        Json items = Json::array();
        std::ostringstream human;
        std::size_t count = 0;
        if (en_what == "multihoms") {
            const auto ms = enumerate_multihomomorphisms(A, B, cfg).items;
            count = ms.size();
            for (const auto & m : ms) {
                items.push_back(m.to_string());
                human << m.to_string() << '\n';
            }
        } else {
            const auto fs = cached_tables(A, B, en_what, en_arity, cfg);
            count = fs.size();
            items = to_json(fs);
            for (const auto & f : fs)
                human << f.to_string() << '\n';
        }
        if (!en_out.empty())
            write_json_file(en_out, items);
        human << count << ' ' << en_what << '\n';
        emit(g, Json{{"what", en_what}, {"count", count}, {"items", items}}, human.str());
    });

    // minion
    auto * mn = app.add_subcommand("minion", "operations in the affine minion Z_3");
    mn->require_subcommand(1);
    auto * closure = mn->add_subcommand("closure", "subminion generated by seed elements");
    std::vector<std::string> seeds;
    int max_arity = 3;
    std::string mn_csv;
    closure->add_option("--seed", seeds, "coefficient vector such as \"0,2,2\"; repeatable")->required();
    closure->add_option("--max-arity", max_arity)->capture_default_str();
    closure->add_option("--csv", mn_csv, "write the closure to a CSV file instead of stdout");
    closure->callback([&] {
        std::set<AffineMapZ3> seed;
        for (const auto & s : seeds)
            seed.insert(AffineMapZ3(parse_ints(s)));
        const auto cl = subminion_closure(seed, max_arity);
        std::ostringstream csv;
        csv << "arity,coefficients\n";
        Json items = Json::array();
        for (const auto & a : cl) {
            std::string coeffs;
            for (int c : a.coefficients())
                coeffs += (coeffs.empty() ? "" : ",") + std::to_string(c);
            csv << a.arity() << ',' << csv_quote(coeffs) << '\n';
            items.push_back(a.coefficients());
        }
        if (!mn_csv.empty()) {
            write_text_file(mn_csv, csv.str());
            emit(g, Json{{"count", cl.size()}, {"elements", items}}, std::to_string(cl.size()) + " elements\n");
        } else {
            emit(g, Json{{"count", cl.size()}, {"elements", items}}, csv.str());
        }
    });

    // reconfig
    auto * rc = app.add_subcommand("reconfig", "reconfiguration graph of polymorphisms");
    std::string rc_template = "lo3-lo4", rc_dot, rc_csv;
    int rc_arity = 2;
    rc->add_option("--template", rc_template, "<source>-<target>, e.g. lo3-lo4")->capture_default_str();
    rc->add_option("--arity", rc_arity)->check(CLI::Range(1, 2))->capture_default_str();
    rc->add_option("--dot", rc_dot, "write the graph in DOT format");
    rc->add_option("--csv", rc_csv, "write the component of each vertex");
    rc->callback([&] {
        const auto dash = rc_template.find('-');
        if (dash == std::string::npos)
            throw InvalidParameter("template must look like lo3-lo4");
        const auto A = named_structure(rc_template.substr(0, dash));
        const auto B = named_structure(rc_template.substr(dash + 1));
        const auto graph = reconfig_graph(enumerate_polymorphisms(A, B, rc_arity).items);
        if (!rc_dot.empty())
            write_text_file(rc_dot, to_dot(graph));
        if (!rc_csv.empty())
            write_text_file(rc_csv, components_csv(graph));
        Json chi = Json::array();
        std::ostringstream human;
        human << graph.vertices.size() << " vertices, " << graph.edge_count() << " edges, " << graph.component_count
              << " components\n";
        const bool lo34 = rc_arity == 2 && A == make_lo(3) && B == make_lo(4);
        if (lo34)
            for (std::size_t c = 0; c < graph.component_count; ++c) {
                const auto v = static_cast<std::size_t>(
                    std::find(graph.component.begin(), graph.component.end(), c) - graph.component.begin());
                const int x = chi_binary(graph.vertices[v]);
                chi.push_back(x);
                human << "component " << c << ": chi = " << x << '\n';
            }
        emit(g,
             Json{{"vertices", graph.vertices.size()},
                  {"edges", graph.edge_count()},
                  {"components", graph.component_count},
                  {"chi", chi}},
             human.str());
    });

    // complex
    auto * cx = app.add_subcommand("complex", "build a cell complex and check it");
    ComplexOptions cx_opts;
    std::string cx_out;
    add_complex_options(cx, cx_opts);
    cx->add_option("--out", cx_out, "write the complex as JSON");
    cx->callback([&] {
        const auto X = build_complex(cx_opts);
        const auto check = X.verify();
        if (!cx_out.empty())
            write_json_file(cx_out, to_json(X));
        Json cells = Json::array();
        std::ostringstream human;
        for (int d = 0; d <= X.dimension(); ++d) {
            cells.push_back(X.cell_count(d));
            human << "C_" << d << ": " << X.cell_count(d) << " cells\n";
        }
        const bool free = X.action && X.action_is_free();
        human << "euler characteristic " << X.euler_characteristic() << '\n'
              << "action: " << (X.action ? (free ? "free" : "not free") : "none") << '\n'
              << "verify: " << (check ? "pass" : "fail: " + check.detail) << '\n';
        emit(g,
             Json{{"cells", cells},
                  {"euler_characteristic", X.euler_characteristic()},
                  {"action", X.action ? (free ? "free" : "not free") : "none"},
                  {"status", check ? "pass" : "fail"},
                  {"details", check.detail}},
             human.str());
        if (!check)
            result = exit_fail;
    });

    // homology
    auto * hm = app.add_subcommand("homology", "integral homology of a cell complex");
    ComplexOptions hm_opts;
    add_complex_options(hm, hm_opts);
    hm->callback([&] {
        const auto X = build_complex(hm_opts);
        if (auto check = X.verify(); !check)
            throw LemmaViolation(check.detail);
        Json groups = Json::array();
        std::ostringstream human;
        for (int d = 0; d <= X.dimension(); ++d) {
            const auto h = homology(X, d);
            groups.push_back(to_json(h));
            human << "H_" << d << " = " << h.to_string() << '\n';
        }
        emit(g, Json{{"homology", groups}}, human.str());
    });

    // bredon
    auto * br = app.add_subcommand("bredon", "Bredon cohomology of a torus with Z_3 action");
    int br_n = 2;
    std::optional<int> br_degree;
    bool br_all = false;
    std::string br_coeff = "M", br_mode = "diagonal", br_csv;
    br->add_option("--n", br_n)->capture_default_str();
    br->add_option("--coeff", br_coeff, "Z, Zcyc, Lambda, M or I")->capture_default_str();
    br->add_option("--mode", br_mode, "diagonal or first-coordinate")->capture_default_str();
    br->add_option("--degree", br_degree);
    br->add_flag("--all-degrees", br_all, "every degree 0..n (the default without --degree)");
    br->add_option("--csv", br_csv, "write n,d,free_rank,torsion");
    br->callback([&] {
        const auto X = torus_cw(br_n, parse_mode(br_mode));
        const auto N = LambdaModule::by_name(br_coeff);
        const auto C = bredon_cochain_complex(equivariant_chain_complex(X), N);
        std::vector<int> degrees;
        if (br_degree && !br_all)
            degrees.push_back(*br_degree);
        else
            for (int d = 0; d <= br_n; ++d)
                degrees.push_back(d);
        std::ostringstream csv, human;
        csv << "n,d,free_rank,torsion\n";
        Json rows = Json::array();
        for (int d : degrees) {
            const auto h = cohomology(C, d);
            csv << br_n << ',' << d << ',' << h.free_rank << ',' << h.torsion_string() << '\n';
            human << "H^" << d << "_Z3(T^" << br_n << "; " << N.name() << ") = " << h.to_string() << '\n';
            Json row{{"n", br_n}, {"d", d}};
            const auto group = to_json(h);
            for (const auto & [k, v] : group.items())
                row[k] = v;
            rows.push_back(row);
        }
        if (!br_csv.empty())
            write_text_file(br_csv, csv.str());
        emit(g, Json{{"coefficients", N.name()}, {"mode", br_mode}, {"rows", rows}}, human.str());
    });

    // degree
    auto * dg = app.add_subcommand("degree", "degree vector of a monomial equivariant chain map");
    std::string dg_alpha;
    std::optional<std::uint64_t> dg_seed;
    std::string dg_out;
    dg->add_option("--alpha", dg_alpha, "exponents such as \"2,-1\"")->required();
    dg->add_option("--perturb-seed", dg_seed, "apply a seeded equivariant chain homotopy first");
    dg->add_option("--out", dg_out, "write the chain map as JSON");
    dg->callback([&] {
        const MonomialSpec alpha(parse_ints(dg_alpha));
        auto F = monomial_chain_map(alpha);
        if (dg_seed)
            F = chain_homotopy_perturb(F, *dg_seed);
        const auto check = verify_chain_map(F);
        const auto gamma = gamma_vector(F);
        if (!dg_out.empty())
            write_json_file(dg_out, to_json(F));
        std::ostringstream human;
        human << "alpha " << alpha.to_string() << '\n' << "degrees (";
        for (std::size_t i = 0; i < gamma.degrees.size(); ++i)
            human << (i ? "," : "") << gamma.degrees[i];
        human << ")\n"
              << "degree sum = 1 mod 3: " << (gamma.valid ? "yes" : "no") << '\n'
              << "[" << (check ? "pass" : "fail") << "] chain map commutes with boundary and omega";
        if (!check)
            human << "  " << check.detail;
        human << '\n';
        emit(g,
             Json{{"alpha", alpha.exponents()},
                  {"degrees", gamma.degrees},
                  {"valid", gamma.valid},
                  {"status", check ? "pass" : "fail"},
                  {"details", check.detail}},
             human.str());
        if (!check)
            result = exit_fail;
    });

    // verify
    auto * vf = app.add_subcommand("verify", "run a verification suite");
    std::string vf_suite = "all", vf_fault = "none", vf_out;
    int vf_jobs = 1;
    vf->add_option("--suite", vf_suite)->check(CLI::IsMember(suite_names()))->capture_default_str();
    vf->add_option("--jobs", vf_jobs, "parallel checks")->check(CLI::Range(1, 64))->capture_default_str();
    vf->add_option("--fault", vf_fault, "inject a fault: none or y2-sign")
        ->check(CLI::IsMember({"none", "y2-sign"}))
        ->capture_default_str();
    vf->add_option("--out", vf_out, "write the report as JSON");
    vf->callback([&] {
        SuiteOptions opts;
        opts.jobs = vf_jobs;
        opts.y2_fault = vf_fault == "y2-sign" ? Y2Fault::flipped_disc_sign : Y2Fault::none;
        const auto report = run_suite(vf_suite, opts);
        if (!vf_out.empty())
            write_json_file(vf_out, to_json(report, g.timing));
        emit(g, to_json(report, g.timing), format_report(report, g.timing));
        if (!report.passed())
            result = exit_fail;
    });

    // export
    auto * ex = app.add_subcommand("export", "write core objects as JSON, DOT or CSV");
    std::string ex_kind = "structure", ex_name = "lo3", ex_alpha = "1", ex_out;
    ComplexOptions ex_opts;
    ex->add_option("--kind", ex_kind, "structure, complex, chain-map or reconfig-dot")
        ->check(CLI::IsMember({"structure", "complex", "chain-map", "reconfig-dot"}))
        ->capture_default_str();
    ex->add_option("--name", ex_name, "structure name or JSON file")->capture_default_str();
    ex->add_option("--alpha", ex_alpha, "chain map exponents")->capture_default_str();
    ex->add_option("--complex", ex_opts.kind, "hom, l4, y2 or torus")
        ->check(CLI::IsMember({"hom", "l4", "y2", "torus"}))
        ->capture_default_str();
    ex->add_option("--from", ex_opts.from)->capture_default_str();
    ex->add_option("--to", ex_opts.to)->capture_default_str();
    ex->add_option("--n", ex_opts.n)->capture_default_str();
    ex->add_option("--mode", ex_opts.mode)->capture_default_str();
    ex->add_option("--out", ex_out, "output file")->required();
    ex->callback([&] {
        if (ex_kind == "structure")
            write_json_file(ex_out, to_json(named_structure(ex_name)));
        else if (ex_kind == "complex")
            write_json_file(ex_out, to_json(build_complex(ex_opts)));
        else if (ex_kind == "chain-map")
            write_json_file(ex_out, to_json(monomial_chain_map(MonomialSpec(parse_ints(ex_alpha)))));
        else
            write_text_file(ex_out, to_dot(reconfig_graph(enumerate_polymorphisms(make_lo(3), make_lo(4), 2).items)));
        emit(g, Json{{"kind", ex_kind}, {"path", ex_out}}, "wrote " + ex_out + '\n');
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }
    return result;
}

} // namespace

int main(int argc, char ** argv)
{
    try {
        return run(argc, argv);
    } catch (const SizeLimitError & e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return exit_resource;
    } catch (const InvalidParameter & e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_fail;
    }
}
