#include <pcsp/equivariant.hpp>
#include <pcsp/errors.hpp>
#include <pcsp/homology.hpp>
#include <pcsp/minions.hpp>
#include <pcsp/reconfig.hpp>
#include <pcsp/solver.hpp>
#include <pcsp/verify.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace pcsp {

namespace {

struct Check {
    std::string id;
    std::string tag;
    std::function<CheckResult()> run;
};

CheckResult expect(bool ok, const std::string & detail)
{
    return {ok, detail};
}

std::size_t binom(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

AbelianGroup z3_power(std::size_t r)
{
    return AbelianGroup{0, std::vector<Integer>(r, 3)};
}

std::string groups(const std::vector<AbelianGroup> & gs)
{
    std::string s = "(";
    for (std::size_t i = 0; i < gs.size(); ++i)
        s += (i ? ", " : "") + gs[i].to_string();
    return s + ")";
}

const std::vector<FunctionTable> & binary_polymorphisms()
{
    static const auto polys = enumerate_polymorphisms(make_lo(3), make_lo(4), 2).items;
    return polys;
}

const ReconfigGraph & binary_graph()
{
    static const auto g = reconfig_graph(binary_polymorphisms());
    return g;
}

int mod3(int v)
{
    return ((v % 3) + 3) % 3;
}

std::vector<std::vector<int>> exponent_vectors(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> a(static_cast<std::size_t>(n), -2);
    while (true) {
        int sum = 0;
        for (int v : a)
            sum += v;
        if (mod3(sum) == 1)
            out.push_back(a);
        std::size_t k = 0;
        while (k < a.size() && a[k] == 2)
            a[k++] = -2;
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
        r.push_back(mod3(v));
    return r;
}

/// Every colour of f occupies a single row or a single column.
bool row_or_column(const FunctionTable & f)
{
    for (int c = 1; c <= f.out_domain(); ++c) {
        std::set<int> rows, cols;
        for (int x = 1; x <= 3; ++x)
            for (int y = 1; y <= 3; ++y)
                if (f({x, y}) == c) {
                    rows.insert(x);
                    cols.insert(y);
                }
        if (rows.size() > 1 && cols.size() > 1)
            return false;
    }
    return true;
}

std::vector<Check> combinatorics_checks()
{
    std::vector<Check> checks;
    checks.push_back({"hom(ott, LO_3) = the 15 unique-max triples", "hom-ott-lo3", [] {
        const auto homs = enumerate_homomorphisms(make_ott(), make_lo(3)).items;
        std::set<std::vector<int>> got, want;
        for (const auto & f : homs)
            got.insert(f.values());
        const auto lo3 = make_lo(3);
        for (const auto & t : lo3.tuples(0))
            want.insert(t);
        return expect(got == want && homs.size() == 15, std::to_string(homs.size()) + " homomorphisms");
    }});
    checks.push_back({"Pol^(1)(LO_3, LO_4) = 4 increasing maps", "unary-polymorphisms", [] {
        const auto polys = enumerate_polymorphisms(make_lo(3), make_lo(4), 1).items;
        bool increasing = std::all_of(polys.begin(), polys.end(), [](const FunctionTable & f) {
            return f.at(0) < f.at(1) && f.at(1) < f.at(2);
        });
        return expect(polys.size() == 4 && increasing, std::to_string(polys.size()) + " unary polymorphisms");
    }});
    checks.push_back({"|Pol^(2)(LO_3, LO_4)| = 68", "binary-polymorphisms", [] {
        const auto n = binary_polymorphisms().size();
        return expect(n == 68, std::to_string(n) + " binary polymorphisms");
    }});
    checks.push_back({"trash-colour decomposition of every binary polymorphism", "trash-colour", [] {
        for (const auto & f : binary_polymorphisms()) {
            try {
                trash_decompose(f);
            } catch (const Error & e) {
                return CheckResult::fail(f.to_string() + ": " + e.what());
            }
            if (!row_or_column(f))
                return CheckResult::fail(f.to_string() + " has a colour in two rows and two columns");
        }
        return CheckResult::pass();
    }});
    checks.push_back({"reduction to essentially unary maps", "reduce-to-unary", [] {
        for (const auto & f : binary_polymorphisms()) {
            const auto path = reduce_to_unary(f);
            const auto t = trash_decompose(f);
            if (path.size() != t.occurrences.size() + 1)
                return CheckResult::fail(f.to_string() + ": path length differs from trash count");
            for (std::size_t k = 0; k < path.size(); ++k) {
                if (!is_lo34_polymorphism(path[k]))
                    return CheckResult::fail(f.to_string() + ": step " + std::to_string(k) + " is not a polymorphism");
                if (k > 0 && !differ_in_one(path[k - 1], path[k]))
                    return CheckResult::fail(f.to_string() + ": step " + std::to_string(k) + " is not a one-value move");
            }
            if (!is_essentially_unary(path.back()))
                return CheckResult::fail(f.to_string() + ": path does not end essentially unary");
        }
        return CheckResult::pass();
    }});
    checks.push_back({"components = 2", "reconfiguration-components", [] {
        const auto & g = binary_graph();
        return expect(g.component_count == 2, std::to_string(g.component_count) + " components");
    }});
    checks.push_back({"chi_binary is constant per component with values {1, 2}", "chi-binary", [] {
        const auto & g = binary_graph();
        std::map<std::size_t, std::set<int>> values;
        for (std::size_t v = 0; v < g.vertices.size(); ++v)
            values[g.component[v]].insert(chi_binary(g.vertices[v]));
        std::set<int> all;
        for (const auto & [c, vs] : values) {
            if (vs.size() != 1)
                return CheckResult::fail("component " + std::to_string(c) + " has several chi values");
            all.insert(*vs.begin());
        }
        return expect(all == std::set<int>{1, 2}, "values per component distinct and equal to {1, 2}");
    }});
    checks.push_back({"4 essentially unary maps per component", "unary-per-component", [] {
        const auto & g = binary_graph();
        std::map<std::size_t, std::vector<int>> coords;
        for (std::size_t v = 0; v < g.vertices.size(); ++v)
            if (auto i = is_essentially_unary(g.vertices[v]))
                coords[g.component[v]].push_back(*i);
        std::set<int> seen;
        for (const auto & [c, is] : coords) {
            if (is.size() != 4 || std::count(is.begin(), is.end(), is.front()) != 4)
                return CheckResult::fail("component " + std::to_string(c) + " has the wrong essentially unary maps");
            seen.insert(is.front());
        }
        return expect(coords.size() == 2 && seen == std::set<int>{1, 2}, "coordinates 1 and 2");
    }});
    checks.push_back({"closure of every non-projection contains (2,2)", "subminion-closure", [] {
        const AffineMapZ3 target({2, 2});
        std::size_t count = 0;
        for (int n = 1; n <= 4; ++n)
            for (const auto & a : all_affine_maps(n)) {
                if (is_projection(a))
                    continue;
                ++count;
                if (!subminion_closure({a}, 4).contains(target))
                    return CheckResult::fail("closure of " + a.to_string() + " misses (2,2)");
            }
        return CheckResult{true, std::to_string(count) + " non-projections"};
    }});
    checks.push_back({"closure of projections is projections only", "subminion-closure", [] {
        std::set<AffineMapZ3> seed;
        for (int n = 1; n <= 4; ++n)
            for (int i = 1; i <= n; ++i)
                seed.insert(AffineMapZ3::projection(n, i));
        const auto closure = subminion_closure(seed, 4);
        return expect(closure == seed, std::to_string(closure.size()) + " elements");
    }});
    checks.push_back({"gadget reduction agrees on graphs with at most 5 vertices", "graph-gadget", [] {
        std::size_t count = 0;
        for (int n = 1; n <= 5; ++n) {
            std::vector<std::pair<int, int>> pairs;
            for (int u = 1; u <= n; ++u)
                for (int v = u + 1; v <= n; ++v)
                    pairs.emplace_back(u, v);
            for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
                std::vector<std::pair<int, int>> edges;
                for (std::size_t e = 0; e < pairs.size(); ++e)
                    if (mask >> e & 1)
                        edges.push_back(pairs[e]);
                const auto G = make_graph(n, edges);
                const auto I = graph_to_lo_instance(G);
                for (int k : {3, 4}) {
                    ++count;
                    const bool colourable = exists_homomorphism(G, make_complete_graph(k - 1)).has_value();
                    const bool lo = exists_homomorphism(I, make_lo(k)).has_value();
                    if (colourable != lo)
                        return CheckResult::fail("graph on " + std::to_string(n) + " vertices, mask " +
                                                 std::to_string(mask) + ", k = " + std::to_string(k));
                }
            }
        }
        return CheckResult{true, std::to_string(count) + " instances"};
    }});
    return checks;
}

RelStructure with_constant_tuple()
{
    const auto lo3 = make_lo(3);
    auto tuples = lo3.tuples(0);
    tuples.push_back({1, 1, 1});
    return RelStructure(3, {Relation{"R", 3, tuples}});
}

std::vector<Check> complexes_checks(const SuiteOptions & options)
{
    std::vector<Check> checks;
    checks.push_back({"invariant nine-cycle in Hom(ott, LO_3)", "invariant-cycle",
                      [] { return check_invariant_cycle(invariant_cycle()); }});
    for (int k : {3, 4})
        checks.push_back({"omega acts freely on Hom(ott, LO_" + std::to_string(k) + ")", "free-action", [k] {
            const auto H = hom_complex(make_ott(), make_lo(k), std::nullopt, 1);
            return expect(H.action_is_free(), std::to_string(H.vertices.size()) + " multihomomorphisms");
        }});
    checks.push_back({"a constant tuple breaks freeness", "negative-control-freeness", [] {
        const auto H = hom_complex(make_ott(), with_constant_tuple(), std::nullopt, 1);
        return expect(!H.action_is_free(), std::to_string(H.fixed_vertices().size()) + " fixed vertices");
    }});
    for (int k : {3, 4})
        checks.push_back({"order complex and one-value moves agree for (ott, LO_" + std::to_string(k) + ")",
                          "components-match", [k] { return expect(complex_components_match(make_ott(), make_lo(k)), ""); }});
    checks.push_back({"phi is total, monotone, equivariant and face-valid", "phi-map", [] {
        const auto ms = enumerate_multihomomorphisms(make_ott(), make_lo(4)).items;
        const auto omega = CyclicAction::ott_shift();
        std::vector<L4Face> images;
        for (const auto & m : ms) {
            try {
                images.push_back(phi_map(m));
            } catch (const Error & e) {
                return CheckResult::fail(m.to_string() + ": " + e.what());
            }
            if (!is_l4_face(images.back()))
                return CheckResult::fail(m.to_string() + " maps outside L_4");
            if (phi_map(act_on_multihom(omega, m)) != act_on_l4_face(images.back()))
                return CheckResult::fail(m.to_string() + ": phi is not equivariant");
        }
        for (std::size_t a = 0; a < ms.size(); ++a)
            for (std::size_t b = 0; b < ms.size(); ++b)
                if (ms[a].subset_of(ms[b]) &&
                    !std::includes(images[b].begin(), images[b].end(), images[a].begin(), images[a].end()))
                    return CheckResult::fail(ms[a].to_string() + " <= " + ms[b].to_string() + " but phi is not monotone");
        return CheckResult{true, std::to_string(ms.size()) + " multihomomorphisms"};
    }});
    checks.push_back({"Y_2 boundary squares to zero", "y2-boundary",
                      [fault = options.y2_fault] { return make_y2(fault).verify(); }});
    checks.push_back({"torus complexes are valid for n <= 4", "torus-complex", [] {
        for (int n = 1; n <= 4; ++n)
            for (auto mode : {TorusMode::diagonal, TorusMode::first_coordinate}) {
                const auto T = torus_cw(n, mode);
                if (auto r = T.verify(); !r)
                    return CheckResult::fail("T^" + std::to_string(n) + ": " + r.detail);
                if (!T.action_is_free())
                    return CheckResult::fail("T^" + std::to_string(n) + ": action is not free");
            }
        return CheckResult::pass();
    }});
    return checks;
}

std::vector<Check> homology_checks(const SuiteOptions & options)
{
    std::vector<Check> checks;
    checks.push_back({"H(Hom(ott, LO_3)) = (Z, Z^4, 0)", "hom-ott-lo3-homology", [] {
        const auto X = hom_complex(make_ott(), make_lo(3)).to_cw();
        std::vector<AbelianGroup> h{homology(X, 0), homology(X, 1), homology(X, 2)};
        return expect(h == std::vector<AbelianGroup>{{1, {}}, {4, {}}, {0, {}}}, groups(h));
    }});
    checks.push_back({"H(L_4) = (Z, 0, Z^8)", "l4-homology", [] {
        const auto X = order_complex(l4_poset()).to_cw();
        std::vector<AbelianGroup> h{homology(X, 0), homology(X, 1), homology(X, 2)};
        return expect(h == std::vector<AbelianGroup>{{1, {}}, {0, {}}, {8, {}}}, groups(h));
    }});
    checks.push_back({"H_2(Y_2) = Z^2", "y2-homology", [fault = options.y2_fault] {
        const auto Y = make_y2(fault);
        if (auto r = Y.verify(); !r)
            return CheckResult::fail(r.detail);
        const auto h = homology(Y, 2);
        return expect(h == AbelianGroup{2, {}}, h.to_string());
    }});
    checks.push_back({"omega on H_2(Y_2) = [[0,-1],[1,-1]]", "y2-omega", [fault = options.y2_fault] {
        const auto Y = make_y2(fault);
        if (auto r = Y.verify(); !r)
            return CheckResult::fail(r.detail);
        const auto W = h2_action_matrix(Y);
        const bool relation = (W * W + W + IntMatrix::identity(2)).is_zero();
        return expect(W == IntMatrix{{0, -1}, {1, -1}} && relation, W.to_string());
    }});
    checks.push_back({"Ann(M) = I", "annihilator",
                      [] { return expect(annihilator_is_ideal(LambdaModule::m_module()), "bounded grid |n_i| <= 3"); }});
    return checks;
}

std::vector<Check> bredon_checks()
{
    std::vector<Check> checks;
    for (auto mode : {TorusMode::diagonal, TorusMode::first_coordinate})
        for (int n = 1; n <= 5; ++n)
            for (int d = 1; d <= n; ++d) {
                const auto k = binom(n - 1, d - 1);
                std::string id = "H" + std::to_string(d) + "-T" + std::to_string(n) + "-M = Z_3^" + std::to_string(k);
                if (mode == TorusMode::first_coordinate)
                    id += " (first-coordinate action)";
                checks.push_back({id, "bredon-m", [n, d, k, mode] {
                    const auto h = bredon_cohomology(torus_cw(n, mode), LambdaModule::m_module(), d);
                    return expect(h == z3_power(k), h.to_string());
                }});
            }
    for (auto mode : {TorusMode::diagonal, TorusMode::first_coordinate})
        for (int n = 1; n <= 5; ++n) {
            std::string id = "T" + std::to_string(n) + " with Z and Z_cyc coefficients gives Z^C(n,d)";
            if (mode == TorusMode::first_coordinate)
                id += " (first-coordinate action)";
            checks.push_back({id, "bredon-sanity", [n, mode] {
                const auto X = torus_cw(n, mode);
                const auto E = equivariant_chain_complex(X);
                for (const auto & N : {LambdaModule::trivial(), LambdaModule::cyclic()}) {
                    const auto C = bredon_cochain_complex(E, N);
                    for (int d = 0; d <= n; ++d) {
                        const auto h = cohomology(C, d);
                        if (h != AbelianGroup{binom(n, d), {}})
                            return CheckResult::fail(N.name() + " in degree " + std::to_string(d) + ": " + h.to_string());
                    }
                }
                return CheckResult::pass();
            }});
        }
    for (int n = 1; n <= 5; ++n)
        checks.push_back({"coker p* agrees with H_Z3(T" + std::to_string(n) + "; M)", "pstar-cokernel", [n] {
            for (int d = 1; d <= n; ++d) {
                const auto c = quotient_pstar_cokernel(n, d);
                if (c != z3_power(binom(n - 1, d - 1)))
                    return CheckResult::fail("degree " + std::to_string(d) + ": " + c.to_string());
            }
            return CheckResult::pass();
        }});
    return checks;
}

std::vector<Check> degrees_checks()
{
    std::vector<Check> checks;
    for (int n = 1; n <= 3; ++n) {
        const std::string suffix = " for n = " + std::to_string(n);
        checks.push_back({"deg_i(m_alpha) = alpha_i mod 3" + suffix, "monomial-degree", [n] {
            std::size_t count = 0;
            for (const auto & a : exponent_vectors(n)) {
                const auto F = monomial_chain_map(MonomialSpec(a));
                if (auto r = verify_chain_map(F); !r)
                    return CheckResult::fail(MonomialSpec(a).to_string() + ": " + r.detail);
                const auto g = gamma_vector(F);
                if (!g.valid || g.degrees != residues(a))
                    return CheckResult::fail(MonomialSpec(a).to_string() + " has the wrong degree");
                ++count;
            }
            return CheckResult{true, std::to_string(count) + " exponent vectors"};
        }});
        checks.push_back({"3^(n-1) distinct degree vectors" + suffix, "degree-injectivity", [n] {
            std::set<std::vector<int>> classes, degrees;
            for (const auto & a : exponent_vectors(n)) {
                classes.insert(residues(a));
                degrees.insert(gamma_vector(monomial_chain_map(MonomialSpec(a))).degrees);
            }
            std::size_t expected = 1;
            for (int k = 1; k < n; ++k)
                expected *= 3;
            return expect(classes.size() == expected && degrees.size() == expected,
                          std::to_string(degrees.size()) + " degree vectors");
        }});
        checks.push_back({"degree invariance under 100 homotopies per base map" + suffix, "homotopy-invariance", [n] {
            std::size_t count = 0;
            for (const auto & a : exponent_vectors(n)) {
                const auto F = monomial_chain_map(MonomialSpec(a));
                const auto base = gamma_vector(F).degrees;
                for (std::uint64_t seed = 0; seed < 100; ++seed) {
                    const auto h = random_equivariant_homotopy(n, seed);
                    if (!is_equivariant(h))
                        return CheckResult::fail("homotopy with seed " + std::to_string(seed) + " is not equivariant");
                    const auto G = apply_homotopy(F, h);
                    if (auto r = verify_chain_map(G); !r)
                        return CheckResult::fail(MonomialSpec(a).to_string() + ", seed " + std::to_string(seed) + ": " + r.detail);
                    if (gamma_vector(G).degrees != base)
                        return CheckResult::fail(MonomialSpec(a).to_string() + ", seed " + std::to_string(seed) + " changes the degree");
                    ++count;
                }
            }
            return CheckResult{true, std::to_string(count) + " perturbations"};
        }});
    }
    checks.push_back({"gamma commutes with minors [3]->[2] and [2]->[1]", "gamma-minors", [] {
        for (auto [n, m] : {std::pair{3, 2}, std::pair{2, 1}})
            for (const auto & a : exponent_vectors(n)) {
                const MonomialSpec alpha(a);
                const auto g = gamma_vector(monomial_chain_map(alpha));
                for (const auto & pi : all_minor_maps(n, m)) {
                    const auto minor = gamma_vector(monomial_chain_map(monomial_minor(alpha, pi)));
                    if (!minor.map || *minor.map != affine_minor(*g.map, pi))
                        return CheckResult::fail(alpha.to_string() + " under " + pi.to_string());
                }
            }
        return CheckResult::pass();
    }});
    checks.push_back({"gamma on monomial classes is a minion homomorphism", "gamma-minors", [] {
        std::map<AffineMapZ3, AffineMapZ3> xi;
        for (int n = 1; n <= 3; ++n)
            for (const auto & a : all_affine_maps(n))
                xi.emplace(a, *gamma_vector(monomial_chain_map(MonomialSpec(a.coefficients()))).map);
        const auto violation = check_minor_preservation<AffineMapZ3, AffineMapZ3>(
            xi, [](const AffineMapZ3 & a) { return a.arity(); }, affine_minor, affine_minor, 3,
            [](const AffineMapZ3 & a) { return a.to_string(); });
        if (violation)
            return CheckResult::fail(violation->key.to_string() + " under " + violation->pi.to_string());
        return CheckResult{true, std::to_string(xi.size()) + " classes"};
    }});
    return checks;
}

std::vector<Check> checks_for(const std::string & name, const SuiteOptions & options)
{
    if (name == "combinatorics")
        return combinatorics_checks();
    if (name == "complexes")
        return complexes_checks(options);
    if (name == "homology")
        return homology_checks(options);
    if (name == "bredon")
        return bredon_checks();
    if (name == "degrees")
        return degrees_checks();
    if (name == "all") {
        std::vector<Check> all;
        for (const auto & s : suite_names())
            if (s != "all")
                for (auto & c : checks_for(s, options))
                    all.push_back(std::move(c));
        return all;
    }
    throw InvalidParameter("unknown suite " + name);
}

CheckRecord run_check(const Check & check)
{
    CheckRecord rec{check.id, check.tag, CheckStatus::pass, 0, {}};
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto r = check.run();
        rec.status = r.ok ? CheckStatus::pass : CheckStatus::fail;
        rec.details = r.detail;
    } catch (const std::exception & e) {
        rec.status = CheckStatus::fail;
        rec.details = std::string("error: ") + e.what();
    }
    rec.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

} // namespace

bool VerificationReport::passed() const
{
    return failures() == 0;
}

std::size_t VerificationReport::failures() const
{
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const CheckRecord & c) { return c.status == CheckStatus::fail; }));
}

const std::vector<std::string> & suite_names()
{
    static const std::vector<std::string> names{"combinatorics", "complexes", "homology", "bredon", "degrees", "all"};
    return names;
}

VerificationReport run_suite(const std::string & name, const SuiteOptions & options)
{
    const auto checks = checks_for(name, options);
    VerificationReport report{name, std::vector<CheckRecord>(checks.size())};
    const auto jobs = static_cast<std::size_t>(std::clamp(options.jobs, 1, 64));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < checks.size(); i = next++)
            report.checks[i] = run_check(checks[i]);
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(jobs, checks.size()); ++t)
        pool.emplace_back(worker);
    worker();
    for (auto & t : pool)
        t.join();
    return report;
}

const char * to_string(CheckStatus s)
{
    return s == CheckStatus::pass ? "pass" : "fail";
}

std::string format_report(const VerificationReport & report, bool timing)
{
    std::ostringstream out;
    for (const auto & c : report.checks) {
        out << '[' << to_string(c.status) << "] " << c.id << "  {" << c.tag << '}';
        if (!c.details.empty())
            out << "  " << c.details;
        if (timing)
            out << "  (" << std::fixed << std::setprecision(3) << c.elapsed << " s)";
        out << '\n';
    }
    out << report.suite << ": " << report.checks.size() - report.failures() << '/' << report.checks.size()
        << " checks passed, status " << (report.passed() ? "pass" : "fail") << '\n';
    return out.str();
}

Json to_json(const VerificationReport & report, bool timing)
{
    Json checks = Json::array();
    for (const auto & c : report.checks) {
        Json j{{"id", c.id}, {"tag", c.tag}, {"status", to_string(c.status)}};
        if (timing)
            j["elapsed"] = c.elapsed;
        j["details"] = c.details;
        checks.push_back(j);
    }
    return document("verification_report",
                    Json{{"suite", report.suite}, {"status", report.passed() ? "pass" : "fail"}, {"checks", checks}});
}

} // namespace pcsp
