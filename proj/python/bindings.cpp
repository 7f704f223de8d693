#include <pcsp/equivariant.hpp>
#include <pcsp/errors.hpp>
#include <pcsp/homology.hpp>
#include <pcsp/io.hpp>
#include <pcsp/minions.hpp>
#include <pcsp/reconfig.hpp>
#include <pcsp/solver.hpp>
#include <pcsp/verify.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pcsp;

namespace {

using Table = std::vector<int>;

py::object to_python_int(const Integer & v)
{
    return py::module_::import("builtins").attr("int")(v.str());
}

py::tuple group(const AbelianGroup & g)
{
    py::list torsion;
    for (const auto & t : g.torsion)
        torsion.append(to_python_int(t));
    return py::make_tuple(g.free_rank, torsion);
}

py::list homology_list(const CWComplexZ & X)
{
    py::list out;
    for (int d = 0; d <= X.dimension(); ++d)
        out.append(group(homology(X, d)));
    return out;
}

std::vector<Table> tables(const std::vector<FunctionTable> & fs)
{
    std::vector<Table> out;
    for (const auto & f : fs)
        out.push_back(f.values());
    return out;
}

TorusMode parse_mode(const std::string & s)
{
    if (s == "diagonal")
        return TorusMode::diagonal;
    if (s == "first-coordinate")
        return TorusMode::first_coordinate;
    throw InvalidParameter("unknown torus mode " + s);
}

FunctionTable binary_lo34(const Table & t)
{
    return FunctionTable(2, 3, 4, t);
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Polymorphisms, minions, reconfiguration and equivariant topology for PCSP(LO_3, LO_4)";

    static py::exception<Error> base(m, "PcspError");
    py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
    py::register_exception<SizeLimitError>(m, "SizeLimitError", base.ptr());
    py::register_exception<SignatureMismatch>(m, "SignatureMismatch", base.ptr());
    py::register_exception<LemmaViolation>(m, "LemmaViolation", base.ptr());
    py::register_exception<ComputationError>(m, "ComputationError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    py::class_<RelStructure>(m, "Structure")
        .def_property_readonly("domain_size", &RelStructure::domain_size)
        .def_property_readonly("relation_count", &RelStructure::relation_count)
        .def("tuples", &RelStructure::tuples, py::arg("relation") = 0)
        .def("has_constant_tuple", &RelStructure::has_constant_tuple)
        .def("to_json", [](const RelStructure & A) { return to_json(A).dump(); })
        .def("__eq__", &RelStructure::operator==);

    m.def("lo", &make_lo, py::arg("k"), "LO_k: triples over 1..k with a unique maximum");
    m.def("ott", &make_ott, "the rainbow structure on three elements");
    m.def("complete_graph", &make_complete_graph, py::arg("n"));
    m.def("graph", &make_graph, py::arg("n"), py::arg("edges"));
    m.def("graph_to_lo_instance", &graph_to_lo_instance, py::arg("graph"));
    m.def("structure_from_json", [](const std::string & s) { return structure_from_json(Json::parse(s)); });

    m.def(
        "homomorphisms", [](const RelStructure & X, const RelStructure & B) { return tables(enumerate_homomorphisms(X, B).items); },
        py::arg("source"), py::arg("target"));
    m.def(
        "polymorphisms",
        [](const RelStructure & A, const RelStructure & B, int n) { return tables(enumerate_polymorphisms(A, B, n).items); },
        py::arg("source"), py::arg("target"), py::arg("arity"));
    m.def(
        "exists_homomorphism",
        [](const RelStructure & X, const RelStructure & B) -> std::optional<Table> {
            if (auto f = exists_homomorphism(X, B))
                return f->values();
            return std::nullopt;
        },
        py::arg("source"), py::arg("target"));

    m.def(
        "subminion_closure",
        [](const std::vector<std::vector<int>> & seed, int max_arity) {
            std::set<AffineMapZ3> s;
            for (const auto & a : seed)
                s.insert(AffineMapZ3(a));
            std::vector<std::vector<int>> out;
            for (const auto & a : subminion_closure(s, max_arity))
                out.push_back(a.coefficients());
            return out;
        },
        py::arg("seed"), py::arg("max_arity"));
    m.def(
        "affine_minor",
        [](const std::vector<int> & alpha, int m, const std::vector<int> & pi) {
            return affine_minor(AffineMapZ3(alpha), MinorMap(m, pi)).coefficients();
        },
        py::arg("alpha"), py::arg("m"), py::arg("pi"));

    m.def(
        "reconfiguration",
        [](int arity) {
            const auto g = reconfig_graph(enumerate_polymorphisms(make_lo(3), make_lo(4), arity).items);
            py::dict d;
            d["vertices"] = tables(g.vertices);
            d["edges"] = g.edge_count();
            d["components"] = g.component_count;
            d["component"] = g.component;
            d["dot"] = to_dot(g);
            return d;
        },
        py::arg("arity") = 2, "reconfiguration graph of Pol^(arity)(LO_3, LO_4)");
    m.def("chi_binary", [](const Table & t) { return chi_binary(binary_lo34(t)); }, py::arg("table"));
    m.def("reduce_to_unary", [](const Table & t) { return tables(reduce_to_unary(binary_lo34(t))); }, py::arg("table"));
    m.def("complex_components_match", &complex_components_match, py::arg("source"), py::arg("target"));

    m.def(
        "hom_complex_homology",
        [](const RelStructure & A, const RelStructure & B) { return homology_list(hom_complex(A, B).to_cw()); },
        py::arg("source"), py::arg("target"));
    m.def("l4_homology", [] { return homology_list(order_complex(l4_poset()).to_cw()); });
    m.def("y2_homology", [] { return homology_list(make_y2()); });
    m.def(
        "torus_homology", [](int n, const std::string & mode) { return homology_list(torus_cw(n, parse_mode(mode))); },
        py::arg("n"), py::arg("mode") = "diagonal");
    m.def("h2_omega_matrix", [] {
        const auto W = h2_action_matrix(make_y2());
        std::vector<std::vector<long long>> out(W.rows(), std::vector<long long>(W.cols()));
        for (std::size_t i = 0; i < W.rows(); ++i)
            for (std::size_t j = 0; j < W.cols(); ++j)
                out[i][j] = W(i, j).convert_to<long long>();
        return out;
    });

    m.def(
        "bredon_cohomology",
        [](int n, const std::string & coeff, int d, const std::string & mode) {
            return group(bredon_cohomology(torus_cw(n, parse_mode(mode)), LambdaModule::by_name(coeff), d));
        },
        py::arg("n"), py::arg("coeff"), py::arg("d"), py::arg("mode") = "diagonal");
    m.def(
        "pstar_cokernel", [](int n, int d) { return group(quotient_pstar_cokernel(n, d)); }, py::arg("n"), py::arg("d"));

    m.def(
        "monomial_degree",
        [](const std::vector<int> & alpha, std::optional<std::uint64_t> perturb_seed) {
            auto F = monomial_chain_map(MonomialSpec(alpha));
            if (perturb_seed)
                F = chain_homotopy_perturb(F, *perturb_seed);
            const auto g = gamma_vector(F);
            py::dict d;
            d["degrees"] = g.degrees;
            d["valid"] = g.valid;
            d["chain_map"] = verify_chain_map(F).ok;
            return d;
        },
        py::arg("alpha"), py::arg("perturb_seed") = py::none());

    m.def(
        "run_suite_json",
        [](const std::string & name, int jobs, bool y2_fault) {
            SuiteOptions opts{jobs, y2_fault ? Y2Fault::flipped_disc_sign : Y2Fault::none};
            VerificationReport r;
            {
                py::gil_scoped_release release;
                r = run_suite(name, opts);
            }
            return to_json(r).dump();
        },
        py::arg("name"), py::arg("jobs") = 1, py::arg("y2_fault") = false);
}
