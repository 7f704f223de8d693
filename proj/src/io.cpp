#include <pcsp/errors.hpp>
#include <pcsp/io.hpp>

#include <fstream>
#include <limits>
#include <sstream>

namespace pcsp {

namespace {

template <class F>
auto parsing(const char * what, F && f)
{
    try {
        return f();
    } catch (const nlohmann::json::exception & e) {
        throw IoError(std::string("malformed ") + what + ": " + e.what());
    }
}

const Json & body_of(const Json & j, const std::string & kind)
{
    if (j.contains("kind"))
        expect_document(j, kind);
    return j;
}

} // namespace

Json document(const std::string & kind, const Json & body)
{
    Json j;
    j["kind"] = kind;
    j["version"] = schema_version;
    for (const auto & [key, value] : body.items())
        j[key] = value;
    return j;
}

void expect_document(const Json & j, const std::string & kind)
{
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string() || j["kind"] != kind)
        throw IoError("expected a document of kind " + kind);
    if (!j.contains("version") || j["version"] != schema_version)
        throw IoError("unsupported " + kind + " document version");
}

Json to_json(const RelStructure & A)
{
    Json rels = Json::array();
    for (const auto & r : A.relations())
        rels.push_back(Json{{"name", r.name}, {"arity", r.arity}, {"tuples", r.tuples}});
    return document("structure", Json{{"domain_size", A.domain_size()}, {"relations", rels}});
}

RelStructure structure_from_json(const Json & j)
{
    return parsing("structure", [&] {
        const auto & b = body_of(j, "structure");
        std::vector<Relation> rels;
        for (const auto & r : b.at("relations"))
            rels.push_back(Relation{r.at("name").get<std::string>(), r.at("arity").get<std::size_t>(),
                                    r.at("tuples").get<std::vector<Tuple>>()});
        return RelStructure(b.at("domain_size").get<int>(), std::move(rels));
    });
}

Json to_json(const FunctionTable & f)
{
    return Json{{"arity", f.arity()}, {"in_domain", f.in_domain()}, {"out_domain", f.out_domain()}, {"table", f.values()}};
}

FunctionTable function_table_from_json(const Json & j)
{
    return parsing("function table", [&] {
        return FunctionTable(j.at("arity").get<int>(), j.at("in_domain").get<int>(), j.at("out_domain").get<int>(),
                             j.at("table").get<std::vector<int>>());
    });
}

Json to_json(const std::vector<FunctionTable> & tables)
{
    Json a = Json::array();
    for (const auto & f : tables)
        a.push_back(to_json(f));
    return a;
}

std::vector<FunctionTable> function_tables_from_json(const Json & j)
{
    if (!j.is_array())
        throw IoError("expected an array of function tables");
    std::vector<FunctionTable> out;
    for (const auto & f : j)
        out.push_back(function_table_from_json(f));
    return out;
}

Json to_json(const SparseMatrix & m)
{
    Json entries = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto & [r, v] : m.column(c))
            entries.push_back(Json::array({r, c, v}));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

SparseMatrix sparse_matrix_from_json(const Json & j)
{
    return parsing("sparse matrix", [&] {
        SparseMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
        for (const auto & e : j.at("entries")) {
            const auto r = e.at(0).get<std::size_t>();
            const auto c = e.at(1).get<std::size_t>();
            if (r >= m.rows() || c >= m.cols())
                throw IoError("matrix entry out of range");
            m.add(r, c, e.at(2).get<std::int64_t>());
        }
        return m;
    });
}

Json to_json(const CWComplexZ & X)
{
    Json boundary = Json::array();
    for (const auto & b : X.boundary)
        boundary.push_back(to_json(b));
    Json action = nullptr;
    if (X.action) {
        action = Json::array();
        for (const auto & dim : *X.action) {
            Json perm = Json::array();
            for (const auto & s : dim)
                perm.push_back(Json::array({s.target, s.sign}));
            action.push_back(perm);
        }
    }
    return document("cw_complex", Json{{"cells", X.cells}, {"boundary", boundary}, {"action", action}});
}

CWComplexZ cw_complex_from_json(const Json & j)
{
    expect_document(j, "cw_complex");
    return parsing("cw complex", [&] {
        CWComplexZ X;
        X.cells = j.at("cells").get<std::vector<std::vector<std::string>>>();
        for (const auto & b : j.at("boundary"))
            X.boundary.push_back(sparse_matrix_from_json(b));
        if (!j.at("action").is_null()) {
            std::vector<CellAction> action;
            for (const auto & dim : j.at("action")) {
                CellAction a;
                for (const auto & s : dim)
                    a.push_back(SignedCell{s.at(0).get<std::size_t>(), s.at(1).get<int>()});
                action.push_back(std::move(a));
            }
            X.action = std::move(action);
        }
        if (auto check = X.verify(); !check)
            throw IoError("invalid cw complex: " + check.detail);
        return X;
    });
}

Json to_json(const EquivariantChainMap & F)
{
    Json maps = Json::array();
    for (const auto & m : F.F)
        maps.push_back(to_json(m));
    return document("chain_map", Json{{"n", F.n}, {"F", maps}});
}

EquivariantChainMap chain_map_from_json(const Json & j)
{
    expect_document(j, "chain_map");
    return parsing("chain map", [&] {
        EquivariantChainMap F;
        F.n = j.at("n").get<int>();
        const auto & maps = j.at("F");
        if (maps.size() != 3)
            throw IoError("a chain map has three components");
        for (std::size_t d = 0; d < 3; ++d)
            F.F[d] = sparse_matrix_from_json(maps[d]);
        return F;
    });
}

Json to_json(const AbelianGroup & G)
{
    Json torsion = Json::array();
    for (const auto & t : G.torsion) {
        if (t <= std::numeric_limits<std::int64_t>::max())
            torsion.push_back(static_cast<std::int64_t>(t));
        else
            torsion.push_back(t.str());
    }
    return Json{{"free_rank", G.free_rank}, {"torsion", torsion}, {"group", G.to_string()}};
}

void write_text_file(const std::filesystem::path & path, const std::string & text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << text;
    if (!out)
        throw IoError("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_json_file(const std::filesystem::path & path, const Json & j)
{
    write_text_file(path, j.dump(2) + "\n");
}

Json read_json_file(const std::filesystem::path & path)
{
    const auto text = read_text_file(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception & e) {
        throw IoError("invalid JSON in " + path.string() + ": " + e.what());
    }
}

} // namespace pcsp
