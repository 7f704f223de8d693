#include <pcsp/errors.hpp>
#include <pcsp/reconfig.hpp>
#include <pcsp/solver.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pcsp {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x)
            x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent_[std::max(a, b)] = std::min(a, b);
    }

    /// Labels 0.. numbered by first occurrence.
    std::vector<std::size_t> labels(std::size_t & count)
    {
        std::vector<std::size_t> out(parent_.size());
        std::vector<std::size_t> root_label(parent_.size(), static_cast<std::size_t>(-1));
        count = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            auto r = find(i);
            if (root_label[r] == static_cast<std::size_t>(-1))
                root_label[r] = count++;
            out[i] = root_label[r];
        }
        return out;
    }

private:
    std::vector<std::size_t> parent_;
};

const RelStructure & lo4()
{
    static const RelStructure s = make_lo(4);
    return s;
}

const RelStructure & lo3_squared()
{
    static const RelStructure s = power(make_lo(3), 2);
    return s;
}

void require_binary_lo34(const FunctionTable & f)
{
    if (f.arity() != 2 || f.in_domain() != 3 || f.out_domain() != 4)
        throw SignatureMismatch("expected a binary table [3]^2 -> [4]");
}

std::vector<FunctionTable> increasing_maps()
{
    return {FunctionTable::unary(4, {1, 2, 3}), FunctionTable::unary(4, {1, 2, 4}), FunctionTable::unary(4, {1, 3, 4}),
            FunctionTable::unary(4, {2, 3, 4})};
}

bool decomposes(const FunctionTable & f, int i, const FunctionTable & h, int t)
{
    for (int x1 = 1; x1 <= 3; ++x1)
        for (int x2 = 1; x2 <= 3; ++x2) {
            const int v = f({x1, x2});
            if (v != h.at(static_cast<std::size_t>((i == 1 ? x1 : x2) - 1)) && v != t)
                return false;
        }
    return true;
}

} // namespace

std::size_t ReconfigGraph::edge_count() const
{
    std::size_t twice = 0;
    for (const auto & a : adjacency)
        twice += a.size();
    return twice / 2;
}

std::optional<Tuple> differ_in_one(const FunctionTable & f, const FunctionTable & g)
{
    if (f.arity() != g.arity() || f.in_domain() != g.in_domain() || f.out_domain() != g.out_domain())
        throw SignatureMismatch("tables have different shapes");
    std::optional<std::size_t> cell;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.at(i) != g.at(i)) {
            if (cell)
                return std::nullopt;
            cell = i;
        }
    if (!cell)
        return std::nullopt;
    return decode_tuple(*cell, static_cast<std::size_t>(f.arity()), f.in_domain());
}

Multihom join_multihom(const FunctionTable & f, const FunctionTable & g, const RelStructure & A, const RelStructure & B)
{
    if (!differ_in_one(f, g))
        throw InvalidParameter("tables do not differ in exactly one value");
    auto X = power(A, f.arity());
    if (!is_homomorphism(f.as_unary(), X, B) || !is_homomorphism(g.as_unary(), X, B))
        throw InvalidParameter("join inputs must be polymorphisms");
    std::vector<Multihom::Mask> masks(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        masks[i] = (Multihom::Mask{1} << (f.at(i) - 1)) | (Multihom::Mask{1} << (g.at(i) - 1));
    Multihom m(B.domain_size(), std::move(masks));
    if (!is_multihomomorphism(m, X, B))
        throw LemmaViolation("join of " + f.to_string() + " and " + g.to_string() + " is not a multihomomorphism");
    return m;
}

ReconfigGraph reconfig_graph(std::vector<FunctionTable> polys)
{
    std::sort(polys.begin(), polys.end());
    polys.erase(std::unique(polys.begin(), polys.end()), polys.end());
    for (const auto & f : polys)
        if (f.arity() != polys.front().arity() || f.in_domain() != polys.front().in_domain() ||
            f.out_domain() != polys.front().out_domain())
            throw SignatureMismatch("reconfiguration graph needs tables of one shape");
    ReconfigGraph g;
    const std::size_t n = polys.size();
    g.adjacency.assign(n, {});
    UnionFind uf(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (differ_in_one(polys[a], polys[b])) {
                g.adjacency[a].push_back(b);
                g.adjacency[b].push_back(a);
                uf.unite(a, b);
            }
    for (auto & adj : g.adjacency)
        std::sort(adj.begin(), adj.end());
    g.component = uf.labels(g.component_count);
    g.vertices = std::move(polys);
    return g;
}

TrashDecomposition trash_decompose(const FunctionTable & f)
{
    require_binary_lo34(f);
    std::optional<TrashDecomposition> best;
    for (int i = 1; i <= 2; ++i)
        for (const auto & h : increasing_maps()) {
            int t = 1;
            while (std::find(h.values().begin(), h.values().end(), t) != h.values().end())
                ++t;
            if (!decomposes(f, i, h, t))
                continue;
            TrashDecomposition d{i, h, t, {}};
            for (int x1 = 1; x1 <= 3; ++x1)
                for (int x2 = 1; x2 <= 3; ++x2)
                    if (f({x1, x2}) == t)
                        d.occurrences.push_back({x1, x2});
            if (!best || d.occurrences.size() < best->occurrences.size())
                best = std::move(d);
        }
    if (!best)
        throw LemmaViolation("no trash-colour decomposition for " + f.to_string());
    return *best;
}

bool is_lo34_polymorphism(const FunctionTable & f)
{
    require_binary_lo34(f);
    return is_homomorphism(f.as_unary(), lo3_squared(), lo4());
}

std::vector<FunctionTable> reduce_to_unary(const FunctionTable & f)
{
    if (!is_lo34_polymorphism(f))
        throw InvalidParameter("reduce_to_unary needs a polymorphism LO_3^2 -> LO_4");
    const auto d = trash_decompose(f);
    const int i = d.coordinate;
    auto occ = d.occurrences;
    // Largest x_i first, then the largest other coordinate.
    std::sort(occ.begin(), occ.end(), [i](const Tuple & a, const Tuple & b) {
        const int j = 3 - i;
        if (a[static_cast<std::size_t>(i - 1)] != b[static_cast<std::size_t>(i - 1)])
            return a[static_cast<std::size_t>(i - 1)] > b[static_cast<std::size_t>(i - 1)];
        return a[static_cast<std::size_t>(j - 1)] > b[static_cast<std::size_t>(j - 1)];
    });
    std::vector<FunctionTable> path{f};
    for (const auto & cell : occ) {
        auto values = path.back().values();
        values[encode_tuple(cell, 3)] = d.h.at(static_cast<std::size_t>(cell[static_cast<std::size_t>(i - 1)] - 1));
        FunctionTable next(2, 3, 4, std::move(values));
        if (!is_lo34_polymorphism(next))
            throw LemmaViolation("reduction step " + std::to_string(path.size()) + " leaves the polymorphisms: " + next.to_string());
        path.push_back(std::move(next));
    }
    if (!is_essentially_unary(path.back()))
        throw LemmaViolation("reduction of " + f.to_string() + " does not end at an essentially unary map");
    return path;
}

std::optional<int> is_essentially_unary(const FunctionTable & f)
{
    const int n = f.arity();
    const int a = f.in_domain();
    std::vector<int> depends;
    for (int i = 1; i <= n; ++i) {
        bool dep = false;
        for (std::size_t idx = 0; idx < f.size() && !dep; ++idx) {
            auto x = decode_tuple(idx, static_cast<std::size_t>(n), a);
            for (int v = 1; v <= a && !dep; ++v) {
                auto y = x;
                y[static_cast<std::size_t>(i - 1)] = v;
                dep = f.at(encode_tuple(y, a)) != f.at(idx);
            }
        }
        if (dep)
            depends.push_back(i);
    }
    if (depends.empty())
        return 0;
    if (depends.size() == 1)
        return depends.front();
    return std::nullopt;
}

int chi_binary(const FunctionTable & f)
{
    auto end = is_essentially_unary(reduce_to_unary(f).back());
    if (!end || *end == 0)
        throw LemmaViolation("reduction endpoint of " + f.to_string() + " has no distinguished coordinate");
    return *end;
}

bool complex_components_match(const RelStructure & X, const RelStructure & B)
{
    const auto mh = enumerate_multihomomorphisms(X, B).items;
    UnionFind poset(mh.size());
    for (std::size_t a = 0; a < mh.size(); ++a)
        for (std::size_t b = a + 1; b < mh.size(); ++b)
            if (mh[a].subset_of(mh[b]) || mh[b].subset_of(mh[a]))
                poset.unite(a, b);

    std::vector<std::size_t> hom_index;
    std::vector<FunctionTable> homs;
    for (std::size_t a = 0; a < mh.size(); ++a)
        if (auto f = mh[a].as_function()) {
            hom_index.push_back(a);
            homs.push_back(*f);
        }
    const auto moves = reconfig_graph(homs);
    // homs are already canonical, so graph vertex k is homs[k].
    for (std::size_t a = 0; a < homs.size(); ++a)
        for (std::size_t b = a + 1; b < homs.size(); ++b) {
            const bool same_complex = poset.find(hom_index[a]) == poset.find(hom_index[b]);
            const bool same_moves = moves.component[a] == moves.component[b];
            if (same_complex != same_moves)
                return false;
        }
    return true;
}

std::string to_dot(const ReconfigGraph & g, const std::string & name)
{
    static const char * palette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"};
    std::ostringstream out;
    out << "graph " << name << " {\n";
    out << "  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        std::string label = g.vertices[v].to_string();
        if (g.vertices[v].arity() == 2) {
            const int a = g.vertices[v].in_domain();
            label.clear();
            for (int x = 1; x <= a; ++x) {
                if (x > 1)
                    label += "\\n";
                for (int y = 1; y <= a; ++y)
                    label += (y > 1 ? " " : "") + std::to_string(g.vertices[v]({x, y}));
            }
        }
        out << "  v" << v << " [label=\"" << label << "\", color=" << palette[g.component[v] % std::size(palette)] << "];\n";
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        for (std::size_t w : g.adjacency[v])
            if (v < w)
                out << "  v" << v << " -- v" << w << ";\n";
    out << "}\n";
    return out.str();
}

std::string components_csv(const ReconfigGraph & g)
{
    std::ostringstream out;
    out << "vertex,table,component\n";
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        std::string table;
        for (std::size_t i = 0; i < g.vertices[v].size(); ++i)
            table += (i ? " " : "") + std::to_string(g.vertices[v].at(i));
        out << v << ',' << table << ',' << g.component[v] << '\n';
    }
    return out.str();
}

} // namespace pcsp
