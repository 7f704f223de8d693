#include <pcsp/complexes.hpp>
#include <pcsp/errors.hpp>
#include <pcsp/solver.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace pcsp {

namespace {

int inversion_parity(const std::vector<int> & v)
{
    int parity = 0;
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b)
            if (v[a] > v[b])
                parity ^= 1;
    return parity;
}

std::string face_name(const std::vector<int> & face)
{
    std::string s = "{";
    for (std::size_t k = 0; k < face.size(); ++k)
        s += (k ? "," : "") + std::to_string(face[k]);
    return s + "}";
}

CyclicAction resolve_action(const RelStructure & A, const std::optional<CyclicAction> & omega)
{
    if (omega) {
        if (!omega->is_automorphism_of(A))
            throw InvalidParameter("the given action is not an automorphism of the source structure");
        return *omega;
    }
    if (A == make_ott())
        return CyclicAction::ott_shift();
    throw InvalidParameter("no Z_3 action given for a source other than ott");
}

std::size_t index_of(const std::vector<Multihom> & sorted, const Multihom & m)
{
    auto it = std::lower_bound(sorted.begin(), sorted.end(), m);
    if (it == sorted.end() || !(*it == m))
        return sorted.size();
    return static_cast<std::size_t>(it - sorted.begin());
}

std::string point_name(const L4Point & p)
{
    return "(" + std::to_string(p.first) + ",w" + std::to_string(p.second) + ")";
}

std::string l4_face_name(const L4Face & f)
{
    std::string s = "{";
    for (std::size_t k = 0; k < f.size(); ++k)
        s += (k ? "," : "") + point_name(f[k]);
    return s + "}";
}

} // namespace

// ---------------------------------------------------------------------------
// Poset

Poset::Poset(std::vector<std::string> labels, std::vector<std::vector<bool>> less)
    : labels_(std::move(labels)), less_(std::move(less))
{
    const std::size_t n = labels_.size();
    if (less_.size() != n)
        throw InvalidParameter("order matrix does not match the element list");
    for (const auto & row : less_)
        if (row.size() != n)
            throw InvalidParameter("order matrix is not square");
    for (std::size_t i = 0; i < n; ++i) {
        if (less_[i][i])
            throw InvalidParameter("order relation is not irreflexive at " + labels_[i]);
        for (std::size_t j = 0; j < n; ++j)
            if (less_[i][j])
                for (std::size_t k = 0; k < n; ++k)
                    if (less_[j][k] && !less_[i][k])
                        throw InvalidParameter("order relation is not transitive at " + labels_[i]);
    }
}

std::vector<std::size_t> Poset::minimal_elements() const
{
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j) {
        bool minimal = true;
        for (std::size_t i = 0; i < size() && minimal; ++i)
            minimal = !less_[i][j];
        if (minimal)
            out.push_back(j);
    }
    return out;
}

std::vector<std::size_t> Poset::maximal_elements() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (std::none_of(less_[i].begin(), less_[i].end(), [](bool b) { return b; }))
            out.push_back(i);
    return out;
}

// ---------------------------------------------------------------------------
// CWComplexZ

std::size_t CWComplexZ::cell_count(int d) const
{
    if (d < 0 || d > dimension())
        return 0;
    return cells[static_cast<std::size_t>(d)].size();
}

SparseMatrix CWComplexZ::boundary_matrix(int d) const
{
    if (d >= 0 && d < static_cast<int>(boundary.size()))
        return boundary[static_cast<std::size_t>(d)];
    return SparseMatrix(cell_count(d - 1), cell_count(d));
}

SparseMatrix CWComplexZ::action_matrix(int d) const
{
    if (!action)
        throw InvalidParameter("complex carries no action");
    SparseMatrix w(cell_count(d), cell_count(d));
    if (d < 0 || d > dimension())
        return w;
    const auto & a = (*action)[static_cast<std::size_t>(d)];
    for (std::size_t c = 0; c < a.size(); ++c)
        w.add(a[c].target, c, a[c].sign);
    return w;
}

std::int64_t CWComplexZ::euler_characteristic() const
{
    std::int64_t chi = 0;
    for (int d = 0; d <= dimension(); ++d)
        chi += (d % 2 ? -1 : 1) * static_cast<std::int64_t>(cell_count(d));
    return chi;
}

CheckResult CWComplexZ::verify() const
{
    if (boundary.size() != cells.size())
        return CheckResult::fail("boundary list length differs from the number of dimensions");
    for (int d = 0; d <= dimension(); ++d) {
        const auto & b = boundary[static_cast<std::size_t>(d)];
        if (b.rows() != cell_count(d - 1) || b.cols() != cell_count(d))
            return CheckResult::fail("boundary matrix in dimension " + std::to_string(d) + " has the wrong shape");
    }
    for (int d = 2; d <= dimension(); ++d)
        if (!(boundary_matrix(d - 1) * boundary_matrix(d)).is_zero())
            return CheckResult::fail("boundary of boundary is nonzero in dimension " + std::to_string(d));
    if (!action)
        return CheckResult::pass();
    if (action->size() != cells.size())
        return CheckResult::fail("action list length differs from the number of dimensions");
    for (int d = 0; d <= dimension(); ++d) {
        const auto & a = (*action)[static_cast<std::size_t>(d)];
        if (a.size() != cell_count(d))
            return CheckResult::fail("action in dimension " + std::to_string(d) + " has the wrong size");
        std::vector<bool> hit(a.size(), false);
        for (const auto & s : a) {
            if (s.target >= a.size() || (s.sign != 1 && s.sign != -1) || hit[s.target])
                return CheckResult::fail("action in dimension " + std::to_string(d) + " is not a signed permutation");
            hit[s.target] = true;
        }
        for (std::size_t c = 0; c < a.size(); ++c) {
            auto s1 = a[c];
            auto s2 = a[s1.target];
            auto s3 = a[s2.target];
            if (s3.target != c || s1.sign * s2.sign * s3.sign != 1)
                return CheckResult::fail("action cubed is not the identity on " + cells[static_cast<std::size_t>(d)][c]);
        }
    }
    for (int d = 1; d <= dimension(); ++d)
        if (!(action_matrix(d - 1) * boundary_matrix(d) == boundary_matrix(d) * action_matrix(d)))
            return CheckResult::fail("action does not commute with the boundary in dimension " + std::to_string(d));
    return CheckResult::pass();
}

bool CWComplexZ::action_is_free() const
{
    if (!action)
        return false;
    for (const auto & a : *action)
        for (std::size_t c = 0; c < a.size(); ++c)
            if (a[c].target == c)
                return false;
    return true;
}

// ---------------------------------------------------------------------------
// SimplicialComplexZ

SimplicialComplexZ::SimplicialComplexZ(std::vector<std::string> vertex_labels,
                                       std::vector<std::vector<std::vector<int>>> faces)
    : labels_(std::move(vertex_labels)), faces_(std::move(faces))
{
    for (std::size_t d = 0; d < faces_.size(); ++d) {
        for (auto & f : faces_[d]) {
            if (f.size() != d + 1)
                throw InvalidParameter("face " + face_name(f) + " listed in the wrong dimension");
            for (int v : f)
                if (v < 0 || static_cast<std::size_t>(v) >= labels_.size())
                    throw InvalidParameter("face " + face_name(f) + " uses an unknown vertex");
            std::sort(f.begin(), f.end());
        }
        std::sort(faces_[d].begin(), faces_[d].end());
    }
    while (!faces_.empty() && faces_.back().empty())
        faces_.pop_back();
}

std::size_t SimplicialComplexZ::face_count(int d) const
{
    if (d < 0 || d > dimension())
        return 0;
    return faces_[static_cast<std::size_t>(d)].size();
}

std::optional<std::size_t> SimplicialComplexZ::face_index(const std::vector<int> & face) const
{
    const int d = static_cast<int>(face.size()) - 1;
    if (d < 0 || d > dimension())
        return std::nullopt;
    const auto & list = faces_[static_cast<std::size_t>(d)];
    auto it = std::lower_bound(list.begin(), list.end(), face);
    if (it == list.end() || *it != face)
        return std::nullopt;
    return static_cast<std::size_t>(it - list.begin());
}

std::vector<std::vector<int>> SimplicialComplexZ::maximal_faces() const
{
    std::set<std::vector<int>> covered;
    for (int d = 1; d <= dimension(); ++d)
        for (const auto & f : faces(d))
            for (std::size_t k = 0; k < f.size(); ++k) {
                auto g = f;
                g.erase(g.begin() + static_cast<std::ptrdiff_t>(k));
                covered.insert(std::move(g));
            }
    std::vector<std::vector<int>> out;
    for (int d = 0; d <= dimension(); ++d)
        for (const auto & f : faces(d))
            if (!covered.count(f))
                out.push_back(f);
    return out;
}

bool SimplicialComplexZ::is_closed() const
{
    for (int d = 0; d <= dimension(); ++d) {
        const auto & list = faces(d);
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            return false;
        if (d == 0)
            continue;
        for (const auto & f : list)
            for (std::size_t k = 0; k < f.size(); ++k) {
                auto g = f;
                g.erase(g.begin() + static_cast<std::ptrdiff_t>(k));
                if (!face_index(g))
                    return false;
            }
    }
    return true;
}

CWComplexZ SimplicialComplexZ::to_cw(const std::optional<std::vector<std::size_t>> & vertex_action) const
{
    CWComplexZ X;
    const int top = dimension();
    for (int d = 0; d <= top; ++d) {
        std::vector<std::string> names;
        for (const auto & f : faces(d))
            names.push_back(face_name(f));
        X.cells.push_back(std::move(names));
        SparseMatrix b(face_count(d - 1), face_count(d));
        if (d > 0)
            for (std::size_t j = 0; j < faces(d).size(); ++j) {
                const auto & f = faces(d)[j];
                for (std::size_t k = 0; k < f.size(); ++k) {
                    auto g = f;
                    g.erase(g.begin() + static_cast<std::ptrdiff_t>(k));
                    auto i = face_index(g);
                    if (!i)
                        throw InvalidParameter("complex is not closed under faces at " + face_name(f));
                    b.add(*i, j, k % 2 ? -1 : 1);
                }
            }
        X.boundary.push_back(std::move(b));
    }
    if (vertex_action) {
        if (vertex_action->size() != vertex_count())
            throw InvalidParameter("vertex action has the wrong size");
        std::vector<CellAction> action;
        for (int d = 0; d <= top; ++d) {
            CellAction a;
            for (const auto & f : faces(d)) {
                std::vector<int> image;
                for (int v : f)
                    image.push_back(static_cast<int>(vertex_action->at(static_cast<std::size_t>(v))));
                const int parity = inversion_parity(image);
                std::sort(image.begin(), image.end());
                auto i = face_index(image);
                if (!i)
                    throw InvalidParameter("vertex action does not preserve the face " + face_name(f));
                a.push_back(SignedCell{*i, parity ? -1 : 1});
            }
            action.push_back(std::move(a));
        }
        X.action = std::move(action);
    }
    return X;
}

SimplicialComplexZ order_complex(const Poset & P, std::optional<int> max_dim)
{
    const std::size_t n = P.size();
    std::vector<std::vector<std::size_t>> above(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (P.less(i, j))
                above[i].push_back(j);

    std::vector<std::vector<std::vector<int>>> faces;
    std::vector<int> chain;
    auto extend = [&](auto && self, std::size_t last) -> void {
        const std::size_t d = chain.size() - 1;
        if (faces.size() <= d)
            faces.resize(d + 1);
        auto face = chain;
        std::sort(face.begin(), face.end());
        faces[d].push_back(std::move(face));
        if (max_dim && static_cast<int>(d) >= *max_dim)
            return;
        for (std::size_t j : above[last]) {
            chain.push_back(static_cast<int>(j));
            self(self, j);
            chain.pop_back();
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        chain.assign(1, static_cast<int>(i));
        extend(extend, i);
    }
    return SimplicialComplexZ(P.labels(), std::move(faces));
}

// ---------------------------------------------------------------------------
// Hom complexes

std::vector<std::size_t> HomComplex::fixed_vertices() const
{
    std::vector<std::size_t> out;
    if (vertex_action)
        for (std::size_t i = 0; i < vertex_action->size(); ++i)
            if ((*vertex_action)[i] == i)
                out.push_back(i);
    return out;
}

HomComplex hom_complex(const RelStructure & A, const RelStructure & B, std::optional<CyclicAction> omega,
                       std::optional<int> max_dim)
{
    auto mh = enumerate_multihomomorphisms(A, B).items;
    const std::size_t n = mh.size();
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(mh[i].to_string());
        for (std::size_t j = 0; j < n; ++j)
            less[i][j] = i != j && mh[i].subset_of(mh[j]);
    }
    Poset P(std::move(labels), std::move(less));
    auto K = order_complex(P, max_dim);

    std::optional<std::vector<std::size_t>> action;
    std::optional<CyclicAction> w;
    if (omega || A == make_ott())
        w = resolve_action(A, omega);
    if (w) {
        action.emplace(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto j = index_of(mh, act_on_multihom(*w, mh[i]));
            if (j == n)
                throw InternalError("action image of " + mh[i].to_string() + " is not a multihomomorphism");
            (*action)[i] = j;
        }
    }
    return HomComplex{std::move(mh), std::move(P), std::move(K), std::move(action)};
}

std::vector<Tuple> invariant_cycle()
{
    return {{2, 1, 1}, {2, 1, 3}, {1, 1, 3}, {1, 1, 2}, {1, 3, 2}, {1, 3, 1}, {1, 2, 1}, {3, 2, 1}, {3, 1, 1}};
}

CheckResult check_invariant_cycle(const std::vector<Tuple> & cycle)
{
    const auto ott = make_ott();
    const auto lo3 = make_lo(3);
    std::vector<FunctionTable> fs;
    for (const auto & t : cycle) {
        if (t.size() != 3)
            return CheckResult::fail("cycle entries must be triples");
        for (int v : t)
            if (v < 1 || v > 3)
                return CheckResult::fail("cycle entries must take values in 1..3");
        FunctionTable f = FunctionTable::unary(3, t);
        if (!is_homomorphism(f, ott, lo3))
            return CheckResult::fail(f.to_string() + " is not a homomorphism");
        fs.push_back(std::move(f));
    }
    if (fs.size() > 2 && fs.front() == fs.back())
        fs.pop_back();
    if (fs.size() < 2)
        return CheckResult::fail("a cycle needs at least two vertices");
    using Edge = std::pair<FunctionTable, FunctionTable>;
    auto edge = [](FunctionTable a, FunctionTable b) { return a < b ? Edge{a, b} : Edge{b, a}; };
    std::set<Edge> edges, rotated;
    const auto w = CyclicAction::ott_shift();
    for (std::size_t k = 0; k < fs.size(); ++k) {
        const auto & f = fs[k];
        const auto & g = fs[(k + 1) % fs.size()];
        auto u = Multihom::from_function(f).join(Multihom::from_function(g));
        if (!is_multihomomorphism(u, ott, lo3))
            return CheckResult::fail("union of " + f.to_string() + " and " + g.to_string() + " is not a multihomomorphism");
        edges.insert(edge(f, g));
        rotated.insert(edge(act_on_function(w, f), act_on_function(w, g)));
    }
    if (edges != rotated)
        return CheckResult::fail("edge set is not invariant under omega");
    return CheckResult::pass();
}

bool verify_invariant_cycle(const std::vector<Tuple> & cycle)
{
    return check_invariant_cycle(cycle).ok;
}

bool verify_invariant_cycle()
{
    auto r = check_invariant_cycle(invariant_cycle());
    if (!r)
        throw LemmaViolation(r.detail);
    return true;
}

// ---------------------------------------------------------------------------
// L_4

Poset l4_poset()
{
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> less(9, std::vector<bool>(9, false));
    for (int a = 1; a <= 3; ++a)
        for (int k = 0; k < 3; ++k)
            labels.push_back(point_name({a, k}));
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j)
            less[i][j] = i / 3 < j / 3;
    return Poset(std::move(labels), std::move(less));
}

std::vector<L4Face> l4_faces()
{
    std::vector<L4Face> out;
    for (int c1 = -1; c1 < 3; ++c1)
        for (int c2 = -1; c2 < 3; ++c2)
            for (int c3 = -1; c3 < 3; ++c3) {
                L4Face f;
                const int choice[3] = {c1, c2, c3};
                for (int a = 0; a < 3; ++a)
                    if (choice[a] >= 0)
                        f.emplace_back(a + 1, choice[a]);
                if (!f.empty())
                    out.push_back(std::move(f));
            }
    std::stable_sort(out.begin(), out.end(), [](const L4Face & x, const L4Face & y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    return out;
}

Poset l4_face_poset()
{
    const auto faces = l4_faces();
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> less(faces.size(), std::vector<bool>(faces.size(), false));
    for (std::size_t i = 0; i < faces.size(); ++i) {
        labels.push_back(l4_face_name(faces[i]));
        for (std::size_t j = 0; j < faces.size(); ++j)
            less[i][j] = faces[i].size() < faces[j].size() &&
                         std::includes(faces[j].begin(), faces[j].end(), faces[i].begin(), faces[i].end());
    }
    return Poset(std::move(labels), std::move(less));
}

bool is_l4_face(const L4Face & face)
{
    if (face.empty() || !std::is_sorted(face.begin(), face.end()))
        return false;
    for (std::size_t k = 0; k < face.size(); ++k) {
        const auto [a, x] = face[k];
        if (a < 1 || a > 3 || x < 0 || x > 2)
            return false;
        if (k > 0 && face[k - 1].first == a)
            return false;
    }
    return true;
}

L4Face act_on_l4_face(const L4Face & face)
{
    L4Face out;
    for (auto [a, x] : face)
        out.emplace_back(a, (x + 2) % 3);
    std::sort(out.begin(), out.end());
    return out;
}

L4Face phi_map(const Multihom & m)
{
    if (m.in_domain() != 3 || m.out_domain() != 4)
        throw SignatureMismatch("phi is defined on multihomomorphisms ott -> LO_4");
    std::set<L4Point> points;
    for (const auto & f : m.selections()) {
        const auto & v = f.values();
        const auto top = std::max_element(v.begin(), v.end());
        if (std::count(v.begin(), v.end(), *top) != 1)
            throw InvalidParameter(m.to_string() + " has a selection without a unique maximum");
        const int j = static_cast<int>(top - v.begin()) + 1;
        points.insert({*top - 1, j % 3});
    }
    L4Face face(points.begin(), points.end());
    if (!is_l4_face(face))
        throw LemmaViolation("phi(" + m.to_string() + ") = " + l4_face_name(face) + " is not a face of L_4");
    return face;
}

// ---------------------------------------------------------------------------
// Y_2

CWComplexZ make_y2(Y2Fault fault)
{
    CWComplexZ Y;
    Y.cells = {{"v0", "v1", "v2"}, {"e0", "e1", "e2"}, {"d0", "d1", "d2"}};
    SparseMatrix b0(0, 3), b1(3, 3), b2(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        b1.add((i + 1) % 3, i, 1);
        b1.add(i, i, -1);
        for (std::size_t e = 0; e < 3; ++e)
            b2.add(e, i, 1);
    }
    if (fault == Y2Fault::flipped_disc_sign)
        b2.add(2, 0, -2);
    Y.boundary = {b0, b1, b2};
    CellAction shift;
    for (std::size_t i = 0; i < 3; ++i)
        shift.push_back(SignedCell{(i + 1) % 3, 1});
    Y.action = std::vector<CellAction>{shift, shift, shift};
    return Y;
}

// ---------------------------------------------------------------------------
// Tori

TorusCells::TorusCells(int n, TorusMode mode) : n_(n), mode_(mode)
{
    if (n < 1)
        throw InvalidParameter("torus dimension must be positive");
    if (n > max_torus_dimension)
        throw SizeLimitError("torus dimension " + std::to_string(n) + " exceeds " + std::to_string(max_torus_dimension));
    std::uint64_t total = 1;
    weight_.assign(static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= n; ++i)
        radix_.push_back(2 * factor_size(i));
    for (int i = n - 1; i >= 0; --i) {
        weight_[static_cast<std::size_t>(i)] = total;
        total *= static_cast<std::uint64_t>(radix_[static_cast<std::size_t>(i)]);
    }
    by_dim_.assign(static_cast<std::size_t>(n + 1), {});
    position_.assign(total, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
        int d = 0;
        std::uint64_t rest = code;
        for (int i = 0; i < n; ++i) {
            const auto w = weight_[static_cast<std::size_t>(i)];
            const int c = static_cast<int>(rest / w);
            rest %= w;
            d += c >= radix_[static_cast<std::size_t>(i)] / 2;
        }
        auto & list = by_dim_[static_cast<std::size_t>(d)];
        position_[code] = static_cast<std::uint32_t>(list.size());
        list.push_back(code);
    }
}

int TorusCells::factor_size(int i) const
{
    if (i < 1 || i > n_)
        throw InvalidParameter("torus factor out of range");
    return mode_ == TorusMode::diagonal || i == 1 ? 3 : 1;
}

std::vector<int> TorusCells::factors(int d, std::size_t idx) const
{
    std::uint64_t rest = by_dim_.at(static_cast<std::size_t>(d)).at(idx);
    std::vector<int> out;
    for (int i = 0; i < n_; ++i) {
        const auto w = weight_[static_cast<std::size_t>(i)];
        out.push_back(static_cast<int>(rest / w));
        rest %= w;
    }
    return out;
}

std::size_t TorusCells::index(const std::vector<int> & factor_codes) const
{
    if (factor_codes.size() != static_cast<std::size_t>(n_))
        throw InvalidParameter("factor list has the wrong length");
    std::uint64_t code = 0;
    for (int i = 0; i < n_; ++i) {
        const int c = factor_codes[static_cast<std::size_t>(i)];
        if (c < 0 || c >= radix_[static_cast<std::size_t>(i)])
            throw InvalidParameter("factor cell code out of range");
        code += static_cast<std::uint64_t>(c) * weight_[static_cast<std::size_t>(i)];
    }
    return position_[code];
}

std::size_t TorusCells::vertex(const std::vector<int> & j) const
{
    std::vector<int> codes(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const int k = factor_size(static_cast<int>(i) + 1);
        codes[i] = ((j[i] % k) + k) % k;
    }
    return index(codes);
}

std::size_t TorusCells::edge(int i, const std::vector<int> & j) const
{
    std::vector<int> codes(j.size());
    for (std::size_t l = 0; l < j.size(); ++l) {
        const int k = factor_size(static_cast<int>(l) + 1);
        codes[l] = ((j[l] % k) + k) % k;
    }
    codes.at(static_cast<std::size_t>(i - 1)) += factor_size(i);
    return index(codes);
}

CWComplexZ torus_cw(int n, TorusMode mode)
{
    const TorusCells T(n, mode);
    CWComplexZ X;
    std::vector<CellAction> action;
    for (int d = 0; d <= n; ++d) {
        std::vector<std::string> names;
        SparseMatrix b(T.cell_count(d - 1), T.cell_count(d));
        CellAction a;
        for (std::size_t idx = 0; idx < T.cell_count(d); ++idx) {
            const auto f = T.factors(d, idx);
            std::string name;
            int edges_before = 0;
            auto shifted = f;
            for (int i = 1; i <= n; ++i) {
                const int k = T.factor_size(i);
                const int c = f[static_cast<std::size_t>(i - 1)];
                const bool is_edge = c >= k;
                const int t = is_edge ? c - k : c;
                name += (i > 1 ? "*" : "") + std::string(is_edge ? "e" : "v") + std::to_string(t);
                shifted[static_cast<std::size_t>(i - 1)] = (is_edge ? k : 0) + (t + 1) % k;
                if (!is_edge)
                    continue;
                if (k > 1) {
                    const int sign = edges_before % 2 ? -1 : 1;
                    auto head = f, tail = f;
                    head[static_cast<std::size_t>(i - 1)] = (t + 1) % k;
                    tail[static_cast<std::size_t>(i - 1)] = t;
                    b.add(T.index(head), idx, sign);
                    b.add(T.index(tail), idx, -sign);
                }
                ++edges_before;
            }
            names.push_back(std::move(name));
            a.push_back(SignedCell{T.index(shifted), 1});
        }
        X.cells.push_back(std::move(names));
        X.boundary.push_back(std::move(b));
        action.push_back(std::move(a));
    }
    X.action = std::move(action);
    return X;
}

// ---------------------------------------------------------------------------
// Product comparison

CheckResult product_comparison(const RelStructure & A, const RelStructure & B1, const RelStructure & B2,
                               std::optional<CyclicAction> omega)
{
    const auto w = resolve_action(A, omega);
    const auto P = product(B1, B2);
    const auto mh = enumerate_multihomomorphisms(A, P).items;
    const auto m1s = enumerate_multihomomorphisms(A, B1).items;
    const auto m2s = enumerate_multihomomorphisms(A, B2).items;
    const int k1 = B1.domain_size();
    const int k2 = B2.domain_size();
    const std::size_t na = A.domain_size();

    auto alpha = [&](const Multihom & m) {
        std::vector<Multihom::Mask> a1(na, 0), a2(na, 0);
        for (std::size_t x = 0; x < na; ++x)
            for (int e : m.image_set(static_cast<int>(x) + 1)) {
                a1[x] |= Multihom::Mask{1} << ((e - 1) / k2);
                a2[x] |= Multihom::Mask{1} << ((e - 1) % k2);
            }
        return std::pair{Multihom(k1, std::move(a1)), Multihom(k2, std::move(a2))};
    };
    auto beta = [&](const Multihom & m1, const Multihom & m2) {
        std::vector<Multihom::Mask> out(na, 0);
        for (std::size_t x = 0; x < na; ++x)
            for (int b1 : m1.image_set(static_cast<int>(x) + 1))
                for (int b2 : m2.image_set(static_cast<int>(x) + 1))
                    out[x] |= Multihom::Mask{1} << ((b1 - 1) * k2 + b2 - 1);
        return Multihom(k1 * k2, std::move(out));
    };
    auto leq = [](const std::pair<Multihom, Multihom> & a, const std::pair<Multihom, Multihom> & b) {
        return a.first.subset_of(b.first) && a.second.subset_of(b.second);
    };

    std::vector<std::pair<Multihom, Multihom>> alphas;
    for (const auto & m : mh) {
        auto a = alpha(m);
        if (index_of(m1s, a.first) == m1s.size() || index_of(m2s, a.second) == m2s.size())
            return CheckResult::fail("alpha(" + m.to_string() + ") leaves the product of Hom complexes");
        if (!m.subset_of(beta(a.first, a.second)))
            return CheckResult::fail("beta(alpha(m)) does not dominate m = " + m.to_string());
        auto aw = alpha(act_on_multihom(w, m));
        if (!(aw.first == act_on_multihom(w, a.first) && aw.second == act_on_multihom(w, a.second)))
            return CheckResult::fail("alpha is not equivariant at " + m.to_string());
        alphas.push_back(std::move(a));
    }
    for (std::size_t i = 0; i < mh.size(); ++i)
        for (std::size_t j = 0; j < mh.size(); ++j)
            if (mh[i].subset_of(mh[j]) && !leq(alphas[i], alphas[j]))
                return CheckResult::fail("alpha is not monotone on " + mh[i].to_string() + " <= " + mh[j].to_string());

    std::vector<std::pair<Multihom, Multihom>> pairs;
    std::vector<Multihom> betas;
    for (const auto & m1 : m1s)
        for (const auto & m2 : m2s) {
            auto b = beta(m1, m2);
            if (index_of(mh, b) == mh.size())
                return CheckResult::fail("beta(" + m1.to_string() + ", " + m2.to_string() + ") is not a multihomomorphism");
            auto back = alpha(b);
            if (!(back.first == m1 && back.second == m2))
                return CheckResult::fail("alpha o beta differs from the identity at (" + m1.to_string() + ", " +
                                         m2.to_string() + ")");
            if (!(beta(act_on_multihom(w, m1), act_on_multihom(w, m2)) == act_on_multihom(w, b)))
                return CheckResult::fail("beta is not equivariant at (" + m1.to_string() + ", " + m2.to_string() + ")");
            pairs.emplace_back(m1, m2);
            betas.push_back(std::move(b));
        }
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = 0; j < pairs.size(); ++j)
            if (leq(pairs[i], pairs[j]) && !betas[i].subset_of(betas[j]))
                return CheckResult::fail("beta is not monotone");
    return CheckResult::pass();
}

} // namespace pcsp
