#include <pcsp/equivariant.hpp>
#include <pcsp/errors.hpp>
#include <pcsp/homology.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>

namespace pcsp {

namespace {

int mod3(std::int64_t v)
{
    return static_cast<int>(((v % 3) + 3) % 3);
}

struct TorusData {
    CWComplexZ X;
    TorusCells cells;
    EquivariantChainComplexFree orbits;
    SparseMatrix omega1;
};

const TorusData & torus_data(int n)
{
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<TorusData>> cache;
    std::lock_guard lock(mutex);
    auto & slot = cache[n];
    if (!slot) {
        auto X = torus_cw(n, TorusMode::diagonal);
        auto E = equivariant_chain_complex(X);
        auto w = X.action_matrix(1);
        slot = std::make_unique<TorusData>(
            TorusData{std::move(X), TorusCells(n, TorusMode::diagonal), std::move(E), std::move(w)});
    }
    return *slot;
}

/// Walk of |a| edges from v_s to v_{s+a} in Y_2.
Chain walk(int s, int a)
{
    Chain c(3, 0);
    if (a >= 0)
        for (int t = 0; t < a; ++t)
            c[static_cast<std::size_t>(mod3(s + t))] += 1;
    else
        for (int t = 1; t <= -a; ++t)
            c[static_cast<std::size_t>(mod3(s - t))] -= 1;
    return c;
}

Chain difference(const Chain & a, const Chain & b)
{
    Chain out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        out[k] = a[k] - b[k];
    return out;
}

std::optional<std::size_t> first_nonzero_column(const SparseMatrix & m)
{
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m.column(j).empty())
            return j;
    return std::nullopt;
}

Chain solve_boundary(const SparseMatrix & d2, const Chain & target, int n, int i, const char * what)
{
    if (d2.cols() == 0) {
        if (std::any_of(target.begin(), target.end(), [](std::int64_t v) { return v != 0; }))
            throw InternalError(std::string(what) + " has no filling for n = " + std::to_string(n));
        return {};
    }
    std::vector<Integer> rhs(target.begin(), target.end());
    auto y = solve_integer(d2.to_dense(), rhs);
    if (!y)
        throw InternalError(std::string(what) + " is not a boundary for n = " + std::to_string(n) + ", i = " +
                            std::to_string(i));
    Chain out;
    for (const auto & v : *y)
        out.push_back(static_cast<std::int64_t>(v));
    return out;
}

std::optional<std::filesystem::path> cache_file(int n, int i)
{
    const char * dir = std::getenv("PCSP_TOPO_CACHE");
    if (!dir || !*dir)
        return std::nullopt;
    return std::filesystem::path(dir) / ("fillings-n" + std::to_string(n) + "-i" + std::to_string(i) + ".txt");
}

std::optional<CycleData> read_cached(const std::filesystem::path & path)
{
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    CycleData data;
    for (Chain * c : {&data.x, &data.b, &data.B}) {
        std::size_t size = 0;
        if (!(in >> size))
            return std::nullopt;
        c->resize(size);
        for (auto & v : *c)
            if (!(in >> v))
                return std::nullopt;
    }
    return data;
}

void write_cached(const std::filesystem::path & path, const CycleData & data)
{
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path);
    for (const Chain * c : {&data.x, &data.b, &data.B}) {
        out << c->size();
        for (auto v : *c)
            out << ' ' << v;
        out << '\n';
    }
}

bool fills(const TorusData & T, const CycleData & data, const Chain & x)
{
    if (data.x != x || data.b.size() != T.X.cell_count(2) || data.B.size() != T.X.cell_count(2))
        return false;
    const auto wx = T.omega1 * x;
    const auto w2x = T.omega1 * wx;
    const auto d2 = T.X.boundary_matrix(2);
    return d2 * data.b == difference(x, wx) && d2 * data.B == difference(x, w2x);
}

SparseMatrix equivariant_extension(const TorusData & T, int d, const std::vector<Chain> & rep_images, std::size_t rows,
                                   const SparseMatrix & y2_omega)
{
    const auto & pos = T.orbits.position[static_cast<std::size_t>(d)];
    SparseMatrix h(rows, pos.size());
    for (std::size_t c = 0; c < pos.size(); ++c) {
        Chain image = rep_images[pos[c].orbit];
        for (int k = 0; k < pos[c].power; ++k)
            image = y2_omega * image;
        for (std::size_t r = 0; r < rows; ++r)
            h.add(r, c, pos[c].sign * image[r]);
    }
    return h;
}

} // namespace

MonomialSpec::MonomialSpec(std::vector<int> alpha, int bound) : alpha_(std::move(alpha))
{
    if (alpha_.empty())
        throw InvalidParameter("exponent vector is empty");
    if (static_cast<int>(alpha_.size()) > max_torus_dimension)
        throw SizeLimitError("exponent vector longer than " + std::to_string(max_torus_dimension));
    std::int64_t sum = 0;
    for (int a : alpha_) {
        if (a > bound || a < -bound)
            throw InvalidParameter("exponent " + std::to_string(a) + " exceeds the bound " + std::to_string(bound));
        sum += a;
    }
    if (mod3(sum) != 1)
        throw InvalidParameter("exponents of " + to_string() + " do not sum to 1 mod 3");
}

std::string MonomialSpec::to_string() const
{
    std::string s = "(";
    for (std::size_t k = 0; k < alpha_.size(); ++k)
        s += (k ? "," : "") + std::to_string(alpha_[k]);
    return s + ")";
}

MonomialSpec monomial_minor(const MonomialSpec & alpha, const MinorMap & pi)
{
    if (pi.n() != alpha.n())
        throw SignatureMismatch("minor map arity differs from the exponent vector");
    std::vector<int> beta(static_cast<std::size_t>(pi.m()), 0);
    for (int i = 1; i <= alpha.n(); ++i)
        beta[static_cast<std::size_t>(pi(i) - 1)] += alpha[i];
    return MonomialSpec(std::move(beta), std::numeric_limits<int>::max());
}

const CWComplexZ & diagonal_torus(int n)
{
    return torus_data(n).X;
}

const CWComplexZ & y2_complex()
{
    static const CWComplexZ Y = make_y2();
    return Y;
}

Chain coordinate_cycle(int n, int i)
{
    if (i < 1 || i > n)
        throw InvalidParameter("coordinate " + std::to_string(i) + " out of range for n = " + std::to_string(n));
    const auto & T = torus_data(n);
    Chain x(T.X.cell_count(1), 0);
    std::vector<int> j(static_cast<std::size_t>(n), 0);
    for (int t = 0; t < 3; ++t) {
        j[static_cast<std::size_t>(i - 1)] = t;
        x[T.cells.edge(i, j)] += 1;
    }
    return x;
}

CycleData compute_fillings(int n, int i)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, CycleData> cache;
    const Chain x = coordinate_cycle(n, i);
    const auto & T = torus_data(n);
    const auto file = cache_file(n, i);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find({n, i}); it != cache.end()) {
            if (file && !std::filesystem::exists(*file))
                write_cached(*file, it->second);
            return it->second;
        }
    }
    std::optional<CycleData> data;
    if (file)
        if (auto cached = read_cached(*file); cached && fills(T, *cached, x))
            data = std::move(cached);
    if (!data) {
        const auto wx = T.omega1 * x;
        const auto w2x = T.omega1 * wx;
        const auto d2 = T.X.boundary_matrix(2);
        data = CycleData{x, solve_boundary(d2, difference(x, wx), n, i, "x - omega x"),
                         solve_boundary(d2, difference(x, w2x), n, i, "x - omega^2 x")};
        if (file)
            write_cached(*file, *data);
    }
    std::lock_guard lock(mutex);
    return cache.emplace(std::pair{n, i}, *data).first->second;
}

EquivariantChainMap monomial_chain_map(const MonomialSpec & alpha)
{
    const int n = alpha.n();
    const auto & T = torus_data(n);
    EquivariantChainMap F{n, {SparseMatrix(3, T.X.cell_count(0)), SparseMatrix(3, T.X.cell_count(1)),
                              SparseMatrix(3, T.X.cell_count(2))}};
    auto start = [&](const std::vector<int> & codes) {
        std::int64_t s = 0;
        for (int k = 1; k <= n; ++k) {
            const int c = codes[static_cast<std::size_t>(k - 1)];
            s += static_cast<std::int64_t>(alpha[k]) * (c >= 3 ? c - 3 : c);
        }
        return mod3(s);
    };
    for (std::size_t v = 0; v < T.X.cell_count(0); ++v)
        F.F[0].add(static_cast<std::size_t>(start(T.cells.factors(0, v))), v, 1);
    for (std::size_t e = 0; e < T.X.cell_count(1); ++e) {
        const auto codes = T.cells.factors(1, e);
        int dir = 0;
        for (int k = 1; k <= n; ++k)
            if (codes[static_cast<std::size_t>(k - 1)] >= 3)
                dir = k;
        const auto w = walk(start(codes), alpha[dir]);
        for (std::size_t r = 0; r < 3; ++r)
            F.F[1].add(r, e, w[r]);
    }
    auto check = verify_chain_map(F);
    if (!check)
        throw ComputationError("monomial map " + alpha.to_string() + " fails verification: " + check.detail);
    return F;
}

ChainMapCheck verify_chain_map(const EquivariantChainMap & F)
{
    const auto & T = torus_data(F.n).X;
    const auto & Y = y2_complex();
    for (int d = 0; d <= 2; ++d) {
        const auto & m = F.F[static_cast<std::size_t>(d)];
        if (m.rows() != Y.cell_count(d) || m.cols() != T.cell_count(d))
            return {false, "F_" + std::to_string(d) + " has the wrong shape", d, std::nullopt};
    }
    for (int d = 1; d <= 3; ++d) {
        const auto lhs = d <= 2 ? Y.boundary_matrix(d) * F.F[static_cast<std::size_t>(d)]
                                : SparseMatrix(3, T.cell_count(3));
        const auto rhs = F.F[static_cast<std::size_t>(d - 1)] * T.boundary_matrix(d);
        if (auto c = first_nonzero_column(lhs - rhs))
            return {false, "dF != Fd on " + T.cells[static_cast<std::size_t>(d)][*c], d, c};
    }
    for (int d = 0; d <= 2; ++d) {
        const auto & m = F.F[static_cast<std::size_t>(d)];
        if (auto c = first_nonzero_column(Y.action_matrix(d) * m - m * T.action_matrix(d)))
            return {false, "F omega != omega F on " + T.cells[static_cast<std::size_t>(d)][*c], d, c};
    }
    return {};
}

int degree(const EquivariantChainMap & F, int i)
{
    const auto data = compute_fillings(F.n, i);
    std::int64_t total = (F.F[1] * data.x)[0];
    if (!data.b.empty()) {
        total += (F.F[2] * data.b)[0];
        total += (F.F[2] * data.B)[0];
    }
    return mod3(total);
}

GammaResult gamma_vector(const EquivariantChainMap & F)
{
    GammaResult g;
    int sum = 0;
    for (int i = 1; i <= F.n; ++i) {
        g.degrees.push_back(degree(F, i));
        sum += g.degrees.back();
    }
    g.valid = mod3(sum) == 1;
    if (g.valid)
        g.map = AffineMapZ3(g.degrees);
    return g;
}

ChainHomotopy zero_homotopy(int n)
{
    const auto & T = torus_data(n).X;
    return {n, SparseMatrix(3, T.cell_count(0)), SparseMatrix(3, T.cell_count(1))};
}

ChainHomotopy random_equivariant_homotopy(int n, std::uint64_t seed)
{
    const auto & T = torus_data(n);
    const auto & Y = y2_complex();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-2, 2);
    auto draw = [&](std::size_t count) {
        std::vector<Chain> out(count, Chain(3, 0));
        for (auto & c : out)
            for (auto & v : c)
                v = entry(rng);
        return out;
    };
    const auto r0 = draw(T.orbits.rank(0));
    const auto r1 = draw(T.orbits.rank(1));
    return {n, equivariant_extension(T, 0, r0, 3, Y.action_matrix(1)),
            equivariant_extension(T, 1, r1, 3, Y.action_matrix(2))};
}

bool is_equivariant(const ChainHomotopy & h)
{
    const auto & T = torus_data(h.n).X;
    const auto & Y = y2_complex();
    return Y.action_matrix(1) * h.h0 == h.h0 * T.action_matrix(0) &&
           Y.action_matrix(2) * h.h1 == h.h1 * T.action_matrix(1);
}

EquivariantChainMap apply_homotopy(const EquivariantChainMap & F, const ChainHomotopy & h)
{
    if (h.n != F.n)
        throw SignatureMismatch("homotopy and chain map live on different tori");
    const auto & T = torus_data(F.n).X;
    const auto & Y = y2_complex();
    EquivariantChainMap G = F;
    G.F[0] = F.F[0] + Y.boundary_matrix(1) * h.h0;
    G.F[1] = F.F[1] + Y.boundary_matrix(2) * h.h1 + h.h0 * T.boundary_matrix(1);
    G.F[2] = F.F[2] + h.h1 * T.boundary_matrix(2);
    return G;
}

EquivariantChainMap chain_homotopy_perturb(const EquivariantChainMap & F, std::uint64_t seed)
{
    return apply_homotopy(F, random_equivariant_homotopy(F.n, seed));
}

} // namespace pcsp
