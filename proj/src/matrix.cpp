#include <pcsp/errors.hpp>
#include <pcsp/matrix.hpp>

#include <algorithm>
#include <limits>
#include <sstream>

namespace pcsp {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto & r : rows) {
        if (r.size() != cols_)
            throw InvalidParameter("ragged matrix literal");
        for (long long v : r)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix & other) const
{
    if (cols_ != other.rows_)
        throw SignatureMismatch("matrix product dimensions differ");
    IntMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer & a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                if (other(k, j) != 0)
                    out(i, j) += a * other(k, j);
        }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix & other) const
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw SignatureMismatch("matrix sum dimensions differ");
    IntMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] += other.data_[i];
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix & other) const
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw SignatureMismatch("matrix difference dimensions differ");
    IntMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] -= other.data_[i];
    return out;
}

std::vector<Integer> IntMatrix::operator*(const std::vector<Integer> & v) const
{
    if (v.size() != cols_)
        throw SignatureMismatch("matrix-vector dimensions differ");
    std::vector<Integer> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0 && v[j] != 0)
                out[i] += (*this)(i, j) * v[j];
    return out;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Integer & x) { return x == 0; });
}

IntMatrix IntMatrix::column_block(std::size_t first, std::size_t last) const
{
    IntMatrix out(rows_, last - first);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = first; j < last; ++j)
            out(i, j - first) = (*this)(i, j);
    return out;
}

IntMatrix IntMatrix::hconcat(const IntMatrix & a, const IntMatrix & b)
{
    if (a.rows_ != b.rows_)
        throw SignatureMismatch("concatenated matrices need equal row counts");
    IntMatrix out(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j)
            out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j)
            out(i, a.cols_ + j) = b(i, j);
    }
    return out;
}

std::string IntMatrix::to_string() const
{
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        out << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            out << (j ? "," : "") << (*this)(i, j);
        out << ']';
    }
    out << ']';
    return out.str();
}

// ---------------------------------------------------------------------------
// SparseMatrix

void SparseMatrix::add(std::size_t i, std::size_t j, std::int64_t v)
{
    if (i >= rows_ || j >= columns_.size())
        throw InvalidParameter("sparse matrix index out of range");
    if (v == 0)
        return;
    auto & col = columns_[j];
    auto it = std::lower_bound(col.begin(), col.end(), i, [](const Entry & e, std::size_t r) { return e.first < r; });
    if (it != col.end() && it->first == i) {
        it->second += v;
        if (it->second == 0)
            col.erase(it);
    } else {
        col.insert(it, Entry{i, v});
    }
}

std::int64_t SparseMatrix::at(std::size_t i, std::size_t j) const
{
    const auto & col = columns_.at(j);
    auto it = std::lower_bound(col.begin(), col.end(), i, [](const Entry & e, std::size_t r) { return e.first < r; });
    return it != col.end() && it->first == i ? it->second : 0;
}

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto & c : columns_)
        n += c.size();
    return n;
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix t(cols(), rows_);
    for (std::size_t j = 0; j < columns_.size(); ++j)
        for (auto [i, v] : columns_[j])
            t.columns_[i].push_back(Entry{j, v});
    return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix & other) const
{
    if (cols() != other.rows_)
        throw SignatureMismatch("sparse product dimensions differ");
    SparseMatrix out(rows_, other.cols());
    std::vector<std::int64_t> acc(rows_, 0);
    std::vector<std::size_t> touched;
    for (std::size_t j = 0; j < other.cols(); ++j) {
        for (auto [k, b] : other.columns_[j])
            for (auto [i, a] : columns_[k]) {
                if (acc[i] == 0)
                    touched.push_back(i);
                acc[i] += a * b;
            }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (std::size_t i : touched) {
            if (acc[i] != 0)
                out.columns_[j].push_back(Entry{i, acc[i]});
            acc[i] = 0;
        }
        touched.clear();
    }
    return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix & other) const
{
    if (rows_ != other.rows_ || cols() != other.cols())
        throw SignatureMismatch("sparse sum dimensions differ");
    SparseMatrix out = *this;
    for (std::size_t j = 0; j < other.cols(); ++j)
        for (auto [i, v] : other.columns_[j])
            out.add(i, j, v);
    return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix & other) const
{
    if (rows_ != other.rows_ || cols() != other.cols())
        throw SignatureMismatch("sparse difference dimensions differ");
    SparseMatrix out = *this;
    for (std::size_t j = 0; j < other.cols(); ++j)
        for (auto [i, v] : other.columns_[j])
            out.add(i, j, -v);
    return out;
}

std::vector<std::int64_t> SparseMatrix::operator*(const std::vector<std::int64_t> & v) const
{
    if (v.size() != cols())
        throw SignatureMismatch("sparse matrix-vector dimensions differ");
    std::vector<std::int64_t> out(rows_, 0);
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0)
            for (auto [i, a] : columns_[j])
                out[i] += a * v[j];
    return out;
}

bool SparseMatrix::is_zero() const
{
    return std::all_of(columns_.begin(), columns_.end(), [](const auto & c) { return c.empty(); });
}

IntMatrix SparseMatrix::to_dense() const
{
    IntMatrix m(rows_, cols());
    for (std::size_t j = 0; j < columns_.size(); ++j)
        for (auto [i, v] : columns_[j])
            m(i, j) = v;
    return m;
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix & m)
{
    SparseMatrix s(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (m(i, j) != 0) {
                if (m(i, j) > std::numeric_limits<std::int64_t>::max() || m(i, j) < std::numeric_limits<std::int64_t>::min())
                    throw SizeLimitError("matrix entry does not fit into 64 bits");
                s.columns_[j].push_back(Entry{i, static_cast<std::int64_t>(m(i, j))});
            }
    return s;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

void add_row_multiple(IntMatrix & m, std::size_t target, std::size_t source, const Integer & q)
{
    if (q == 0)
        return;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(source, j) != 0)
            m(target, j) -= q * m(source, j);
}

void add_col_multiple(IntMatrix & m, std::size_t target, std::size_t source, const Integer & q)
{
    if (q == 0)
        return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, source) != 0)
            m(i, target) -= q * m(i, source);
}

void swap_rows(IntMatrix & m, std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix & m, std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        std::swap(m(i, a), m(i, b));
}

SNFResult snf(const IntMatrix & A, bool transforms)
{
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    SNFResult r;
    r.D = A;
    if (transforms) {
        r.U = IntMatrix::identity(m);
        r.V = IntMatrix::identity(n);
    }
    IntMatrix & D = r.D;
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        bool found = true;
        while (true) {
            // Smallest absolute nonzero entry of the active block.
            std::size_t pi = m, pj = n;
            Integer best = 0;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D(i, j) != 0 && (best == 0 || abs(D(i, j)) < best)) {
                        best = abs(D(i, j));
                        pi = i;
                        pj = j;
                    }
            if (pi == m) {
                found = false;
                break;
            }
            swap_rows(D, t, pi);
            swap_cols(D, t, pj);
            if (transforms) {
                swap_rows(r.U, t, pi);
                swap_cols(r.V, t, pj);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0)
                    continue;
                Integer q = D(i, t) / D(t, t);
                add_row_multiple(D, i, t, q);
                if (transforms)
                    add_row_multiple(r.U, i, t, q);
                clean = clean && D(i, t) == 0;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0)
                    continue;
                Integer q = D(t, j) / D(t, t);
                add_col_multiple(D, j, t, q);
                if (transforms)
                    add_col_multiple(r.V, j, t, q);
                clean = clean && D(t, j) == 0;
            }
            if (!clean)
                continue;
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m)
                break;
            add_row_multiple(D, t, bad, Integer(-1));
            if (transforms)
                add_row_multiple(r.U, t, bad, Integer(-1));
        }
        if (!found)
            break;
        if (D(t, t) < 0) {
            for (std::size_t j = 0; j < n; ++j)
                D(t, j) = -D(t, j);
            if (transforms)
                for (std::size_t j = 0; j < m; ++j)
                    r.U(t, j) = -r.U(t, j);
        }
        r.divisors.push_back(D(t, t));
    }
    r.rank = r.divisors.size();
    return r;
}

// Sparse elimination of unit pivots over int64 with overflow detection.
class UnitEliminator {
public:
    using Row = std::vector<std::pair<std::size_t, std::int64_t>>;

    explicit UnitEliminator(const SparseMatrix & A) : rows_(A.rows()), col_rows_(A.cols()), col_count_(A.cols(), 0), alive_(A.rows(), 1)
    {
        for (std::size_t j = 0; j < A.cols(); ++j)
            for (auto [i, v] : A.column(j)) {
                rows_[i].emplace_back(j, v);
                col_rows_[j].push_back(i);
                ++col_count_[j];
            }
    }

    /// Returns false on int64 overflow.
    bool run(std::size_t & eliminated)
    {
        eliminated = 0;
        while (true) {
            std::size_t best_row = rows_.size(), best_col = 0;
            std::size_t best_cost = std::numeric_limits<std::size_t>::max();
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (!alive_[i] || rows_[i].empty())
                    continue;
                for (auto [j, v] : rows_[i])
                    if (v == 1 || v == -1) {
                        const std::size_t cost = (rows_[i].size() - 1) * (col_count_[j] - 1);
                        if (cost < best_cost) {
                            best_cost = cost;
                            best_row = i;
                            best_col = j;
                        }
                    }
                if (best_cost == 0)
                    break;
            }
            if (best_row == rows_.size())
                return true;
            if (!pivot(best_row, best_col))
                return false;
            ++eliminated;
        }
    }

    IntMatrix remainder() const
    {
        std::vector<std::size_t> live_rows;
        std::vector<std::size_t> col_index(col_rows_.size(), static_cast<std::size_t>(-1));
        std::size_t ncols = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (!alive_[i] || rows_[i].empty())
                continue;
            live_rows.push_back(i);
            for (auto [j, v] : rows_[i])
                if (col_index[j] == static_cast<std::size_t>(-1))
                    col_index[j] = ncols++;
        }
        IntMatrix m(live_rows.size(), ncols);
        for (std::size_t k = 0; k < live_rows.size(); ++k)
            for (auto [j, v] : rows_[live_rows[k]])
                m(k, col_index[j]) = v;
        return m;
    }

private:
    bool pivot(std::size_t r, std::size_t c)
    {
        const std::int64_t p = value(rows_[r], c);
        auto candidates = col_rows_[c];
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (std::size_t other : candidates) {
            if (other == r || !alive_[other])
                continue;
            const std::int64_t v = value(rows_[other], c);
            if (v == 0)
                continue;
            if (!subtract(other, r, v * p))
                return false;
        }
        for (auto [j, v] : rows_[r])
            --col_count_[j];
        alive_[r] = 0;
        rows_[r].clear();
        return true;
    }

    static std::int64_t value(const Row & row, std::size_t c)
    {
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto & e, std::size_t col) { return e.first < col; });
        return it != row.end() && it->first == c ? it->second : 0;
    }

    // rows_[target] -= q * rows_[source]
    bool subtract(std::size_t target, std::size_t source, std::int64_t q)
    {
        const Row & a = rows_[target];
        const Row & b = rows_[source];
        Row out;
        out.reserve(a.size() + b.size());
        std::size_t x = 0, y = 0;
        while (x < a.size() || y < b.size()) {
            if (y == b.size() || (x < a.size() && a[x].first < b[y].first)) {
                out.push_back(a[x++]);
                continue;
            }
            const std::size_t col = b[y].first;
            __int128 v = -static_cast<__int128>(q) * b[y].second;
            const bool had = x < a.size() && a[x].first == col;
            if (had)
                v += a[x++].second;
            ++y;
            if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
                return false;
            if (v != 0) {
                out.emplace_back(col, static_cast<std::int64_t>(v));
                if (!had) {
                    ++col_count_[col];
                    col_rows_[col].push_back(target);
                }
            } else if (had) {
                --col_count_[col];
            }
        }
        rows_[target] = std::move(out);
        return true;
    }

    std::vector<Row> rows_;
    std::vector<std::vector<std::size_t>> col_rows_;
    std::vector<std::size_t> col_count_;
    std::vector<char> alive_;
};

} // namespace

SNFResult smith_normal_form(const IntMatrix & A)
{
    return snf(A, true);
}

DivisorResult elementary_divisors(const SparseMatrix & A)
{
    UnitEliminator elim(A);
    std::size_t ones = 0;
    IntMatrix rest;
    if (elim.run(ones)) {
        rest = elim.remainder();
    } else {
        ones = 0;
        rest = A.to_dense();
    }
    auto r = snf(rest, false);
    DivisorResult out;
    out.rank = ones + r.rank;
    out.divisors.assign(ones, Integer(1));
    out.divisors.insert(out.divisors.end(), r.divisors.begin(), r.divisors.end());
    return out;
}

std::size_t rational_rank(const IntMatrix & A)
{
    IntMatrix M = A;
    const std::size_t m = M.rows(), n = M.cols();
    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < n && rank < m; ++c) {
        std::size_t p = rank;
        while (p < m && M(p, c) == 0)
            ++p;
        if (p == m)
            continue;
        swap_rows(M, rank, p);
        for (std::size_t i = rank + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j)
                M(i, j) = (M(rank, c) * M(i, j) - M(i, c) * M(rank, j)) / prev;
            M(i, c) = 0;
        }
        prev = M(rank, c);
        ++rank;
    }
    return rank;
}

std::optional<std::vector<Integer>> solve_integer(const IntMatrix & A, const std::vector<Integer> & b)
{
    if (b.size() != A.rows())
        throw SignatureMismatch("right-hand side length differs from the row count");
    auto s = smith_normal_form(A);
    auto c = s.U * b;
    std::vector<Integer> y(A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        if (i < s.rank) {
            if (c[i] % s.divisors[i] != 0)
                return std::nullopt;
            y[i] = c[i] / s.divisors[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V * y;
}

IntMatrix kernel_basis(const IntMatrix & A)
{
    auto s = smith_normal_form(A);
    return s.V.column_block(s.rank, A.cols());
}

// ---------------------------------------------------------------------------
// AbelianGroup

AbelianGroup AbelianGroup::from_divisors(std::size_t free_rank, const std::vector<Integer> & divisors)
{
    AbelianGroup g;
    g.free_rank = free_rank;
    for (const auto & d : divisors)
        if (d > 1)
            g.torsion.push_back(d);
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

std::string AbelianGroup::to_string() const
{
    if (is_trivial())
        return "0";
    std::ostringstream out;
    bool first = true;
    if (free_rank > 0) {
        out << 'Z';
        if (free_rank > 1)
            out << '^' << free_rank;
        first = false;
    }
    for (std::size_t i = 0; i < torsion.size();) {
        std::size_t j = i;
        while (j < torsion.size() && torsion[j] == torsion[i])
            ++j;
        out << (first ? "" : " + ") << "Z_" << torsion[i];
        if (j - i > 1)
            out << '^' << (j - i);
        first = false;
        i = j;
    }
    return out.str();
}

std::string AbelianGroup::torsion_string() const
{
    std::ostringstream out;
    for (std::size_t i = 0; i < torsion.size(); ++i)
        out << (i ? ";" : "") << torsion[i];
    return out.str();
}

} // namespace pcsp
