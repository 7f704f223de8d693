#pragma once

// Exact integer matrices: dense arbitrary-precision matrices with Smith
// normal form, and sparse int64 matrices for boundary operators.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pcsp {

using Integer = boost::multiprecision::cpp_int;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Integer & operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer & operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix & other) const;
    IntMatrix operator+(const IntMatrix & other) const;
    IntMatrix operator-(const IntMatrix & other) const;
    std::vector<Integer> operator*(const std::vector<Integer> & v) const;
    bool is_zero() const;

    /// Columns [first, last) as a new matrix.
    IntMatrix column_block(std::size_t first, std::size_t last) const;
    /// Side-by-side concatenation; row counts must agree.
    static IntMatrix hconcat(const IntMatrix & a, const IntMatrix & b);

    std::string to_string() const;

    bool operator==(const IntMatrix &) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Column-compressed int64 matrix; columns hold (row, value) sorted by row
/// with no zero entries.
class SparseMatrix {
public:
    using Entry = std::pair<std::size_t, std::int64_t>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }

    /// Adds v to entry (i, j).
    void add(std::size_t i, std::size_t j, std::int64_t v);
    std::int64_t at(std::size_t i, std::size_t j) const;
    const std::vector<Entry> & column(std::size_t j) const { return columns_.at(j); }
    std::size_t nonzeros() const;

    SparseMatrix transpose() const;
    SparseMatrix operator*(const SparseMatrix & other) const;
    SparseMatrix operator+(const SparseMatrix & other) const;
    SparseMatrix operator-(const SparseMatrix & other) const;
    std::vector<std::int64_t> operator*(const std::vector<std::int64_t> & v) const;
    bool is_zero() const;
    IntMatrix to_dense() const;
    static SparseMatrix from_dense(const IntMatrix & m);

    bool operator==(const SparseMatrix &) const = default;

private:
    std::size_t rows_ = 0;
    std::vector<std::vector<Entry>> columns_;
};

struct SNFResult {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    std::size_t rank = 0;
    std::vector<Integer> divisors; ///< the nonzero diagonal entries, each dividing the next
};

/// U * A * V = D with U, V unimodular. Pivot: smallest absolute nonzero
/// entry of the active block, first in row-major order.
SNFResult smith_normal_form(const IntMatrix & A);

struct DivisorResult {
    std::size_t rank = 0;
    std::vector<Integer> divisors;
};

/// Rank and elementary divisors of a sparse matrix: unit pivots are
/// eliminated first, the remaining block goes through dense SNF.
DivisorResult elementary_divisors(const SparseMatrix & A);

/// Rank over the rationals by fraction-free elimination.
std::size_t rational_rank(const IntMatrix & A);

/// One integer solution of A x = b (free variables zero), if any.
std::optional<std::vector<Integer>> solve_integer(const IntMatrix & A, const std::vector<Integer> & b);

/// A Z-basis of ker A, one column per basis vector.
IntMatrix kernel_basis(const IntMatrix & A);

/// Finitely generated abelian group Z^r + Z_{t_1} + ... with t_i | t_{i+1}.
struct AbelianGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    /// Keeps divisors greater than one.
    static AbelianGroup from_divisors(std::size_t free_rank, const std::vector<Integer> & divisors);

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    /// E.g. "Z^2 + Z_3^2", "0".
    std::string to_string() const;
    /// Torsion joined with ';', e.g. "3;3".
    std::string torsion_string() const;

    bool operator==(const AbelianGroup &) const = default;
};

} // namespace pcsp
