#ifndef TDK_MATRIX_HPP
#define TDK_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace tdk {

using BigInt = mpz_class;
using IntVector = std::vector<BigInt>;

/// Parses a decimal integer (optional leading '-'); throws InputError.
BigInt parse_bigint(std::string_view text);
std::string to_string(const BigInt& value);

IntVector zero_vector(std::size_t n);
bool is_zero(const IntVector& v);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const BigInt& s, const IntVector& v);
IntVector negate(const IntVector& v);
/// Concatenates two vectors.
IntVector concat(const IntVector& a, const IntVector& b);

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols);
    static IntMatrix diagonal(const std::vector<BigInt>& diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector column(std::size_t c) const;
    IntVector row(std::size_t r) const;
    std::vector<IntVector> columns() const;
    void set_column(std::size_t c, const IntVector& v);

    IntMatrix transpose() const;
    IntMatrix select_rows(const std::vector<std::size_t>& rows) const;
    IntMatrix select_cols(const std::vector<std::size_t>& cols) const;
    IntMatrix col_range(std::size_t begin, std::size_t end) const;
    /// [this | other]; row counts must agree.
    IntMatrix hstack(const IntMatrix& other) const;
    /// [this ; other]; column counts must agree.
    IntMatrix vstack(const IntMatrix& other) const;

    IntMatrix operator*(const IntMatrix& other) const;
    IntVector operator*(const IntVector& v) const;
    IntMatrix operator+(const IntMatrix& other) const;
    IntMatrix operator-(const IntMatrix& other) const;
    IntMatrix operator-() const;
    bool operator==(const IntMatrix& other) const;

    bool is_zero() const;
    bool is_square() const noexcept { return rows_ == cols_; }
    /// Exact determinant by fraction-free elimination (square only).
    BigInt determinant() const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

/// Column-compressed sparse integer matrix. Used for differentials and
/// coboundary operators, which have a handful of entries per column.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    static SparseMatrix from_dense(const IntMatrix& m);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    /// Adds `value` to entry (r, c).
    void add(std::size_t r, std::size_t c, const BigInt& value);
    BigInt at(std::size_t r, std::size_t c) const;

    const std::map<std::size_t, BigInt>& column(std::size_t c) const { return cols_data_[c]; }

    IntVector apply(const IntVector& v) const;
    IntMatrix to_dense() const;
    bool is_zero() const;
    std::size_t nonzeros() const;
    bool operator==(const SparseMatrix& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::map<std::size_t, BigInt>> cols_data_;
};

std::string to_string(const IntVector& v);

}  // namespace tdk

#endif
