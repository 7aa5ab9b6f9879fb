#include "tdk/matrix.hpp"

#include <sstream>
#include <stdexcept>

#include "tdk/errors.hpp"

namespace tdk {

BigInt parse_bigint(std::string_view text)
{
    std::string s(text);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start)
        throw InputError("empty integer literal");
    if (s.size() > 4096)
        throw InputError("integer literal too long");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw InputError("invalid integer literal '" + s.substr(0, 40) + "'");
    }
    if (s[0] == '+')
        s.erase(0, 1);
    return BigInt(s, 10);
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

IntVector zero_vector(std::size_t n) { return IntVector(n, BigInt(0)); }

bool is_zero(const IntVector& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

IntVector add(const IntVector& a, const IntVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector size mismatch in add");
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

IntVector sub(const IntVector& a, const IntVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector size mismatch in sub");
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

IntVector scale(const BigInt& s, const IntVector& v)
{
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = s * v[i];
    return out;
}

IntVector negate(const IntVector& v) { return scale(BigInt(-1), v); }

IntVector concat(const IntVector& a, const IntVector& b)
{
    IntVector out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::string to_string(const IntVector& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i].get_str();
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------------------
// IntMatrix
// ---------------------------------------------------------------------------

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, BigInt(0))
{
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("ragged matrix literal");
        for (long x : r)
            data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& cols)
{
    IntMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows)
            throw std::invalid_argument("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r)
            m(r, c) = cols[c][r];
    }
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<BigInt>& diag)
{
    IntMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(i, i) = diag[i];
    return m;
}

IntVector IntMatrix::column(std::size_t c) const
{
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

IntVector IntMatrix::row(std::size_t r) const
{
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::vector<IntVector> IntMatrix::columns() const
{
    std::vector<IntVector> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        out.push_back(column(c));
    return out;
}

void IntMatrix::set_column(std::size_t c, const IntVector& v)
{
    if (v.size() != rows_)
        throw std::invalid_argument("set_column length mismatch");
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = v[r];
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& rows) const
{
    IntMatrix m(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < cols_; ++c)
            m(i, c) = (*this)(rows[i], c);
    return m;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& cols) const
{
    IntMatrix m(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j)
            m(r, j) = (*this)(r, cols[j]);
    return m;
}

IntMatrix IntMatrix::col_range(std::size_t begin, std::size_t end) const
{
    std::vector<std::size_t> idx;
    for (std::size_t c = begin; c < end; ++c)
        idx.push_back(c);
    return select_cols(idx);
}

IntMatrix IntMatrix::hstack(const IntMatrix& other) const
{
    if (other.rows_ != rows_)
        throw std::invalid_argument("hstack row mismatch");
    IntMatrix m(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            m(r, c) = (*this)(r, c);
        for (std::size_t c = 0; c < other.cols_; ++c)
            m(r, cols_ + c) = other(r, c);
    }
    return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& other) const
{
    if (other.cols_ != cols_)
        throw std::invalid_argument("vstack column mismatch");
    IntMatrix m(rows_ + other.rows_, cols_);
    std::copy(data_.begin(), data_.end(), m.data_.begin());
    std::copy(other.data_.begin(), other.data_.end(),
              m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const
{
    if (cols_ != other.rows_)
        throw std::invalid_argument("matrix product dimension mismatch");
    IntMatrix m(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const BigInt& a = (*this)(r, k);
            if (a == 0)
                continue;
            for (std::size_t c = 0; c < other.cols_; ++c)
                if (other(k, c) != 0)
                    m(r, c) += a * other(k, c);
        }
    return m;
}

IntVector IntMatrix::operator*(const IntVector& v) const
{
    if (cols_ != v.size())
        throw std::invalid_argument("matrix-vector dimension mismatch");
    IntVector out(rows_, BigInt(0));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (v[c] != 0 && (*this)(r, c) != 0)
                out[r] += (*this)(r, c) * v[c];
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& other) const
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix sum dimension mismatch");
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        m.data_[i] = data_[i] + other.data_[i];
    return m;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix difference dimension mismatch");
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        m.data_[i] = data_[i] - other.data_[i];
    return m;
}

IntMatrix IntMatrix::operator-() const
{
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        m.data_[i] = -data_[i];
    return m;
}

bool IntMatrix::operator==(const IntMatrix& other) const
{
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

bool IntMatrix::is_zero() const
{
    for (const auto& x : data_)
        if (x != 0)
            return false;
    return true;
}

BigInt IntMatrix::determinant() const
{
    if (!is_square())
        throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = rows_;
    if (n == 0)
        return 1;
    // Bareiss fraction-free elimination.
    IntMatrix a = *this;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a(swap, k) == 0)
                ++swap;
            if (swap == n)
                return 0;
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a(k, c), a(swap, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::string IntMatrix::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? "," : "") << '[';
        for (std::size_t c = 0; c < cols_; ++c)
            os << (c ? "," : "") << (*this)(r, c).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------
// SparseMatrix
// ---------------------------------------------------------------------------

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), cols_data_(cols)
{
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix& m)
{
    SparseMatrix s(m.rows(), m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (m(r, c) != 0)
                s.cols_data_[c].emplace(r, m(r, c));
    return s;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const BigInt& value)
{
    if (r >= rows_ || c >= cols_)
        throw std::out_of_range("sparse entry out of range");
    if (value == 0)
        return;
    auto& col = cols_data_[c];
    auto it = col.find(r);
    if (it == col.end()) {
        col.emplace(r, value);
    } else {
        it->second += value;
        if (it->second == 0)
            col.erase(it);
    }
}

BigInt SparseMatrix::at(std::size_t r, std::size_t c) const
{
    auto it = cols_data_.at(c).find(r);
    return it == cols_data_[c].end() ? BigInt(0) : it->second;
}

IntVector SparseMatrix::apply(const IntVector& v) const
{
    if (v.size() != cols_)
        throw std::invalid_argument("sparse apply dimension mismatch");
    IntVector out(rows_, BigInt(0));
    for (std::size_t c = 0; c < cols_; ++c) {
        if (v[c] == 0)
            continue;
        for (const auto& [r, x] : cols_data_[c])
            out[r] += x * v[c];
    }
    return out;
}

IntMatrix SparseMatrix::to_dense() const
{
    IntMatrix m(rows_, cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (const auto& [r, x] : cols_data_[c])
            m(r, c) = x;
    return m;
}

bool SparseMatrix::is_zero() const { return nonzeros() == 0; }

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& col : cols_data_)
        n += col.size();
    return n;
}

bool SparseMatrix::operator==(const SparseMatrix& other) const
{
    return rows_ == other.rows_ && cols_ == other.cols_ && cols_data_ == other.cols_data_;
}

}  // namespace tdk
