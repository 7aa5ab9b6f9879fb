#ifndef TDK_TWISTED_HPP
#define TDK_TWISTED_HPP

#include <string>
#include <vector>

#include <gmpxx.h>

#include "tdk/triple.hpp"

namespace tdk {

using Rational = mpq_class;

/// Dense rational matrix used for twisted cohomology over Q.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols);
    static RatMatrix from_int(const IntMatrix& m);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    RatMatrix scaled(const Rational& s) const;
    RatMatrix hstack(const RatMatrix& o) const;
    RatMatrix select_rows(const std::vector<std::size_t>& rows) const;
    RatMatrix select_cols(const std::vector<std::size_t>& cols) const;
    bool operator==(const RatMatrix& o) const;
    bool is_zero() const;

    std::size_t rank() const;
    /// Columns form a basis of the kernel.
    RatMatrix kernel() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/**
 * (C*(F) ⊗ Q, D = d + z·) with total cochains laid out degree by degree.
 * Parity 0 collects even degrees, parity 1 odd degrees.
 */
class TwistedComplex {
public:
    /// Throws InputError if z is not a closed degree-3 cochain.
    TwistedComplex(const BundleModel& model, const IntVector& z);
    TwistedComplex(const DgRingModel& model, const IntVector& z);

    /// Dimensions of the cochain groups by degree.
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t total_dim() const noexcept { return total_; }
    std::size_t offset(int k) const { return offsets_.at(k); }
    /// Indices of total cochains of the given parity.
    std::vector<std::size_t> parity_indices(int parity) const;
    /// D on all total cochains.
    const IntMatrix& matrix() const noexcept { return d_; }
    bool square_zero() const;
    /// dim_Q of ker D / im D in the given parity.
    std::size_t dimension(int parity) const;

private:
    template <class Model>
    void build(const Model& model, const IntVector& z);

    std::vector<std::size_t> dims_;
    std::vector<std::size_t> offsets_;
    std::size_t total_ = 0;
    IntMatrix d_;
};

struct TwistedDims {
    std::size_t even = 0;
    std::size_t odd = 0;
};

TwistedDims twisted_dims(const BundleModel& model, const IntVector& z);
TwistedDims twisted_dims(const DgRingModel& model, const IntVector& z);

/**
 * T(ω) = ∫_y exp(-w) · p*ω on total cochains, mapping C*(F) to C*(F̂)
 * and lowering degree by n. Fiber integration picks the coefficient of
 * y_1⋯y_n: ∫ b⊗y_1⋯y_n ŷ_T = (-1)^{n|b|} b⊗ŷ_T.
 */
struct TMap {
    std::size_t n = 0;
    RatMatrix matrix;  ///< total(F̂) × total(F)
    int parity_shift() const { return static_cast<int>(n % 2); }
};

TMap t_transform(const Triple& t);

struct IsoReport {
    bool chain_map = false;  ///< D_ẑ∘T = (-1)^n T∘D_z entry by entry
    TwistedDims side;
    TwistedDims dual;
    std::size_t induced_rank[2] = {0, 0};  ///< rank of the induced map, per source parity
    bool iso = false;
    std::string reason;
};

IsoReport verify_iso(const Triple& t);

}  // namespace tdk

#endif
