#include "tdk/twisted.hpp"

#include <stdexcept>

#include "tdk/errors.hpp"

namespace tdk {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix RatMatrix::from_int(const IntMatrix& m)
{
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(r, c) = Rational(m(r, c));
    return out;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const
{
    if (cols_ != o.rows_)
        throw std::invalid_argument("RatMatrix: shape mismatch in product");
    RatMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (o(k, j) != 0)
                    out(i, j) += a * o(k, j);
        }
    return out;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("RatMatrix: shape mismatch in difference");
    RatMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] -= o.data_[i];
    return out;
}

RatMatrix RatMatrix::scaled(const Rational& s) const
{
    RatMatrix out = *this;
    for (auto& x : out.data_)
        x *= s;
    return out;
}

RatMatrix RatMatrix::hstack(const RatMatrix& o) const
{
    if (rows_ != o.rows_)
        throw std::invalid_argument("RatMatrix: row counts differ in hstack");
    RatMatrix out(rows_, cols_ + o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            out(r, c) = (*this)(r, c);
        for (std::size_t c = 0; c < o.cols_; ++c)
            out(r, cols_ + c) = o(r, c);
    }
    return out;
}

RatMatrix RatMatrix::select_rows(const std::vector<std::size_t>& rows) const
{
    RatMatrix out(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < cols_; ++c)
            out(i, c) = (*this)(rows[i], c);
    return out;
}

RatMatrix RatMatrix::select_cols(const std::vector<std::size_t>& cols) const
{
    RatMatrix out(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(r, j) = (*this)(r, cols[j]);
    return out;
}

bool RatMatrix::operator==(const RatMatrix& o) const
{
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool RatMatrix::is_zero() const
{
    for (const auto& x : data_)
        if (x != 0)
            return false;
    return true;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = row;
        while (piv < a.rows() && a(piv, col) == 0)
            ++piv;
        if (piv == a.rows())
            continue;
        if (piv != row)
            for (std::size_t c = 0; c < a.cols(); ++c)
                std::swap(a(piv, c), a(row, c));
        Rational inv = 1 / a(row, col);
        for (std::size_t c = col; c < a.cols(); ++c)
            a(row, c) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || a(r, col) == 0)
                continue;
            Rational f = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c)
                if (a(row, c) != 0)
                    a(r, c) -= f * a(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t RatMatrix::rank() const
{
    RatMatrix a = *this;
    return rref(a).size();
}

RatMatrix RatMatrix::kernel() const
{
    RatMatrix a = *this;
    auto pivots = rref(a);
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    RatMatrix k(cols_, free_cols.size());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        k(free_cols[j], j) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            k(pivots[i], j) = -a(i, free_cols[j]);
    }
    return k;
}

TwistedComplex::TwistedComplex(const BundleModel& model, const IntVector& z) { build(model, z); }

TwistedComplex::TwistedComplex(const DgRingModel& model, const IntVector& z) { build(model, z); }

template <class Model>
void TwistedComplex::build(const Model& model, const IntVector& z)
{
    if (z.size() != model.dim(3) || !model.is_closed(3, z))
        throw InputError("twisting cochain must be a closed degree-3 cochain", "flux");
    const int top = model.top_degree();
    for (int k = 0; k <= top; ++k) {
        offsets_.push_back(total_);
        dims_.push_back(model.dim(k));
        total_ += model.dim(k);
    }
    d_ = IntMatrix(total_, total_);
    for (int k = 0; k <= top; ++k)
        for (std::size_t j = 0; j < model.dim(k); ++j) {
            IntVector e = zero_vector(model.dim(k));
            e[j] = 1;
            if (k < top) {
                IntVector de = model.apply_d(k, e);
                for (std::size_t i = 0; i < de.size(); ++i)
                    d_(offsets_[k + 1] + i, offsets_[k] + j) += de[i];
            }
            if (k + 3 <= top) {
                IntVector ze = model.multiply(3, z, k, e);
                for (std::size_t i = 0; i < ze.size(); ++i)
                    d_(offsets_[k + 3] + i, offsets_[k] + j) += ze[i];
            }
        }
}

std::vector<std::size_t> TwistedComplex::parity_indices(int parity) const
{
    std::vector<std::size_t> out;
    for (std::size_t k = parity; k < dims_.size(); k += 2)
        for (std::size_t i = 0; i < dims_[k]; ++i)
            out.push_back(offsets_[k] + i);
    return out;
}

bool TwistedComplex::square_zero() const { return (d_ * d_).is_zero(); }

std::size_t TwistedComplex::dimension(int parity) const
{
    auto src = parity_indices(parity);
    auto dst = parity_indices(1 - parity);
    RatMatrix d = RatMatrix::from_int(d_);
    std::size_t rank_out = d.select_rows(dst).select_cols(src).rank();
    std::size_t rank_in = d.select_rows(src).select_cols(dst).rank();
    return src.size() - rank_out - rank_in;
}

TwistedDims twisted_dims(const BundleModel& model, const IntVector& z)
{
    TwistedComplex c(model, z);
    return {c.dimension(0), c.dimension(1)};
}

TwistedDims twisted_dims(const DgRingModel& model, const IntVector& z)
{
    TwistedComplex c(model, z);
    return {c.dimension(0), c.dimension(1)};
}

TMap t_transform(const Triple& t)
{
    const std::size_t n = t.rank();
    const BundleModel& f = *t.side.bundle;
    const BundleModel& fh = *t.dual.bundle;
    const BundleModel& dm = *t.doubled;
    const int topf = f.top_degree(), toph = fh.top_degree(), topd = dm.top_degree();

    std::vector<std::size_t> off_f, off_h;
    std::size_t tot_f = 0, tot_h = 0;
    for (int k = 0; k <= topf; ++k) {
        off_f.push_back(tot_f);
        tot_f += f.dim(k);
    }
    for (int k = 0; k <= toph; ++k) {
        off_h.push_back(tot_h);
        tot_h += fh.dim(k);
    }

    // powers (-w)^j / j! as integer vectors with their factorials
    std::vector<IntVector> powers{dm.embed(0, IntVector{BigInt(1)}, 0)};
    std::vector<BigInt> fact{BigInt(1)};
    IntVector mw = negate(t.w);
    while (2 * static_cast<int>(powers.size()) <= topd) {
        const int deg = 2 * static_cast<int>(powers.size() - 1);
        powers.push_back(dm.multiply(deg, powers.back(), 2, mw));
        fact.push_back(fact.back() * BigInt(static_cast<long>(powers.size() - 1)));
    }

    std::vector<std::size_t> side_gens(n), dual_gens(n);
    for (std::size_t i = 0; i < n; ++i) {
        side_gens[i] = i;
        dual_gens[i] = n + i;
    }
    const unsigned ymask = (1u << n) - 1;

    TMap out;
    out.n = n;
    out.matrix = RatMatrix(tot_h, tot_f);
    for (int k = 0; k <= topf; ++k)
        for (std::size_t j = 0; j < f.dim(k); ++j) {
            IntVector e = zero_vector(f.dim(k));
            e[j] = 1;
            IntVector pe = include_fiber(f, dm, side_gens, k, e);
            for (std::size_t a = 0; a < powers.size(); ++a) {
                const int deg = 2 * static_cast<int>(a) + k;
                if (deg > topd)
                    break;
                IntVector prod = dm.multiply(2 * static_cast<int>(a), powers[a], k, pe);
                const int target = deg - static_cast<int>(n);
                if (target < 0 || target > toph)
                    continue;
                for (std::size_t r = 0; r < prod.size(); ++r) {
                    if (prod[r] == 0)
                        continue;
                    const auto& el = dm.element(deg, r);
                    if ((el.mask & ymask) != ymask)
                        continue;
                    unsigned hat = el.mask >> n;
                    int sign = (n * static_cast<std::size_t>(el.base_deg)) % 2 ? -1 : 1;
                    std::size_t row = off_h[target] + fh.index(el.base_deg, el.base_idx, hat);
                    out.matrix(row, off_f[k] + j) += Rational(prod[r] * sign, fact[a]);
                }
            }
        }
    for (std::size_t r = 0; r < out.matrix.rows(); ++r)
        for (std::size_t c = 0; c < out.matrix.cols(); ++c)
            out.matrix(r, c).canonicalize();
    return out;
}

IsoReport verify_iso(const Triple& t)
{
    IsoReport rep;
    TwistedComplex cs(*t.side.bundle, t.side.flux);
    TwistedComplex cd(*t.dual.bundle, t.dual.flux);
    rep.side = {cs.dimension(0), cs.dimension(1)};
    rep.dual = {cd.dimension(0), cd.dimension(1)};
    TMap tm = t_transform(t);
    RatMatrix ds = RatMatrix::from_int(cs.matrix()), dd = RatMatrix::from_int(cd.matrix());
    Rational sign = tm.n % 2 ? -1 : 1;
    rep.chain_map = (dd * tm.matrix) == (tm.matrix * ds).scaled(sign);
    if (!rep.chain_map) {
        rep.reason = "chain-map identity D_ẑ∘T = (-1)^n T∘D_z fails";
        return rep;
    }
    const std::size_t src_dim[2] = {rep.side.even, rep.side.odd};
    const std::size_t dst_dim[2] = {rep.dual.even, rep.dual.odd};
    rep.iso = true;
    for (int par = 0; par < 2; ++par) {
        const int tpar = (par + tm.parity_shift()) % 2;
        auto src = cs.parity_indices(par);
        auto dst = cd.parity_indices(tpar);
        RatMatrix kernel = ds.select_rows(cs.parity_indices(1 - par)).select_cols(src).kernel();
        RatMatrix cycles(ds.cols(), kernel.cols());
        for (std::size_t c = 0; c < kernel.cols(); ++c)
            for (std::size_t i = 0; i < src.size(); ++i)
                cycles(src[i], c) = kernel(i, c);
        RatMatrix image = (tm.matrix * cycles).select_rows(dst);
        RatMatrix bounds = dd.select_rows(dst).select_cols(cd.parity_indices(1 - tpar));
        rep.induced_rank[par] = image.hstack(bounds).rank() - bounds.rank();
        if (rep.induced_rank[par] != src_dim[par] || rep.induced_rank[par] != dst_dim[tpar]) {
            rep.iso = false;
            rep.reason = "induced map in parity " + std::to_string(par) + " has rank " +
                         std::to_string(rep.induced_rank[par]) + " between dimensions " +
                         std::to_string(src_dim[par]) + " and " + std::to_string(dst_dim[tpar]);
        }
    }
    return rep;
}

}  // namespace tdk
