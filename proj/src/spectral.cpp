#include "tdk/spectral.hpp"

#include <algorithm>

#include "tdk/errors.hpp"
#include "tdk/snf.hpp"

namespace tdk {

std::vector<std::size_t> below_filtration(const BundleModel& model, int k, int p)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < model.dim(k); ++i)
        if (model.filtration(k, i) < p)
            out.push_back(i);
    return out;
}

namespace {

std::vector<std::size_t> at_least(const BundleModel& model, int k, int p)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < model.dim(k); ++i)
        if (model.filtration(k, i) >= p)
            out.push_back(i);
    return out;
}

IntMatrix d_dense(const BundleModel& model, int k)
{
    if (k < 0 || k > model.top_degree())
        return IntMatrix(model.dim(k + 1), model.dim(k));
    return model.differential(k).to_dense();
}

IntMatrix embed_columns(std::size_t ambient, const std::vector<std::size_t>& rows, const IntMatrix& m)
{
    IntMatrix out(ambient, m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < rows.size(); ++i)
            out(rows[i], j) = m(i, j);
    return out;
}

}  // namespace

int SpectralSequence::infinity_page() const
{
    return std::max(model_.base().top_degree(), static_cast<int>(model_.fiber_rank())) + 1;
}

IntMatrix SpectralSequence::approximant(int r, int p, int k) const
{
    const std::size_t n = model_.dim(k);
    if (n == 0)
        return IntMatrix(0, 0);
    const int target = p + r;
    auto cols = at_least(model_, k, std::max(p, 0));
    if (cols.empty())
        return IntMatrix(n, 0);
    auto rows = below_filtration(model_, k + 1, target);
    IntMatrix sub = d_dense(model_, k).select_rows(rows).select_cols(cols);
    IntMatrix ker = rows.empty() ? IntMatrix::identity(cols.size()) : kernel_basis(sub);
    return embed_columns(n, cols, ker);
}

Subquotient SpectralSequence::slot(int r, int p, int q) const
{
    if (r < 1)
        throw std::invalid_argument("spectral sequence pages start at r = 1");
    const int k = p + q;
    const std::size_t n = model_.dim(k);
    if (p < 0 || q < 0 || n == 0)
        return Subquotient::trivial(n);
    IntMatrix z = approximant(r, p, k);
    IntMatrix b = approximant(r - 1, p + 1, k);
    if (k > 0) {
        IntMatrix prev = approximant(r - 1, p - r + 1, k - 1);
        if (prev.cols() > 0)
            b = b.hstack(d_dense(model_, k - 1) * prev);
    }
    return Subquotient::make(n, z, b);
}

GroupHom SpectralSequence::differential(int r, int p, int q) const
{
    const int k = p + q;
    Subquotient src = slot(r, p, q);
    Subquotient dst = slot(r, p + r, q - r + 1);
    IntMatrix d = (k >= 0 && k <= model_.top_degree()) ? d_dense(model_, k) : IntMatrix(dst.ambient_dim(), src.ambient_dim());
    if (d.rows() != dst.ambient_dim() || d.cols() != src.ambient_dim())
        d = IntMatrix(dst.ambient_dim(), src.ambient_dim());
    return GroupHom(std::move(src), std::move(dst), std::move(d));
}

SSPage SpectralSequence::page(int r, int p, int q) const
{
    SSPage page;
    page.r = r;
    page.p = p;
    page.q = q;
    page.is_infinity = r >= infinity_page();
    page.group = slot(r, p, q);
    page.outgoing = differential(r, p, q);
    page.incoming = differential(r, p - r, q + r - 1);
    return page;
}

Subquotient SpectralSequence::filtered_cohomology(int p, int k) const
{
    const std::size_t n = model_.dim(k);
    IntMatrix b = k > 0 ? d_dense(model_, k - 1) : IntMatrix(n, 0);
    // closed cochains in F^p: the approximant with r beyond the top degree
    IntMatrix z = approximant(model_.top_degree() + 2, p, k);
    return Subquotient::make(n, z.hstack(b), b);
}

Subquotient SpectralSequence::associated_graded(int p, int k) const
{
    return quotient_of_subgroups(filtered_cohomology(p, k), filtered_cohomology(p + 1, k));
}

FiltrationReport filtration_report(const BundleModel& model, int k, const IntVector& z)
{
    if (k < 0 || k > model.top_degree() || z.size() != model.dim(k))
        throw InputError("cochain does not have the length of degree " + std::to_string(k), "flux");
    if (!model.is_closed(k, z))
        throw InputError("cochain is not closed (d z ≠ 0)", "flux");
    SpectralSequence ss(model);
    FiltrationReport rep;
    rep.degree = k;
    if (model.cohomology(k).is_zero_class(z)) {
        rep.zero_class = true;
        rep.representative = zero_vector(z.size());
        return rep;
    }
    const int d = model.base().top_degree();
    IntMatrix dprev = k > 0 ? model.differential(k - 1).to_dense() : IntMatrix(model.dim(k), 0);
    int p = 0;
    IntVector x = z;
    for (int cand = 1; cand <= d; ++cand) {
        auto rows = below_filtration(model, k, cand);
        IntVector rhs;
        for (auto r : rows)
            rhs.push_back(z[r]);
        auto y = solve(dprev.select_rows(rows), rhs);
        if (!y)
            break;
        p = cand;
        x = sub(z, dprev * *y);
    }
    rep.p = p;
    rep.representative = x;
    Subquotient slot = ss.infinity_slot(p, k - p);
    rep.slot_group = slot.group();
    rep.leading = slot.reduce_or_throw(x);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0 && model.filtration(k, i) == p)
            rep.leading_terms.emplace_back(model.label(k, i), x[i]);
    return rep;
}

}  // namespace tdk
