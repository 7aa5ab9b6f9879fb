#include "tdk/bundle.hpp"

#include <algorithm>

#include "tdk/errors.hpp"
#include "tdk/snf.hpp"

namespace tdk {

int monomial_sign(unsigned a, unsigned b)
{
    if (a & b)
        return 0;
    int inversions = 0;
    for (unsigned x = a; x; x &= x - 1) {
        int i = __builtin_ctz(x);
        inversions += __builtin_popcount(b & ((1u << i) - 1));
    }
    return inversions % 2 ? -1 : 1;
}

std::vector<std::string> fiber_labels(std::size_t n, bool hat)
{
    const std::string stem = hat ? "ŷ" : "y";
    if (n == 1)
        return {stem};
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i)
        out.push_back(stem + std::to_string(i));
    return out;
}

namespace {

bool lex_less(unsigned a, unsigned b)
{
    while (a && b) {
        int ia = __builtin_ctz(a), ib = __builtin_ctz(b);
        if (ia != ib)
            return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

int parity_sign(long k) { return k % 2 ? -1 : 1; }

}  // namespace

BundleModel::BundleModel(ModelPtr base, std::vector<IntVector> chern, std::vector<std::string> labels)
    : base_(std::move(base)), chern_(std::move(chern)), fiber_labels_(std::move(labels))
{
    if (!base_)
        throw std::invalid_argument("bundle needs a base model");
    const std::size_t m = chern_.size();
    if (m == 0)
        throw InputError("fiber rank must be at least 1", "chern");
    if (m > 12)
        throw InputError("fiber rank above 12 is not supported", "chern");
    if (fiber_labels_.empty())
        fiber_labels_ = tdk::fiber_labels(m);
    if (fiber_labels_.size() != m)
        throw std::invalid_argument("one fiber label per generator required");
    const DgRingModel& b = *base_;
    for (std::size_t i = 0; i < m; ++i) {
        const std::string where = "chern[" + std::to_string(i) + "]";
        if (b.top_degree() < 2) {
            if (!chern_[i].empty() && !is_zero(chern_[i]))
                throw InputError("base has no degree-2 cochains", where);
            chern_[i].clear();
            continue;
        }
        if (chern_[i].size() != b.dim(2))
            throw InputError("Chern cochain has " + std::to_string(chern_[i].size()) + " entries, base degree 2 has " +
                                 std::to_string(b.dim(2)),
                             where);
        if (!b.is_closed(2, chern_[i]))
            throw InputError("Chern cochain is not closed", where);
    }

    const std::size_t total = b.total_dim() << m;
    if (total > kMaxBundleElements)
        throw InputError("bundle model would have " + std::to_string(total) + " basis elements (limit " +
                             std::to_string(kMaxBundleElements) + ")",
                         "chern");

    const int top = b.top_degree() + static_cast<int>(m);
    monomials_.assign(m + 1, {});
    for (unsigned mask = 0; mask < (1u << m); ++mask)
        monomials_[__builtin_popcount(mask)].push_back(mask);
    for (auto& list : monomials_)
        std::sort(list.begin(), list.end(), lex_less);

    elements_.assign(top + 1, {});
    for (int k = 0; k <= top; ++k)
        for (int p = 0; p <= std::min(k, b.top_degree()); ++p) {
            const std::size_t s = static_cast<std::size_t>(k - p);
            if (s > m)
                continue;
            for (unsigned mask : monomials_[s])
                for (std::size_t i = 0; i < b.dim(p); ++i) {
                    index_[{p, i, mask}] = elements_[k].size();
                    elements_[k].push_back({p, i, mask});
                }
        }

    for (int k = 0; k <= top; ++k) {
        SparseMatrix d(dim(k + 1), dim(k));
        for (std::size_t col = 0; col < dim(k); ++col) {
            const Element& e = elements_[k][col];
            for (const auto& [r, x] : b.differential(e.base_deg).column(e.base_idx))
                d.add(index(e.base_deg + 1, r, e.mask), col, x);
            if (e.base_deg + 2 > b.top_degree())
                continue;
            int position = 0;
            for (unsigned s = e.mask; s; s &= s - 1, ++position) {
                int g = __builtin_ctz(s);
                const BigInt sign(parity_sign(e.base_deg) * parity_sign(position));
                for (std::size_t j = 0; j < chern_[g].size(); ++j) {
                    if (chern_[g][j] == 0)
                        continue;
                    for (const auto& [r, x] : b.basis_product(e.base_deg, e.base_idx, 2, j))
                        d.add(index(e.base_deg + 2, r, e.mask & ~(1u << g)), col, sign * x * chern_[g][j]);
                }
            }
        }
        diff_.push_back(std::move(d));
    }

    for (int k = 0; k + 1 < top; ++k)
        for (std::size_t col = 0; col < dim(k); ++col) {
            IntVector e = zero_vector(dim(k));
            e[col] = 1;
            if (!is_zero(apply_d(k + 1, apply_d(k, e))))
                throw InputError("d∘d ≠ 0 on total basis element '" + label(k, col) +
                                     "'; the base model is not a valid ring model",
                                 "bundle");
        }
}

std::size_t BundleModel::dim(int k) const
{
    if (k < 0 || k > top_degree())
        return 0;
    return elements_[k].size();
}

std::size_t BundleModel::index(int base_deg, std::size_t base_idx, unsigned mask) const
{
    auto it = index_.find({base_deg, base_idx, mask});
    if (it == index_.end())
        throw std::out_of_range("no such basis element in the bundle model");
    return it->second;
}

std::string BundleModel::monomial_label(unsigned mask) const
{
    std::string out;
    for (unsigned s = mask; s; s &= s - 1)
        out += fiber_labels_[__builtin_ctz(s)];
    return out;
}

std::string BundleModel::label(int k, std::size_t i) const
{
    const Element& e = element(k, i);
    const std::string& b = base_->label(e.base_deg, e.base_idx);
    if (e.mask == 0)
        return b;
    if (e.base_deg == 0)
        return monomial_label(e.mask);
    return monomial_label(e.mask) + "⊗" + b;
}

std::optional<std::size_t> BundleModel::find_label(int k, const std::string& text) const
{
    for (std::size_t i = 0; i < dim(k); ++i)
        if (label(k, i) == text)
            return i;
    // accept an explicit unit factor, e.g. "y⊗1"
    for (std::size_t i = 0; i < dim(k); ++i) {
        const Element& e = element(k, i);
        if (e.base_deg == 0 && e.mask != 0 && monomial_label(e.mask) + "⊗" + base_->label(0, 0) == text)
            return i;
    }
    return std::nullopt;
}

IntVector BundleModel::apply_d(int k, const IntVector& v) const
{
    if (v.size() != dim(k))
        throw std::invalid_argument("apply_d: cochain length does not match degree " + std::to_string(k));
    if (k < 0 || k > top_degree())
        return zero_vector(dim(k + 1));
    return diff_[k].apply(v);
}

IntVector BundleModel::multiply(int p, const IntVector& a, int q, const IntVector& b) const
{
    if (a.size() != dim(p) || b.size() != dim(q))
        throw std::invalid_argument("multiply: cochain length does not match its degree");
    IntVector out = zero_vector(dim(p + q));
    if (p + q > top_degree())
        return out;
    const DgRingModel& base = *base_;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        const Element& ea = elements_[p][i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0)
                continue;
            const Element& eb = elements_[q][j];
            int s = monomial_sign(ea.mask, eb.mask);
            if (!s || ea.base_deg + eb.base_deg > base.top_degree())
                continue;
            s *= parity_sign(static_cast<long>(__builtin_popcount(ea.mask)) * eb.base_deg);
            const BigInt coeff = a[i] * b[j] * s;
            for (const auto& [r, x] : base.basis_product(ea.base_deg, ea.base_idx, eb.base_deg, eb.base_idx))
                out[index(ea.base_deg + eb.base_deg, r, ea.mask | eb.mask)] += coeff * x;
        }
    }
    return out;
}

Subquotient BundleModel::cohomology(int k) const
{
    if (k < 0 || k > top_degree())
        return Subquotient::trivial(0);
    IntMatrix z = kernel_basis(diff_[k].to_dense());
    IntMatrix b = k > 0 ? diff_[k - 1].to_dense() : IntMatrix(dim(0), 0);
    return Subquotient::make(dim(k), z, b);
}

bool BundleModel::is_closed(int k, const IntVector& v) const
{
    return v.size() == dim(k) && is_zero(apply_d(k, v));
}

IntVector BundleModel::pullback(int k, const IntVector& base_vec) const { return embed(k, base_vec, 0); }

IntVector BundleModel::embed(int base_deg, const IntVector& beta, unsigned mask) const
{
    if (beta.size() != base_->dim(base_deg))
        throw std::invalid_argument("embed: base cochain length does not match degree " + std::to_string(base_deg));
    const int k = base_deg + __builtin_popcount(mask);
    IntVector out = zero_vector(dim(k));
    for (std::size_t i = 0; i < beta.size(); ++i)
        if (beta[i] != 0)
            out[index(base_deg, i, mask)] = beta[i];
    return out;
}

IntVector BundleModel::component(int k, const IntVector& v, unsigned mask) const
{
    const int p = k - __builtin_popcount(mask);
    IntVector out = zero_vector(base_->dim(p));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = v.at(index(p, i, mask));
    return out;
}

IntVector BundleModel::fiber_restriction(int k, const IntVector& v) const
{
    if (v.size() != dim(k))
        throw std::invalid_argument("fiber_restriction: cochain length does not match degree");
    IntVector out;
    if (k < 0 || static_cast<std::size_t>(k) >= monomials_.size())
        return out;
    for (unsigned mask : monomials_[k])
        out.push_back(v[index(0, 0, mask)]);
    return out;
}

bool BundleModel::operator==(const BundleModel& other) const
{
    return *base_ == *other.base_ && chern_ == other.chern_;
}

BundlePtr doubled_model(const BundleModel& side, const BundleModel& dual)
{
    if (!(side.base() == dual.base()))
        throw InputError("both bundles must share the same base model", "dual");
    if (side.fiber_rank() != dual.fiber_rank())
        throw InputError("both bundles must have the same fiber rank", "dual");
    const std::size_t n = side.fiber_rank();
    std::vector<IntVector> chern = side.chern();
    chern.insert(chern.end(), dual.chern().begin(), dual.chern().end());
    std::vector<std::string> labels = fiber_labels(n, false);
    auto hat = fiber_labels(n, true);
    labels.insert(labels.end(), hat.begin(), hat.end());
    return std::make_shared<BundleModel>(side.base_ptr(), std::move(chern), std::move(labels));
}

IntVector substitute(const BundleModel& src, const BundleModel& dst, const std::vector<IntVector>& gen_images,
                     int k, const IntVector& v)
{
    if (gen_images.size() != src.fiber_rank())
        throw std::invalid_argument("substitute: one image per generator required");
    for (const auto& g : gen_images)
        if (g.size() != dst.dim(1))
            throw std::invalid_argument("substitute: generator images must be degree-1 cochains");
    if (v.size() != src.dim(k))
        throw std::invalid_argument("substitute: cochain length does not match degree");
    IntVector out = zero_vector(dst.dim(k));
    // cache images of fiber monomials
    std::map<unsigned, IntVector> mono;
    auto image_of = [&](unsigned mask) -> const IntVector& {
        auto it = mono.find(mask);
        if (it != mono.end())
            return it->second;
        IntVector acc = zero_vector(dst.dim(0));
        acc[0] = 1;
        int deg = 0;
        for (unsigned s = mask; s; s &= s - 1) {
            acc = dst.multiply(deg, acc, 1, gen_images[__builtin_ctz(s)]);
            ++deg;
        }
        return mono.emplace(mask, std::move(acc)).first->second;
    };
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        const auto& e = src.element(k, i);
        IntVector b = zero_vector(dst.base().dim(e.base_deg));
        b[e.base_idx] = 1;
        const int fdeg = __builtin_popcount(e.mask);
        IntVector term = dst.multiply(e.base_deg, dst.pullback(e.base_deg, b), fdeg, image_of(e.mask));
        out = add(out, scale(v[i], term));
    }
    return out;
}

IntVector include_fiber(const BundleModel& src, const BundleModel& dst, const std::vector<std::size_t>& gen_map,
                        int k, const IntVector& v)
{
    if (gen_map.size() != src.fiber_rank())
        throw std::invalid_argument("include_fiber: one target per generator required");
    for (std::size_t i = 0; i < gen_map.size(); ++i)
        if (gen_map[i] >= dst.fiber_rank() || (i > 0 && gen_map[i] <= gen_map[i - 1]))
            throw std::invalid_argument("include_fiber: generator map must be strictly increasing");
    IntVector out = zero_vector(dst.dim(k));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        const auto& e = src.element(k, i);
        unsigned mask = 0;
        for (unsigned s = e.mask; s; s &= s - 1)
            mask |= 1u << gen_map[__builtin_ctz(s)];
        out[dst.index(e.base_deg, e.base_idx, mask)] += v[i];
    }
    return out;
}

}  // namespace tdk
