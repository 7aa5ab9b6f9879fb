#include "tdk/onn.hpp"

#include "tdk/errors.hpp"
#include "tdk/snf.hpp"

namespace tdk {

namespace {

IntMatrix block(const IntMatrix& g, std::size_t r0, std::size_t c0, std::size_t n)
{
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = g(r0 + i, c0 + j);
    return out;
}

IntMatrix assemble(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c, const IntMatrix& d)
{
    return a.hstack(b).vstack(c.hstack(d));
}

bool is_antisymmetric(const IntMatrix& b) { return b.is_square() && b.transpose() == -b; }

void require_shape(const IntMatrix& g)
{
    if (!g.is_square())
        throw InputError("O(n,n) element must be a square matrix", "matrix");
    if (g.rows() == 0 || g.rows() % 2 != 0)
        throw InputError("O(n,n) element must have even positive size, got " + std::to_string(g.rows()), "matrix");
}

std::vector<std::size_t> iota(std::size_t from, std::size_t count)
{
    std::vector<std::size_t> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = from + i;
    return v;
}

}  // namespace

BigInt quadratic_form(const IntVector& v)
{
    if (v.size() % 2 != 0)
        throw std::invalid_argument("quadratic_form: vector of odd length");
    const std::size_t n = v.size() / 2;
    BigInt q = 0;
    for (std::size_t i = 0; i < n; ++i)
        q += v[i] * v[n + i];
    return q;
}

bool is_onn(const IntMatrix& g)
{
    require_shape(g);
    const std::size_t n = g.rows() / 2;
    IntMatrix a(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        a(i, n + i) = 1;
    IntMatrix m = g.transpose() * a * g;
    if (!(m + m.transpose() == a + a.transpose()))
        return false;
    for (std::size_t i = 0; i < 2 * n; ++i)
        if (m(i, i) != 0)
            return false;
    BigInt det = g.determinant();
    if (det != 1 && det != -1)
        throw DomainError("internal inconsistency: q-preserving matrix with determinant " + det.get_str());
    return true;
}

IntMatrix onn_flip(std::size_t n)
{
    IntMatrix z(n, n), i = IntMatrix::identity(n);
    return assemble(z, i, i, z);
}

IntMatrix unimodular_inverse(const IntMatrix& g)
{
    if (!g.is_square())
        throw DomainError("only square matrices can be inverted");
    SmithForm f = smith_normal_form(g);
    for (std::size_t i = 0; i < g.rows(); ++i)
        if (i >= f.rank || f.D(i, i) != 1)
            throw DomainError("matrix is not unimodular");
    return f.V * f.U;
}

IntMatrix onn_gl(const IntMatrix& g)
{
    const std::size_t n = g.rows();
    IntMatrix z(n, n);
    return assemble(g, z, z, unimodular_inverse(g).transpose());
}

IntMatrix onn_shear_upper(const IntMatrix& b)
{
    if (!is_antisymmetric(b))
        throw DomainError("shear matrix must be antisymmetric");
    const std::size_t n = b.rows();
    IntMatrix i = IntMatrix::identity(n), z(n, n);
    return assemble(i, b, z, i);
}

IntMatrix onn_shear_lower(const IntMatrix& b)
{
    if (!is_antisymmetric(b))
        throw DomainError("shear matrix must be antisymmetric");
    const std::size_t n = b.rows();
    IntMatrix i = IntMatrix::identity(n), z(n, n);
    return assemble(i, z, b, i);
}

OnnElement classify_onn(const IntMatrix& g)
{
    require_shape(g);
    OnnElement e;
    e.n = g.rows() / 2;
    e.matrix = g;
    const std::size_t n = e.n;
    IntMatrix a = block(g, 0, 0, n), b = block(g, 0, n, n), c = block(g, n, 0, n), d = block(g, n, n, n);
    IntMatrix id = IntMatrix::identity(n);
    if (g == IntMatrix::identity(2 * n))
        e.family = "identity";
    else if (g == onn_flip(n))
        e.family = "flip";
    else if (b.is_zero() && c.is_zero())
        e.family = "gl";
    else if (a == id && d == id && c.is_zero() && is_antisymmetric(b))
        e.family = "shear_upper";
    else if (a == id && d == id && b.is_zero() && is_antisymmetric(c))
        e.family = "shear_lower";
    else
        e.family = "general";
    if (e.family == "general") {
        // factor flip: swaps e_i and ê_i for a proper nonempty subset
        bool factor = true;
        for (std::size_t i = 0; i < n && factor; ++i) {
            bool swapped = g(n + i, i) == 1 && g(i, n + i) == 1 && g(i, i) == 0 && g(n + i, n + i) == 0;
            bool kept = g(i, i) == 1 && g(n + i, n + i) == 1 && g(n + i, i) == 0 && g(i, n + i) == 0;
            factor = swapped || kept;
        }
        if (factor) {
            IntMatrix probe = g;
            for (std::size_t i = 0; i < 2 * n; ++i)
                for (std::size_t j = 0; j < 2 * n; ++j)
                    if (i % n != j % n && probe(i, j) != 0)
                        factor = false;
        }
        if (factor)
            e.family = "factor_flip";
    }
    e.name = e.family;
    return e;
}

std::vector<OnnElement> onn_generators(std::size_t n)
{
    if (n == 0)
        throw InputError("n must be at least 1", "n");
    std::vector<OnnElement> out;
    auto push = [&](IntMatrix m, std::string family, std::string name) {
        out.push_back({n, std::move(m), std::move(family), std::move(name)});
    };
    push(onn_flip(n), "flip", "t");
    if (n > 1)
        for (std::size_t i = 0; i < n; ++i) {
            IntMatrix m = IntMatrix::identity(2 * n);
            m(i, i) = 0;
            m(n + i, n + i) = 0;
            m(i, n + i) = 1;
            m(n + i, i) = 1;
            push(std::move(m), "factor_flip", "t" + std::to_string(i + 1));
        }
    push(onn_gl(-IntMatrix::identity(n)), "gl", "-1");
    for (std::size_t i = 0; i < n && n > 1; ++i) {
        IntMatrix s = IntMatrix::identity(n);
        s(i, i) = -1;
        push(onn_gl(s), "gl", "sign" + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
                IntMatrix g = IntMatrix::identity(n);
                g(i, j) = 1;
                push(onn_gl(g), "gl", "E" + std::to_string(i + 1) + std::to_string(j + 1));
            }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
            IntMatrix b(n, n);
            b(k, l) = 1;
            b(l, k) = -1;
            std::string tag = std::to_string(k + 1) + std::to_string(l + 1);
            push(onn_shear_upper(b), "shear_upper", "U" + tag);
            push(onn_shear_lower(b), "shear_lower", "L" + tag);
        }
    return out;
}

std::pair<std::vector<IntVector>, std::vector<IntVector>> act_on_chern(const IntMatrix& g, const DgRingModel& base,
                                                                       const std::vector<IntVector>& c,
                                                                       const std::vector<IntVector>& c_hat)
{
    if (!is_onn(g))
        throw DomainError("matrix is not in O(n,n,Z)");
    const std::size_t n = g.rows() / 2;
    if (c.size() != n || c_hat.size() != n)
        throw InputError("expected " + std::to_string(n) + " Chern cochains on each side", "chern");
    std::vector<IntVector> stacked = c;
    stacked.insert(stacked.end(), c_hat.begin(), c_hat.end());
    const std::size_t len = base.dim(2);
    for (const auto& v : stacked)
        if (v.size() != len)
            throw InputError("Chern cochain has the wrong length", "chern");
    std::vector<IntVector> out(2 * n, zero_vector(len));
    for (std::size_t i = 0; i < 2 * n; ++i)
        for (std::size_t j = 0; j < 2 * n; ++j)
            if (g(i, j) != 0)
                out[i] = add(out[i], scale(g(i, j), stacked[j]));
    std::vector<IntVector> c2(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<IntVector> ch2(out.begin() + static_cast<std::ptrdiff_t>(n), out.end());
    if (base.top_degree() >= 4) {
        IntVector before = zero_vector(base.dim(4)), after = zero_vector(base.dim(4));
        for (std::size_t i = 0; i < n; ++i) {
            before = add(before, base.multiply(2, c[i], 2, c_hat[i]));
            after = add(after, base.multiply(2, c2[i], 2, ch2[i]));
        }
        if (!base.cohomology(4).is_zero_class(sub(after, before)))
            throw DomainError("internal inconsistency: Σ c_i ĉ_i not preserved");
    }
    return {c2, ch2};
}

namespace {

Triple flip_triple(const Triple& t)
{
    const std::size_t n = t.rank();
    Triple out(t.dual, t.side, {});
    std::vector<IntVector> imgs;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        std::size_t target = i < n ? n + i : i - n;
        imgs.push_back(out.doubled->embed(0, IntVector{BigInt(1)}, 1u << target));
    }
    out.w = negate(substitute(*t.doubled, *out.doubled, imgs, 2, t.w));
    return out;
}

Triple gl_triple(const IntMatrix& g, const Triple& t)
{
    const std::size_t n = t.rank();
    const BundleModel& f = *t.side.bundle;
    const BundleModel& fh = *t.dual.bundle;
    const DgRingModel& base = t.base();
    IntMatrix gi = unimodular_inverse(g);
    auto [c2, ch2] = act_on_chern(onn_gl(g), base, f.chern(), fh.chern());
    auto f2 = std::make_shared<BundleModel>(f.base_ptr(), c2, f.fiber_labels());
    auto fh2 = std::make_shared<BundleModel>(f.base_ptr(), ch2, fh.fiber_labels());
    // y_j ↦ Σ_i (G^{-1})_{ji} y'_i and ŷ_j ↦ Σ_i G_{ij} ŷ'_i
    std::vector<IntVector> img_f, img_h;
    for (std::size_t j = 0; j < n; ++j) {
        IntVector a = zero_vector(f2->dim(1)), b = zero_vector(fh2->dim(1));
        for (std::size_t i = 0; i < n; ++i) {
            a = add(a, scale(gi(j, i), f2->embed(0, IntVector{BigInt(1)}, 1u << i)));
            b = add(b, scale(g(i, j), fh2->embed(0, IntVector{BigInt(1)}, 1u << i)));
        }
        img_f.push_back(a);
        img_h.push_back(b);
    }
    Triple out(Pair(f2, substitute(f, *f2, img_f, 3, t.side.flux)),
               Pair(fh2, substitute(fh, *fh2, img_h, 3, t.dual.flux)), {});
    std::vector<IntVector> img_d;
    for (std::size_t j = 0; j < n; ++j) {
        IntVector a = zero_vector(out.doubled->dim(1));
        for (std::size_t i = 0; i < n; ++i)
            a = add(a, scale(gi(j, i), out.doubled->embed(0, IntVector{BigInt(1)}, 1u << i)));
        img_d.push_back(a);
    }
    for (std::size_t j = 0; j < n; ++j) {
        IntVector b = zero_vector(out.doubled->dim(1));
        for (std::size_t i = 0; i < n; ++i)
            b = add(b, scale(g(i, j), out.doubled->embed(0, IntVector{BigInt(1)}, 1u << (n + i))));
        img_d.push_back(b);
    }
    out.w = substitute(*t.doubled, *out.doubled, img_d, 2, t.w);
    return out;
}

// New dual Chern cochains ĉ + B·c; the dual flux and w are recovered by
// solving the defining linear conditions of a triple.
Triple lower_shear_triple(const IntMatrix& b, const Triple& t)
{
    const std::size_t n = t.rank();
    const BundleModel& f = *t.side.bundle;
    auto [c2, ch2] = act_on_chern(onn_shear_lower(b), t.base(), f.chern(), t.dual.bundle->chern());
    auto fh2 = std::make_shared<BundleModel>(f.base_ptr(), ch2, t.dual.bundle->fiber_labels());
    Triple shell(t.side, Pair(fh2, zero_vector(fh2->dim(3))), {});
    const BundleModel& dm = *shell.doubled;

    const std::size_t nz = fh2->dim(3), nw = dm.dim(2), nv = fh2->dim(2);
    auto low = below_filtration(*fh2, 3, 3);
    const auto& monos = dm.monomials(2);
    std::vector<std::size_t> mixed;
    const unsigned side_mask = (1u << n) - 1;
    for (std::size_t j = 0; j < monos.size(); ++j)
        if ((monos[j] & side_mask) && (monos[j] & ~side_mask))
            mixed.push_back(j);

    const std::size_t rows = fh2->dim(4) + dm.dim(3) + low.size() + mixed.size();
    IntMatrix sys(rows, nz + nw + nv);
    IntVector rhs = zero_vector(rows);
    std::size_t r0 = 0;
    auto unit = [](std::size_t len, std::size_t i) {
        IntVector e = zero_vector(len);
        e[i] = 1;
        return e;
    };
    // dẑ' = 0
    for (std::size_t j = 0; j < nz; ++j) {
        IntVector col = fh2->apply_d(3, unit(nz, j));
        for (std::size_t i = 0; i < col.size(); ++i)
            sys(r0 + i, j) = col[i];
    }
    r0 += fh2->dim(4);
    // dw' - p̂*ẑ' = -p*z
    for (std::size_t j = 0; j < nz; ++j) {
        IntVector col = include_fiber(*fh2, dm, iota(n, n), 3, unit(nz, j));
        for (std::size_t i = 0; i < col.size(); ++i)
            sys(r0 + i, j) = -col[i];
    }
    for (std::size_t j = 0; j < nw; ++j) {
        IntVector col = dm.apply_d(2, unit(nw, j));
        for (std::size_t i = 0; i < col.size(); ++i)
            sys(r0 + i, nz + j) = col[i];
    }
    IntVector pz = include_fiber(f, dm, iota(0, n), 3, t.side.flux);
    for (std::size_t i = 0; i < pz.size(); ++i)
        rhs[r0 + i] = -pz[i];
    r0 += dm.dim(3);
    // leading part of ẑ': ẑ' - dv ≡ Σ ζ_i ⊗ ŷ_i below filtration 3
    IntVector lead = zero_vector(nz);
    for (std::size_t i = 0; i < n; ++i)
        lead = add(lead, fh2->embed(2, f.chern()[i], 1u << i));
    for (std::size_t i = 0; i < low.size(); ++i) {
        sys(r0 + i, low[i]) = 1;
        rhs[r0 + i] = lead[low[i]];
    }
    for (std::size_t j = 0; j < nv; ++j) {
        IntVector col = fh2->apply_d(2, unit(nv, j));
        for (std::size_t i = 0; i < low.size(); ++i)
            sys(r0 + i, nz + nw + j) = -col[low[i]];
    }
    r0 += low.size();
    // mixed fiber part of w' is Σ y_i ŷ_i
    for (std::size_t i = 0; i < mixed.size(); ++i) {
        unsigned mask = monos[mixed[i]];
        sys(r0 + i, nz + dm.index(0, 0, mask)) = 1;
        for (std::size_t k = 0; k < n; ++k)
            if (mask == ((1u << k) | (1u << (n + k))))
                rhs[r0 + i] = 1;
    }
    auto sol = solve(sys, rhs);
    if (!sol)
        throw DomainError("no triple with the sheared dual Chern classes exists over this pair");
    IntVector zhat(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(nz));
    IntVector w(sol->begin() + static_cast<std::ptrdiff_t>(nz), sol->begin() + static_cast<std::ptrdiff_t>(nz + nw));
    return Triple(t.side, Pair(fh2, zhat), w);
}

}  // namespace

Triple act_on_triple(const IntMatrix& g, const Triple& t)
{
    if (!is_onn(g))
        throw DomainError("matrix is not in O(n,n,Z)");
    const std::size_t n = g.rows() / 2;
    if (n != t.rank())
        throw InputError("O(n,n) element has n = " + std::to_string(n) + " but the triple has rank " +
                             std::to_string(t.rank()),
                         "matrix");
    OnnElement e = classify_onn(g);
    Triple out;
    if (e.family == "identity")
        out = t;
    else if (e.family == "flip")
        out = flip_triple(t);
    else if (e.family == "gl")
        out = gl_triple(block(g, 0, 0, n), t);
    else if (e.family == "shear_lower")
        out = lower_shear_triple(block(g, n, 0, n), t);
    else if (e.family == "shear_upper")
        out = flip_triple(lower_shear_triple(block(g, 0, n, n), flip_triple(t)));
    else
        throw DomainError("unsupported O(n,n,Z) element (family '" + e.family +
                          "'); act with flip, gl blocks or shears and compose");
    TripleReport rep = validate_triple(out);
    if (!rep.all_pass())
        for (const auto& item : rep.items)
            if (!item.pass)
                throw DomainError("acted triple fails '" + item.name + "': " + item.detail);
    return out;
}

}  // namespace tdk
