#include "tdk/triple.hpp"

#include "tdk/errors.hpp"
#include "tdk/snf.hpp"

namespace tdk {

namespace {

IntVector unit_vector(std::size_t n, std::size_t i)
{
    IntVector e = zero_vector(n);
    e[i] = 1;
    return e;
}

IntVector base_unit() { return IntVector{BigInt(1)}; }

std::vector<std::size_t> iota(std::size_t from, std::size_t count)
{
    std::vector<std::size_t> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = from + i;
    return v;
}

IntMatrix dense_d(const BundleModel& m, int k)
{
    if (k < 0 || k > m.top_degree())
        return IntMatrix(m.dim(k + 1), m.dim(k));
    return m.differential(k).to_dense();
}

IntVector restrict_rows(const IntVector& v, const std::vector<std::size_t>& rows)
{
    IntVector out;
    for (auto r : rows)
        out.push_back(v[r]);
    return out;
}

struct NormalForm {
    IntVector y0;  ///< degree-2 cochain with z = x + d y0
    IntVector x;   ///< cocycle in F^2
};

std::optional<NormalForm> normal_form(const BundleModel& m, const IntVector& z)
{
    auto rows = below_filtration(m, 3, 2);
    IntMatrix d2 = dense_d(m, 2);
    auto y = solve(d2.select_rows(rows), restrict_rows(z, rows));
    if (!y)
        return std::nullopt;
    return NormalForm{*y, sub(z, d2 * *y)};
}

// z - Σ partner_i ⊗ y_i lies in F^3 + im d
bool leading_part_matches(const BundleModel& m, const IntVector& z, const std::vector<IntVector>& partner)
{
    IntVector diff = z;
    for (std::size_t i = 0; i < partner.size(); ++i)
        diff = sub(diff, m.embed(2, partner[i], 1u << i));
    auto rows = below_filtration(m, 3, 3);
    return solve(dense_d(m, 2).select_rows(rows), restrict_rows(diff, rows)).has_value();
}

IntVector pull_side(const Triple& t, int k, const IntVector& v)
{
    return include_fiber(*t.side.bundle, *t.doubled, iota(0, t.rank()), k, v);
}

IntVector pull_dual(const Triple& t, int k, const IntVector& v)
{
    return include_fiber(*t.dual.bundle, *t.doubled, iota(t.rank(), t.rank()), k, v);
}

void require_closed_base(const DgRingModel& base, int k, const IntVector& v, const std::string& where)
{
    if (v.size() != base.dim(k))
        throw InputError("expected a degree-" + std::to_string(k) + " base cochain with " +
                             std::to_string(base.dim(k)) + " entries",
                         where);
    if (!base.is_closed(k, v))
        throw InputError("base cochain is not closed", where);
}

}  // namespace

Pair::Pair(BundlePtr b, IntVector f) : bundle(std::move(b)), flux(std::move(f))
{
    if (!bundle)
        throw std::invalid_argument("pair needs a bundle");
    if (flux.size() != bundle->dim(3))
        throw InputError("flux has " + std::to_string(flux.size()) + " entries, degree 3 of the total model has " +
                             std::to_string(bundle->dim(3)),
                         "flux");
    if (!bundle->is_closed(3, flux))
        throw InputError("flux cochain is not closed (d z ≠ 0)", "flux");
}

Triple::Triple(Pair s, Pair d, IntVector w_)
    : side(std::move(s)), dual(std::move(d)), w(std::move(w_))
{
    doubled = doubled_model(*side.bundle, *dual.bundle);
    if (w.empty())
        w = zero_vector(doubled->dim(2));
    if (w.size() != doubled->dim(2))
        throw InputError("w has " + std::to_string(w.size()) + " entries, degree 2 of the doubled model has " +
                             std::to_string(doubled->dim(2)),
                         "w");
}

IntVector base_class(const DgRingModel& base, int k, const IntVector& v)
{
    if (k > base.top_degree())
        return {};
    auto r = base.cohomology(k).reduce(v);
    if (!r)
        throw InputError("base cochain of degree " + std::to_string(k) + " is not closed");
    return *r;
}

Dualizability is_dualizable(const Pair& pair)
{
    Dualizability out;
    out.certificate = filtration_report(*pair.bundle, 3, pair.flux);
    out.dualizable = out.certificate.zero_class || out.certificate.p >= 2;
    return out;
}

DualChern extract_dual_chern(const Pair& pair)
{
    const BundleModel& m = *pair.bundle;
    auto nf = normal_form(m, pair.flux);
    if (!nf)
        throw DomainError("pair is not dualizable: the flux class is not in the second filtration step");
    const std::size_t n = m.fiber_rank();
    const DgRingModel& base = m.base();
    DualChern out;
    for (std::size_t i = 0; i < n; ++i) {
        out.cocycles.push_back(m.component(3, nf->x, 1u << i));
        out.classes.push_back(base_class(base, 2, out.cocycles.back()));
    }
    if (base.top_degree() >= 4) {
        IntVector rel = zero_vector(base.dim(4));
        for (std::size_t i = 0; i < n; ++i)
            rel = add(rel, base.multiply(2, m.chern()[i], 2, out.cocycles[i]));
        if (!base.cohomology(4).is_zero_class(rel))
            throw DomainError("internal inconsistency: Σ c_i ∪ ĉ_i ≠ 0 in H^4(B)");
    }
    // B = E_{lk} - E_{kl} adds c_k to ĉ_l and subtracts c_l from ĉ_k
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
            std::vector<IntVector> gen;
            for (std::size_t i = 0; i < n; ++i) {
                IntVector v = zero_vector(base.dim(2));
                if (i == l)
                    v = m.chern()[k];
                if (i == k)
                    v = negate(m.chern()[l]);
                gen.push_back(base_class(base, 2, v));
            }
            out.ambiguity.push_back(std::move(gen));
        }
    return out;
}

Triple dualize(const Pair& pair, const DualizeOptions& options)
{
    const BundleModel& m = *pair.bundle;
    const DgRingModel& base = m.base();
    const std::size_t n = m.fiber_rank();
    auto nf = normal_form(m, pair.flux);
    if (!nf)
        throw DomainError("pair is not dualizable: the flux class is not in the second filtration step");

    if (options.shear) {
        const IntMatrix& b = *options.shear;
        if (b.rows() != n || b.cols() != n || !(b.transpose() == -b))
            throw DomainError("shear matrix must be an antisymmetric " + std::to_string(n) + "x" +
                              std::to_string(n) + " matrix");
        IntVector xb = zero_vector(m.dim(2));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = k + 1; l < n; ++l)
                if (b(l, k) != 0)
                    xb = add(xb, scale(b(l, k), m.embed(0, base_unit(), (1u << k) | (1u << l))));
        nf->x = add(nf->x, m.apply_d(2, xb));
        nf->y0 = sub(nf->y0, xb);
    }

    std::vector<IntVector> zeta_hat;
    for (std::size_t i = 0; i < n; ++i)
        zeta_hat.push_back(m.component(3, nf->x, 1u << i));
    const IntVector beta = m.component(3, nf->x, 0);

    auto dual_bundle = std::make_shared<BundleModel>(m.base_ptr(), zeta_hat, fiber_labels(n, true));
    IntVector zhat = dual_bundle->embed(3, beta, 0);
    for (std::size_t i = 0; i < n; ++i)
        zhat = add(zhat, dual_bundle->embed(2, m.chern()[i], 1u << i));

    std::optional<IntVector> phi;
    if (options.extension) {
        const IntVector& alpha = *options.extension;
        require_closed_base(base, 3, alpha, "extension");
        phi = solve(dense_d(m, 2), m.pullback(3, alpha));
        if (!phi)
            throw DomainError("extension class is not in the kernel of π*: H^3(B) → H^3(F)");
        zhat = add(zhat, dual_bundle->pullback(3, alpha));
    }

    Triple t(pair, Pair(dual_bundle, zhat), {});
    IntVector w = zero_vector(t.doubled->dim(2));
    for (std::size_t i = 0; i < n; ++i)
        w = add(w, t.doubled->embed(0, base_unit(), (1u << i) | (1u << (n + i))));
    w = sub(w, pull_side(t, 2, nf->y0));
    if (phi)
        w = add(w, pull_side(t, 2, *phi));
    t.w = std::move(w);
    return t;
}

bool TripleReport::all_pass() const
{
    for (const auto& i : items)
        if (!i.pass)
            return false;
    return true;
}

const CheckItem* TripleReport::find(const std::string& name) const
{
    for (const auto& i : items)
        if (i.name == name)
            return &i;
    return nullptr;
}

TripleReport validate_triple(const Triple& t)
{
    TripleReport rep;
    auto check = [&](const std::string& name, auto&& fn) {
        CheckItem item{name, false, {}};
        try {
            item.pass = fn(item.detail);
        } catch (const std::exception& e) {
            item.pass = false;
            item.detail = e.what();
        }
        rep.items.push_back(std::move(item));
    };
    const BundleModel& f = *t.side.bundle;
    const BundleModel& g = *t.dual.bundle;
    const std::size_t n = t.rank();

    check("same_base", [&](std::string& d) {
        bool ok = f.base() == g.base() && f.fiber_rank() == g.fiber_rank();
        if (!ok)
            d = "side and dual bundles do not share base and fiber rank";
        return ok;
    });
    check("chern_closed", [&](std::string& d) {
        for (const auto* b : {&f, &g})
            for (std::size_t i = 0; i < n; ++i)
                if (b->base().top_degree() >= 2 && !b->base().is_closed(2, b->chern()[i])) {
                    d = "Chern cochain " + std::to_string(i + 1) + " is not closed";
                    return false;
                }
        return true;
    });
    check("flux_closed", [&](std::string& d) {
        if (!f.is_closed(3, t.side.flux)) {
            d = "d z ≠ 0";
            return false;
        }
        if (!g.is_closed(3, t.dual.flux)) {
            d = "d ẑ ≠ 0";
            return false;
        }
        return true;
    });
    check("side_leading_part", [&](std::string& d) {
        bool ok = leading_part_matches(f, t.side.flux, g.chern());
        if (!ok)
            d = "leading part of z in E^{2,1} is not Σ y_i⊗ĉ_i";
        return ok;
    });
    check("dual_leading_part", [&](std::string& d) {
        bool ok = leading_part_matches(g, t.dual.flux, f.chern());
        if (!ok)
            d = "leading part of ẑ in E^{2,1} is not Σ ŷ_i⊗c_i";
        return ok;
    });
    check("dw_equation", [&](std::string& d) {
        IntVector rhs = sub(pull_dual(t, 3, t.dual.flux), pull_side(t, 3, t.side.flux));
        IntVector lhs = t.doubled->apply_d(2, t.w);
        if (lhs == rhs)
            return true;
        for (std::size_t i = 0; i < lhs.size(); ++i)
            if (lhs[i] != rhs[i]) {
                d = "dw and p̂*ẑ - p*z differ at '" + t.doubled->label(3, i) + "'";
                break;
            }
        return false;
    });
    check("condition_p", [&](std::string& d) {
        const BundleModel& dm = *t.doubled;
        IntVector r = dm.fiber_restriction(2, t.w);
        const auto& monos = dm.monomials(2);
        const unsigned side_mask = (1u << n) - 1;
        std::vector<IntVector> pulled;
        for (std::size_t j = 0; j < monos.size(); ++j) {
            unsigned mask = monos[j];
            if (mask == (mask & side_mask) || (mask & side_mask) == 0)
                pulled.push_back(unit_vector(monos.size(), j));
            for (std::size_t i = 0; i < n; ++i)
                if (mask == ((1u << i) | (1u << (n + i))))
                    r[j] -= 1;
        }
        Subquotient q = Subquotient::make(monos.size(), IntMatrix::identity(monos.size()),
                                          IntMatrix::from_columns(monos.size(), pulled));
        bool ok = q.is_zero_class(r);
        if (!ok) {
            for (std::size_t j = 0; j < monos.size(); ++j) {
                unsigned mask = monos[j];
                if (r[j] != 0 && (mask & side_mask) != 0 && (mask & ~side_mask) != 0) {
                    d = "fiber class of w differs from Σ y_i ŷ_i at '" + dm.monomial_label(mask) + "'";
                    break;
                }
            }
        }
        return ok;
    });
    check("quadratic_relation", [&](std::string& d) {
        const DgRingModel& base = f.base();
        if (base.top_degree() < 4)
            return true;
        IntVector rel = zero_vector(base.dim(4));
        for (std::size_t i = 0; i < n; ++i)
            rel = add(rel, base.multiply(2, f.chern()[i], 2, g.chern()[i]));
        bool ok = base.cohomology(4).is_zero_class(rel);
        if (!ok)
            d = "Σ c_i ∪ ĉ_i ≠ 0 in H^4(B)";
        return ok;
    });
    return rep;
}

Triple point_triple()
{
    auto point = builtin_space("point");
    auto side = std::make_shared<BundleModel>(point, std::vector<IntVector>{{}}, fiber_labels(1, false));
    auto dual = std::make_shared<BundleModel>(point, std::vector<IntVector>{{}}, fiber_labels(1, true));
    Triple t(Pair(side, zero_vector(side->dim(3))), Pair(dual, zero_vector(dual->dim(3))), {});
    t.w = t.doubled->embed(0, base_unit(), 0b11);
    return t;
}

Triple h3_action(const Triple& t, const IntVector& alpha)
{
    const DgRingModel& base = t.base();
    if (base.top_degree() < 3) {
        if (!alpha.empty() && !is_zero(alpha))
            throw InputError("base has no degree-3 cochains", "alpha");
        return t;
    }
    require_closed_base(base, 3, alpha, "alpha");
    Triple out = t;
    out.side = Pair(t.side.bundle, add(t.side.flux, t.side.bundle->pullback(3, alpha)));
    out.dual = Pair(t.dual.bundle, add(t.dual.flux, t.dual.bundle->pullback(3, alpha)));
    return out;
}

IntVector torsor_difference(const Triple& t1, const Triple& t2)
{
    if (!(*t1.side.bundle == *t2.side.bundle) || !(*t1.dual.bundle == *t2.dual.bundle))
        throw InputError("triples do not live over the same pair of bundles");
    const BundleModel& f = *t1.side.bundle;
    const BundleModel& g = *t1.dual.bundle;
    const BundleModel& dm = *t1.doubled;
    const DgRingModel& base = t1.base();

    const std::size_t na = base.dim(3), nf = f.dim(2), ng = g.dim(2), nk = dm.dim(1);
    const std::size_t r1 = f.dim(3), r2 = g.dim(3), r3 = dm.dim(2), r4 = base.dim(4);
    IntMatrix sys(r1 + r2 + r3 + r4, na + nf + ng + nk);
    auto put = [&](std::size_t row0, std::size_t col, const IntVector& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            sys(row0 + i, col) = v[i];
    };
    for (std::size_t j = 0; j < na; ++j) {
        IntVector e = unit_vector(na, j);
        put(0, j, f.pullback(3, e));
        put(r1, j, g.pullback(3, e));
        if (r4 > 0)
            put(r1 + r2 + r3, j, base.apply_d(3, e));
    }
    for (std::size_t j = 0; j < nf; ++j) {
        IntVector e = unit_vector(nf, j);
        put(0, na + j, f.apply_d(2, e));
        put(r1 + r2, na + j, negate(pull_side(t1, 2, e)));
    }
    for (std::size_t j = 0; j < ng; ++j) {
        IntVector e = unit_vector(ng, j);
        put(r1, na + nf + j, g.apply_d(2, e));
        put(r1 + r2, na + nf + j, pull_dual(t1, 2, e));
    }
    for (std::size_t j = 0; j < nk; ++j)
        put(r1 + r2, na + nf + ng + j, dm.apply_d(1, unit_vector(nk, j)));

    IntVector rhs = concat(concat(sub(t1.side.flux, t2.side.flux), sub(t1.dual.flux, t2.dual.flux)),
                           concat(sub(t1.w, t2.w), zero_vector(r4)));
    auto sol = solve(sys, rhs);
    if (!sol)
        throw DomainError("the triples are not related by the H^3(B) action");
    if (na == 0)
        return {};
    Subquotient h3 = base.cohomology(3);
    IntMatrix ker = kernel_basis(sys);
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        IntVector col = ker.column(c);
        IntVector a(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(na));
        if (!h3.is_zero_class(a))
            throw DomainError("difference class is not unique: the H^3(B) action is not free here");
    }
    IntVector alpha(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(na));
    return h3.reduce_or_throw(alpha);
}

namespace {

void check_gauge_input(const Triple& t, const std::vector<IntVector>& psi, const std::string& where)
{
    if (psi.size() != t.rank())
        throw InputError("expected " + std::to_string(t.rank()) + " degree-1 classes", where);
    for (std::size_t i = 0; i < psi.size(); ++i)
        require_closed_base(t.base(), 1, psi[i], where + "[" + std::to_string(i) + "]");
}

}  // namespace

Triple gauge_act(const Triple& t, const std::vector<IntVector>& psi, const std::vector<IntVector>& psi_hat)
{
    check_gauge_input(t, psi, "psi");
    check_gauge_input(t, psi_hat, "psi_hat");
    const std::size_t n = t.rank();
    const BundleModel& f = *t.side.bundle;
    const BundleModel& g = *t.dual.bundle;
    const BundleModel& dm = *t.doubled;
    std::vector<IntVector> img_f, img_g, img_d;
    for (std::size_t i = 0; i < n; ++i) {
        img_f.push_back(add(f.embed(0, base_unit(), 1u << i), f.embed(1, psi[i], 0)));
        img_g.push_back(add(g.embed(0, base_unit(), 1u << i), g.embed(1, psi_hat[i], 0)));
    }
    for (std::size_t i = 0; i < n; ++i)
        img_d.push_back(add(dm.embed(0, base_unit(), 1u << i), dm.embed(1, psi[i], 0)));
    for (std::size_t i = 0; i < n; ++i)
        img_d.push_back(add(dm.embed(0, base_unit(), 1u << (n + i)), dm.embed(1, psi_hat[i], 0)));
    Triple out = t;
    out.side = Pair(t.side.bundle, substitute(f, f, img_f, 3, t.side.flux));
    out.dual = Pair(t.dual.bundle, substitute(g, g, img_g, 3, t.dual.flux));
    out.w = substitute(dm, dm, img_d, 2, t.w);
    return out;
}

IntVector gauge_shift(const Triple& t, const std::vector<IntVector>& psi, const std::vector<IntVector>& psi_hat)
{
    check_gauge_input(t, psi, "psi");
    check_gauge_input(t, psi_hat, "psi_hat");
    const DgRingModel& base = t.base();
    if (base.top_degree() < 3)
        return {};
    IntVector acc = zero_vector(base.dim(3));
    for (std::size_t i = 0; i < t.rank(); ++i) {
        acc = add(acc, base.multiply(2, t.dual.bundle->chern()[i], 1, psi[i]));
        acc = add(acc, base.multiply(2, t.side.bundle->chern()[i], 1, psi_hat[i]));
    }
    return base_class(base, 3, acc);
}

ExtensionReport extension_report(const Pair& pair)
{
    ExtensionReport rep;
    const BundleModel& m = *pair.bundle;
    const DgRingModel& base = m.base();
    rep.dualizability = is_dualizable(pair);
    if (rep.dualizability.dualizable)
        rep.dual_chern = extract_dual_chern(pair);

    const std::size_t b3 = base.dim(3);
    Subquotient h3b = base.cohomology(3);
    Subquotient h3f = m.cohomology(3);
    IntMatrix pull(m.dim(3), b3);
    for (std::size_t j = 0; j < b3; ++j)
        pull.set_column(j, m.pullback(3, unit_vector(b3, j)));
    rep.kernel_pullback = GroupHom(h3b, h3f, pull).kernel();

    IntMatrix bdry = base.top_degree() >= 3 ? base.differential(2).to_dense() : IntMatrix(b3, 0);
    std::vector<IntVector> gens;
    if (base.top_degree() >= 3) {
        IntMatrix h1 = base.cohomology(1).cycle_basis();
        for (std::size_t i = 0; i < m.fiber_rank(); ++i)
            for (std::size_t j = 0; j < h1.cols(); ++j)
                gens.push_back(base.multiply(2, m.chern()[i], 1, h1.column(j)));
    }
    IntMatrix cgen = IntMatrix::from_columns(b3, gens);
    rep.image_c = Subquotient::make(b3, cgen.hstack(bdry), bdry);
    rep.torsor_group = quotient_of_subgroups(rep.kernel_pullback, rep.image_c);
    rep.cross_check = SpectralSequence(m).differential(3, 0, 2).image();
    return rep;
}

bool same_pair_class(const Pair& a, const Pair& b)
{
    if (!(*a.bundle == *b.bundle))
        return false;
    return a.bundle->cohomology(3).is_zero_class(sub(a.flux, b.flux));
}

}  // namespace tdk
