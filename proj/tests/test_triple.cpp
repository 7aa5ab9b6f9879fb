#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "tdk/errors.hpp"
#include "tdk/triple.hpp"

using namespace tdk;

namespace {

const std::vector<std::string> kDualizable = {
    "hopf_k0.json",        "hopf_k1.json",        "hopf_km1.json",       "hopf_k2.json",
    "hopf_k3.json",        "t3_over_t2_k1.json",  "t3_over_t2_k2.json",  "t3_over_t2_k3.json",
    "s3_by_circle_h0.json", "s3_by_circle_h1.json", "t4_over_t3.json",   "heisenberg_base.json",
    "t2_rank2.json",       "s2s2_rank2.json",     "surface2_k1.json"};

IntVector unit(std::size_t n, std::size_t i)
{
    IntVector v = zero_vector(n);
    v[i] = 1;
    return v;
}

}  // namespace

TEST_CASE("dualizability of the fixture pairs", "[triple]")
{
    for (const auto& name : kDualizable) {
        INFO(name);
        CHECK(is_dualizable(support::fixture_pair(name)).dualizable);
    }
    Pair vol = support::fixture_pair("t3_over_s1_vol.json");
    Dualizability d = is_dualizable(vol);
    CHECK_FALSE(d.dualizable);
    CHECK(d.certificate.p < 2);
    CHECK_THROWS_AS(dualize(vol), DomainError);
    CHECK_THROWS_AS(extract_dual_chern(vol), DomainError);
}

TEST_CASE("dualized triples satisfy dw = p̂*ẑ - p*z", "[triple]")
{
    for (const auto& name : kDualizable) {
        INFO(name);
        Pair p = support::fixture_pair(name);
        Triple t = dualize(p);
        CHECK(validate_triple(t).all_pass());

        // Recompute the defining equation directly on the doubled model.
        const std::size_t n = t.rank();
        std::vector<std::size_t> side_gens(n), dual_gens(n);
        for (std::size_t i = 0; i < n; ++i) {
            side_gens[i] = i;
            dual_gens[i] = n + i;
        }
        IntVector pz = include_fiber(*t.side.bundle, *t.doubled, side_gens, 3, t.side.flux);
        IntVector pzhat = include_fiber(*t.dual.bundle, *t.doubled, dual_gens, 3, t.dual.flux);
        CHECK(t.doubled->apply_d(2, t.w) == sub(pzhat, pz));
        CHECK(t.dual.bundle->base_ptr() == p.bundle->base_ptr());
    }
}

TEST_CASE("classical circle bundle duals", "[triple]")
{
    // S^3 with k units of flux is dual to the lens space L(k,1) with one unit.
    for (long k : {1L, 2L, 3L}) {
        auto base = builtin_space("sphere2");
        auto bundle = std::make_shared<BundleModel>(base, std::vector<IntVector>{IntVector{1}});
        IntVector z = zero_vector(bundle->dim(3));
        z[*bundle->find_label(3, "y⊗g2")] = k;
        Triple t = dualize(Pair(bundle, z));
        CHECK(t.dual.bundle->chern()[0] == IntVector{k});
        IntVector expected = zero_vector(t.dual.bundle->dim(3));
        expected[*t.dual.bundle->find_label(3, "ŷ⊗g2")] = 1;
        CHECK(same_pair_class(t.dual, Pair(t.dual.bundle, expected)));
    }
}

TEST_CASE("dualizing twice returns the original pair", "[triple]")
{
    for (const auto& name : kDualizable) {
        INFO(name);
        Pair p = support::fixture_pair(name);
        Triple t = dualize(p);
        Triple back = dualize(t.dual);
        CHECK(back.dual.bundle->chern() == p.bundle->chern());
        // relabel ŷ → y for the comparison
        Pair relabelled(std::make_shared<BundleModel>(p.bundle->base_ptr(), back.dual.bundle->chern()),
                        back.dual.flux);
        CHECK(same_pair_class(relabelled, p));
    }
}

TEST_CASE("shears change the dual Chern classes by B·c", "[triple]")
{
    Pair p = support::fixture_pair("t2_rank2.json");
    DualChern base_dual = extract_dual_chern(p);
    IntMatrix b{{0, 1}, {-1, 0}};
    Triple t = dualize(p, {b, std::nullopt});
    CHECK(validate_triple(t).all_pass());
    const auto& c = p.bundle->chern();
    for (std::size_t i = 0; i < 2; ++i) {
        IntVector expected = base_dual.cocycles[i];
        for (std::size_t j = 0; j < 2; ++j)
            expected = add(expected, scale(b(i, j), c[j]));
        CHECK(base_class(p.base(), 2, t.dual.bundle->chern()[i]) == base_class(p.base(), 2, expected));
    }
    CHECK_THROWS_AS(dualize(p, {IntMatrix{{1, 0}, {0, 0}}, std::nullopt}), DomainError);
}

TEST_CASE("H^3 acts freely and torsor differences are additive", "[triple]")
{
    Pair p = support::fixture_pair("t4_over_t3.json");
    Triple t = dualize(p);
    Subquotient h3 = p.base().cohomology(3);
    REQUIRE(h3.group().generator_count() == 1);
    IntVector alpha = h3.representative(IntVector{3});
    Triple shifted = h3_action(t, alpha);
    CHECK(validate_triple(shifted).all_pass());
    CHECK(torsor_difference(shifted, t) == IntVector{3});
    CHECK(torsor_difference(t, shifted) == IntVector{-3});
    CHECK(torsor_difference(h3_action(shifted, alpha), t) == IntVector{6});
    CHECK_THROWS_AS(h3_action(t, IntVector{1, 0}), InputError);
}

TEST_CASE("gauge transformations shift by ĉ∪ψ + c∪ψ̂", "[triple]")
{
    Pair p = support::fixture_pair("t3_over_t2_k2.json");
    Triple t = dualize(p);
    const auto& base = p.base();
    Subquotient h3 = base.cohomology(3);
    for (std::size_t i = 0; i < base.dim(1); ++i) {
        IntVector psi = unit(base.dim(1), i), none = zero_vector(base.dim(1));
        Triple g = gauge_act(t, {psi}, {none});
        CHECK(validate_triple(g).all_pass());
        CHECK(torsor_difference(g, t) == gauge_shift(t, {psi}, {none}));
        IntVector cup = base.multiply(2, t.dual.bundle->chern()[0], 1, psi);
        CHECK(gauge_shift(t, {psi}, {none}) == h3.reduce_or_throw(cup));
    }
}

TEST_CASE("validate_triple reports individual failures", "[triple]")
{
    Triple t = dualize(support::fixture_pair("hopf_k1.json"));
    REQUIRE(validate_triple(t).all_pass());
    Triple broken = t;
    broken.w = zero_vector(t.doubled->dim(2));
    TripleReport r = validate_triple(broken);
    CHECK_FALSE(r.all_pass());
    REQUIRE(r.find("dw_equation"));
    CHECK_FALSE(r.find("dw_equation")->pass);
    CHECK(r.find("chern_closed")->pass);

    CHECK(validate_triple(point_triple()).all_pass());
}

TEST_CASE("extension data is consistent", "[triple]")
{
    for (const auto& name : kDualizable) {
        INFO(name);
        ExtensionReport r = extension_report(support::fixture_pair(name));
        CHECK(r.dualizability.dualizable);
        CHECK(r.groups_agree());
        CHECK(r.image_c.group().rank() <= r.kernel_pullback.group().rank());
    }
    ExtensionReport t4 = extension_report(support::fixture_pair("t4_over_t3.json"));
    CHECK(t4.kernel_pullback.group() == FgAbelianGroup::free(1));
    CHECK(t4.torsor_group.group().is_trivial());
}
