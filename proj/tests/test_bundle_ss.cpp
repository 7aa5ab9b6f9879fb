#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "tdk/bundle.hpp"
#include "tdk/errors.hpp"
#include "tdk/spectral.hpp"

using namespace tdk;

namespace {

std::vector<FgAbelianGroup> bundle_cohomology(const BundleModel& m)
{
    std::vector<FgAbelianGroup> out;
    for (int k = 0; k <= m.top_degree(); ++k)
        out.push_back(m.cohomology(k).group());
    return out;
}

void check_against_oracle(const BundleModel& m)
{
    for (int k = 0; k <= m.top_degree(); ++k) {
        IntMatrix d_in = k > 0 ? m.differential(k - 1).to_dense() : IntMatrix(m.dim(0), 0);
        IntMatrix d_out = m.differential(k).to_dense();
        INFO("degree " << k);
        CHECK(support::same(m.cohomology(k).group(), support::oracle_cohomology(m.dim(k), d_in, d_out)));
    }
}

FgAbelianGroup g(std::size_t rank, std::vector<long> torsion = {})
{
    std::vector<BigInt> t(torsion.begin(), torsion.end());
    return FgAbelianGroup(rank, t);
}

BundleModel circle_bundle(const std::string& base, long k)
{
    return BundleModel(builtin_space(base), {IntVector{k}});
}

}  // namespace

TEST_CASE("lens spaces from the Hopf family", "[bundle][gysin]")
{
    for (long k : {0L, 1L, -1L, 2L, 3L, 5L, 12L}) {
        INFO("k = " << k);
        BundleModel m = circle_bundle("sphere2", k);
        check_against_oracle(m);
        auto h = bundle_cohomology(m);
        REQUIRE(h.size() == 4);
        CHECK(h[0] == g(1));
        CHECK(h[3] == g(1));
        if (k == 0) {
            CHECK(h[1] == g(1));
            CHECK(h[2] == g(1));
        } else {
            CHECK(h[1] == g(0));
            CHECK(h[2] == g(0, abs(k) == 1 ? std::vector<long>{} : std::vector<long>{std::labs(k)}));
        }
    }
}

TEST_CASE("Heisenberg nilmanifolds as circle bundles over T^2", "[bundle][gysin]")
{
    for (long k : {1L, 2L, 3L, 4L}) {
        INFO("k = " << k);
        BundleModel m = circle_bundle("torus2", k);
        check_against_oracle(m);
        auto h = bundle_cohomology(m);
        CHECK(h[1] == g(2));
        CHECK(h[2] == g(2, k == 1 ? std::vector<long>{} : std::vector<long>{k}));
        CHECK(h[3] == g(1));
    }
}

TEST_CASE("bundles over products and surfaces agree with the oracle", "[bundle][oracle]")
{
    check_against_oracle(BundleModel(builtin_space("torus3"), {IntVector{1, 0, 0}, IntVector{0, 2, 0}}));
    check_against_oracle(BundleModel(builtin_space("sphere2xsphere2"), {IntVector{1, 0}, IntVector{0, 1}}));
    check_against_oracle(BundleModel(builtin_space("heisenberg"), {IntVector{0, 1, 0}}));
    check_against_oracle(circle_bundle("surface2", 3));
}

TEST_CASE("bundle construction is validated", "[bundle][errors]")
{
    CHECK_THROWS_AS(BundleModel(builtin_space("sphere2"), {IntVector{1, 2}}), InputError);
    // x, y, z with dz = xy: the class xz is closed, yz is closed, xy is exact.
    auto heis = builtin_space("heisenberg");
    CHECK_NOTHROW(BundleModel(heis, {IntVector{1, 0, 0}}));
    CHECK_THROWS_AS(BundleModel(builtin_space("sphere1"), {IntVector{1}}), InputError);
    std::vector<IntVector> many(10, IntVector{0, 0, 0});
    CHECK_THROWS_AS(BundleModel(builtin_space("torus3"), many), InputError);
}

TEST_CASE("bundle differential squares to zero with Koszul signs", "[bundle]")
{
    BundleModel m(builtin_space("torus3"), {IntVector{1, 2, 0}, IntVector{0, 3, 1}, IntVector{1, 1, 1}});
    for (int k = 0; k + 1 < m.top_degree(); ++k)
        CHECK((m.differential(k + 1).to_dense() * m.differential(k).to_dense()).is_zero());
    // d(y1) = ζ1 pulled back
    auto idx = m.find_label(1, "y1");
    REQUIRE(idx);
    IntVector y1 = zero_vector(m.dim(1));
    y1[*idx] = 1;
    CHECK(m.apply_d(1, y1) == m.pullback(2, IntVector{1, 2, 0}));
}

TEST_CASE("E_infinity matches the associated graded of H", "[spectral]")
{
    std::vector<BundleModel> models;
    models.push_back(circle_bundle("sphere2", 3));
    models.push_back(circle_bundle("torus2", 2));
    models.push_back(BundleModel(builtin_space("torus3"), {IntVector{1, 0, 0}, IntVector{0, 0, 2}}));
    models.push_back(BundleModel(builtin_space("heisenberg"), {IntVector{1, 0, 0}}));
    models.push_back(*support::fixture_pair("s2s2_rank2.json").bundle);
    for (const auto& m : models) {
        SpectralSequence ss(m);
        for (int k = 0; k <= m.top_degree(); ++k) {
            std::size_t rank_sum = 0;
            for (int p = 0; p <= k && p <= m.base().top_degree(); ++p) {
                INFO("k=" << k << " p=" << p);
                auto e = ss.infinity_slot(p, k - p).group();
                CHECK(e == ss.associated_graded(p, k).group());
                rank_sum += e.rank();
            }
            IntMatrix d_in = k > 0 ? m.differential(k - 1).to_dense() : IntMatrix(m.dim(0), 0);
            CHECK(rank_sum == support::oracle_cohomology(m.dim(k), d_in, m.differential(k).to_dense()).rank);
        }
    }
}

TEST_CASE("E_2 page of a bundle over a torsion-free base", "[spectral]")
{
    BundleModel m = circle_bundle("torus2", 5);
    SpectralSequence ss(m);
    // E_2^{p,q} = H^p(T^2) ⊗ H^q(S^1)
    const std::size_t betti[] = {1, 2, 1};
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 1; ++q)
            CHECK(ss.slot(2, p, q).group() == g(betti[p]));
    // d_2: E_2^{0,1} → E_2^{2,0} is multiplication by the Chern number.
    GroupHom d2 = ss.differential(2, 0, 1);
    CHECK(d2.image().group() == g(1));
    CHECK(d2.target().group() == g(1));
    CHECK(ss.slot(3, 2, 0).group() == g(0, {5}));
    CHECK(ss.slot(3, 0, 1).group() == g(0));
}

TEST_CASE("filtration report locates the flux", "[spectral]")
{
    Pair p = support::fixture_pair("hopf_k2.json");
    FiltrationReport r = filtration_report(*p.bundle, 3, p.flux);
    CHECK_FALSE(r.zero_class);
    CHECK(r.p == 2);
    REQUIRE(r.leading_terms.size() == 1);
    CHECK(r.leading_terms[0].first == "y⊗g2");
    CHECK(r.leading_terms[0].second == 2);
    CHECK_THROWS_AS(filtration_report(*p.bundle, 3, IntVector{1, 0}), InputError);
}
