#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "tdk/errors.hpp"
#include "tdk/twisted.hpp"

using namespace tdk;

namespace {

const std::vector<std::string> kDualizable = {
    "hopf_k0.json",        "hopf_k1.json",        "hopf_km1.json",       "hopf_k2.json",
    "hopf_k3.json",        "t3_over_t2_k1.json",  "t3_over_t2_k2.json",  "t3_over_t2_k3.json",
    "s3_by_circle_h0.json", "s3_by_circle_h1.json", "t4_over_t3.json",   "heisenberg_base.json",
    "t2_rank2.json",       "s2s2_rank2.json",     "surface2_k1.json"};

/// dim H_parity of the Z/2-graded complex, from ranks of its blocks.
std::size_t oracle_dimension(const TwistedComplex& c, int parity)
{
    auto own = c.parity_indices(parity), other = c.parity_indices(1 - parity);
    const IntMatrix& d = c.matrix();
    std::size_t out_rank = 0, in_rank = 0;
    if (!own.empty() && !other.empty()) {
        out_rank = oracle::rank_q(support::to_oracle(d.select_rows(other).select_cols(own)));
        in_rank = oracle::rank_q(support::to_oracle(d.select_rows(own).select_cols(other)));
    }
    return own.size() - out_rank - in_rank;
}

}  // namespace

TEST_CASE("twisted differential squares to zero", "[twisted]")
{
    for (const auto& name : kDualizable) {
        INFO(name);
        Pair p = support::fixture_pair(name);
        TwistedComplex c(*p.bundle, p.flux);
        CHECK(c.square_zero());
        CHECK((c.matrix() * c.matrix()).is_zero());
        CHECK(c.dimension(0) == oracle_dimension(c, 0));
        CHECK(c.dimension(1) == oracle_dimension(c, 1));
    }
}

TEST_CASE("twisted cohomology of S^3", "[twisted]")
{
    auto s3 = builtin_space("sphere3");
    TwistedDims untwisted = twisted_dims(*s3, IntVector{0});
    CHECK(untwisted.even == 1);
    CHECK(untwisted.odd == 1);
    for (long h : {1L, 2L, -7L}) {
        TwistedDims d = twisted_dims(*s3, IntVector{h});
        CHECK(d.even == 0);
        CHECK(d.odd == 0);
    }
}

TEST_CASE("twisted dimensions depend only on the flux class", "[twisted]")
{
    Pair p = support::fixture_pair("t3_over_t2_k2.json");
    const BundleModel& m = *p.bundle;
    TwistedDims d0 = twisted_dims(m, p.flux);
    for (std::size_t i = 0; i < m.dim(2); ++i) {
        IntVector beta = zero_vector(m.dim(2));
        beta[i] = 3;
        TwistedDims d1 = twisted_dims(m, add(p.flux, m.apply_d(2, beta)));
        CHECK(d1.even == d0.even);
        CHECK(d1.odd == d0.odd);
    }
}

TEST_CASE("non-closed twisting cochains are rejected", "[twisted][errors]")
{
    Pair p = support::fixture_pair("hopf_k1.json");
    IntVector bad = zero_vector(p.bundle->dim(3));
    CHECK_NOTHROW(TwistedComplex(*p.bundle, bad));
    CHECK_THROWS_AS(TwistedComplex(*p.bundle, IntVector{1, 2, 3, 4, 5}), InputError);
    auto heis = builtin_space("heisenberg");
    IntVector not_closed = zero_vector(heis->dim(2));
    not_closed[0] = 1;
    CHECK_THROWS_AS(TwistedComplex(*heis, not_closed), InputError);
}

TEST_CASE("T on the point triple", "[twisted][tmap]")
{
    TMap t = t_transform(point_triple());
    CHECK(t.n == 1);
    CHECK(t.parity_shift() == 1);
    // Columns 1, y; rows 1, ŷ: T(1) = -ŷ and T(y) = 1.
    REQUIRE(t.matrix.rows() == 2);
    REQUIRE(t.matrix.cols() == 2);
    CHECK(t.matrix(0, 0) == 0);
    CHECK(t.matrix(0, 1) == 1);
    CHECK(t.matrix(1, 0) == -1);
    CHECK(t.matrix(1, 1) == 0);
    IsoReport r = verify_iso(point_triple());
    CHECK(r.chain_map);
    CHECK(r.iso);
}

TEST_CASE("T is a chain isomorphism on dualized triples", "[twisted][tmap]")
{
    for (const auto& name : kDualizable) {
        INFO(name);
        Triple t = dualize(support::fixture_pair(name));
        IsoReport r = verify_iso(t);
        CHECK(r.chain_map);
        CHECK(r.iso);
        const int s = static_cast<int>(t.rank() % 2);
        std::size_t side[2] = {r.side.even, r.side.odd};
        std::size_t dual[2] = {r.dual.even, r.dual.odd};
        for (int parity = 0; parity < 2; ++parity) {
            CHECK(side[parity] == dual[(parity + s) % 2]);
            CHECK(r.induced_rank[parity] == side[parity]);
        }

        // Chain identity recomputed from the matrices.
        TMap tm = t_transform(t);
        RatMatrix dz = RatMatrix::from_int(TwistedComplex(*t.side.bundle, t.side.flux).matrix());
        RatMatrix dzh = RatMatrix::from_int(TwistedComplex(*t.dual.bundle, t.dual.flux).matrix());
        RatMatrix lhs = dzh * tm.matrix;
        RatMatrix rhs = (tm.matrix * dz).scaled(t.rank() % 2 ? -1 : 1);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("a corrupted w breaks the chain identity", "[twisted][tmap]")
{
    Triple t = dualize(support::fixture_pair("hopf_k2.json"));
    Triple broken = t;
    broken.w = zero_vector(t.doubled->dim(2));
    IsoReport r = verify_iso(broken);
    CHECK_FALSE(r.chain_map);
    CHECK_FALSE(r.iso);
    CHECK_FALSE(r.reason.empty());
}

TEST_CASE("the H^3 action preserves the isomorphism", "[twisted][tmap]")
{
    Pair p = support::fixture_pair("t4_over_t3.json");
    Triple t = dualize(p);
    Subquotient h3 = p.base().cohomology(3);
    Triple shifted = h3_action(t, h3.representative(IntVector{1}));
    IsoReport r = verify_iso(shifted);
    CHECK(r.chain_map);
    CHECK(r.iso);
}
