#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"
#include "tdk/errors.hpp"
#include "tdk/onn.hpp"

using namespace tdk;

namespace {

/// q(v) computed directly from the Gram matrix [[0, I/2], [I/2, 0]] doubled.
BigInt oracle_q(const IntVector& v)
{
    const std::size_t n = v.size() / 2;
    BigInt twice = 0;
    for (std::size_t i = 0; i < n; ++i)
        twice += v[i] * v[n + i] + v[n + i] * v[i];
    return twice / 2;
}

bool preserves_gram(const IntMatrix& g)
{
    const std::size_t n = g.rows() / 2;
    IntMatrix j(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, n + i) = 1;
        j(n + i, i) = 1;
    }
    return g.transpose() * j * g == j;
}

}  // namespace

TEST_CASE("generators lie in O(n,n;Z)", "[onn]")
{
    for (std::size_t n = 1; n <= 4; ++n) {
        auto gens = onn_generators(n);
        CHECK_FALSE(gens.empty());
        for (const auto& g : gens) {
            INFO(g.name);
            CHECK(is_onn(g.matrix));
            CHECK(preserves_gram(g.matrix));
            CHECK(classify_onn(g.matrix).family == g.family);
        }
    }
}

TEST_CASE("random words in the generators preserve q", "[onn]")
{
    std::mt19937_64 rng(99);
    for (std::size_t n = 1; n <= 3; ++n) {
        auto gens = onn_generators(n);
        for (int trial = 0; trial < 20; ++trial) {
            IntMatrix w = IntMatrix::identity(2 * n);
            for (int s = 0; s < 6; ++s)
                w = w * gens[rng() % gens.size()].matrix;
            CHECK(is_onn(w));
            CHECK(preserves_gram(w));
            IntMatrix inv = unimodular_inverse(w);
            CHECK(w * inv == IntMatrix::identity(2 * n));
            IntVector v(2 * n);
            for (auto& x : v)
                x = static_cast<long>(rng() % 21) - 10;
            CHECK(quadratic_form(w * v) == oracle_q(v));
        }
    }
}

TEST_CASE("membership rejects non-members", "[onn]")
{
    CHECK_FALSE(is_onn(IntMatrix{{2, 0}, {0, 1}}));
    CHECK_FALSE(is_onn(IntMatrix{{1, 1}, {0, 1}}));
    CHECK(is_onn(IntMatrix{{-1, 0}, {0, -1}}));
    CHECK(is_onn(onn_shear_upper(IntMatrix{{0, 5}, {-5, 0}})));
    CHECK_THROWS(onn_shear_upper(IntMatrix{{1, 0}, {0, 0}}));
    CHECK_FALSE(is_onn(IntMatrix{{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
    CHECK_THROWS_AS(is_onn(IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), InputError);
    CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), DomainError);
}

TEST_CASE("action on Chern data preserves the pairing", "[onn]")
{
    auto base = builtin_space("torus3");
    std::vector<IntVector> c{IntVector{1, 0, 2}, IntVector{0, 1, 0}};
    std::vector<IntVector> chat{IntVector{0, 3, 0}, IntVector{1, 1, 1}};
    for (const auto& g : onn_generators(2)) {
        INFO(g.name);
        auto [c2, chat2] = act_on_chern(g.matrix, *base, c, chat);
        // Stacked components follow the matrix action coordinatewise.
        for (std::size_t i = 0; i < 2; ++i) {
            IntVector expected = zero_vector(3);
            for (std::size_t j = 0; j < 2; ++j) {
                expected = add(expected, scale(g.matrix(i, j), c[j]));
                expected = add(expected, scale(g.matrix(i, 2 + j), chat[j]));
            }
            CHECK(c2[i] == expected);
        }
    }
    CHECK_THROWS_AS(act_on_chern(IntMatrix{{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, *base, c, chat),
                    DomainError);
}

TEST_CASE("action on triples", "[onn]")
{
    Triple t = dualize(support::fixture_pair("hopf_k2.json"));
    Triple flipped = act_on_triple(onn_flip(1), t);
    CHECK(validate_triple(flipped).all_pass());
    CHECK(flipped.side.bundle->chern() == t.dual.bundle->chern());
    CHECK(flipped.dual.bundle->chern() == t.side.bundle->chern());
    Triple back = act_on_triple(onn_flip(1), flipped);
    CHECK(torsor_difference(back, t) == zero_vector(t.base().cohomology(3).group().generator_count()));

    Triple r2 = dualize(support::fixture_pair("t2_rank2.json"));
    for (const auto& g : onn_generators(2)) {
        INFO(g.name);
        if (g.family == "factor_flip") {
            CHECK_THROWS_AS(act_on_triple(g.matrix, r2), DomainError);
            continue;
        }
        Triple acted = act_on_triple(g.matrix, r2);
        CHECK(validate_triple(acted).all_pass());
    }
}
