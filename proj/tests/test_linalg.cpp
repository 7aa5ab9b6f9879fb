#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "tdk/abelian.hpp"
#include "tdk/snf.hpp"

using namespace tdk;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int bound)
{
    std::uniform_int_distribution<int> dist(-bound, bound);
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = dist(rng) * (dist(rng) % 3 == 0 ? 0 : 1);
    return m;
}

}  // namespace

TEST_CASE("Smith normal form agrees with determinantal divisors", "[snf][oracle]")
{
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
        IntMatrix m = random_matrix(rng, rows, cols, 6);
        SmithForm f = smith_normal_form(m);
        auto expect = oracle::invariant_factors(support::to_oracle(m));
        REQUIRE(f.rank == expect.size());
        for (std::size_t i = 0; i < f.rank; ++i)
            CHECK(f.D(i, i) == expect[i]);
        CHECK(f.U * m * f.V == f.D);
        CHECK(f.U * f.U_inv == IntMatrix::identity(rows));
        CHECK(f.V * f.V_inv == IntMatrix::identity(cols));
        CHECK(rank(m) == oracle::rank_q(support::to_oracle(m)));
        CHECK(oracle::textbook_smith(support::to_oracle(m)) == expect);
    }
}

TEST_CASE("Smith normal form of classical matrices", "[snf]")
{
    CHECK(smith_normal_form(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}).diagonal() ==
          std::vector<BigInt>{2, 6, 12});
    CHECK(smith_normal_form(IntMatrix{{0, 0}, {0, 0}}).rank == 0);
    IntMatrix big{{1000000007, 0}, {0, 998244353}};
    CHECK(smith_normal_form(big).diagonal() == std::vector<BigInt>{1, BigInt("998244359987710471")});
}

TEST_CASE("kernel basis, image basis and integer solving", "[snf]")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix m = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 5, 5);
        IntMatrix k = kernel_basis(m);
        CHECK((m * k).is_zero());
        CHECK(k.cols() == m.cols() - oracle::rank_q(support::to_oracle(m)));
        IntVector x(m.cols());
        for (auto& e : x)
            e = static_cast<long>(rng() % 7) - 3;
        IntVector b = m * x;
        auto sol = solve(m, b);
        REQUIRE(sol);
        CHECK(m * *sol == b);
    }
    CHECK_FALSE(solve(IntMatrix{{2}}, IntVector{BigInt(1)}));
    CHECK_THROWS_AS(solve(IntMatrix{{2}}, IntVector{}), std::invalid_argument);
}

TEST_CASE("finitely generated abelian groups", "[abelian]")
{
    FgAbelianGroup g(1, {2, 6});
    CHECK(g.to_string() == "Z + Z/2 + Z/6");
    CHECK(g.normalize({BigInt(3), BigInt(-1), BigInt(5)}) == IntVector{1, 5, 5});
    CHECK_THROWS_AS(FgAbelianGroup(0, {2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(FgAbelianGroup(0, {1}), std::invalid_argument);
}

TEST_CASE("subquotients and cokernels", "[abelian]")
{
    Subquotient q = cokernel(IntMatrix{{2, 0}, {0, 3}});
    CHECK(q.group() == FgAbelianGroup(0, {6}));
    CHECK(q.is_zero_class(IntVector{2, 3}));
    CHECK_FALSE(q.is_zero_class(IntVector{1, 0}));

    // Z = <(1,1),(0,2)>, B = <(2,2)>: Z/B = Z/2 + Z
    IntMatrix z{{1, 0}, {1, 2}};
    IntMatrix b{{2}, {2}};
    Subquotient s = Subquotient::make(2, z, b);
    CHECK(s.group() == FgAbelianGroup(1, {2}));
    CHECK_FALSE(s.contains(IntVector{1, 0}));
    for (std::size_t g = 0; g < s.section().cols(); ++g) {
        IntVector e = zero_vector(s.group().generator_count());
        e[g] = 1;
        CHECK(s.reduce(s.representative(e)) == e);
    }
    CHECK_THROWS_AS(Subquotient::make(2, IntMatrix{{1}, {0}}, IntMatrix{{0}, {1}}), ContainmentError);
}

TEST_CASE("homomorphisms: kernel, image and exactness", "[abelian]")
{
    // 0 → Z --2--> Z → Z/2 → 0
    Subquotient z1 = Subquotient::cokernel(IntMatrix(1, 0));
    Subquotient z2 = Subquotient::cokernel(IntMatrix(1, 0));
    Subquotient z_2 = Subquotient::cokernel(IntMatrix{{2}});
    GroupHom f(z1, z2, IntMatrix{{2}});
    GroupHom g(z2, z_2, IntMatrix{{1}});
    CHECK(f.is_injective());
    CHECK_FALSE(f.is_surjective());
    CHECK(g.is_surjective());
    CHECK(is_exact_at(f, g));
    GroupHom h(z2, z_2, IntMatrix{{2}});
    CHECK(h.is_zero());
    CHECK_FALSE(is_exact_at(f, h));
    CHECK_THROWS_AS(GroupHom(z_2, z1, IntMatrix{{1}}), std::domain_error);
}
