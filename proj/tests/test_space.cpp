#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "tdk/dg_ring.hpp"
#include "tdk/errors.hpp"
#include "tdk/simplicial.hpp"

using namespace tdk;

namespace {

void check_against_oracle(const DgRingModel& m)
{
    auto groups = m.cohomology_groups();
    for (int k = 0; k <= m.top_degree(); ++k) {
        IntMatrix d_in = k > 0 ? m.differential(k - 1).to_dense() : IntMatrix(m.dim(0), 0);
        IntMatrix d_out = m.differential(k).to_dense();
        INFO("degree " << k);
        CHECK(support::same(groups[k], support::oracle_cohomology(m.dim(k), d_in, d_out)));
    }
}

std::vector<std::string> texts(const std::vector<FgAbelianGroup>& gs)
{
    std::vector<std::string> out;
    for (const auto& g : gs)
        out.push_back(g.to_string());
    return out;
}

std::string error_of(const std::string& doc)
{
    try {
        parse_space(doc);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("builtin models agree with the oracle", "[space][oracle]")
{
    for (const auto& name : builtin_names()) {
        INFO(name);
        check_against_oracle(*builtin_space(name));
    }
}

TEST_CASE("builtin cohomology tables", "[space]")
{
    using V = std::vector<std::string>;
    CHECK(texts(builtin_space("sphere3")->cohomology_groups()) == V{"Z", "0", "0", "Z"});
    CHECK(texts(builtin_space("torus3")->cohomology_groups()) == V{"Z", "Z^3", "Z^3", "Z"});
    CHECK(texts(builtin_space("heisenberg")->cohomology_groups()) == V{"Z", "Z^2", "Z^2", "Z"});
    CHECK(texts(builtin_space("sphere2xsphere1")->cohomology_groups()) == V{"Z", "Z", "Z", "Z"});
    CHECK(texts(builtin_space("surface3")->cohomology_groups()) == V{"Z", "Z^6", "Z"});
    CHECK(texts(builtin_space("point")->cohomology_groups()) == V{"Z"});
    CHECK_THROWS_AS(builtin_space("sphere9"), InputError);
    CHECK_THROWS_AS(builtin_space("klein"), InputError);
}

TEST_CASE("product models follow Künneth", "[space]")
{
    auto s1 = builtin_space("sphere1");
    auto t2 = product_model(*s1, *s1);
    CHECK(t2->cohomology_groups() == builtin_space("torus2")->cohomology_groups());
    auto same = product_model(*builtin_space("point"), *builtin_space("sphere2"));
    CHECK(same->cohomology_groups() == builtin_space("sphere2")->cohomology_groups());
    // graded commutativity of the product of two odd classes
    const auto& ab = t2->basis_product(1, 0, 1, 1);
    const auto& ba = t2->basis_product(1, 1, 1, 0);
    REQUIRE(ab.size() == 1);
    REQUIRE(ba.size() == 1);
    CHECK(ab[0].second == -ba[0].second);
}

TEST_CASE("simplicial fixtures agree with the oracle", "[space][oracle]")
{
    for (const char* name : {"boundary_tetrahedron.json", "torus7.json", "rp2_6.json"}) {
        INFO(name);
        SpaceDocument doc = parse_space(support::fixture(name));
        REQUIRE(doc.complex);
        const auto& k = *doc.complex;
        auto groups = k.cohomology_groups();
        long chi = 0;
        for (int d = 0; d <= k.dimension(); ++d) {
            IntMatrix d_in = d > 0 ? k.coboundary(d - 1).to_dense() : IntMatrix(k.count(0), 0);
            IntMatrix d_out = d < k.dimension() ? k.coboundary(d).to_dense() : IntMatrix(0, k.count(d));
            CHECK(support::same(groups[d], support::oracle_cohomology(k.count(d), d_in, d_out)));
            chi += (d % 2 ? -1 : 1) * static_cast<long>(groups[d].rank());
        }
        CHECK(chi == k.euler_characteristic());
        CHECK(doc.model->cohomology_groups() == groups);
        CHECK(doc.model->provenance().formality_assumed);
    }
}

TEST_CASE("cup products on the 7-vertex torus", "[space]")
{
    SpaceDocument doc = parse_space(support::fixture("torus7.json"));
    const auto& m = *doc.model;
    REQUIRE(m.dim(1) == 2);
    REQUIRE(m.dim(2) == 1);
    const auto& p = m.basis_product(1, 0, 1, 1);
    REQUIRE(p.size() == 1);
    CHECK(abs(p[0].second) == 1);
    CHECK(m.basis_product(1, 0, 1, 0).empty());
}

TEST_CASE("structure constants do not depend on representatives", "[space]")
{
    for (const char* name : {"torus7.json", "rp2_6.json", "boundary_tetrahedron.json"}) {
        SpaceDocument doc = parse_space(support::fixture(name));
        for (std::uint64_t seed : {1u, 17u, 4242u}) {
            auto other = cohomology_ring(*doc.complex, {seed});
            auto a = doc.model->product_entries(), b = other->product_entries();
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                CHECK(a[i].result == b[i].result);
        }
    }
}

TEST_CASE("dgring documents are validated", "[space][errors]")
{
    CHECK(parse_space(support::fixture("torus2_dgring.json")).model->cohomology_groups() ==
          builtin_space("torus2")->cohomology_groups());
    CHECK(error_of(support::fixture("d2_nonzero.json")).find("d∘d") != std::string::npos);

    const std::string noncommutative = R"({"format":"dgring","degrees":2,"basis":[["1"],["a","b"],["c"]],
        "product":[{"i_deg":1,"i_idx":0,"j_deg":1,"j_idx":1,"result":[{"idx":0,"coeff":1}]},
                   {"i_deg":1,"i_idx":1,"j_deg":1,"j_idx":0,"result":[{"idx":0,"coeff":1}]}]})";
    std::string err = error_of(noncommutative);
    CHECK(err.find("commutativity") != std::string::npos);
    CHECK(err.find("'a'") != std::string::npos);

    const std::string leibniz = R"({"format":"dgring","degrees":2,"basis":[["1"],["a"],["c"]],
        "diff":[{"deg":1,"matrix":[[0]]}],"product":[]})";
    CHECK(error_of(leibniz).empty());

    const std::string bad_leibniz = R"({"format":"dgring","degrees":1,"basis":[["1"],["a"]],
        "diff":[{"deg":0,"matrix":[[1]]}],"product":[]})";
    CHECK(error_of(bad_leibniz).find("Leibniz") != std::string::npos);

    CHECK(error_of(R"({"format":"dgring","degrees":1,"basis":[["1","u"],["a"]]})").find("unit") !=
          std::string::npos);
    CHECK(error_of(R"({"format":"simplicial","vertices":3,"facets":[[0,1,5]]})").find("$.facets[0][2]") !=
          std::string::npos);
    CHECK(error_of(R"({"format":"simplicial","vertices":4,"facets":[[0,1],[2,3]]})").find("connected") !=
          std::string::npos);
    CHECK(error_of(R"({"format":"cw"})").find("$.format") != std::string::npos);
}
