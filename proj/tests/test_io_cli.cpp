#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "json.hpp"
#include "support.hpp"
#include "tdk/cli.hpp"
#include "tdk/errors.hpp"

using namespace tdk;
using Json = nlohmann::json;

namespace {

/// In-memory inputs first, then the embedded fixtures.
FileReader reader_with(std::map<std::string, std::string> files)
{
    return [files = std::move(files)](const std::string& name) {
        auto it = files.find(name);
        if (it != files.end())
            return it->second;
        if (auto f = find_fixture(name))
            return *f;
        throw InputError("no such file", name);
    };
}

CliResult run(const std::vector<std::string>& args, std::map<std::string, std::string> files = {})
{
    return run_cli(args, reader_with(std::move(files)));
}

std::string located_error(const std::string& text)
{
    try {
        parse_pair(text);
    } catch (const InputError& e) {
        return e.where();
    }
    return "(accepted)";
}

}  // namespace

TEST_CASE("pairs and triples round-trip", "[io]")
{
    for (const auto& [name, text] : fixture_corpus()) {
        Json doc = Json::parse(text, nullptr, false);
        if (doc.is_discarded() || !doc.is_object() || doc.value("format", "") != "pair" ||
            name == "nonclosed_flux.json")
            continue;
        INFO(name);
        Pair p = parse_pair(text);
        std::string once = write_pair(p);
        Pair q = parse_pair(once);
        CHECK(*q.bundle == *p.bundle);
        CHECK(q.flux == p.flux);
        CHECK(write_pair(q) == once);
        if (!is_dualizable(p).dualizable)
            continue;

        Triple t = dualize(p);
        std::string tt = write_triple(t, true);
        Triple u = parse_triple(tt);
        CHECK(u.w == t.w);
        CHECK(u.dual.flux == t.dual.flux);
        CHECK(write_triple(u, true) == tt);
    }
}

TEST_CASE("vector notations are equivalent", "[io]")
{
    const std::string head = R"({"format":"pair","base":{"builtin":"sphere2"},"chern":[{"g2":1}],"flux":)";
    Pair dense = parse_pair(head + R"(["3"]})");
    Pair pairs = parse_pair(head + R"([["y⊗g2",3]]})");
    Pair object = parse_pair(head + R"({"y⊗g2":"3"}})");
    CHECK(dense.flux == pairs.flux);
    CHECK(pairs.flux == object.flux);
    Pair indexed = parse_pair(head + R"([[0,"3"]]})");
    CHECK(indexed.flux == dense.flux);
    Pair big = parse_pair(head + R"({"y⊗g2":"123456789012345678901234567890"}})");
    CHECK(big.flux[0] == BigInt("123456789012345678901234567890"));
}

TEST_CASE("input errors carry a location", "[io][errors]")
{
    const std::string base = R"({"format":"pair","base":{"builtin":"sphere2"},)";
    CHECK(located_error(base + R"("chern":[{"g2":1}],"flux":{"y⊗g9":1}})").rfind("$.flux", 0) == 0);
    CHECK(located_error(base + R"("chern":[{"g2":1}],"flux":[1,2]})") == "$.flux");
    CHECK(located_error(base + R"("chern":[{"g2":"x"}],"flux":[]})").rfind("$.chern[0]", 0) == 0);
    CHECK(located_error(R"({"format":"pair","base":{"builtin":"sphere9"},"chern":[],"flux":[]})").rfind("$.base", 0) ==
          0);
    CHECK(located_error(base + R"("flux":[]})") == "$");
    CHECK(located_error("{\"format\":\"pair\",") == "$");
    CHECK(located_error(support::fixture("nonclosed_flux.json")).rfind("$.flux", 0) == 0);
}

TEST_CASE("exit codes follow the outcome", "[cli]")
{
    CHECK(run({"dualizable", "--pair", "hopf_k2.json"}).exit_code == 0);
    CHECK(run({"dualizable", "--pair", "t3_over_s1_vol.json"}).exit_code == 1);
    CHECK(run({"dualize", "--pair", "t3_over_s1_vol.json"}).exit_code == 1);
    CHECK(run({"onn", "--check", "flip2.json"}).exit_code == 0);
    CHECK(run({"onn", "--check", "diag2.json"}).exit_code == 1);
    CHECK(run({"cohomology", "--builtin", "heisenberg"}).exit_code == 0);
    CHECK(run({"nonsense"}).exit_code == 2);
    CHECK(run({"dualizable"}).exit_code == 2);
    CHECK(run({"ss", "--pair", "hopf_k2.json", "--page", "0"}).exit_code == 2);

    for (const char* bad : {"d2_nonzero.json", "nonclosed_flux.json", "malformed.json", "missing.json"}) {
        INFO(bad);
        CliResult r = run({"dualizable", "--pair", bad});
        CHECK(r.exit_code == 2);
        Json err = Json::parse(r.out);
        REQUIRE(err.contains("error"));
        CHECK(err["error"]["kind"] == "input");
        CHECK_FALSE(err["error"]["where"].get<std::string>().empty());
        CHECK_FALSE(r.err.empty());
    }
}

TEST_CASE("reports are machine readable and deterministic", "[cli]")
{
    CliResult a = run({"dualize", "--pair", "t4_over_t3.json"});
    CliResult b = run({"dualize", "--pair", "t4_over_t3.json"});
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    Json doc = Json::parse(a.out);
    CHECK(doc["format"] == "triple");

    CliResult check = run({"check-triple", "--triple", "out.json"}, {{"out.json", a.out}});
    CHECK(check.exit_code == 0);
    CHECK(Json::parse(check.out)["valid"] == true);

    CliResult tm = run({"tmap", "--triple", "out.json"}, {{"out.json", a.out}});
    CHECK(tm.exit_code == 0);
    Json t = Json::parse(tm.out);
    CHECK(t["chain_map"] == true);
    CHECK(t["iso"] == true);

    CliResult pretty = run({"dualizable", "--pair", "hopf_k2.json", "--pretty"});
    CliResult compact = run({"dualizable", "--pair", "hopf_k2.json"});
    CHECK(Json::parse(pretty.out) == Json::parse(compact.out));
    CHECK(pretty.out.find('\n') != std::string::npos);
    Json d = Json::parse(compact.out);
    CHECK(d["dualizable"] == true);
    CHECK(d["leading"][0][0] == "y⊗g2");
    CHECK(d["leading"][0][1] == "2");
}

TEST_CASE("cohomology reports", "[cli]")
{
    Json h = Json::parse(run({"cohomology", "--builtin", "heisenberg"}).out);
    std::string flat = h.dump();
    CHECK(flat.find("Z^2") != std::string::npos);
    Json lens = Json::parse(
        run({"bundle", "--builtin", "sphere2", "--chern", "c.json"}, {{"c.json", R"({"chern":[{"g2":3}]})"}}).out);
    CHECK(lens.dump().find("Z/3") != std::string::npos);
    Json tw = Json::parse(run({"twisted", "--pair", "hopf_k1.json"}).out);
    CHECK(tw["coefficients"] == "Q");
}

TEST_CASE("selftest passes", "[cli]")
{
    CliResult r = run({"selftest"});
    Json doc = Json::parse(r.out);
    CHECK(r.exit_code == 0);
    CHECK(doc["passed"] == doc["total"]);
}
