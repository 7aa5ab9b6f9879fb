#include "tdk/acceptance.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "json.hpp"
#include "tdk/cli.hpp"
#include "tdk/corpus.hpp"
#include "tdk/errors.hpp"
#include "tdk/io.hpp"
#include "tdk/onn.hpp"
#include "tdk/spectral.hpp"
#include "tdk/twisted.hpp"

namespace tdk {

namespace {

/// Collects failures of individual checks inside one criterion.
class Checker {
public:
    void expect(bool ok, const std::string& what)
    {
        ++count_;
        if (!ok && failures_.size() < 8)
            failures_.push_back(what);
        failed_ |= !ok;
    }
    bool pass() const { return !failed_; }
    std::string detail() const
    {
        if (!failed_)
            return std::to_string(count_) + " checks";
        std::string s = "failed: ";
        for (std::size_t i = 0; i < failures_.size(); ++i)
            s += (i ? "; " : "") + failures_[i];
        return s;
    }

private:
    std::size_t count_ = 0;
    bool failed_ = false;
    std::vector<std::string> failures_;
};

std::string fixture(const std::string& name)
{
    auto f = find_fixture(name);
    if (!f)
        throw std::runtime_error("missing fixture " + name);
    return *f;
}

Pair fixture_pair(const std::string& name) { return parse_pair(fixture(name)); }

FgAbelianGroup group(std::size_t rank, std::vector<long> torsion = {})
{
    std::vector<BigInt> t(torsion.begin(), torsion.end());
    return FgAbelianGroup(rank, t);
}

std::string groups_text(const std::vector<FgAbelianGroup>& gs)
{
    std::string s = "(";
    for (std::size_t i = 0; i < gs.size(); ++i)
        s += (i ? ", " : "") + gs[i].to_string();
    return s + ")";
}

std::vector<FgAbelianGroup> bundle_groups(const BundleModel& m)
{
    std::vector<FgAbelianGroup> out;
    for (int k = 0; k <= m.top_degree(); ++k)
        out.push_back(m.cohomology(k).group());
    return out;
}

BundlePtr bundle_over(const std::string& base, std::vector<std::vector<std::pair<std::string, long>>> chern)
{
    ModelPtr b = builtin_space(base);
    std::vector<IntVector> cs;
    for (const auto& terms : chern) {
        IntVector c = zero_vector(b->dim(2));
        for (const auto& [label, coeff] : terms)
            for (std::size_t i = 0; i < b->dim(2); ++i)
                if (b->label(2, i) == label)
                    c[i] += coeff;
        cs.push_back(c);
    }
    return std::make_shared<BundleModel>(b, cs);
}

// Dualizable pairs shipped with the corpus.
const std::vector<std::string>& dualizable_fixtures()
{
    static const std::vector<std::string> names = {
        "hopf_k0.json",        "hopf_k1.json",        "hopf_km1.json",        "hopf_k2.json",
        "hopf_k3.json",        "t3_over_t2_k1.json",  "t3_over_t2_k2.json",   "t3_over_t2_k3.json",
        "s3_by_circle_h0.json", "s3_by_circle_h1.json", "t4_over_t3.json",     "heisenberg_base.json",
        "t2_rank2.json",       "s2s2_rank2.json",     "surface2_k1.json"};
    return names;
}

// ---------------------------------------------------------------------------

void criterion_cohomology(Checker& c)
{
    auto check = [&](const char* name, std::vector<FgAbelianGroup> expect) {
        SpaceDocument doc = parse_space(fixture(name));
        auto got = doc.complex->cohomology_groups();
        c.expect(got == expect, std::string(name) + " gave " + groups_text(got));
        return doc;
    };
    check("boundary_tetrahedron.json", {group(1), group(0), group(1)});
    SpaceDocument t2 = check("torus7.json", {group(1), group(2), group(1)});
    const Combination& prod = t2.model->basis_product(1, 0, 1, 1);
    c.expect(prod.size() == 1 && t2.model->dim(2) == 1 && (prod[0].second == 1 || prod[0].second == -1),
             "x1 ∪ x2 does not generate H^2 of the 7-vertex torus");
    check("rp2_6.json", {group(1), group(0), group(0, {2})});
}

void criterion_gysin(Checker& c)
{
    auto hopf = bundle_over("sphere2", {{{"g2", 1}}});
    c.expect(bundle_groups(*hopf) == std::vector{group(1), group(0), group(0), group(1)},
             "Hopf model gave " + groups_text(bundle_groups(*hopf)));
    for (long k : {2, 3, 5}) {
        auto lens = bundle_over("sphere2", {{{"g2", k}}});
        c.expect(lens->cohomology(2).group() == group(0, {k}),
                 "lens k=" + std::to_string(k) + " H^2 = " + lens->cohomology(2).group().to_string());
    }
    for (long k : {1, 2, 3}) {
        auto heis = bundle_over("torus2", {{{"x1x2", k}}});
        auto expect = k == 1 ? group(2) : group(2, {k});
        c.expect(heis->cohomology(2).group() == expect,
                 "Heisenberg k=" + std::to_string(k) + " H^2 = " + heis->cohomology(2).group().to_string());
    }
}

void criterion_d2(Checker& c)
{
    const std::vector<BundlePtr> models = {
        bundle_over("sphere2", {{{"g2", 1}}}),
        bundle_over("sphere2", {{{"g2", 3}}, {{"g2", 2}}}),
        bundle_over("torus2", {{{"x1x2", 1}}, {}}),
        bundle_over("torus3", {{{"x1x2", 1}}, {{"x1x3", 1}, {"x2x3", 2}}}),
        bundle_over("sphere2xsphere2", {{{"1×g2", 1}}, {{"g2×1", 1}}}),
        bundle_over("surface2", {{{"w", 1}}, {{"w", 2}}}),
        bundle_over("sphere2xsphere1", {{{"g2×1", 4}}, {{"g2×1", 6}}}),
    };
    std::size_t formula_checks = 0;
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
        const BundleModel& m = *models[mi];
        SpectralSequence ss(m);
        const std::size_t n = m.fiber_rank();
        const std::string tag = "model " + std::to_string(mi);
        // d_2^{0,1}(y_i) = ζ_i
        {
            GroupHom d = ss.differential(2, 0, 1);
            const Subquotient& src = d.source();
            for (std::size_t g = 0; g < src.group().generator_count(); ++g) {
                IntVector rep = src.section().column(g);
                IntVector a = m.fiber_restriction(1, rep);
                IntVector formula = zero_vector(m.base().dim(2));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < formula.size(); ++j)
                        formula[j] += a[i] * m.chern()[i][j];
                IntVector e = zero_vector(src.group().generator_count());
                e[g] = 1;
                auto expect = d.target().reduce(m.pullback(2, formula));
                c.expect(expect && *expect == d.apply(e), tag + ": d2 on E2^{0,1} disagrees with c_i");
                ++formula_checks;
            }
        }
        if (n < 2)
            continue;
        // d_2^{0,2}(y_i y_j) = y_j⊗c_i - y_i⊗c_j
        {
            GroupHom d = ss.differential(2, 0, 2);
            const Subquotient& src = d.source();
            const auto& monos = m.monomials(2);
            for (std::size_t g = 0; g < src.group().generator_count(); ++g) {
                IntVector rep = src.section().column(g);
                IntVector a = m.fiber_restriction(2, rep);
                IntVector formula = zero_vector(m.dim(3));
                for (std::size_t s = 0; s < monos.size(); ++s) {
                    if (a[s] == 0)
                        continue;
                    const unsigned mask = monos[s];
                    const int i = __builtin_ctz(mask);
                    const int j = 31 - __builtin_clz(mask);
                    IntVector ci = m.chern()[i], cj = m.chern()[j];
                    for (auto& x : ci)
                        x *= a[s];
                    for (auto& x : cj)
                        x *= -a[s];
                    formula = add(formula, add(m.embed(2, ci, 1u << j), m.embed(2, cj, 1u << i)));
                }
                IntVector e = zero_vector(src.group().generator_count());
                e[g] = 1;
                auto expect = d.target().reduce(formula);
                c.expect(expect && *expect == d.apply(e), tag + ": d2 on E2^{0,2} disagrees with the formula");
                ++formula_checks;
            }
        }
    }
    c.expect(formula_checks >= 10, "too few generators exercised");
}

void criterion_dualizable(Checker& c)
{
    for (const char* name : {"hopf_k0.json", "hopf_k1.json", "hopf_km1.json", "hopf_k2.json"})
        c.expect(is_dualizable(fixture_pair(name)).dualizable, std::string(name) + " reported not dualizable");
    c.expect(!is_dualizable(fixture_pair("t3_over_s1_vol.json")).dualizable, "T^3 over S^1 reported dualizable");
}

void criterion_classical(Checker& c)
{
    for (long k : {0, 1, -1, 2, 3}) {
        auto hopf = bundle_over("sphere2", {{{"g2", 1}}});
        IntVector z = zero_vector(hopf->dim(3));
        z[*hopf->find_label(3, "y⊗g2")] = k;
        Triple t = dualize(Pair(hopf, z));
        const std::string tag = "Hopf h=" + std::to_string(k);
        IntVector chat = base_class(t.base(), 2, t.dual.bundle->chern()[0]);
        c.expect(chat == IntVector{BigInt(k)}, tag + ": dual Chern class " + to_string(chat));
        FiltrationReport r = filtration_report(*t.dual.bundle, 3, t.dual.flux);
        c.expect(!r.zero_class && r.p == 2 && r.leading == IntVector{BigInt(1)}, tag + ": dual leading part");
        c.expect(validate_triple(t).all_pass(), tag + ": triple does not validate");
    }
    for (long k : {1, 2, 3}) {
        Triple t = dualize(fixture_pair("t3_over_t2_k" + std::to_string(k) + ".json"));
        const std::string tag = "T^3/T^2 k=" + std::to_string(k);
        IntVector chat = base_class(t.base(), 2, t.dual.bundle->chern()[0]);
        c.expect(chat == IntVector{BigInt(k)}, tag + ": dual Chern class " + to_string(chat));
        c.expect(t.dual.bundle->cohomology(2).group() == (k == 1 ? group(2) : group(2, {k})),
                 tag + ": dual is not the Heisenberg-k model");
        c.expect(t.dual.bundle->cohomology(3).is_zero_class(t.dual.flux), tag + ": dual flux not zero");
        c.expect(validate_triple(t).all_pass(), tag + ": triple does not validate");
    }
}

void criterion_involution(Checker& c)
{
    for (const auto& name : dualizable_fixtures()) {
        Pair p = fixture_pair(name);
        Triple t = dualize(p);
        Triple back = dualize(t.dual);
        c.expect(same_pair_class(back.dual, p), name + ": double dual differs");
    }
}

void criterion_torsor(Checker& c)
{
    for (const char* name : {"s3_by_circle_h0.json", "s3_by_circle_h1.json", "t4_over_t3.json"}) {
        Pair p = fixture_pair(name);
        Triple t = dualize(p);
        Subquotient h3 = p.base().cohomology(3);
        const std::size_t g = h3.group().generator_count();
        c.expect(g >= 1, std::string(name) + ": H^3(B) vanishes");
        c.expect(torsor_difference(t, t) == zero_vector(g), std::string(name) + ": self difference nonzero");
        for (std::size_t i = 0; i < g; ++i) {
            IntVector e = zero_vector(g);
            e[i] = 1;
            Triple ta = h3_action(t, h3.representative(e));
            c.expect(validate_triple(ta).all_pass(), std::string(name) + ": acted triple invalid");
            c.expect(torsor_difference(ta, t) == e, std::string(name) + ": difference is not the generator");
            IntVector minus = zero_vector(g);
            minus[i] = -1;
            c.expect(torsor_difference(t, ta) == minus, std::string(name) + ": reverse difference");
            IntVector two = zero_vector(g);
            two[i] = 2;
            Triple t2 = h3_action(ta, h3.representative(e));
            c.expect(torsor_difference(t2, t) == two, std::string(name) + ": action not additive");
        }
    }
}

void criterion_gauge(Checker& c)
{
    for (int variant = 0; variant < 2; ++variant) {
        auto b = builtin_space("torus3");
        auto bundle = variant ? bundle_over("torus3", {{{"x2x3", 1}}}) : bundle_over("torus3", {{}});
        IntVector z = zero_vector(bundle->dim(3));
        z[*bundle->find_label(3, "y⊗x1x2")] = 2;
        Triple t = dualize(Pair(bundle, z));
        Subquotient h3 = b->cohomology(3);
        const IntVector& zeta = t.side.bundle->chern()[0];
        const IntVector& zeta_hat = t.dual.bundle->chern()[0];
        for (std::size_t i = 0; i < 3; ++i)
            for (int hat = 0; hat < 2; ++hat) {
                IntVector psi = zero_vector(3), none = zero_vector(3);
                psi[i] = 1;
                Triple g = hat ? gauge_act(t, {none}, {psi}) : gauge_act(t, {psi}, {none});
                // ĉ ∪ [ψ] + c ∪ [ψ̂], evaluated on representatives
                IntVector formula = hat ? b->multiply(2, zeta, 1, psi) : b->multiply(2, zeta_hat, 1, psi);
                const std::string tag = "variant " + std::to_string(variant) + " i=" + std::to_string(i) +
                                        (hat ? " hat" : "");
                c.expect(validate_triple(g).all_pass(), tag + ": gauged triple invalid");
                c.expect(torsor_difference(g, t) == h3.reduce_or_throw(formula), tag + ": difference mismatch");
            }
    }
}

void criterion_extensions(Checker& c)
{
    for (const auto& name : dualizable_fixtures()) {
        ExtensionReport r = extension_report(fixture_pair(name));
        c.expect(r.groups_agree(), name + ": ker/im gives " + r.torsor_group.group().to_string() + ", d3 gives " +
                                       r.cross_check.group().to_string());
    }
}

void criterion_onn(Checker& c)
{
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<long> coeff(-50, 50);
    std::vector<IntMatrix> accepted;
    for (std::size_t n = 1; n <= 3; ++n) {
        accepted.push_back(onn_flip(n));
        for (int trial = 0; trial < 3 && n > 1; ++trial) {
            IntMatrix b(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    b(i, j) = coeff(rng) % 7;
                    b(j, i) = -b(i, j);
                }
            accepted.push_back(onn_shear_upper(b));
            accepted.push_back(onn_shear_lower(b));
        }
        for (const auto& g : onn_generators(n))
            accepted.push_back(g.matrix);
    }
    accepted.push_back(parse_onn_matrix(fixture("flip2.json")));
    accepted.push_back(parse_onn_matrix(fixture("shear2.json")));
    for (const auto& g : accepted) {
        c.expect(is_onn(g), "generator rejected: " + g.to_string());
        for (int v = 0; v < 100; ++v) {
            IntVector x(g.cols());
            for (auto& e : x)
                e = coeff(rng);
            c.expect(quadratic_form(g * x) == quadratic_form(x), "q not preserved by " + g.to_string());
        }
    }
    c.expect(!is_onn(parse_onn_matrix(fixture("diag2.json"))), "diag(2,2,2,2) accepted");
    for (const char* name : {"t2_rank2.json", "s2s2_rank2.json", "hopf_k2.json"}) {
        Triple t = dualize(fixture_pair(name));
        const auto& c0 = t.side.bundle->chern();
        const auto& h0 = t.dual.bundle->chern();
        IntMatrix flip = onn_flip(c0.size());
        auto once = act_on_chern(flip, t.base(), c0, h0);
        auto twice = act_on_chern(flip, t.base(), once.first, once.second);
        c.expect(once.first == h0 && once.second == c0, std::string(name) + ": flip does not swap");
        c.expect(twice.first == c0 && twice.second == h0, std::string(name) + ": flip^2 not the identity");
        Triple ft = act_on_triple(flip, act_on_triple(flip, t));
        c.expect(torsor_difference(ft, t) == zero_vector(t.base().cohomology(3).group().generator_count()),
                 std::string(name) + ": flip^2 changes the triple class");
    }
}

void criterion_twisted(Checker& c)
{
    std::vector<std::pair<std::string, Triple>> triples;
    for (const auto& name : dualizable_fixtures())
        triples.emplace_back(name, dualize(fixture_pair(name)));
    triples.emplace_back("point_triple.json", parse_triple(fixture("point_triple.json")));
    for (const auto& [name, t] : triples) {
        IsoReport r = verify_iso(t);
        c.expect(r.chain_map, name + ": chain-map identity fails");
        c.expect(r.iso, name + ": T is not an isomorphism (" + r.reason + ")");
    }
    auto dims = [](const IsoReport& r) {
        return std::vector<std::size_t>{r.side.even, r.side.odd, r.dual.even, r.dual.odd};
    };
    for (const char* name : {"hopf_k1.json", "hopf_k2.json", "hopf_k3.json", "hopf_km1.json"}) {
        IsoReport r = verify_iso(dualize(fixture_pair(name)));
        c.expect(dims(r) == std::vector<std::size_t>{0, 0, 0, 0}, std::string(name) + ": dimensions not (0,0)");
    }
    IsoReport r = verify_iso(dualize(fixture_pair("hopf_k0.json")));
    c.expect(dims(r) == std::vector<std::size_t>{1, 1, 1, 1}, "Hopf h=0: dimensions not (1,1)");
    c.expect(r.iso && r.induced_rank[0] == 1 && r.induced_rank[1] == 1, "Hopf h=0: no parity-swapping iso");
    auto s3 = builtin_space("sphere3");
    for (long k : {0, 1, 2, -3}) {
        TwistedDims d = twisted_dims(*s3, IntVector{BigInt(k)});
        std::size_t e = k == 0 ? 1 : 0;
        c.expect(d.even == e && d.odd == e, "S^3 with k=" + std::to_string(k));
    }
    auto s2s1 = builtin_space("sphere2xsphere1");
    IntVector gen = zero_vector(s2s1->dim(3));
    gen[0] = 1;
    TwistedDims d = twisted_dims(*s2s1, gen);
    c.expect(d.even == 1 && d.odd == 1, "S^2 x S^1 with the generator");
}

void criterion_robustness(Checker& c)
{
    auto located = [](const CliResult& r) {
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        return !j.is_discarded() && j.contains("error") && j["error"].contains("where") &&
               !j["error"]["where"].get<std::string>().empty();
    };
    struct Case {
        std::vector<std::string> args;
        const char* what;
    };
    const std::vector<Case> cases = {
        {{"dualizable", "--pair", "malformed.json"}, "malformed JSON"},
        {{"cohomology", "--base", "malformed.json"}, "malformed JSON"},
        {{"cohomology", "--base", "d2_nonzero.json"}, "d^2 != 0 model"},
        {{"dualizable", "--pair", "nonclosed_flux.json"}, "non-closed flux"},
        {{"twisted", "--pair", "nonclosed_flux.json"}, "non-closed flux"},
    };
    for (const auto& cs : cases) {
        CliResult r = run_cli(cs.args);
        c.expect(r.exit_code == 2 && located(r), std::string(cs.what) + ": exit " + std::to_string(r.exit_code));
    }

    // Fuzzing: byte-level mutations of corpus documents fed to every verb.
    std::mt19937 rng(7);
    const auto& corpus = fixture_corpus();
    const std::vector<std::vector<std::string>> verbs = {
        {"cohomology", "--base"}, {"dualizable", "--pair"}, {"dualize", "--pair"}, {"check-triple", "--triple"},
        {"onn", "--check"},       {"twisted", "--pair"},    {"ss", "--pair"},     {"extensions", "--pair"},
        {"tmap", "--triple"},     {"bundle", "--builtin", "sphere2", "--chern"}};
    const std::string alphabet = "{}[]\",:0123456789-+.eE aAbxyzg\\u";
    std::size_t internal = 0, runs = 0;
    for (int iter = 0; iter < 400; ++iter) {
        std::string text = corpus[rng() % corpus.size()].second;
        if (text.size() > 1024)
            text.resize(1024);
        const int edits = 1 + static_cast<int>(rng() % 6);
        for (int e = 0; e < edits && !text.empty(); ++e) {
            std::size_t pos = rng() % text.size();
            switch (rng() % 4) {
            case 0: text[pos] = alphabet[rng() % alphabet.size()]; break;
            case 1: text.erase(pos, 1 + rng() % 8); break;
            case 2: text.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
            default: text[pos] = static_cast<char>(rng() % 256); break;
            }
        }
        if (text.size() > 1024)
            text.resize(1024);
        auto args = verbs[rng() % verbs.size()];
        args.push_back("fuzz.json");
        CliResult r = run_cli(args, [&](const std::string&) { return text; });
        ++runs;
        bool ok = r.exit_code >= 0 && r.exit_code <= 2;
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        ok = ok && !j.is_discarded();
        if (!j.is_discarded() && j.contains("error") && j["error"]["kind"] == "internal")
            ++internal;
        c.expect(ok, "fuzz case " + std::to_string(iter) + " produced exit " + std::to_string(r.exit_code));
    }
    // Structure-aware mutations: valid JSON with perturbed leaves and arrays.
    std::function<void(nlohmann::json&)> mutate = [&](nlohmann::json& j) {
        if (j.is_array() || j.is_object()) {
            if (j.empty())
                return;
            if (j.is_array() && rng() % 8 == 0) {
                if (rng() % 2)
                    j.erase(j.begin() + static_cast<long>(rng() % j.size()));
                else
                    j.push_back(j[rng() % j.size()]);
                return;
            }
            auto it = j.begin();
            std::advance(it, static_cast<long>(rng() % j.size()));
            mutate(*it);
            return;
        }
        switch (rng() % 4) {
        case 0: j = static_cast<int>(rng() % 7) - 3; break;
        case 1: j = std::to_string(static_cast<int>(rng() % 9) - 4); break;
        case 2: j = nullptr; break;
        default: j = "x"; break;
        }
    };
    for (int iter = 0; iter < 600; ++iter) {
        const auto& [name, original] = corpus[rng() % corpus.size()];
        auto doc = nlohmann::json::parse(original, nullptr, false);
        if (doc.is_discarded())
            continue;
        for (int e = 0, edits = 1 + static_cast<int>(rng() % 3); e < edits; ++e)
            mutate(doc);
        std::string text = doc.dump();
        if (text.size() > 1024)
            continue;
        auto args = verbs[rng() % verbs.size()];
        args.push_back("fuzz.json");
        CliResult r = run_cli(args, [&](const std::string&) { return text; });
        ++runs;
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        bool ok = r.exit_code >= 0 && r.exit_code <= 2 && !j.is_discarded();
        if (!j.is_discarded() && j.contains("error") && j["error"]["kind"] == "internal") {
            ++internal;
            c.expect(false, "internal error on mutated " + name + ": " + j["error"]["message"].get<std::string>());
        }
        c.expect(ok, "structured fuzz case " + std::to_string(iter) + " produced exit " + std::to_string(r.exit_code));
    }
    c.expect(internal == 0, std::to_string(internal) + " of " + std::to_string(runs) + " fuzz runs hit internal errors");
}

}  // namespace

std::vector<CriterionResult> run_acceptance()
{
    struct Entry {
        const char* title;
        void (*run)(Checker&);
    };
    const Entry entries[] = {
        {"Cohomology oracle (tetrahedron boundary, 7-vertex torus, 6-vertex RP^2)", criterion_cohomology},
        {"Gysin/Koszul cohomology (Hopf, lens spaces, Heisenberg nilmanifolds)", criterion_gysin},
        {"Spectral-sequence d2 formulas", criterion_d2},
        {"Dualizability decisions", criterion_dualizable},
        {"Classical dual pairs", criterion_classical},
        {"Involution of dualization", criterion_involution},
        {"H^3(B) torsor action", criterion_torsor},
        {"Gauge-action formula", criterion_gauge},
        {"Extension classification", criterion_extensions},
        {"O(n,n,Z) membership and actions", criterion_onn},
        {"Twisted T-duality isomorphism over Q", criterion_twisted},
        {"Degenerate inputs and fuzzing", criterion_robustness},
    };
    std::vector<CriterionResult> out;
    int id = 1;
    for (const auto& e : entries) {
        CriterionResult r;
        r.id = id++;
        r.title = e.title;
        Checker c;
        try {
            e.run(c);
            r.pass = c.pass();
            r.detail = c.detail();
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace tdk
