#include "tdk/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "io_json.hpp"
#include "tdk/acceptance.hpp"
#include "tdk/corpus.hpp"
#include "tdk/errors.hpp"
#include "tdk/onn.hpp"
#include "tdk/spectral.hpp"
#include "tdk/twisted.hpp"

namespace tdk {

using io::Json;

namespace {

constexpr std::size_t kMaxInputBytes = 4u << 20;
constexpr int kMaxPage = 64;

}  // namespace

std::string read_input_file(const std::string& path)
{
    std::error_code ec;
    if (std::filesystem::exists(path, ec) && !std::filesystem::is_directory(path, ec)) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw InputError("cannot open file", path);
        std::string text;
        char buf[65536];
        while (in.read(buf, sizeof buf) || in.gcount() > 0) {
            text.append(buf, static_cast<std::size_t>(in.gcount()));
            if (text.size() > kMaxInputBytes)
                throw InputError("input larger than 4 MiB", path);
        }
        return text;
    }
    if (auto fixture = find_fixture(std::filesystem::path(path).filename().string()))
        return *fixture;
    throw InputError("no such file", path);
}

namespace {

struct Options {
    std::string pair, triple, base, builtin, chern, flux, check, act, shear;
    int page = -1;
    int deg = -1;
    std::size_t generators = 0;
    bool pretty = false;
    bool json = false;
    bool matrix = false;
};

struct Outcome {
    Json doc;
    int code = 0;
};

/// Runs `parse` on the contents of `file`, prefixing error locations with
/// the file name.
template <class F>
auto from_file(const FileReader& reader, const std::string& file, F parse)
{
    std::string text = reader(file);
    try {
        return parse(text);
    } catch (const InputError& e) {
        throw InputError(e.message(), file + ":" + (e.where().empty() ? "$" : e.where()));
    }
}

void require(bool ok, const std::string& what, const std::string& where = "arguments")
{
    if (!ok)
        throw InputError(what, where);
}

Json provenance_to(const ModelProvenance& p)
{
    return Json{{"source", p.source},
                {"formality_assumed", p.formality_assumed},
                {"torsion_products_dropped", p.torsion_products_dropped}};
}

Json groups_to(const std::vector<FgAbelianGroup>& groups)
{
    Json a = Json::array();
    for (const auto& g : groups)
        a.push_back(io::group_to(g));
    return a;
}

SpaceDocument load_space(const Options& o, const FileReader& reader)
{
    require(o.base.empty() != o.builtin.empty(), "exactly one of --base and --builtin is required");
    if (!o.builtin.empty()) {
        try {
            return SpaceDocument{builtin_space(o.builtin), std::nullopt};
        } catch (const InputError& e) {
            throw InputError(e.message(), "--builtin");
        }
    }
    return from_file(reader, o.base, [](const std::string& t) { return parse_space(t); });
}

Pair load_pair(const Options& o, const FileReader& reader)
{
    return from_file(reader, o.pair, [](const std::string& t) { return parse_pair(t); });
}

Triple load_triple(const Options& o, const FileReader& reader)
{
    return from_file(reader, o.triple, [](const std::string& t) { return parse_triple(t); });
}

BundlePtr load_bundle(const Options& o, const FileReader& reader)
{
    if (!o.pair.empty()) {
        require(o.base.empty() && o.builtin.empty() && o.chern.empty(), "--pair excludes --base, --builtin and --chern");
        return load_pair(o, reader).bundle;
    }
    require(!o.chern.empty(), "--chern is required with --base or --builtin");
    ModelPtr base = load_space(o, reader).model;
    auto chern = from_file(reader, o.chern, [&](const std::string& t) { return parse_chern(t, *base); });
    try {
        return std::make_shared<BundleModel>(base, chern);
    } catch (const InputError& e) {
        throw InputError(e.message(), o.chern + ":$");
    }
}

std::function<std::string(std::size_t)> labeller(const DgRingModel& m, int k)
{
    return [&m, k](std::size_t i) { return m.label(k, i); };
}

Json leading_to(const FiltrationReport& r)
{
    Json a = Json::array();
    for (const auto& [label, c] : r.leading_terms)
        a.push_back(Json::array({label, c.get_str()}));
    return a;
}

// ---------------------------------------------------------------------------

Outcome cmd_cohomology(const Options& o, const FileReader& reader)
{
    Json doc;
    if (!o.pair.empty()) {
        require(o.base.empty() && o.builtin.empty(), "--pair excludes --base and --builtin");
        Pair p = load_pair(o, reader);
        std::vector<FgAbelianGroup> groups;
        for (int k = 0; k <= p.bundle->top_degree(); ++k)
            groups.push_back(p.bundle->cohomology(k).group());
        doc["space"] = "total space";
        doc["groups"] = groups_to(groups);
        doc["provenance"] = provenance_to(p.base().provenance());
        return {doc, 0};
    }
    SpaceDocument s = load_space(o, reader);
    doc["space"] = s.model->provenance().name.empty() ? "model" : s.model->provenance().name;
    if (s.complex) {
        doc["groups"] = groups_to(s.complex->cohomology_groups());
        doc["euler_characteristic"] = std::to_string(s.complex->euler_characteristic());
        doc["model_groups"] = groups_to(s.model->cohomology_groups());
    } else {
        doc["groups"] = groups_to(s.model->cohomology_groups());
    }
    if (o.deg >= 0) {
        require(o.deg <= s.model->top_degree(), "degree out of range", "--deg");
        Subquotient h = s.model->cohomology(o.deg);
        Json reps = Json::array();
        for (std::size_t g = 0; g < h.section().cols(); ++g)
            reps.push_back(io::labelled(h.section().column(g), labeller(*s.model, o.deg)));
        doc["degree"] = std::to_string(o.deg);
        doc["representatives"] = reps;
    }
    doc["provenance"] = provenance_to(s.model->provenance());
    return {doc, 0};
}

Outcome cmd_bundle(const Options& o, const FileReader& reader)
{
    BundlePtr b = load_bundle(o, reader);
    Json chern = Json::array();
    for (const auto& c : b->chern())
        chern.push_back(io::labelled(c, labeller(b->base(), 2)));
    Json basis = Json::array();
    std::vector<FgAbelianGroup> groups;
    for (int k = 0; k <= b->top_degree(); ++k) {
        Json labels = Json::array();
        for (std::size_t i = 0; i < b->dim(k); ++i)
            labels.push_back(b->label(k, i));
        basis.push_back(labels);
        groups.push_back(b->cohomology(k).group());
    }
    Json doc{{"fiber_rank", std::to_string(b->fiber_rank())},
             {"chern", chern},
             {"basis", basis},
             {"cohomology", groups_to(groups)},
             {"provenance", provenance_to(b->base().provenance())}};
    return {doc, 0};
}

Outcome cmd_ss(const Options& o, const FileReader& reader)
{
    BundlePtr b = load_bundle(o, reader);
    SpectralSequence ss(*b);
    const int inf = ss.infinity_page();
    int r = inf;
    if (o.page != -1) {
        require(o.page >= 1 && o.page <= kMaxPage, "page must be between 1 and 64", "--page");
        r = o.page;
    }
    const int dbase = b->base().top_degree();
    const int n = static_cast<int>(b->fiber_rank());
    Json entries = Json::array(), diffs = Json::array();
    for (int p = 0; p <= dbase; ++p)
        for (int q = 0; q <= n; ++q) {
            if (o.deg >= 0 && p + q != o.deg)
                continue;
            entries.push_back(Json{{"p", std::to_string(p)},
                                   {"q", std::to_string(q)},
                                   {"group", io::group_to(ss.slot(r, p, q).group())}});
            if (r >= inf || p + r > dbase || q - r + 1 < 0)
                continue;
            GroupHom d = ss.differential(r, p, q);
            if (d.is_zero())
                continue;
            diffs.push_back(Json{{"from", Json::array({std::to_string(p), std::to_string(q)})},
                                 {"to", Json::array({std::to_string(p + r), std::to_string(q - r + 1)})},
                                 {"matrix", io::from_matrix(d.matrix())}});
        }
    Json doc{{"page", r >= inf ? std::string("infinity") : std::to_string(r)},
             {"infinity_page", std::to_string(inf)},
             {"entries", entries},
             {"differentials", diffs}};
    return {doc, 0};
}

Outcome cmd_dualizable(const Options& o, const FileReader& reader)
{
    Pair p = load_pair(o, reader);
    Dualizability d = is_dualizable(p);
    return {Json{{"dualizable", d.dualizable}, {"leading", leading_to(d.certificate)}}, d.dualizable ? 0 : 1};
}

Outcome cmd_dualize(const Options& o, const FileReader& reader)
{
    Pair p = load_pair(o, reader);
    Dualizability d = is_dualizable(p);
    if (!d.dualizable)
        return {Json{{"dualizable", false}, {"leading", leading_to(d.certificate)}}, 1};
    DualizeOptions opts;
    if (!o.shear.empty())
        opts.shear = from_file(reader, o.shear, [](const std::string& t) {
            io::Json j = io::parse_text(t);
            return io::to_matrix(j.is_object() ? io::member(j, "matrix", "$") : j, j.is_object() ? "$.matrix" : "$");
        });
    return {io::triple_to(dualize(p, opts)), 0};
}

Outcome cmd_check_triple(const Options& o, const FileReader& reader)
{
    Triple t = load_triple(o, reader);
    TripleReport rep = validate_triple(t);
    Json items = Json::array();
    for (const auto& it : rep.items)
        items.push_back(Json{{"name", it.name}, {"pass", it.pass}, {"detail", it.detail}});
    return {Json{{"valid", rep.all_pass()}, {"items", items}}, rep.all_pass() ? 0 : 1};
}

Outcome cmd_extensions(const Options& o, const FileReader& reader)
{
    Pair p = load_pair(o, reader);
    ExtensionReport rep = extension_report(p);
    if (!rep.dualizability.dualizable)
        return {Json{{"dualizable", false}, {"leading", leading_to(rep.dualizability.certificate)}}, 1};
    Json chern = Json::array();
    for (const auto& c : rep.dual_chern->cocycles)
        chern.push_back(io::labelled(c, labeller(p.base(), 2)));
    Json doc{{"dualizable", true},
             {"dual_chern", chern},
             {"kernel_pullback", io::group_to(rep.kernel_pullback.group())},
             {"image_c", io::group_to(rep.image_c.group())},
             {"torsor_group", io::group_to(rep.torsor_group.group())},
             {"d3_image", io::group_to(rep.cross_check.group())},
             {"groups_agree", rep.groups_agree()}};
    return {doc, rep.groups_agree() ? 0 : 1};
}

Json onn_to(const OnnElement& e)
{
    return Json{{"n", std::to_string(e.n)}, {"family", e.family}, {"name", e.name}, {"matrix", io::from_matrix(e.matrix)}};
}

Outcome cmd_onn(const Options& o, const FileReader& reader)
{
    const int modes = !o.check.empty() + (o.generators != 0) + !o.act.empty();
    require(modes == 1, "onn needs exactly one of --check, --generators, --act");
    if (o.generators != 0) {
        require(o.generators <= 6, "n must be between 1 and 6", "--generators");
        Json gens = Json::array();
        for (const auto& g : onn_generators(o.generators))
            gens.push_back(onn_to(g));
        return {Json{{"generators", gens}}, 0};
    }
    const std::string& file = o.check.empty() ? o.act : o.check;
    IntMatrix g = from_file(reader, file, [](const std::string& t) { return parse_onn_matrix(t); });
    if (!o.check.empty()) {
        if (!is_onn(g))
            return {Json{{"member", false}}, 1};
        OnnElement e = classify_onn(g);
        return {Json{{"member", true}, {"n", std::to_string(e.n)}, {"family", e.family}, {"name", e.name}}, 0};
    }
    require(!o.triple.empty(), "--act needs --triple");
    Triple t = load_triple(o, reader);
    return {io::triple_to(act_on_triple(g, t)), 0};
}

Json dims_to(const TwistedDims& d)
{
    return Json{{"even", std::to_string(d.even)}, {"odd", std::to_string(d.odd)}};
}

const char* kRationalNote = "rational coefficients: torsion phenomena are not detected";

Outcome cmd_twisted(const Options& o, const FileReader& reader)
{
    Json doc;
    if (!o.triple.empty()) {
        Triple t = load_triple(o, reader);
        doc["side"] = dims_to(twisted_dims(*t.side.bundle, t.side.flux));
        doc["dual"] = dims_to(twisted_dims(*t.dual.bundle, t.dual.flux));
    } else if (!o.pair.empty()) {
        Pair p = load_pair(o, reader);
        doc = dims_to(twisted_dims(*p.bundle, p.flux));
    } else {
        ModelPtr m = load_space(o, reader).model;
        IntVector z = zero_vector(m->dim(3));
        if (!o.flux.empty())
            z = from_file(reader, o.flux, [&](const std::string& t) {
                io::Json j = io::parse_text(t);
                bool wrapped = j.is_object() && j.contains("flux");
                return io::to_vector(
                    wrapped ? j["flux"] : j, m->dim(3),
                    [&](const std::string& label) -> std::optional<std::size_t> {
                        for (std::size_t i = 0; i < m->dim(3); ++i)
                            if (m->label(3, i) == label)
                                return i;
                        return std::nullopt;
                    },
                    wrapped ? "$.flux" : "$");
            });
        try {
            doc = dims_to(twisted_dims(*m, z));
        } catch (const InputError& e) {
            throw InputError(e.message(), o.flux.empty() ? "--builtin" : o.flux + ":$");
        }
    }
    doc["coefficients"] = "Q";
    doc["note"] = kRationalNote;
    return {doc, 0};
}

Outcome cmd_tmap(const Options& o, const FileReader& reader)
{
    require(!o.triple.empty(), "--triple is required");
    Triple t = load_triple(o, reader);
    IsoReport rep = verify_iso(t);
    Json doc{{"chain_map", rep.chain_map},
             {"iso", rep.iso},
             {"degree_shift", "-" + std::to_string(t.rank())},
             {"parity_shift", std::to_string(t.rank() % 2)},
             {"side", dims_to(rep.side)},
             {"dual", dims_to(rep.dual)},
             {"induced_rank",
              Json::array({std::to_string(rep.induced_rank[0]), std::to_string(rep.induced_rank[1])})}};
    if (!rep.reason.empty())
        doc["reason"] = rep.reason;
    if (o.matrix) {
        TMap tm = t_transform(t);
        Json rows = Json::array();
        for (std::size_t r = 0; r < tm.matrix.rows(); ++r) {
            Json row = Json::array();
            for (std::size_t c = 0; c < tm.matrix.cols(); ++c)
                row.push_back(tm.matrix(r, c).get_str());
            rows.push_back(row);
        }
        doc["matrix"] = rows;
    }
    doc["coefficients"] = "Q";
    doc["note"] = kRationalNote;
    return {doc, rep.iso ? 0 : 1};
}

Outcome cmd_selftest(const Options&, const FileReader&)
{
    Json rows = Json::array();
    std::size_t passed = 0;
    auto results = run_acceptance();
    for (const auto& r : results) {
        passed += r.pass;
        rows.push_back(
            Json{{"id", std::to_string(r.id)}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
    }
    Json doc{{"criteria", rows}, {"passed", std::to_string(passed)}, {"total", std::to_string(results.size())}};
    return {doc, passed == results.size() ? 0 : 1};
}

Json error_doc(const char* kind, const std::string& message, const std::string& where = {})
{
    Json e{{"kind", kind}, {"message", message}};
    if (!where.empty())
        e["where"] = where;
    return Json{{"error", e}};
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args, const FileReader& reader)
{
    CliResult res;
    Options o;
    CLI::App app{"Topological T-duality toolkit", "tdk"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    using Verb = Outcome (*)(const Options&, const FileReader&);
    struct Entry {
        const char* name;
        const char* help;
        Verb run;
    };
    const Entry verbs[] = {
        {"cohomology", "Cohomology of a base space or of the total space of a pair", cmd_cohomology},
        {"bundle", "Koszul model and cohomology of a torus bundle", cmd_bundle},
        {"ss", "Pages of the Leray-Serre spectral sequence", cmd_ss},
        {"dualizable", "Decide whether a pair admits a T-dual", cmd_dualizable},
        {"dualize", "Construct a T-duality triple over a pair", cmd_dualize},
        {"check-triple", "Validate a T-duality triple item by item", cmd_check_triple},
        {"extensions", "Classify the T-duals of a pair", cmd_extensions},
        {"onn", "O(n,n,Z) membership, generators and actions", cmd_onn},
        {"twisted", "Rational twisted cohomology dimensions", cmd_twisted},
        {"tmap", "T-duality transformation and isomorphism check", cmd_tmap},
        {"selftest", "Run the acceptance suite on the embedded corpus", cmd_selftest},
    };
    std::vector<std::pair<CLI::App*, Verb>> subs;
    for (const auto& v : verbs) {
        CLI::App* sub = app.add_subcommand(v.name, v.help);
        sub->add_flag("--json", o.json, "Compact JSON output (default)");
        sub->add_flag("--pretty", o.pretty, "Indented JSON output");
        subs.emplace_back(sub, v.run);
    }
    auto sub = [&](const char* name) { return app.get_subcommand(name); };
    for (const char* name : {"cohomology", "twisted", "bundle", "ss"}) {
        sub(name)->add_option("--base", o.base, "Space document (simplicial or dgring JSON)");
        sub(name)->add_option("--builtin", o.builtin, "Builtin space name");
    }
    for (const char* name : {"cohomology", "bundle", "ss", "dualizable", "dualize", "extensions", "twisted"})
        sub(name)->add_option("--pair", o.pair, "Pair document");
    for (const char* name : {"bundle", "ss"})
        sub(name)->add_option("--chern", o.chern, "Chern cocycles document");
    for (const char* name : {"check-triple", "twisted", "tmap", "onn"})
        sub(name)->add_option("--triple", o.triple, "Triple document");
    for (const char* name : {"cohomology", "ss"})
        sub(name)->add_option("--deg", o.deg, "Total degree")->check(CLI::Range(0, 64));
    sub("ss")->add_option("--page", o.page, "Page r (default: the E_infinity page)");
    sub("dualize")->add_option("--shear", o.shear, "Antisymmetric integer matrix document");
    sub("onn")->add_option("--check", o.check, "Matrix document {\"n\":n,\"matrix\":[[...]]}");
    sub("onn")->add_option("--generators", o.generators, "List the generators for this n");
    sub("onn")->add_option("--act", o.act, "Apply a generator to --triple");
    sub("twisted")->add_option("--flux", o.flux, "Degree-3 base cocycle for --base/--builtin");
    sub("tmap")->add_flag("--matrix", o.matrix, "Include the matrix of T");
    for (const char* name : {"dualizable", "dualize", "extensions"})
        sub(name)->get_option("--pair")->required();
    sub("check-triple")->get_option("--triple")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::CallForHelp& e) {
        res.out = app.help();
        for (const auto& [s, v] : subs)
            if (s->parsed())
                res.out = s->help();
        return res;
    } catch (const CLI::CallForAllHelp&) {
        res.out = app.help("", CLI::AppFormatMode::All);
        return res;
    } catch (const CLI::ParseError& e) {
        res.exit_code = 2;
        res.out = io::dump(error_doc("usage", e.what(), "arguments"), false) + "\n";
        res.err = std::string("error: ") + e.what();
        return res;
    }

    Outcome outcome;
    try {
        for (const auto& [s, v] : subs)
            if (s->parsed())
                outcome = v(o, reader);
    } catch (const InputError& e) {
        res.exit_code = 2;
        res.out = io::dump(error_doc("input", e.message(), e.where()), o.pretty) + "\n";
        res.err = std::string("error: ") + e.what();
        return res;
    } catch (const DomainError& e) {
        res.exit_code = 1;
        res.out = io::dump(error_doc("domain", e.what()), o.pretty) + "\n";
        res.err = std::string("error: ") + e.what();
        return res;
    } catch (const std::exception& e) {
        res.exit_code = 2;
        res.out = io::dump(error_doc("internal", e.what()), o.pretty) + "\n";
        res.err = std::string("internal error: ") + e.what();
        return res;
    }
    res.exit_code = outcome.code;
    res.out = io::dump(outcome.doc, o.pretty) + "\n";
    return res;
}

}  // namespace tdk
