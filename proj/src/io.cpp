#include "tdk/io.hpp"

#include <regex>

#include "io_json.hpp"
#include "tdk/errors.hpp"

namespace tdk {
namespace io {

namespace {

constexpr std::size_t kMaxVertices = 256;
constexpr std::size_t kMaxEntries = 1 << 16;

std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::string type_name(const Json& j) { return j.type_name(); }

}  // namespace

Json parse_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what(), "$");
    }
}

std::string dump(const Json& j, bool pretty)
{
    return j.dump(pretty ? 2 : -1, ' ', false, Json::error_handler_t::replace);
}

void relocate(const InputError& e, const std::string& path)
{
    const std::string& where = e.where();
    std::string loc = path;
    if (!where.empty())
        loc += (where[0] == '[' ? "" : ".") + where;
    throw InputError(e.message(), loc);
}

BigInt to_int(const Json& j, const std::string& path)
{
    if (j.is_number_integer()) {
        if (j.is_number_unsigned())
            return BigInt(std::to_string(j.get<std::uint64_t>()));
        return BigInt(std::to_string(j.get<std::int64_t>()));
    }
    if (j.is_string()) {
        static const std::regex re("-?[0-9]{1,4096}");
        const auto& s = j.get_ref<const std::string&>();
        if (!std::regex_match(s, re))
            throw InputError("expected a decimal integer string, got '" + s.substr(0, 32) + "'", path);
        return BigInt(s);
    }
    throw InputError("expected an integer, got " + type_name(j), path);
}

std::size_t to_size(const Json& j, const std::string& path, std::size_t max)
{
    BigInt v = to_int(j, path);
    if (v < 0 || v > static_cast<unsigned long>(max))
        throw InputError("value must lie between 0 and " + std::to_string(max), path);
    return v.get_ui();
}

const Json& member(const Json& j, const char* key, const std::string& path)
{
    if (!j.is_object())
        throw InputError("expected an object, got " + type_name(j), path);
    auto it = j.find(key);
    if (it == j.end())
        throw InputError(std::string("missing field '") + key + "'", path);
    return *it;
}

IntVector to_vector(const Json& j, std::size_t dim, const LabelResolver& resolve, const std::string& path)
{
    IntVector v = zero_vector(dim);
    auto lookup = [&](const std::string& label, const std::string& where) {
        auto idx = resolve ? resolve(label) : std::nullopt;
        if (!idx)
            throw InputError("unknown basis label '" + label.substr(0, 64) + "'", where);
        return *idx;
    };
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            std::string where = path + "." + it.key().substr(0, 64);
            v[lookup(it.key(), where)] += to_int(it.value(), where);
        }
        return v;
    }
    if (!j.is_array())
        throw InputError("expected a vector (array or object), got " + type_name(j), path);
    if (!j.empty() && j[0].is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            std::string where = index_path(path, i);
            const Json& e = j[i];
            if (!e.is_array() || e.size() != 2)
                throw InputError("expected a [label, coefficient] pair", where);
            std::size_t idx;
            if (e[0].is_string())
                idx = lookup(e[0].get<std::string>(), where);
            else {
                idx = to_size(e[0], where, dim == 0 ? 0 : dim - 1);
                if (dim == 0)
                    throw InputError("vector space is zero", where);
            }
            v[idx] += to_int(e[1], where + "[1]");
        }
        return v;
    }
    if (!j.empty() && j.size() != dim)
        throw InputError("dense vector has " + std::to_string(j.size()) + " entries, expected " + std::to_string(dim),
                         path);
    for (std::size_t i = 0; i < j.size(); ++i)
        v[i] = to_int(j[i], index_path(path, i));
    return v;
}

IntMatrix to_matrix(const Json& j, const std::string& path)
{
    if (!j.is_array())
        throw InputError("expected a matrix (array of rows), got " + type_name(j), path);
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array())
            throw InputError("expected a row array", index_path(path, r));
        if (r == 0)
            cols = j[r].size();
        else if (j[r].size() != cols)
            throw InputError("ragged matrix: row has " + std::to_string(j[r].size()) + " entries, expected " +
                                 std::to_string(cols),
                             index_path(path, r));
    }
    if (rows * cols > kMaxEntries)
        throw InputError("matrix too large", path);
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = to_int(j[r][c], index_path(index_path(path, r), c));
    return m;
}

Json from_int(const BigInt& v) { return v.get_str(); }

Json from_vector(const IntVector& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(x.get_str());
    return a;
}

Json from_matrix(const IntMatrix& m)
{
    Json a = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c).get_str());
        a.push_back(row);
    }
    return a;
}

Json labelled(const IntVector& v, const std::function<std::string(std::size_t)>& label)
{
    Json a = Json::array();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            a.push_back(Json::array({label(i), v[i].get_str()}));
    return a;
}

Json group_to(const FgAbelianGroup& g)
{
    Json t = Json::array();
    for (const auto& d : g.torsion())
        t.push_back(d.get_str());
    return Json{{"rank", std::to_string(g.rank())}, {"torsion", t}, {"text", g.to_string()}};
}

namespace {

SimplicialComplex simplicial_from(const Json& j, const std::string& path)
{
    std::size_t n = to_size(member(j, "vertices", path), path + ".vertices", kMaxVertices);
    const Json& facets = member(j, "facets", path);
    if (!facets.is_array())
        throw InputError("expected an array of facets", path + ".facets");
    if (facets.size() > 4096)
        throw InputError("too many facets", path + ".facets");
    std::vector<Simplex> fs;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        std::string where = index_path(path + ".facets", i);
        if (!facets[i].is_array() || facets[i].empty())
            throw InputError("facet must be a nonempty array of vertex indices", where);
        if (facets[i].size() > static_cast<std::size_t>(truncation_degree()) + 1)
            throw InputError("facet dimension exceeds the truncation bound", where);
        Simplex s;
        for (std::size_t k = 0; k < facets[i].size(); ++k) {
            std::size_t v = to_size(facets[i][k], index_path(where, k), kMaxVertices);
            if (v >= n)
                throw InputError("vertex index " + std::to_string(v) + " out of range", index_path(where, k));
            s.push_back(v);
        }
        fs.push_back(std::move(s));
    }
    try {
        return SimplicialComplex(n, std::move(fs));
    } catch (const InputError& e) {
        relocate(e, path);
    }
}

ModelPtr dgring_from(const Json& j, const std::string& path)
{
    const int max_deg = truncation_degree();
    std::size_t degrees = to_size(member(j, "degrees", path), path + ".degrees", static_cast<std::size_t>(max_deg));
    const Json& basis_j = member(j, "basis", path);
    if (!basis_j.is_array() || basis_j.size() != degrees + 1)
        throw InputError("basis must list " + std::to_string(degrees + 1) + " degrees", path + ".basis");
    std::vector<std::vector<std::string>> basis;
    for (std::size_t k = 0; k <= degrees; ++k) {
        std::string where = index_path(path + ".basis", k);
        if (!basis_j[k].is_array())
            throw InputError("expected an array of labels", where);
        if (basis_j[k].size() > 512)
            throw InputError("too many basis elements", where);
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < basis_j[k].size(); ++i) {
            if (!basis_j[k][i].is_string())
                throw InputError("basis label must be a string", index_path(where, i));
            labels.push_back(basis_j[k][i].get<std::string>());
        }
        basis.push_back(std::move(labels));
    }
    std::vector<SparseMatrix> diff;
    for (std::size_t k = 0; k < degrees; ++k)
        diff.emplace_back(basis[k + 1].size(), basis[k].size());
    if (j.contains("diff")) {
        const Json& dj = j["diff"];
        if (!dj.is_array())
            throw InputError("expected an array of differentials", path + ".diff");
        std::vector<bool> seen(degrees, false);
        for (std::size_t e = 0; e < dj.size(); ++e) {
            std::string where = index_path(path + ".diff", e);
            std::size_t k = to_size(member(dj[e], "deg", where), where + ".deg", degrees);
            if (k >= degrees)
                throw InputError("no differential leaves the top degree", where + ".deg");
            if (seen[k])
                throw InputError("duplicate differential for degree " + std::to_string(k), where);
            seen[k] = true;
            IntMatrix m = to_matrix(member(dj[e], "matrix", where), where + ".matrix");
            const std::size_t rows = basis[k + 1].size(), cols = basis[k].size();
            if (m.rows() == 0 && rows * cols == 0)
                continue;
            if (m.rows() != rows || m.cols() != cols)
                throw InputError("matrix of d on degree " + std::to_string(k) + " must be " + std::to_string(rows) +
                                     "x" + std::to_string(cols),
                                 where + ".matrix");
            diff[k] = SparseMatrix::from_dense(m);
        }
    }
    std::vector<DgRingModel::ProductEntry> products;
    if (j.contains("product")) {
        const Json& pj = j["product"];
        if (!pj.is_array())
            throw InputError("expected an array of product entries", path + ".product");
        if (pj.size() > kMaxEntries)
            throw InputError("too many product entries", path + ".product");
        for (std::size_t e = 0; e < pj.size(); ++e) {
            std::string where = index_path(path + ".product", e);
            DgRingModel::ProductEntry pe;
            pe.i_deg = static_cast<int>(to_size(member(pj[e], "i_deg", where), where + ".i_deg", degrees));
            pe.i_idx = to_size(member(pj[e], "i_idx", where), where + ".i_idx", 511);
            pe.j_deg = static_cast<int>(to_size(member(pj[e], "j_deg", where), where + ".j_deg", degrees));
            pe.j_idx = to_size(member(pj[e], "j_idx", where), where + ".j_idx", 511);
            const Json& rj = member(pj[e], "result", where);
            if (!rj.is_array())
                throw InputError("expected an array of {idx, coeff}", where + ".result");
            for (std::size_t r = 0; r < rj.size(); ++r) {
                std::string rw = index_path(where + ".result", r);
                pe.result.emplace_back(to_size(member(rj[r], "idx", rw), rw + ".idx", 511),
                                       to_int(member(rj[r], "coeff", rw), rw + ".coeff"));
            }
            products.push_back(std::move(pe));
        }
    }
    ModelProvenance prov;
    if (j.contains("provenance")) {
        const Json& pv = j["provenance"];
        std::string where = path + ".provenance";
        if (!pv.is_object())
            throw InputError("expected an object", where);
        if (pv.contains("source")) {
            if (!pv["source"].is_string())
                throw InputError("expected a string", where + ".source");
            prov.source = pv["source"].get<std::string>();
        }
        for (auto [key, field] : {std::pair{"formality_assumed", &prov.formality_assumed},
                                  std::pair{"torsion_products_dropped", &prov.torsion_products_dropped}})
            if (pv.contains(key)) {
                if (!pv[key].is_boolean())
                    throw InputError("expected a boolean", where + "." + key);
                *field = pv[key].get<bool>();
            }
    }
    try {
        return std::make_shared<DgRingModel>(std::move(basis), std::move(diff), products, prov);
    } catch (const InputError& e) {
        relocate(e, path);
    }
}

std::string product_format(const Json& j, const std::string& path)
{
    if (!j.contains("format"))
        return {};
    if (!j["format"].is_string())
        throw InputError("format must be a string", path + ".format");
    return j["format"].get<std::string>();
}

}  // namespace

SpaceDocument space_from(const Json& j, const std::string& path)
{
    SpaceDocument doc;
    try {
        if (j.is_string()) {
            doc.model = builtin_space(j.get<std::string>());
            return doc;
        }
        if (!j.is_object())
            throw InputError("expected a space document, got " + type_name(j), path);
        if (j.contains("builtin")) {
            if (!j["builtin"].is_string())
                throw InputError("builtin name must be a string", path + ".builtin");
            doc.model = builtin_space(j["builtin"].get<std::string>());
            return doc;
        }
    } catch (const InputError& e) {
        relocate(e, path);
    }
    const std::string format = product_format(j, path);
    if (format == "simplicial") {
        doc.complex = simplicial_from(j, path);
        try {
            doc.model = cohomology_ring(*doc.complex);
        } catch (const InputError& e) {
            relocate(e, path);
        }
    } else if (format == "dgring") {
        doc.model = dgring_from(j, path);
    } else {
        throw InputError("unknown space format '" + format.substr(0, 32) + "' (expected simplicial, dgring or builtin)",
                         path + ".format");
    }
    return doc;
}

Json space_to(const DgRingModel& model)
{
    const auto& prov = model.provenance();
    if (!prov.name.empty())
        return Json{{"builtin", prov.name}};
    Json basis = Json::array();
    for (const auto& labels : model.basis())
        basis.push_back(labels);
    Json diff = Json::array();
    for (int k = 0; k < model.top_degree(); ++k)
        if (!model.differential(k).is_zero())
            diff.push_back(Json{{"deg", std::to_string(k)}, {"matrix", from_matrix(model.differential(k).to_dense())}});
    Json prod = Json::array();
    for (const auto& pe : model.product_entries()) {
        Json res = Json::array();
        for (const auto& [idx, c] : pe.result)
            res.push_back(Json{{"idx", std::to_string(idx)}, {"coeff", c.get_str()}});
        prod.push_back(Json{{"i_deg", std::to_string(pe.i_deg)},
                            {"i_idx", std::to_string(pe.i_idx)},
                            {"j_deg", std::to_string(pe.j_deg)},
                            {"j_idx", std::to_string(pe.j_idx)},
                            {"result", res}});
    }
    Json out{{"format", "dgring"},
             {"degrees", std::to_string(model.top_degree())},
             {"basis", basis},
             {"diff", diff},
             {"product", prod}};
    if (prov.source != "user" || prov.formality_assumed || prov.torsion_products_dropped)
        out["provenance"] = Json{{"source", prov.source},
                                 {"formality_assumed", prov.formality_assumed},
                                 {"torsion_products_dropped", prov.torsion_products_dropped}};
    return out;
}

namespace {

std::vector<IntVector> chern_from(const Json& j, const DgRingModel& base, const std::string& path)
{
    if (!j.is_array())
        throw InputError("expected an array of Chern cocycles", path);
    if (j.empty() || j.size() > 12)
        throw InputError("fiber rank must be between 1 and 12", path);
    LabelResolver resolve = [&](const std::string& label) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < base.dim(2); ++i)
            if (base.label(2, i) == label)
                return i;
        return std::nullopt;
    };
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(to_vector(j[i], base.dim(2), resolve, index_path(path, i)));
    return out;
}

Pair side_from(const Json& j, const ModelPtr& base, bool hat, const std::string& path)
{
    auto chern = chern_from(member(j, "chern", path), *base, path + ".chern");
    BundlePtr bundle;
    try {
        bundle = std::make_shared<BundleModel>(base, chern, fiber_labels(chern.size(), hat));
    } catch (const InputError& e) {
        relocate(e, path + ".chern");
    }
    LabelResolver resolve = [&](const std::string& label) { return bundle->find_label(3, label); };
    IntVector flux = j.contains("flux") ? to_vector(j["flux"], bundle->dim(3), resolve, path + ".flux")
                                        : zero_vector(bundle->dim(3));
    try {
        return Pair(bundle, std::move(flux));
    } catch (const InputError& e) {
        relocate(e, path);
    }
}

Json side_to(const Pair& p)
{
    Json chern = Json::array();
    for (const auto& c : p.bundle->chern())
        chern.push_back(from_vector(c));
    return Json{{"chern", chern}, {"flux", from_vector(p.flux)}};
}

void expect_format(const Json& j, const char* format, const std::string& path)
{
    if (!j.is_object())
        throw InputError("expected an object, got " + type_name(j), path);
    std::string f = product_format(j, path);
    if (!f.empty() && f != format)
        throw InputError("expected format '" + std::string(format) + "', got '" + f.substr(0, 32) + "'",
                         path + ".format");
}

}  // namespace

Pair pair_from(const Json& j, const std::string& path)
{
    expect_format(j, "pair", path);
    ModelPtr base = space_from(member(j, "base", path), path + ".base").model;
    return side_from(j, base, false, path);
}

Json pair_to(const Pair& pair)
{
    Json out{{"format", "pair"}, {"base", space_to(pair.base())}};
    Json side = side_to(pair);
    out["chern"] = side["chern"];
    out["flux"] = side["flux"];
    return out;
}

Triple triple_from(const Json& j, const std::string& path)
{
    expect_format(j, "triple", path);
    ModelPtr base = space_from(member(j, "base", path), path + ".base").model;
    Pair side = side_from(member(j, "side", path), base, false, path + ".side");
    Pair dual = side_from(member(j, "dual", path), base, true, path + ".dual");
    if (side.rank() != dual.rank())
        throw InputError("side and dual have different fiber ranks", path + ".dual.chern");
    Triple t(std::move(side), std::move(dual), {});
    if (j.contains("w")) {
        LabelResolver resolve = [&](const std::string& label) { return t.doubled->find_label(2, label); };
        t.w = to_vector(j["w"], t.doubled->dim(2), resolve, path + ".w");
    }
    return t;
}

Json triple_to(const Triple& t)
{
    return Json{{"format", "triple"},
                {"base", space_to(t.base())},
                {"side", side_to(t.side)},
                {"dual", side_to(t.dual)},
                {"w", from_vector(t.w)}};
}

}  // namespace io

SpaceDocument parse_space(const std::string& text) { return io::space_from(io::parse_text(text), "$"); }

Pair parse_pair(const std::string& text) { return io::pair_from(io::parse_text(text), "$"); }

Triple parse_triple(const std::string& text) { return io::triple_from(io::parse_text(text), "$"); }

std::vector<IntVector> parse_chern(const std::string& text, const DgRingModel& base)
{
    io::Json j = io::parse_text(text);
    if (j.is_object())
        return io::chern_from(io::member(j, "chern", "$"), base, "$.chern");
    return io::chern_from(j, base, "$");
}

IntMatrix parse_onn_matrix(const std::string& text)
{
    io::Json j = io::parse_text(text);
    std::size_t n = io::to_size(io::member(j, "n", "$"), "$.n", 12);
    IntMatrix m = io::to_matrix(io::member(j, "matrix", "$"), "$.matrix");
    if (n == 0 || m.rows() != 2 * n || m.cols() != 2 * n)
        throw InputError("matrix must be 2n x 2n with n = " + std::to_string(n) + " >= 1", "$.matrix");
    return m;
}

std::string write_space(const DgRingModel& model, bool pretty) { return io::dump(io::space_to(model), pretty); }

std::string write_pair(const Pair& pair, bool pretty) { return io::dump(io::pair_to(pair), pretty); }

std::string write_triple(const Triple& triple, bool pretty) { return io::dump(io::triple_to(triple), pretty); }

std::string write_onn_matrix(const IntMatrix& g, bool pretty)
{
    return io::dump(io::Json{{"n", std::to_string(g.rows() / 2)}, {"matrix", io::from_matrix(g)}}, pretty);
}

}  // namespace tdk
