#include "tdk/dg_ring.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "tdk/errors.hpp"
#include "tdk/snf.hpp"

namespace tdk {

namespace {

constexpr std::size_t kMaxBasisPerDegree = 512;

std::string basis_name(const std::vector<std::vector<std::string>>& basis, int k, std::size_t i)
{
    return "'" + basis[k][i] + "' (degree " + std::to_string(k) + ")";
}

Combination to_combination(const IntVector& v)
{
    Combination c;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            c.emplace_back(i, v[i]);
    return c;
}

IntVector from_combination(const Combination& c, std::size_t n)
{
    IntVector v = zero_vector(n);
    for (const auto& [i, x] : c)
        v.at(i) += x;
    return v;
}

int koszul_sign(int a, int b) { return ((a * b) % 2 == 0) ? 1 : -1; }

}  // namespace

int truncation_degree()
{
    const char* env = std::getenv("TDK_TRUNCATION");
    if (!env || !*env)
        return kDefaultTruncation;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 12)
        throw InputError("TDK_TRUNCATION must be an integer between 1 and 12", "environment");
    return static_cast<int>(v);
}

DgRingModel::DgRingModel(std::vector<std::vector<std::string>> basis, std::vector<SparseMatrix> diff,
                         const std::vector<ProductEntry>& products, ModelProvenance provenance)
    : basis_(std::move(basis)), diff_(std::move(diff)), provenance_(std::move(provenance))
{
    if (basis_.empty())
        throw InputError("model has no degrees", "basis");
    if (top_degree() > truncation_degree())
        throw InputError("model degree " + std::to_string(top_degree()) + " exceeds the truncation bound " +
                             std::to_string(truncation_degree()),
                         "degrees");
    if (basis_[0].size() != 1)
        throw InputError("degree 0 must be spanned by the unit alone (connected base)", "basis[0]");
    for (int k = 0; k <= top_degree(); ++k)
        if (basis_[k].size() > kMaxBasisPerDegree)
            throw InputError("too many basis elements", "basis[" + std::to_string(k) + "]");

    const int top = top_degree();
    if (diff_.size() == static_cast<std::size_t>(top))
        diff_.emplace_back(0, dim(top));
    if (diff_.size() != static_cast<std::size_t>(top + 1))
        throw InputError("expected " + std::to_string(top) + " differential matrices", "diff");
    for (int k = 0; k <= top; ++k) {
        std::size_t want_rows = k < top ? dim(k + 1) : 0;
        if (diff_[k].rows() != want_rows || diff_[k].cols() != dim(k))
            throw InputError("differential has shape " + std::to_string(diff_[k].rows()) + "x" +
                                 std::to_string(diff_[k].cols()) + ", expected " + std::to_string(want_rows) +
                                 "x" + std::to_string(dim(k)),
                             "diff[" + std::to_string(k) + "]");
    }

    products_.assign(top + 1, {});
    for (int p = 0; p <= top; ++p) {
        products_[p].assign(top + 1, {});
        for (int q = 0; q <= top; ++q)
            products_[p][q].assign(dim(p) * dim(q), Combination{});
    }
    for (int p = 0; p <= top; ++p)
        for (std::size_t i = 0; i < dim(p); ++i) {
            products_[0][p][table_index(0, 0, p, i)] = Combination{{i, BigInt(1)}};
            products_[p][0][table_index(p, i, 0, 0)] = Combination{{i, BigInt(1)}};
        }

    std::set<std::tuple<int, std::size_t, int, std::size_t>> seen;
    for (std::size_t e = 0; e < products.size(); ++e) {
        const auto& pe = products[e];
        const std::string where = "product[" + std::to_string(e) + "]";
        if (pe.i_deg < 0 || pe.i_deg > top || pe.j_deg < 0 || pe.j_deg > top)
            throw InputError("degree out of range", where);
        if (pe.i_idx >= dim(pe.i_deg) || pe.j_idx >= dim(pe.j_deg))
            throw InputError("basis index out of range", where);
        if (!seen.emplace(pe.i_deg, pe.i_idx, pe.j_deg, pe.j_idx).second)
            throw InputError("duplicate product entry", where);
        const int rd = pe.i_deg + pe.j_deg;
        IntVector res;
        if (rd > top) {
            for (const auto& [idx, c] : pe.result)
                if (c != 0)
                    throw InputError("nonzero product above the top degree", where);
            continue;
        }
        for (const auto& [idx, c] : pe.result)
            if (idx >= dim(rd))
                throw InputError("result index out of range", where);
        Combination comb = to_combination(from_combination(pe.result, dim(rd)));
        auto& slot = products_[pe.i_deg][pe.j_deg][table_index(pe.i_deg, pe.i_idx, pe.j_deg, pe.j_idx)];
        if ((pe.i_deg == 0 || pe.j_deg == 0)) {
            if (comb != slot)
                throw InputError("product with the unit must be the identity", where);
            continue;
        }
        slot = std::move(comb);
    }
    validate();
}

std::size_t DgRingModel::dim(int k) const
{
    if (k < 0 || k > top_degree())
        return 0;
    return basis_[k].size();
}

std::size_t DgRingModel::total_dim() const
{
    std::size_t n = 0;
    for (const auto& b : basis_)
        n += b.size();
    return n;
}

std::size_t DgRingModel::table_index(int /*p*/, std::size_t i, int q, std::size_t j) const
{
    return i * dim(q) + j;
}

const SparseMatrix& DgRingModel::differential(int k) const { return diff_.at(k); }

IntVector DgRingModel::apply_d(int k, const IntVector& v) const
{
    if (k < 0 || k > top_degree()) {
        if (!v.empty())
            throw std::invalid_argument("apply_d: no cochains in degree " + std::to_string(k));
        return zero_vector(dim(k + 1));
    }
    return diff_[k].apply(v);
}

const Combination& DgRingModel::basis_product(int p, std::size_t i, int q, std::size_t j) const
{
    static const Combination empty;
    if (p + q > top_degree())
        return empty;
    return products_[p][q][table_index(p, i, q, j)];
}

IntVector DgRingModel::multiply(int p, const IntVector& a, int q, const IntVector& b) const
{
    if (a.size() != dim(p) || b.size() != dim(q))
        throw std::invalid_argument("multiply: cochain length does not match its degree");
    if (p + q > top_degree())
        return {};
    IntVector out = zero_vector(dim(p + q));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0)
                continue;
            BigInt s = a[i] * b[j];
            for (const auto& [k, c] : products_[p][q][table_index(p, i, q, j)])
                out[k] += s * c;
        }
    }
    return out;
}

std::vector<DgRingModel::ProductEntry> DgRingModel::product_entries() const
{
    std::vector<ProductEntry> out;
    for (int p = 1; p <= top_degree(); ++p)
        for (int q = 1; p + q <= top_degree(); ++q)
            for (std::size_t i = 0; i < dim(p); ++i)
                for (std::size_t j = 0; j < dim(q); ++j) {
                    const auto& c = products_[p][q][table_index(p, i, q, j)];
                    if (!c.empty())
                        out.push_back({p, i, q, j, c});
                }
    return out;
}

void DgRingModel::validate() const
{
    const int top = top_degree();
    auto unit_vec = [&](int k, std::size_t i) {
        IntVector e = zero_vector(dim(k));
        e[i] = 1;
        return e;
    };

    // d∘d = 0
    for (int k = 0; k + 2 <= top; ++k)
        for (std::size_t i = 0; i < dim(k); ++i) {
            IntVector dd = apply_d(k + 1, apply_d(k, unit_vec(k, i)));
            if (!tdk::is_zero(dd))
                throw InputError("d∘d ≠ 0 on basis element " + basis_name(basis_, k, i),
                                 "diff[" + std::to_string(k) + "]");
        }

    // graded commutativity
    for (int p = 1; p <= top; ++p)
        for (int q = p; p + q <= top; ++q)
            for (std::size_t i = 0; i < dim(p); ++i)
                for (std::size_t j = 0; j < dim(q); ++j) {
                    IntVector ab = from_combination(basis_product(p, i, q, j), dim(p + q));
                    IntVector ba = from_combination(basis_product(q, j, p, i), dim(p + q));
                    if (ab != scale(BigInt(koszul_sign(p, q)), ba))
                        throw InputError("graded commutativity fails for the pair " + basis_name(basis_, p, i) +
                                             ", " + basis_name(basis_, q, j),
                                         "product");
                }

    // associativity
    for (int p = 1; p <= top; ++p)
        for (int q = 1; p + q <= top; ++q)
            for (int r = 1; p + q + r <= top; ++r)
                for (std::size_t i = 0; i < dim(p); ++i)
                    for (std::size_t j = 0; j < dim(q); ++j) {
                        IntVector ab = from_combination(basis_product(p, i, q, j), dim(p + q));
                        for (std::size_t k = 0; k < dim(r); ++k) {
                            IntVector c = unit_vec(r, k);
                            IntVector lhs = multiply(p + q, ab, r, c);
                            IntVector bc = multiply(q, unit_vec(q, j), r, c);
                            IntVector rhs = multiply(p, unit_vec(p, i), q + r, bc);
                            if (lhs != rhs)
                                throw InputError("associativity fails for the triple " +
                                                     basis_name(basis_, p, i) + ", " + basis_name(basis_, q, j) +
                                                     ", " + basis_name(basis_, r, k),
                                                 "product");
                        }
                    }

    // Leibniz rule d(ab) = da·b + (-1)^p a·db
    for (int p = 0; p <= top; ++p)
        for (int q = 0; p + q + 1 <= top; ++q)
            for (std::size_t i = 0; i < dim(p); ++i)
                for (std::size_t j = 0; j < dim(q); ++j) {
                    IntVector a = unit_vec(p, i), b = unit_vec(q, j);
                    IntVector lhs = apply_d(p + q, multiply(p, a, q, b));
                    IntVector rhs = add(multiply(p + 1, apply_d(p, a), q, b),
                                        scale(BigInt(p % 2 ? -1 : 1), multiply(p, a, q + 1, apply_d(q, b))));
                    if (lhs != rhs)
                        throw InputError("Leibniz rule fails for the pair " + basis_name(basis_, p, i) + ", " +
                                             basis_name(basis_, q, j),
                                         "diff");
                }
}

Subquotient DgRingModel::cohomology(int k) const
{
    if (k < 0 || k > top_degree())
        return Subquotient::trivial(0);
    IntMatrix z = kernel_basis(diff_[k].to_dense());
    IntMatrix b = k > 0 ? diff_[k - 1].to_dense() : IntMatrix(dim(0), 0);
    return Subquotient::make(dim(k), z, b);
}

std::vector<FgAbelianGroup> DgRingModel::cohomology_groups() const
{
    std::vector<FgAbelianGroup> out;
    for (int k = 0; k <= top_degree(); ++k)
        out.push_back(cohomology(k).group());
    return out;
}

bool DgRingModel::is_closed(int k, const IntVector& v) const
{
    if (v.size() != dim(k))
        return false;
    return tdk::is_zero(apply_d(k, v));
}

bool DgRingModel::operator==(const DgRingModel& other) const
{
    return basis_ == other.basis_ && diff_ == other.diff_ && products_ == other.products_;
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

namespace {

// Exterior monomials as bitmasks; returns sign of m1·m2 or 0.
int monomial_sign(unsigned m1, unsigned m2)
{
    if (m1 & m2)
        return 0;
    int inversions = 0;
    for (unsigned a = m1; a; a &= a - 1) {
        int i = __builtin_ctz(a);
        // generators of m2 with index below i must pass over generator i
        inversions += __builtin_popcount(m2 & ((1u << i) - 1));
    }
    return inversions % 2 ? -1 : 1;
}

}  // namespace

ModelPtr exterior_model(const std::vector<ExteriorGenerator>& gens, ModelProvenance provenance)
{
    const int n = static_cast<int>(gens.size());
    std::vector<std::vector<unsigned>> monos(n + 1);
    for (int size = 0; size <= n; ++size) {
        std::vector<unsigned> list;
        for (unsigned m = 0; m < (1u << n); ++m)
            if (__builtin_popcount(m) == size)
                list.push_back(m);
        // lexicographic order on the sorted index sequences
        std::sort(list.begin(), list.end(), [](unsigned a, unsigned b) {
            while (a && b) {
                int ia = __builtin_ctz(a), ib = __builtin_ctz(b);
                if (ia != ib)
                    return ia < ib;
                a &= a - 1;
                b &= b - 1;
            }
            return false;
        });
        monos[size] = list;
    }
    std::map<unsigned, std::size_t> index;
    std::vector<std::vector<std::string>> basis(n + 1);
    for (int k = 0; k <= n; ++k)
        for (std::size_t i = 0; i < monos[k].size(); ++i) {
            unsigned m = monos[k][i];
            index[m] = i;
            std::string label;
            for (unsigned a = m; a; a &= a - 1)
                label += gens[__builtin_ctz(a)].label;
            basis[k].push_back(label.empty() ? "1" : label);
        }

    // d on a monomial: Σ_m (-1)^{m-1} g_{s1}..d(g_sm)..g_sk
    std::vector<SparseMatrix> diff;
    for (int k = 0; k < n; ++k) {
        SparseMatrix d(monos[k + 1].size(), monos[k].size());
        for (std::size_t col = 0; col < monos[k].size(); ++col) {
            unsigned m = monos[k][col];
            int position = 0;
            for (unsigned a = m; a; a &= a - 1, ++position) {
                int g = __builtin_ctz(a);
                unsigned left = m & ((1u << g) - 1);
                unsigned right = m & ~((2u << g) - 1);
                int outer = position % 2 ? -1 : 1;
                for (const auto& [i, j, c] : gens[g].d) {
                    unsigned dm = (1u << i) | (1u << j);
                    int s1 = monomial_sign(left, dm);
                    if (!s1)
                        continue;
                    int s2 = monomial_sign(left | dm, right);
                    if (!s2)
                        continue;
                    d.add(index[left | dm | right], col, BigInt(outer * s1 * s2 * c));
                }
            }
        }
        diff.push_back(std::move(d));
    }

    std::vector<DgRingModel::ProductEntry> products;
    for (int p = 1; p <= n; ++p)
        for (int q = 1; p + q <= n; ++q)
            for (std::size_t i = 0; i < monos[p].size(); ++i)
                for (std::size_t j = 0; j < monos[q].size(); ++j) {
                    int s = monomial_sign(monos[p][i], monos[q][j]);
                    if (s)
                        products.push_back({p, i, q, j, {{index[monos[p][i] | monos[q][j]], BigInt(s)}}});
                }
    return std::make_shared<DgRingModel>(std::move(basis), std::move(diff), products, std::move(provenance));
}

ModelPtr product_model(const DgRingModel& a, const DgRingModel& b)
{
    for (const auto* factor : {&a, &b})
        for (const auto& g : factor->cohomology_groups())
            if (!g.is_free())
                throw InputError("product_model requires torsion-free factors (found " + g.to_string() + ")");
    const int top = a.top_degree() + b.top_degree();
    if (top > truncation_degree())
        throw InputError("product model degree " + std::to_string(top) + " exceeds the truncation bound");

    // index of (p, i, j) with i in A^p, j in B^{k-p}
    std::vector<std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t>> index(top + 1);
    std::vector<std::vector<std::string>> basis(top + 1);
    for (int k = 0; k <= top; ++k)
        for (int p = 0; p <= k; ++p)
            for (std::size_t i = 0; i < a.dim(p); ++i)
                for (std::size_t j = 0; j < b.dim(k - p); ++j) {
                    index[k][{p, i, j}] = basis[k].size();
                    basis[k].push_back(k == 0 ? "1" : a.label(p, i) + "×" + b.label(k - p, j));
                }

    std::vector<SparseMatrix> diff;
    for (int k = 0; k < top; ++k) {
        SparseMatrix d(basis[k + 1].size(), basis[k].size());
        for (const auto& [key, col] : index[k]) {
            const auto& [p, i, j] = key;
            const int q = k - p;
            if (p < a.top_degree())
                for (const auto& [r, x] : a.differential(p).column(i))
                    d.add(index[k + 1].at({p + 1, r, j}), col, x);
            if (q < b.top_degree())
                for (const auto& [r, x] : b.differential(q).column(j))
                    d.add(index[k + 1].at({p, i, r}), col, (p % 2 ? -1 : 1) * x);
        }
        diff.push_back(std::move(d));
    }

    std::vector<DgRingModel::ProductEntry> products;
    for (int k1 = 1; k1 <= top; ++k1)
        for (int k2 = 1; k1 + k2 <= top; ++k2)
            for (const auto& [key1, c1] : index[k1])
                for (const auto& [key2, c2] : index[k2]) {
                    const auto& [p1, i1, j1] = key1;
                    const auto& [p2, i2, j2] = key2;
                    const int q1 = k1 - p1, q2 = k2 - p2;
                    const auto& ra = a.basis_product(p1, i1, p2, i2);
                    const auto& rb = b.basis_product(q1, j1, q2, j2);
                    if (ra.empty() || rb.empty())
                        continue;
                    int sign = koszul_sign(q1, p2);
                    IntVector res = zero_vector(basis[k1 + k2].size());
                    for (const auto& [x, cx] : ra)
                        for (const auto& [y, cy] : rb)
                            res[index[k1 + k2].at({p1 + p2, x, y})] += sign * cx * cy;
                    Combination comb = to_combination(res);
                    if (!comb.empty())
                        products.push_back({k1, c1, k2, c2, std::move(comb)});
                }
    ModelProvenance prov;
    prov.source = "product";
    prov.formality_assumed = a.provenance().formality_assumed || b.provenance().formality_assumed;
    prov.name = a.provenance().name.empty() || b.provenance().name.empty()
                    ? std::string()
                    : a.provenance().name + "x" + b.provenance().name;
    return std::make_shared<DgRingModel>(std::move(basis), std::move(diff), products, prov);
}

namespace {

bool parse_suffix(const std::string& name, const std::string& prefix, int& value)
{
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size() || name.size() > prefix.size() + 3)
        return false;
    for (std::size_t i = prefix.size(); i < name.size(); ++i)
        if (name[i] < '0' || name[i] > '9')
            return false;
    value = std::stoi(name.substr(prefix.size()));
    return true;
}

ModelPtr single_builtin(const std::string& name)
{
    ModelProvenance prov;
    prov.source = "builtin";
    prov.name = name;
    int k = 0;
    if (name == "point")
        return std::make_shared<DgRingModel>(std::vector<std::vector<std::string>>{{"1"}},
                                             std::vector<SparseMatrix>{}, std::vector<DgRingModel::ProductEntry>{},
                                             prov);
    if (parse_suffix(name, "sphere", k)) {
        if (k < 1 || k > 4)
            throw InputError("sphere dimension must be between 1 and 4", "builtin");
        std::vector<std::vector<std::string>> basis(k + 1);
        basis[0] = {"1"};
        basis[k] = {"g" + std::to_string(k)};
        std::vector<SparseMatrix> diff;
        for (int d = 0; d < k; ++d)
            diff.emplace_back(basis[d + 1].size(), basis[d].size());
        return std::make_shared<DgRingModel>(std::move(basis), std::move(diff),
                                             std::vector<DgRingModel::ProductEntry>{}, prov);
    }
    if (parse_suffix(name, "torus", k)) {
        if (k < 1 || k > 3)
            throw InputError("torus dimension must be between 1 and 3", "builtin");
        std::vector<ExteriorGenerator> gens;
        for (int i = 1; i <= k; ++i)
            gens.push_back({"x" + std::to_string(i), {}});
        return exterior_model(gens, prov);
    }
    if (parse_suffix(name, "surface", k)) {
        if (k < 1 || k > 32)
            throw InputError("surface genus must be between 1 and 32", "builtin");
        std::vector<std::vector<std::string>> basis(3);
        basis[0] = {"1"};
        for (int i = 1; i <= k; ++i) {
            basis[1].push_back("a" + std::to_string(i));
            basis[1].push_back("b" + std::to_string(i));
        }
        basis[2] = {"w"};
        std::vector<SparseMatrix> diff{SparseMatrix(basis[1].size(), 1), SparseMatrix(1, basis[1].size())};
        std::vector<DgRingModel::ProductEntry> products;
        for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
            products.push_back({1, 2 * i, 1, 2 * i + 1, {{0, BigInt(1)}}});
            products.push_back({1, 2 * i + 1, 1, 2 * i, {{0, BigInt(-1)}}});
        }
        return std::make_shared<DgRingModel>(std::move(basis), std::move(diff), products, prov);
    }
    if (name == "heisenberg") {
        // Λ(x, y, z) with dz = xy
        return exterior_model({{"x", {}}, {"y", {}}, {"z", {{0, 1, 1}}}}, prov);
    }
    throw InputError("unknown builtin space '" + name.substr(0, 64) + "'", "builtin");
}

}  // namespace

ModelPtr builtin_space(const std::string& name)
{
    if (name.size() > 128)
        throw InputError("builtin name too long", "builtin");
    std::vector<std::string> factors;
    std::string current;
    for (char c : name) {
        if (c == 'x') {
            factors.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    factors.push_back(current);
    ModelPtr model = single_builtin(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i)
        model = product_model(*model, *single_builtin(factors[i]));
    if (factors.size() > 1) {
        auto prov = model->provenance();
        prov.source = "builtin";
        prov.name = name;
        model = std::make_shared<DgRingModel>(model->basis(),
                                              [&] {
                                                  std::vector<SparseMatrix> d;
                                                  for (int k = 0; k <= model->top_degree(); ++k)
                                                      d.push_back(model->differential(k));
                                                  return d;
                                              }(),
                                              model->product_entries(), prov);
    }
    return model;
}

std::vector<std::string> builtin_names()
{
    return {"point",  "sphere1", "sphere2", "sphere3", "sphere4",  "torus1",          "torus2",
            "torus3", "surface2", "heisenberg", "sphere2xsphere1", "sphere2xsphere2", "sphere3xsphere1"};
}

}  // namespace tdk
