#include "tdk/simplicial.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "tdk/errors.hpp"
#include "tdk/snf.hpp"

namespace tdk {

SimplicialComplex::SimplicialComplex(std::size_t vertex_count, std::vector<Simplex> facets)
    : vertex_count_(vertex_count), facets_(std::move(facets))
{
    if (vertex_count_ == 0)
        throw InputError("a simplicial complex needs at least one vertex", "vertices");
    if (vertex_count_ > kMaxVertices)
        throw InputError("at most " + std::to_string(kMaxVertices) + " vertices are supported", "vertices");
    const int bound = truncation_degree();
    std::vector<std::set<Simplex>> faces(1);
    for (std::size_t v = 0; v < vertex_count_; ++v)
        faces[0].insert({v});
    for (std::size_t f = 0; f < facets_.size(); ++f) {
        const std::string where = "facets[" + std::to_string(f) + "]";
        Simplex& s = facets_[f];
        if (s.empty())
            throw InputError("empty facet", where);
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw InputError("repeated vertex in facet", where);
        if (s.back() >= vertex_count_)
            throw InputError("vertex " + std::to_string(s.back()) + " out of range", where);
        const int dim = static_cast<int>(s.size()) - 1;
        if (dim > bound)
            throw InputError("facet dimension " + std::to_string(dim) + " exceeds the truncation bound " +
                                 std::to_string(bound),
                             where);
        if (faces.size() < s.size())
            faces.resize(s.size());
        for (unsigned mask = 1; mask < (1u << s.size()); ++mask) {
            Simplex face;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (mask & (1u << i))
                    face.push_back(s[i]);
            faces[face.size() - 1].insert(std::move(face));
        }
        for (const auto& level : faces)
            if (level.size() > kMaxSimplicesPerDim)
                throw InputError("too many simplices (limit " + std::to_string(kMaxSimplicesPerDim) +
                                     " per dimension)",
                                 where);
    }
    for (auto& level : faces) {
        std::map<Simplex, std::size_t> idx;
        std::vector<Simplex> list(level.begin(), level.end());
        for (std::size_t i = 0; i < list.size(); ++i)
            idx.emplace(list[i], i);
        simplices_.push_back(std::move(list));
        index_.push_back(std::move(idx));
    }
}

std::size_t SimplicialComplex::count(int k) const
{
    if (k < 0 || k > dimension())
        return 0;
    return simplices_[k].size();
}

std::size_t SimplicialComplex::index_of(const Simplex& s) const
{
    if (s.empty() || s.size() > simplices_.size())
        throw std::out_of_range("simplex not in complex");
    auto it = index_[s.size() - 1].find(s);
    if (it == index_[s.size() - 1].end())
        throw std::out_of_range("simplex not in complex");
    return it->second;
}

SparseMatrix SimplicialComplex::coboundary(int k) const
{
    SparseMatrix d(count(k + 1), count(k));
    if (k < 0 || k >= dimension())
        return d;
    for (std::size_t row = 0; row < simplices_[k + 1].size(); ++row) {
        const Simplex& s = simplices_[k + 1][row];
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex face = s;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
            d.add(row, index_of(face), BigInt(i % 2 ? -1 : 1));
        }
    }
    return d;
}

IntVector SimplicialComplex::cup(int p, const IntVector& f, int q, const IntVector& g) const
{
    if (f.size() != count(p) || g.size() != count(q))
        throw std::invalid_argument("cup: cochain length does not match its degree");
    IntVector out = zero_vector(count(p + q));
    for (std::size_t r = 0; r < out.size(); ++r) {
        const Simplex& s = simplices_[p + q][r];
        Simplex front(s.begin(), s.begin() + p + 1);
        Simplex back(s.begin() + p, s.end());
        const BigInt& a = f[index_of(front)];
        if (a == 0)
            continue;
        out[r] = a * g[index_of(back)];
    }
    return out;
}

long SimplicialComplex::euler_characteristic() const
{
    long chi = 0;
    for (int k = 0; k <= dimension(); ++k)
        chi += (k % 2 ? -1 : 1) * static_cast<long>(count(k));
    return chi;
}

Subquotient SimplicialComplex::cohomology(int k) const
{
    if (k < 0 || k > dimension())
        return Subquotient::trivial(0);
    IntMatrix z = kernel_basis(coboundary(k).to_dense());
    IntMatrix b = k > 0 ? coboundary(k - 1).to_dense() : IntMatrix(count(0), 0);
    return Subquotient::make(count(k), z, b);
}

std::vector<FgAbelianGroup> SimplicialComplex::cohomology_groups() const
{
    std::vector<FgAbelianGroup> out;
    for (int k = 0; k <= dimension(); ++k)
        out.push_back(cohomology(k).group());
    return out;
}

ModelPtr cohomology_ring(const SimplicialComplex& complex, const CohomologyRingOptions& options)
{
    const int top = complex.dimension();
    std::vector<Subquotient> h;
    for (int k = 0; k <= top; ++k)
        h.push_back(complex.cohomology(k));
    if (h[0].group().rank() != 1)
        throw InputError("complex is disconnected (H^0 has rank " + std::to_string(h[0].group().rank()) +
                             "); a connected base is required",
                         "facets");

    std::mt19937_64 rng(options.perturbation_seed);
    std::uniform_int_distribution<int> coeff(-2, 2);

    // representatives: torsion cocycles then free cocycles per degree
    std::vector<std::vector<IntVector>> rep_t(top + 1), rep_f(top + 1);
    for (int k = 0; k <= top; ++k) {
        const auto& g = h[k].group();
        const std::size_t nt = g.torsion().size();
        for (std::size_t i = 0; i < g.generator_count(); ++i) {
            IntVector r = h[k].section().column(i);
            if (k == 0)
                r.assign(complex.count(0), BigInt(1));
            if (options.perturbation_seed != 0 && k > 0) {
                IntVector u(complex.count(k - 1));
                for (auto& x : u)
                    x = coeff(rng);
                r = add(r, complex.coboundary(k - 1).apply(u));
            }
            (i < nt ? rep_t[k] : rep_f[k]).push_back(std::move(r));
        }
    }

    // basis per degree: free, torsion t, then e for the torsion of H^{k+1}
    std::vector<std::vector<std::string>> basis(top + 1);
    std::vector<std::size_t> t_offset(top + 1), e_offset(top + 1);
    for (int k = 0; k <= top; ++k) {
        if (k == 0) {
            basis[0].push_back("1");
        } else {
            for (std::size_t i = 0; i < rep_f[k].size(); ++i)
                basis[k].push_back("h" + std::to_string(k) + "_" + std::to_string(i + 1));
        }
        t_offset[k] = basis[k].size();
        for (std::size_t i = 0; i < rep_t[k].size(); ++i)
            basis[k].push_back("t" + std::to_string(k) + "_" + std::to_string(i + 1));
        e_offset[k] = basis[k].size();
        if (k < top)
            for (std::size_t i = 0; i < h[k + 1].group().torsion().size(); ++i)
                basis[k].push_back("e" + std::to_string(k + 1) + "_" + std::to_string(i + 1));
    }

    std::vector<SparseMatrix> diff;
    for (int k = 0; k < top; ++k) {
        SparseMatrix d(basis[k + 1].size(), basis[k].size());
        const auto& tors = h[k + 1].group().torsion();
        for (std::size_t i = 0; i < tors.size(); ++i)
            d.add(t_offset[k + 1] + i, e_offset[k] + i, tors[i]);
        diff.push_back(std::move(d));
    }

    ModelProvenance prov;
    prov.source = "simplicial";
    prov.formality_assumed = true;

    std::vector<DgRingModel::ProductEntry> products;
    for (int p = 1; p <= top; ++p)
        for (int q = 1; p + q <= top; ++q) {
            const int r = p + q;
            const std::size_t nt = h[r].group().torsion().size();
            auto classes = [&](const std::vector<IntVector>& a, const std::vector<IntVector>& b,
                               std::size_t a_off, std::size_t b_off, bool keep) {
                for (std::size_t i = 0; i < a.size(); ++i)
                    for (std::size_t j = 0; j < b.size(); ++j) {
                        IntVector c = h[r].reduce_or_throw(complex.cup(p, a[i], q, b[j]));
                        Combination res;
                        for (std::size_t g = 0; g < c.size(); ++g) {
                            if (c[g] == 0)
                                continue;
                            if (g < nt || !keep)
                                prov.torsion_products_dropped = true;
                            else
                                res.emplace_back(g - nt, c[g]);
                        }
                        if (keep && !res.empty())
                            products.push_back({p, a_off + i, q, b_off + j, std::move(res)});
                    }
            };
            classes(rep_f[p], rep_f[q], 0, 0, true);
            classes(rep_f[p], rep_t[q], 0, t_offset[q], false);
            classes(rep_t[p], rep_f[q], t_offset[p], 0, false);
            classes(rep_t[p], rep_t[q], t_offset[p], t_offset[q], false);
        }

    return std::make_shared<DgRingModel>(std::move(basis), std::move(diff), products, prov);
}

}  // namespace tdk
