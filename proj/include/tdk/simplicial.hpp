#ifndef TDK_SIMPLICIAL_HPP
#define TDK_SIMPLICIAL_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "tdk/abelian.hpp"
#include "tdk/dg_ring.hpp"

namespace tdk {

using Simplex = std::vector<std::size_t>;

/**
 * Finite abstract simplicial complex given by its facets.
 *
 * All faces are generated and stored per dimension in lexicographic order;
 * vertices that appear in no facet are kept as isolated 0-simplices.
 * Cochains are integer vectors indexed by that order.
 */
class SimplicialComplex {
public:
    static constexpr std::size_t kMaxVertices = 256;
    static constexpr std::size_t kMaxSimplicesPerDim = 4096;

    /// Throws InputError on out-of-range or repeated vertices, empty facets,
    /// or a dimension above the truncation bound.
    SimplicialComplex(std::size_t vertex_count, std::vector<Simplex> facets);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    int dimension() const noexcept { return static_cast<int>(simplices_.size()) - 1; }
    const std::vector<Simplex>& facets() const noexcept { return facets_; }
    const std::vector<Simplex>& simplices(int k) const { return simplices_.at(k); }
    std::size_t count(int k) const;
    /// Index of a sorted simplex in its dimension table; throws if absent.
    std::size_t index_of(const Simplex& s) const;

    /// δ: C^k → C^{k+1}, δf(σ) = Σ (-1)^i f(∂_i σ).
    SparseMatrix coboundary(int k) const;
    /// Front-face/back-face cup product of cochains.
    IntVector cup(int p, const IntVector& f, int q, const IntVector& g) const;

    long euler_characteristic() const;
    Subquotient cohomology(int k) const;
    std::vector<FgAbelianGroup> cohomology_groups() const;

private:
    std::size_t vertex_count_;
    std::vector<Simplex> facets_;
    std::vector<std::vector<Simplex>> simplices_;
    std::vector<std::map<Simplex, std::size_t>> index_;
};

struct CohomologyRingOptions {
    /// When nonzero, representative cocycles are perturbed by pseudo-random
    /// coboundaries drawn from this seed. Structure constants must not change.
    std::uint64_t perturbation_seed = 0;
};

/**
 * Cohomology ring of K as a model with zero differential on the free part.
 *
 * Free generators of H^k are labelled "h<k>_<i>". Each torsion summand Z/m
 * of H^k is modelled by a pair e (degree k-1), t (degree k) with de = m·t,
 * labelled "e<k>_<i>" and "t<k>_<i>". Products are computed by cupping
 * representatives and reducing; torsion contributions to products are
 * dropped and flagged in the provenance. The model is marked as resting on
 * a formality assumption. Throws InputError if K is disconnected.
 */
ModelPtr cohomology_ring(const SimplicialComplex& k, const CohomologyRingOptions& options = {});

}  // namespace tdk

#endif
