#ifndef TDK_DG_RING_HPP
#define TDK_DG_RING_HPP

#include <memory>
#include <string>
#include <vector>

#include "tdk/abelian.hpp"
#include "tdk/matrix.hpp"

namespace tdk {

/// Default bound on model degrees and simplicial dimension; overridable
/// through the TDK_TRUNCATION environment variable.
constexpr int kDefaultTruncation = 4;
int truncation_degree();

/// Sparse integer combination of basis elements in a fixed degree.
using Combination = std::vector<std::pair<std::size_t, BigInt>>;

/**
 * Where a model came from and which hypotheses downstream results rest on.
 * Bundle computations are exact for the space being modelled only when
 * the model is integrally quasi-isomorphic, as a ring model, to its
 * cochain algebra.
 */
struct ModelProvenance {
    std::string source = "user";
    bool formality_assumed = false;       ///< built from cohomology of a triangulation
    bool torsion_products_dropped = false; ///< torsion parts of cup products not modelled
    std::string name;                      ///< builtin name, when applicable
};

/**
 * A finite graded ring over Z with differential: the base-space model.
 *
 * Degrees run 0..top_degree(). Degree 0 is Z spanned by the unit
 * (basis index 0). Products landing above the top degree vanish.
 * Instances are immutable and fully validated on construction:
 * d∘d = 0, Leibniz rule, associativity, graded commutativity and unit.
 */
class DgRingModel {
public:
    struct ProductEntry {
        int i_deg;
        std::size_t i_idx;
        int j_deg;
        std::size_t j_idx;
        Combination result;
    };

    /// Validates; throws InputError with a located certificate on failure.
    /// `diff[k]` is the matrix of d: C^k → C^{k+1} (rows dim(k+1), cols dim(k)).
    /// Products with the unit are implied and need not be listed.
    DgRingModel(std::vector<std::vector<std::string>> basis, std::vector<SparseMatrix> diff,
                const std::vector<ProductEntry>& products, ModelProvenance provenance = {});

    int top_degree() const noexcept { return static_cast<int>(basis_.size()) - 1; }
    std::size_t dim(int k) const;
    std::size_t total_dim() const;
    const std::string& label(int k, std::size_t i) const { return basis_.at(k).at(i); }
    const std::vector<std::vector<std::string>>& basis() const noexcept { return basis_; }
    const ModelProvenance& provenance() const noexcept { return provenance_; }

    /// d: C^k → C^{k+1} (a 0-row matrix at the top degree).
    const SparseMatrix& differential(int k) const;
    IntVector apply_d(int k, const IntVector& v) const;

    /// Product of basis elements; empty when the degree exceeds the top.
    const Combination& basis_product(int p, std::size_t i, int q, std::size_t j) const;
    /// Product of cochains of degrees p and q (vector in degree p+q, or
    /// empty vector if p+q exceeds the top degree).
    IntVector multiply(int p, const IntVector& a, int q, const IntVector& b) const;

    /// Product entries (excluding the unit), in deterministic order.
    std::vector<ProductEntry> product_entries() const;

    /// H^k of the model with representatives.
    Subquotient cohomology(int k) const;
    /// Cohomology groups in degrees 0..top.
    std::vector<FgAbelianGroup> cohomology_groups() const;
    bool is_closed(int k, const IntVector& v) const;

    bool operator==(const DgRingModel& other) const;

private:
    void validate() const;
    std::size_t table_index(int p, std::size_t i, int q, std::size_t j) const;

    std::vector<std::vector<std::string>> basis_;
    std::vector<SparseMatrix> diff_;
    // products_[p][q] holds dim(p)*dim(q) combinations.
    std::vector<std::vector<std::vector<Combination>>> products_;
    ModelProvenance provenance_;
};

using ModelPtr = std::shared_ptr<const DgRingModel>;

/**
 * Named models: "point", "sphereK" (1 ≤ K ≤ 4), "torusK" (1 ≤ K ≤ 3),
 * "surfaceG" (G ≥ 1), "heisenberg", and products "AxB" of torsion-free
 * factors, e.g. "sphere2xsphere1". Throws InputError for unknown names.
 */
ModelPtr builtin_space(const std::string& name);
std::vector<std::string> builtin_names();

/// Tensor product model with Koszul signs. Both factors must have
/// torsion-free cohomology; the result must fit within the truncation.
ModelPtr product_model(const DgRingModel& a, const DgRingModel& b);

/**
 * Exterior algebra over Z on degree-1 generators with a differential given
 * on generators as a combination of degree-2 monomials (pairs i<j with
 * coefficient), extended as a derivation.
 */
struct ExteriorGenerator {
    std::string label;
    std::vector<std::tuple<std::size_t, std::size_t, long>> d;  // Σ c·g_i g_j, i<j
};
ModelPtr exterior_model(const std::vector<ExteriorGenerator>& gens, ModelProvenance provenance = {});

}  // namespace tdk

#endif
