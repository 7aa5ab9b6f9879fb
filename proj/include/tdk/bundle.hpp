#ifndef TDK_BUNDLE_HPP
#define TDK_BUNDLE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tdk/dg_ring.hpp"

namespace tdk {

/// Upper bound on the total number of basis elements of a bundle model.
constexpr std::size_t kMaxBundleElements = 4096;

/**
 * Koszul model B ⊗ Λ(y_1..y_m) of a principal torus bundle with
 * d(y_i) = ζ_i, where the ζ_i are closed degree-2 cochains of the base.
 *
 *   d(b⊗y_S) = db⊗y_S + (-1)^{|b|} Σ_{i∈S} ε(i,S) (b·ζ_i)⊗y_{S∖i},
 *   ε(i,S) = (-1)^{#{j∈S : j<i}}.
 *
 * Basis elements of total degree k are ordered by base degree, then fiber
 * monomial (lexicographic on index sequences), then base index. The
 * filtration degree of b⊗y_S is |b|.
 *
 * The same class serves for the doubled model B ⊗ Λ(y, ŷ) of a fiber
 * product, which is just a bundle with 2n generators.
 */
class BundleModel {
public:
    struct Element {
        int base_deg;
        std::size_t base_idx;
        unsigned mask;  ///< fiber monomial, bit i = y_{i+1}
    };

    /// Throws InputError if some ζ_i has the wrong length or is not closed,
    /// or if the resulting differential fails d∘d = 0.
    BundleModel(ModelPtr base, std::vector<IntVector> chern, std::vector<std::string> fiber_labels = {});

    const DgRingModel& base() const noexcept { return *base_; }
    const ModelPtr& base_ptr() const noexcept { return base_; }
    std::size_t fiber_rank() const noexcept { return chern_.size(); }
    const std::vector<IntVector>& chern() const noexcept { return chern_; }
    const std::vector<std::string>& fiber_labels() const noexcept { return fiber_labels_; }

    int top_degree() const noexcept { return static_cast<int>(elements_.size()) - 1; }
    std::size_t dim(int k) const;
    const Element& element(int k, std::size_t i) const { return elements_.at(k).at(i); }
    /// Position of b⊗y_S inside total degree |b|+|S|.
    std::size_t index(int base_deg, std::size_t base_idx, unsigned mask) const;
    std::string label(int k, std::size_t i) const;
    std::optional<std::size_t> find_label(int k, const std::string& label) const;
    /// "y1y2", "ŷ", "" for the empty monomial.
    std::string monomial_label(unsigned mask) const;
    int filtration(int k, std::size_t i) const { return element(k, i).base_deg; }

    const SparseMatrix& differential(int k) const { return diff_.at(k); }
    IntVector apply_d(int k, const IntVector& v) const;
    IntVector multiply(int p, const IntVector& a, int q, const IntVector& b) const;

    Subquotient cohomology(int k) const;
    bool is_closed(int k, const IntVector& v) const;

    /// π*: b ↦ b⊗1.
    IntVector pullback(int k, const IntVector& base_vec) const;
    /// Coefficients of 1⊗y_S, |S| = k, in lexicographic monomial order.
    IntVector fiber_restriction(int k, const IntVector& v) const;
    /// Monomials of size k in lexicographic order.
    const std::vector<unsigned>& monomials(int k) const { return monomials_.at(k); }
    /// Coefficient vector of the base cochain multiplying y_S in v.
    IntVector component(int k, const IntVector& v, unsigned mask) const;
    /// Σ over the basis of base ⊗ y_S with base cochain beta.
    IntVector embed(int base_deg, const IntVector& beta, unsigned mask) const;

    /// Same base model and Chern cochains; fiber labels are ignored.
    bool operator==(const BundleModel& other) const;

private:
    ModelPtr base_;
    std::vector<IntVector> chern_;
    std::vector<std::string> fiber_labels_;
    std::vector<std::vector<unsigned>> monomials_;
    std::vector<std::vector<Element>> elements_;
    std::map<std::tuple<int, std::size_t, unsigned>, std::size_t> index_;
    std::vector<SparseMatrix> diff_;
};

using BundlePtr = std::shared_ptr<const BundleModel>;

/// Sign of y_A · y_B as ± y_{A∪B}, or 0 when A and B overlap.
int monomial_sign(unsigned a, unsigned b);

/// Default fiber labels: "y" for one generator, "y1".."yn" otherwise; the
/// hatted variant uses "ŷ".
std::vector<std::string> fiber_labels(std::size_t n, bool hat = false);

/// Fiber product model over the same base: Λ(y_1..y_n, ŷ_1..ŷ_n) with
/// Chern cochains (ζ, ζ̂).
BundlePtr doubled_model(const BundleModel& side, const BundleModel& dual);

/**
 * Algebra map from `src` to `dst` (same base) fixing the base and sending
 * generator i to the degree-1 cochain gen_images[i] of `dst`. It is a
 * cochain map exactly when d(gen_images[i]) = ζ_i of `src` pulled back;
 * callers check that.
 */
IntVector substitute(const BundleModel& src, const BundleModel& dst, const std::vector<IntVector>& gen_images,
                     int k, const IntVector& v);

/// Inclusion Λ(y) → Λ(y') sending generator i to generator gen_map[i]
/// (gen_map strictly increasing), tensored with the identity on the base.
IntVector include_fiber(const BundleModel& src, const BundleModel& dst, const std::vector<std::size_t>& gen_map,
                        int k, const IntVector& v);

}  // namespace tdk

#endif
