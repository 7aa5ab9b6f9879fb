#ifndef TDK_SPECTRAL_HPP
#define TDK_SPECTRAL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdk/abelian.hpp"
#include "tdk/bundle.hpp"

namespace tdk {

/**
 * One slot E_r^{p,q} of the spectral sequence of the base-degree filtration
 * on a bundle model, together with the differentials d_r leaving and
 * entering it (as homomorphisms of subquotients of total cochains).
 */
struct SSPage {
    int r = 0;
    int p = 0;
    int q = 0;
    bool is_infinity = false;
    Subquotient group;  ///< subquotient of C^{p+q} of the total model
    GroupHom outgoing;  ///< d_r: E_r^{p,q} → E_r^{p+r,q-r+1}
    GroupHom incoming;  ///< d_r: E_r^{p-r,q+r-1} → E_r^{p,q}
};

/**
 * Spectral sequence of the filtered cochain complex of a bundle model,
 * computed from the approximants Z_r^p = F^p ∩ d^{-1}F^{p+r}:
 *
 *   E_r^{p,q} = Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1})   (r ≥ 1).
 */
class SpectralSequence {
public:
    explicit SpectralSequence(const BundleModel& model) : model_(model) {}

    /// First page index from which nothing changes: max(D, n) + 1.
    int infinity_page() const;
    /// E_r^{p,q} as a subquotient of total cochains of degree p+q.
    Subquotient slot(int r, int p, int q) const;
    Subquotient infinity_slot(int p, int q) const { return slot(infinity_page(), p, q); }
    /// Slot with both differentials; r ≥ 1.
    SSPage page(int r, int p, int q) const;
    /// d_r on normal-form coordinates of E_r^{p,q}.
    GroupHom differential(int r, int p, int q) const;

    /// Lattice F^p C^k ∩ d^{-1}(F^{p+r} C^{k+1}) as columns (r may be "∞" via a large value).
    IntMatrix approximant(int r, int p, int k) const;
    /// F^p H^k as a subgroup of H^k (numerator includes the boundaries).
    Subquotient filtered_cohomology(int p, int k) const;
    /// F^p H^k / F^{p+1} H^k, the associated graded computed from H^k.
    Subquotient associated_graded(int p, int k) const;

    const BundleModel& model() const noexcept { return model_; }

private:
    const BundleModel& model_;
};

/**
 * Position of a cohomology class in the filtration, with its leading part.
 * For the zero class `zero_class` is set and `p` is meaningless.
 */
struct FiltrationReport {
    int degree = 0;
    bool zero_class = false;
    int p = 0;
    IntVector representative;  ///< cohomologous cocycle lying in F^p
    FgAbelianGroup slot_group;  ///< E_∞^{p,k-p}
    IntVector leading;          ///< normal-form coordinates in E_∞^{p,k-p}
    /// Terms of `representative` of base degree p, as (label, coefficient).
    std::vector<std::pair<std::string, BigInt>> leading_terms;
};

/// Throws InputError if z is not a closed cochain of degree k.
FiltrationReport filtration_report(const BundleModel& model, int k, const IntVector& z);

/// Indices of degree-k basis elements of filtration degree < p.
std::vector<std::size_t> below_filtration(const BundleModel& model, int k, int p);

}  // namespace tdk

#endif
