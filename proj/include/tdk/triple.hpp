#ifndef TDK_TRIPLE_HPP
#define TDK_TRIPLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "tdk/bundle.hpp"
#include "tdk/spectral.hpp"

namespace tdk {

/// A torus bundle with a degree-3 flux cocycle on its total model.
struct Pair {
    BundlePtr bundle;
    IntVector flux;

    /// Throws InputError if the flux has the wrong length or is not closed.
    Pair(BundlePtr bundle, IntVector flux);
    Pair() = default;

    const DgRingModel& base() const { return bundle->base(); }
    std::size_t rank() const { return bundle->fiber_rank(); }
};

/**
 * Witness of a T-duality triple: two pairs over the same base and a
 * degree-2 cochain w on the doubled model B ⊗ Λ(y, ŷ) with
 * dw = p̂*ẑ - p*z. Construction only checks shapes (an empty w means
 * zero); use validate_triple.
 */
struct Triple {
    Pair side;
    Pair dual;
    BundlePtr doubled;
    IntVector w;

    Triple(Pair side, Pair dual, IntVector w);
    Triple() = default;

    std::size_t rank() const { return side.rank(); }
    const DgRingModel& base() const { return side.base(); }
};

struct Dualizability {
    bool dualizable = false;
    FiltrationReport certificate;
};

Dualizability is_dualizable(const Pair& pair);

/// Dual Chern cocycles with the lattice {B·c : B antisymmetric} of choices.
struct DualChern {
    std::vector<IntVector> cocycles;  ///< ζ̂_i, closed degree-2 base cochains
    std::vector<IntVector> classes;   ///< [ζ̂_i] in normal-form coordinates of H²(B)
    /// Generators of the ambiguity: entry g is a list of n class vectors.
    std::vector<std::vector<IntVector>> ambiguity;
};

/// Throws DomainError if the pair is not dualizable.
DualChern extract_dual_chern(const Pair& pair);

struct DualizeOptions {
    /// Antisymmetric n×n matrix B: the dual Chern classes become ĉ + B·c.
    std::optional<IntMatrix> shear;
    /// Closed degree-3 base cochain α with π*α exact: selects another extension.
    std::optional<IntVector> extension;
};

/// Builds a triple over `pair`; throws DomainError if not dualizable or if
/// the options are inconsistent (B not antisymmetric, α not in ker π*).
Triple dualize(const Pair& pair, const DualizeOptions& options = {});

struct CheckItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct TripleReport {
    std::vector<CheckItem> items;
    bool all_pass() const;
    const CheckItem* find(const std::string& name) const;
};

/// Itemized check; failures are entries of the report, not exceptions.
TripleReport validate_triple(const Triple& t);

/// The unique one-dimensional triple over a point: w = yŷ.
Triple point_triple();

/// z ↦ z + π*α, ẑ ↦ ẑ + π̂*α, w unchanged. Throws InputError if α not closed.
Triple h3_action(const Triple& t, const IntVector& alpha);

/**
 * The class δ ∈ H³(B) with t1 ≅ t2 + δ, in normal-form coordinates of
 * H³(B). Throws InputError if the triples live over different bundles and
 * DomainError if no solution exists or the difference is not unique.
 */
IntVector torsor_difference(const Triple& t1, const Triple& t2);

/// Triple transported along the bundle automorphisms y_i ↦ y_i + ψ_i,
/// ŷ_i ↦ ŷ_i + ψ̂_i (ψ, ψ̂: closed degree-1 base cochains).
Triple gauge_act(const Triple& t, const std::vector<IntVector>& psi, const std::vector<IntVector>& psi_hat);

/// [Σ ζ̂_i ψ_i + ζ_i ψ̂_i] in normal-form coordinates of H³(B).
IntVector gauge_shift(const Triple& t, const std::vector<IntVector>& psi, const std::vector<IntVector>& psi_hat);

struct ExtensionReport {
    Dualizability dualizability;
    std::optional<DualChern> dual_chern;
    Subquotient kernel_pullback;  ///< ker(π*: H³(B) → H³(F)), in base cochains
    Subquotient image_c;          ///< im(C: H¹(B)^n → H³(B))
    Subquotient torsor_group;     ///< ker(π*)/im(C)
    Subquotient cross_check;      ///< im(d_3^{0,2})
    bool groups_agree() const { return torsor_group.group() == cross_check.group(); }
};

ExtensionReport extension_report(const Pair& pair);

/// Same Chern cocycles and cohomologous fluxes.
bool same_pair_class(const Pair& a, const Pair& b);

/// Cohomology class of a degree-k base cochain in normal-form coordinates.
IntVector base_class(const DgRingModel& base, int k, const IntVector& v);

}  // namespace tdk

#endif
