#ifndef TDK_ABELIAN_HPP
#define TDK_ABELIAN_HPP

#include <optional>
#include <string>
#include <vector>

#include "tdk/matrix.hpp"

namespace tdk {

/**
 * Isomorphism type of a finitely generated abelian group,
 * Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k with d_1 | d_2 | ... | d_k and d_i ≥ 2.
 *
 * Normal-form coordinates list the torsion coordinates first (reduced
 * into [0, d_i)) followed by the free coordinates.
 */
class FgAbelianGroup {
public:
    FgAbelianGroup() = default;
    FgAbelianGroup(std::size_t rank, std::vector<BigInt> torsion);

    static FgAbelianGroup free(std::size_t rank) { return FgAbelianGroup(rank, {}); }

    std::size_t rank() const noexcept { return rank_; }
    const std::vector<BigInt>& torsion() const noexcept { return torsion_; }
    std::size_t generator_count() const noexcept { return torsion_.size() + rank_; }
    bool is_trivial() const noexcept { return rank_ == 0 && torsion_.empty(); }
    bool is_free() const noexcept { return torsion_.empty(); }

    IntVector normalize(IntVector coords) const;
    bool is_zero_element(const IntVector& coords) const;
    IntVector add(const IntVector& a, const IntVector& b) const;
    IntVector negate(const IntVector& a) const;
    /// Orders of the generators in normal form: d_i, then 0 for free generators.
    std::vector<BigInt> moduli() const;

    bool operator==(const FgAbelianGroup& other) const;
    bool operator!=(const FgAbelianGroup& other) const { return !(*this == other); }

    /// "0", "Z", "Z^2 + Z/2", ...
    std::string to_string() const;

private:
    std::size_t rank_ = 0;
    std::vector<BigInt> torsion_;
};

/// Thrown when a subquotient is requested with B ⊄ Z; carries an element
/// of B that is not in Z.
class ContainmentError : public std::runtime_error {
public:
    ContainmentError(const std::string& what, IntVector witness)
        : std::runtime_error(what), witness_(std::move(witness)) {}
    const IntVector& witness() const noexcept { return witness_; }

private:
    IntVector witness_;
};

/**
 * The group Z/B for lattices B ⊆ Z ⊆ Z^N given by generator columns.
 *
 * Carries a reduction from ambient vectors lying in Z to normal-form
 * coordinates (a homomorphism), and a section sending each normal-form
 * generator to an ambient representative.
 */
class Subquotient {
public:
    Subquotient() = default;

    /// Throws ContainmentError when some column of `b_gens` is not in
    /// the lattice spanned by `z_gens`.
    static Subquotient make(std::size_t ambient_dim, const IntMatrix& z_gens, const IntMatrix& b_gens);
    /// Z^N / im(relations).
    static Subquotient cokernel(const IntMatrix& relations);
    /// Zero group inside Z^N.
    static Subquotient trivial(std::size_t ambient_dim);

    const FgAbelianGroup& group() const noexcept { return group_; }
    std::size_t ambient_dim() const noexcept { return ambient_dim_; }

    /// Normal-form coordinates of x, or nullopt if x ∉ Z.
    std::optional<IntVector> reduce(const IntVector& x) const;
    /// As reduce(), throwing std::domain_error when x ∉ Z.
    IntVector reduce_or_throw(const IntVector& x) const;
    bool contains(const IntVector& x) const { return reduce(x).has_value(); }
    /// True iff x ∈ B.
    bool is_zero_class(const IntVector& x) const;

    /// Ambient representative of a normal-form element.
    IntVector representative(const IntVector& coords) const;
    /// Columns are representatives of the normal-form generators.
    const IntMatrix& section() const noexcept { return section_; }
    /// Z-basis of the numerator lattice.
    const IntMatrix& cycle_basis() const noexcept { return z_basis_; }
    /// Generators of the denominator lattice.
    const IntMatrix& boundary_generators() const noexcept { return b_gens_; }
    /// Presentation: relation matrix in coordinates of cycle_basis().
    const IntMatrix& relations() const noexcept { return relations_; }

private:
    std::optional<IntVector> lattice_coords(const IntVector& x) const;

    std::size_t ambient_dim_ = 0;
    FgAbelianGroup group_;
    IntMatrix z_basis_;   // N x m
    IntMatrix z_left_;    // U from SNF of z_gens (N x N)
    std::vector<BigInt> z_diag_;  // m pivots
    IntMatrix b_gens_;    // N x b
    IntMatrix relations_; // m x b
    IntMatrix q_left_;    // m x m, U from SNF of relations_
    std::vector<std::size_t> kept_;       // rows of q_left_ that give normal-form coords
    std::vector<BigInt> kept_moduli_;     // modulus per kept coordinate (0 = free)
    IntMatrix section_;   // N x g
};

/**
 * Homomorphism between subquotients induced by an ambient matrix.
 * Well-definedness (Z into Z, B into B) is checked on construction.
 */
class GroupHom {
public:
    GroupHom() = default;
    /// Throws std::domain_error if the matrix does not induce a map.
    GroupHom(Subquotient source, Subquotient target, IntMatrix ambient_matrix);

    const Subquotient& source() const noexcept { return source_; }
    const Subquotient& target() const noexcept { return target_; }
    const IntMatrix& ambient_matrix() const noexcept { return matrix_; }
    /// Matrix in normal-form coordinates (target gens x source gens).
    const IntMatrix& matrix() const noexcept { return nf_matrix_; }

    IntVector apply(const IntVector& source_coords) const;

    /// Kernel as a subquotient of the source ambient space.
    Subquotient kernel() const;
    /// Image as a subquotient of the target ambient space.
    Subquotient image() const;
    bool is_zero() const;
    bool is_injective() const { return kernel().group().is_trivial(); }
    bool is_surjective() const;

private:
    Subquotient source_;
    Subquotient target_;
    IntMatrix matrix_;
    IntMatrix nf_matrix_;
};

/**
 * Quotient of two subgroups A ⊇ C of the same subquotient G, both given
 * as subquotients of G's ambient space sharing G's denominator.
 */
Subquotient quotient_of_subgroups(const Subquotient& numerator, const Subquotient& denominator);

/// True iff im(f) = ker(g) for composable homomorphisms f, g.
bool is_exact_at(const GroupHom& f, const GroupHom& g);

/// Cokernel of M: Z^cols → Z^rows with its projection.
Subquotient cokernel(const IntMatrix& m);

struct KernelGroup {
    FgAbelianGroup group;  ///< always free
    IntMatrix inclusion;   ///< columns: basis of ker M
};
KernelGroup kernel(const IntMatrix& m);

}  // namespace tdk

#endif
