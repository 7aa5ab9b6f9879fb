#ifndef TDK_ONN_HPP
#define TDK_ONN_HPP

#include <string>
#include <utility>
#include <vector>

#include "tdk/triple.hpp"

namespace tdk {

/**
 * Element of O(n,n,Z) in the basis (e_1..e_n, ê_1..ê_n), preserving
 * q(Σ a_i e_i + b_i ê_i) = Σ a_i b_i.
 *
 * `family` records which generator family the element belongs to:
 * "identity", "flip", "factor_flip", "gl", "shear_upper", "shear_lower"
 * or "general".
 */
struct OnnElement {
    std::size_t n = 0;
    IntMatrix matrix;
    std::string family;
    std::string name;
};

/// Exact membership test. Throws InputError for non-square or odd-sized input.
bool is_onn(const IntMatrix& g);

/// q(v) for v ∈ Z^{2n}.
BigInt quadratic_form(const IntVector& v);

/// Identifies the generator family of g (which must be in O(n,n,Z)).
OnnElement classify_onn(const IntMatrix& g);

/**
 * Generator families: full flip, factor flips, diag(G, G^{-T}) for
 * elementary and sign matrices G, upper shears [[I,B],[0,I]] and lower
 * shears [[I,0],[B,I]] for the basic antisymmetric B.
 */
std::vector<OnnElement> onn_generators(std::size_t n);

/// Block builders.
IntMatrix onn_flip(std::size_t n);
IntMatrix onn_gl(const IntMatrix& g);
IntMatrix onn_shear_upper(const IntMatrix& b);
IntMatrix onn_shear_lower(const IntMatrix& b);

/// Inverse of a unimodular integer matrix; throws DomainError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& g);

/**
 * (c', ĉ') = g·(c, ĉ) on base cochains of degree 2, stacked as a vector
 * of length 2n. Asserts Σ c'_i ĉ'_i = Σ c_i ĉ_i in H^4(B). Throws
 * DomainError if g ∉ O(n,n,Z).
 */
std::pair<std::vector<IntVector>, std::vector<IntVector>> act_on_chern(const IntMatrix& g, const DgRingModel& base,
                                                                       const std::vector<IntVector>& c,
                                                                       const std::vector<IntVector>& c_hat);

/**
 * Action on triples for the generator families identity, flip, gl and
 * shears. Throws DomainError("unsupported ...") for any other element;
 * compose generator actions instead.
 */
Triple act_on_triple(const IntMatrix& g, const Triple& t);

}  // namespace tdk

#endif
