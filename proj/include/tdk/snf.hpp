#ifndef TDK_SNF_HPP
#define TDK_SNF_HPP

#include <optional>
#include <vector>

#include "tdk/matrix.hpp"

namespace tdk {

/**
 * Smith normal form U·M·V = D.
 *
 * U and V are unimodular; D is diagonal with d_1 | d_2 | ... | d_rank,
 * all positive, followed by zeros. The inverses of U and V are tracked
 * alongside so that cokernel sections and lattice coordinates can be
 * read off without a second factorization.
 */
struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    IntMatrix U_inv;
    IntMatrix V_inv;
    std::size_t rank = 0;

    std::vector<BigInt> diagonal() const;
};

struct SmithOptions {
    bool left = true;   ///< track U and U^{-1}
    bool right = true;  ///< track V and V^{-1}
};

SmithForm smith_normal_form(const IntMatrix& m, SmithOptions opts = {});

std::size_t rank(const IntMatrix& m);

/// Columns form a Z-basis of the (saturated) kernel lattice of m.
IntMatrix kernel_basis(const IntMatrix& m);

/// Columns form a Z-basis of the image lattice of m (full column rank).
IntMatrix image_basis(const IntMatrix& m);

/// Integer solution of m·x = b, or nullopt when none exists over Z.
/// Throws std::invalid_argument on a dimension mismatch.
std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b);

}  // namespace tdk

#endif
