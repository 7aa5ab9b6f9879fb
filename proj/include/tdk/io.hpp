#ifndef TDK_IO_HPP
#define TDK_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "tdk/onn.hpp"
#include "tdk/simplicial.hpp"
#include "tdk/triple.hpp"

namespace tdk {

/**
 * JSON documents. Integers may be given as JSON numbers or decimal
 * strings and are always written as decimal strings. Vectors over a basis
 * may be dense arrays, arrays of [label, coeff] pairs, or objects mapping
 * labels to coefficients. Errors are InputErrors located by a JSON path
 * such as "$.side.flux[2]".
 *
 * Space documents:
 *   {"format":"simplicial","vertices":N,"facets":[[0,1,2],...]}
 *   {"format":"dgring","degrees":D,"basis":[["1"],...],
 *    "diff":[{"deg":k,"matrix":[[...]]}],
 *    "product":[{"i_deg":..,"i_idx":..,"j_deg":..,"j_idx":..,"result":[{"idx":..,"coeff":..}]}]}
 *   {"builtin":"sphere2"}
 *
 * Pair:   {"format":"pair","base":SPACE,"chern":[VEC,...],"flux":VEC}
 * Triple: {"format":"triple","base":SPACE,"side":{"chern":..,"flux":..},
 *          "dual":{"chern":..,"flux":..},"w":VEC}
 * O(n,n) element: {"n":n,"matrix":[[...]]}
 */
struct SpaceDocument {
    ModelPtr model;
    /// Present when the document was a simplicial complex; `model` is then
    /// its cohomology ring.
    std::optional<SimplicialComplex> complex;
};

SpaceDocument parse_space(const std::string& text);
Pair parse_pair(const std::string& text);
Triple parse_triple(const std::string& text);
/// {"chern":[VEC,...]} or a bare array, over degree-2 cochains of `base`.
std::vector<IntVector> parse_chern(const std::string& text, const DgRingModel& base);
IntMatrix parse_onn_matrix(const std::string& text);

/// Builtin models are written as {"builtin":name}, others as dgring documents.
std::string write_space(const DgRingModel& model, bool pretty = false);
std::string write_pair(const Pair& pair, bool pretty = false);
std::string write_triple(const Triple& triple, bool pretty = false);
std::string write_onn_matrix(const IntMatrix& g, bool pretty = false);

}  // namespace tdk

#endif
