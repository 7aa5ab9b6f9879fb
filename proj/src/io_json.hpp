#ifndef TDK_IO_JSON_HPP
#define TDK_IO_JSON_HPP

#include <functional>
#include <optional>
#include <string>

#include "json.hpp"
#include "tdk/errors.hpp"
#include "tdk/io.hpp"

namespace tdk::io {

using Json = nlohmann::ordered_json;

/// Throws InputError located at "$" for malformed text.
Json parse_text(const std::string& text);
std::string dump(const Json& j, bool pretty);

/// Re-throws an InputError from a nested computation with its location
/// prefixed by `path`.
[[noreturn]] void relocate(const InputError& e, const std::string& path);

BigInt to_int(const Json& j, const std::string& path);
std::size_t to_size(const Json& j, const std::string& path, std::size_t max);
const Json& member(const Json& j, const char* key, const std::string& path);

using LabelResolver = std::function<std::optional<std::size_t>(const std::string&)>;
IntVector to_vector(const Json& j, std::size_t dim, const LabelResolver& resolve, const std::string& path);
IntMatrix to_matrix(const Json& j, const std::string& path);

Json from_int(const BigInt& v);
Json from_vector(const IntVector& v);
Json from_matrix(const IntMatrix& m);
/// Sparse [label, coeff] pairs in basis order.
Json labelled(const IntVector& v, const std::function<std::string(std::size_t)>& label);

SpaceDocument space_from(const Json& j, const std::string& path);
Json space_to(const DgRingModel& model);
Pair pair_from(const Json& j, const std::string& path);
Json pair_to(const Pair& pair);
Triple triple_from(const Json& j, const std::string& path);
Json triple_to(const Triple& triple);
Json group_to(const FgAbelianGroup& g);

}  // namespace tdk::io

#endif
