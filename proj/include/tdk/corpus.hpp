#ifndef TDK_CORPUS_HPP
#define TDK_CORPUS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tdk {

/// The shipped fixture documents, compiled into the library, as
/// (file name, contents) sorted by name.
const std::vector<std::pair<std::string, std::string>>& fixture_corpus();

std::optional<std::string> find_fixture(const std::string& name);

}  // namespace tdk

#endif
