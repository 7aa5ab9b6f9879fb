#ifndef TDK_ERRORS_HPP
#define TDK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tdk {

/**
 * Malformed or inconsistent input: schema violations, models failing
 * validation, non-closed cocycles, dimension mismatches. The CLI maps
 * these to exit code 2.
 *
 * `where` locates the offending item (a JSON path, a basis triple, ...).
 */
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& message, std::string where = {})
        : std::runtime_error(where.empty() ? message : where + ": " + message),
          message_(message), where_(std::move(where)) {}

    /// The diagnostic without its location.
    const std::string& message() const noexcept { return message_; }
    const std::string& where() const noexcept { return where_; }

private:
    std::string message_;
    std::string where_;
};

/**
 * A well-formed request whose mathematical precondition does not hold,
 * e.g. dualizing a pair whose flux is not in the second filtration step.
 * The CLI maps these to exit code 1.
 */
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tdk

#endif
