#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfhire {

/// One problem found while validating an instance or bid file.
struct Violation {
  std::string field;
  std::optional<unsigned> id;  // offending EC, when the problem is per-node
  std::string message;

  std::string describe() const;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace bfhire
