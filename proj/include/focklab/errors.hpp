#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace focklab {

// Violated input contract: the request itself is malformed or outside the
// supported domain (bad symbol descriptor, degree over the cap, s >= t, ...).
// The CLI maps this to exit code 2.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// The request is well-formed but the numerical method cannot honor its
// accuracy contract (quadrature exactness too low, truncation tail too
// large, ...).  Carries a hint describing what would make the request
// feasible.  The CLI maps this to exit code 3.
class NumericRefusal : public std::runtime_error {
 public:
  explicit NumericRefusal(const std::string& what, std::string hint = {})
      : std::runtime_error(what), hint_(std::move(hint)) {}

  const std::string& hint() const { return hint_; }

 private:
  std::string hint_;
};

}  // namespace focklab
