#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace consensus {

  // Operand dimensions disagree (pattern/matrix products, support steps,
  // word indices versus set size).
  class DimensionMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  // A value violates the invariants of the type being constructed.
  class InvalidArgument : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  // An exploration exceeded its configured state / pattern ceiling.  Never
  // swallowed: the caller gets no verdict rather than a wrong one.
  class ResourceLimitExceeded : public std::runtime_error {
   public:
    ResourceLimitExceeded(std::string const& what, std::size_t limit)
        : std::runtime_error(what + " (limit " + std::to_string(limit) + ")"),
          _limit(limit) {}

    [[nodiscard]] std::size_t limit() const noexcept {
      return _limit;
    }

   private:
    std::size_t _limit;
  };

  // An oracle was asked for an instance outside its brute-force range.
  class InstanceTooLarge : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

}  // namespace consensus
