#ifndef UNIPOT_COMMON_HPP
#define UNIPOT_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace unipot {

// Raised when a configured resource guard (rewrite-step budget, SLP node cap)
// trips. Maps to CLI exit code 3.
class GuardError : public std::runtime_error {
public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

// Raised for operations the chosen ring cannot support (type B in
// characteristic 2, inverting a non-unit).
class UnsupportedError : public std::runtime_error {
public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::uint64_t kDefaultStepBudget = 10'000'000;
inline constexpr std::size_t kDefaultNodeCap = 1'000'000;

} // namespace unipot

#endif
