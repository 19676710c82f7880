#ifndef SCONVEX_ERROR_HPP_
#define SCONVEX_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sconvex {

using state_id = std::uint32_t;

enum class errc {
  malformed,
  alphabet_mismatch,
  resource_cap,
  not_minimal,
  syntax_error,
  state_out_of_range,
  size_mismatch,
  axiom_violation,
  not_suffix_convex,
  not_partial_order,
  non_convex_finals,
  bad_size,
  not_injective,
};

inline const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::malformed: return "Malformed";
    case errc::alphabet_mismatch: return "AlphabetMismatch";
    case errc::resource_cap: return "ResourceCap";
    case errc::not_minimal: return "NotMinimal";
    case errc::syntax_error: return "SyntaxError";
    case errc::state_out_of_range: return "StateOutOfRange";
    case errc::size_mismatch: return "SizeMismatch";
    case errc::axiom_violation: return "AxiomViolation";
    case errc::not_suffix_convex: return "NotSuffixConvex";
    case errc::not_partial_order: return "NotPartialOrder";
    case errc::non_convex_finals: return "NonConvexFinals";
    case errc::bad_size: return "BadSize";
    case errc::not_injective: return "NotInjective";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Raised by triple-system validation. `witness` holds the offending states:
// (p,q,r) for axioms A, B and D, (p,q,r,s) for axiom C.
class axiom_violation : public error {
 public:
  axiom_violation(char axiom, std::vector<state_id> witness)
      : error(errc::axiom_violation, describe(axiom, witness)),
        axiom_(axiom),
        witness_(std::move(witness)) {}

  char axiom() const noexcept { return axiom_; }
  const std::vector<state_id>& witness() const noexcept { return witness_; }

 private:
  static std::string describe(char axiom, const std::vector<state_id>& w) {
    std::string s = "axiom ";
    s += axiom;
    s += " fails at (";
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(w[i]);
    }
    return s + ")";
  }

  char axiom_;
  std::vector<state_id> witness_;
};

}  // namespace sconvex

#endif  // SCONVEX_ERROR_HPP_
