#ifndef LF_DIAG_HPP
#define LF_DIAG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Structured failure reports and the explicit step budget shared by every
// potentially diverging procedure. Fuel exhaustion is always reported
// distinctly from a definite failure.

namespace lf {

struct SourceSpan {
  std::size_t begin = 0;  // byte offsets, begin <= end
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

// Stable diagnostic codes used across the library and the CLI.
namespace code {
inline constexpr const char* duplicate_ident = "DuplicateIdent";
inline constexpr const char* duplicate_name = "DuplicateName";
inline constexpr const char* ill_kinded = "IllKinded";
inline constexpr const char* ill_typed = "IllTyped";
inline constexpr const char* out_of_fuel = "OutOfFuel";
inline constexpr const char* unbound_variable = "UnboundVariable";
inline constexpr const char* unbound_constant = "UnboundConstant";
inline constexpr const char* not_a_function = "NotAFunction";
inline constexpr const char* domain_mismatch = "DomainMismatch";
inline constexpr const char* loose_index = "LooseIndex";
inline constexpr const char* not_equal = "NotEqual";
inline constexpr const char* invalid_derivation = "InvalidDerivation";
inline constexpr const char* parse_error = "ParseError";
inline constexpr const char* io_error = "IoError";
inline constexpr const char* unbound_fol_variable = "UnboundFolVariable";
inline constexpr const char* not_in_image = "NotInImage";
inline constexpr const char* cannot_elaborate = "CannotElaborate";
}  // namespace code

struct Diagnostic {
  std::string code;
  std::string message;
  std::vector<std::string> path;  // judgment trail, outermost first
  std::string subterm;            // rendered offending subterm, may be empty
  std::optional<SourceSpan> span;
};

inline constexpr std::uint64_t kDefaultFuel = 100000;

// A single budget is threaded through an entire query; each weak head
// reduction step spends one unit.
class Fuel {
 public:
  explicit Fuel(std::uint64_t units = kDefaultFuel) : left_(units) {}
  bool spend() {
    if (left_ == 0) return false;
    --left_;
    return true;
  }
  std::uint64_t remaining() const { return left_; }

 private:
  std::uint64_t left_;
};

}  // namespace lf

#endif
