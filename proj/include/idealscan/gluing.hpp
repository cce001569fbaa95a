#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace idealscan {

/// Raised when input text cannot be turned into a GluingSystem.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a GluingSystem fails invariant validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gluing-equation data of an ideal triangulation with one cusp.
///
/// Row i holds the interleaved exponents (r'_{i,1}, r''_{i,1}, ...,
/// r'_{i,n}, r''_{i,n}) of the equation
///   prod_nu z_nu^{r'_{i,nu}} (1-z_nu)^{r''_{i,nu}} = sign_i.
/// m and l are the peripheral (meridian/longitude) exponent vectors in the
/// same interleaved layout. Census tools emit all n edge rows even though
/// one is redundant; systems carrying only the first n-1 rows are accepted
/// too (has_all_rows() distinguishes them).
struct GluingSystem {
  std::string name;
  int n = 0;
  std::vector<std::vector<long long>> rows;
  std::optional<std::vector<int>> signs;  // one per row, +1 or -1
  std::vector<long long> m;
  std::vector<long long> l;

  bool has_all_rows() const { return rows.size() == static_cast<std::size_t>(n); }

  bool operator==(const GluingSystem&) const = default;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;

  bool ok() const { return errors.empty(); }
};

/// A gluing system with the redundant last edge equation dropped.
struct ReducedSystem {
  GluingSystem base;
  std::vector<std::vector<long long>> active_rows;  // n-1 rows
};

enum class InputFormat { Json, SnapText };

GluingSystem parse_gluing_system(const std::string& input, InputFormat format);

/// Canonical JSON rendering; parse(emit(sys), Json) == sys.
std::string emit_gluing_system(const GluingSystem& sys);

/// Checks every structural invariant and reports violations instead of
/// throwing. A full system must have rows summing to zero componentwise;
/// that check is skipped (with a warning) when only n-1 rows are supplied
/// or the last row is identically zero.
ValidationReport validate(const GluingSystem& sys);

/// Drops the redundant last row (no-op on systems already carrying n-1).
ReducedSystem reduce(const GluingSystem& sys);

}  // namespace idealscan
