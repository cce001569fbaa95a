#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "idealscan/gluing.hpp"
#include "idealscan/intmat.hpp"
#include "idealscan/numeric.hpp"

namespace idealscan {

/// Limit value of a tetrahedron shape parameter at an ideal point.
enum class Degeneration { One, Zero, Inf };

/// Direction vector rho attached to each limit value:
/// rho_1 = (1,0), rho_0 = (0,-1), rho_inf = (-1,1).
std::pair<int, int> direction(Degeneration g);

/// An assignment in {1, 0, inf}^n of limit values, one per tetrahedron.
struct DegenerationIndex {
  std::vector<Degeneration> entries;

  /// Parses literals like "1,0,inf".
  static DegenerationIndex parse(const std::string& text);
  std::string str() const;

  /// Position in the canonical enumeration (symbol order 1 < 0 < inf,
  /// lexicographic left to right).
  std::uint64_t code() const;
  static DegenerationIndex from_code(std::uint64_t code, int n);

  bool operator==(const DegenerationIndex&) const = default;
};

/// Vector of signed maximal minors of the degeneration matrix; the
/// certificate object. d_primitive = d / gcd_value when gcd_value > 0,
/// empty otherwise.
struct DegenerationVector {
  std::vector<BigInt> d;
  BigInt gcd_value;
  std::vector<BigInt> d_primitive;

  static DegenerationVector from(std::vector<BigInt> d);
  bool operator==(const DegenerationVector&) const = default;
};

enum class Classification { Certified, Candidate, Rejected };

struct IndexClassification {
  Classification kind = Classification::Rejected;
  int orientation = 0;  // +1 or -1 when Certified, else 0

  bool operator==(const IndexClassification&) const = default;
};

/// One face of the nonnegative kernel cone: the mask of kept coordinates
/// and the maximal-minor vector of the masked row-basis matrix.
struct ConeFace {
  std::vector<int> mask;  // length n of 0/1, exactly n-1-rank zeros
  std::vector<BigInt> minor_vector;
  bool one_signed = false;  // nonzero entries exist and share one sign
};

/// An extreme-ray generator of the cone: nonnegative coefficients t_nu
/// (multiplying rho_{i_nu} per coordinate), in primitive form.
struct ConeGenerator {
  std::vector<BigInt> coefficients;
  std::vector<int> face_mask;

  bool operator==(const ConeGenerator&) const = default;
};

/// The (n-1) x n matrix selecting, per column nu, r'' (limit 1), r' (limit
/// 0), or -r'-r'' (limit inf) from each active row.
IntMatrix degeneration_matrix(const ReducedSystem& sys, const DegenerationIndex& I);

DegenerationVector degeneration_vector(const ReducedSystem& sys, const DegenerationIndex& I);

/// Certified when all minors share one strict sign; Candidate when the
/// one-signedness is non-strict (some zero entries) or when d = 0 but the
/// nonnegative kernel cone still has a nonzero element; Rejected otherwise.
IndexClassification classify_index(const ReducedSystem& sys, const DegenerationIndex& I);

/// All faces with exactly n-1-rank masked-out coordinates, in canonical
/// mask order.
std::vector<ConeFace> cone_faces(const ReducedSystem& sys, const DegenerationIndex& I);

/// One-signed faces, sign-normalized to nonnegative primitive vectors and
/// deduplicated; each generator keeps the first mask that produced it.
std::vector<ConeGenerator> cone_generators(const ReducedSystem& sys,
                                           const DegenerationIndex& I);

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScanOptions {
  std::uint64_t max_indices = 43046721;  // 3^16
};

struct ScanEntry {
  DegenerationIndex index;
  DegenerationVector d;
  IndexClassification cls;

  bool operator==(const ScanEntry&) const = default;
};

struct ScanResult {
  std::vector<ScanEntry> certified;
  std::vector<ScanEntry> candidates;
  std::uint64_t rejected = 0;
  std::uint64_t total = 0;

  bool operator==(const ScanResult&) const = default;
};

/// Classifies every index in {1,0,inf}^n. Parallel over indices (OpenMP);
/// output is canonically ordered and independent of the schedule. Throws
/// CapExceeded when 3^n exceeds opts.max_indices.
ScanResult scan(const ReducedSystem& sys, const ScanOptions& opts = {});

/// Single-threaded reference implementation with identical output.
ScanResult scan_serial(const ReducedSystem& sys, const ScanOptions& opts = {});

}  // namespace idealscan
