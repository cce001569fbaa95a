#pragma once

#include <string>
#include <vector>

#include "idealscan/degeneration.hpp"
#include "idealscan/gluing.hpp"
#include "idealscan/numeric.hpp"

namespace idealscan {

/// Symplectic pairing on interleaved exponent vectors:
/// x ^ y = sum_k (x'_k y''_k - x''_k y'_k). Lengths must match and be even.
BigInt wedge(const std::vector<BigInt>& x, const std::vector<BigInt>& y);
BigInt wedge(const std::vector<long long>& x, const std::vector<BigInt>& y);

inline std::vector<BigInt> to_bigints(const std::vector<long long>& v) {
  return std::vector<BigInt>(v.begin(), v.end());
}

/// Interleaved 2n-vector (w_1 rho_{i_1}, ..., w_n rho_{i_n}) built from
/// per-tetrahedron weights, the direction of the limit value per entry.
std::vector<BigInt> degeneration_covector(const DegenerationIndex& I,
                                          const std::vector<BigInt>& weights);

/// Peripheral valuations at a certified ideal point and the boundary slope
/// they detect. vM, vL pair the meridian/longitude vectors against the
/// covector of the primitive weights |d'|; the _unreduced variants use |d|.
/// The slope is the curve M^{-vL} L^{vM} in canonical form p/q with
/// gcd(|p|, q) = 1, q >= 0, and p = 1 when q = 0; absent when vM = vL = 0.
struct SlopeRecord {
  BigInt vM, vL;
  BigInt vIM, vIL;  // -|vM|, -|vL|
  BigInt vM_unreduced, vL_unreduced;
  bool has_slope = false;
  BigInt slope_p, slope_q;
  bool detects_X_ideal_point = false;

  std::string slope_string() const;  // "p/q"; empty when !has_slope
  bool operator==(const SlopeRecord&) const = default;
};

SlopeRecord peripheral_valuations(const GluingSystem& sys, const DegenerationIndex& I,
                                  const DegenerationVector& d);

}  // namespace idealscan
