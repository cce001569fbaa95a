#include "idealscan/valuation.hpp"

namespace idealscan {

BigInt wedge(const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
  if (x.size() != y.size() || x.size() % 2 != 0)
    throw std::invalid_argument("wedge needs two interleaved vectors of equal even length");
  BigInt acc = 0;
  for (std::size_t k = 0; k < x.size(); k += 2)
    acc += x[k] * y[k + 1] - x[k + 1] * y[k];
  return acc;
}

BigInt wedge(const std::vector<long long>& x, const std::vector<BigInt>& y) {
  return wedge(to_bigints(x), y);
}

std::vector<BigInt> degeneration_covector(const DegenerationIndex& I,
                                          const std::vector<BigInt>& weights) {
  if (I.entries.size() != weights.size())
    throw std::invalid_argument("index and weight lengths differ");
  std::vector<BigInt> x(2 * weights.size());
  for (std::size_t nu = 0; nu < weights.size(); ++nu) {
    auto [dz, dw] = direction(I.entries[nu]);
    x[2 * nu] = weights[nu] * dz;
    x[2 * nu + 1] = weights[nu] * dw;
  }
  return x;
}

std::string SlopeRecord::slope_string() const {
  if (!has_slope) return {};
  return slope_p.str() + "/" + slope_q.str();
}

SlopeRecord peripheral_valuations(const GluingSystem& sys, const DegenerationIndex& I,
                                  const DegenerationVector& d) {
  bool pos = false, neg = false, zero = false;
  for (const BigInt& x : d.d) {
    if (x > 0) pos = true;
    else if (x < 0) neg = true;
    else zero = true;
  }
  if (zero || (pos && neg))
    throw std::invalid_argument("peripheral valuations need a certified (strictly one-signed) index");

  std::vector<BigInt> abs_primitive;
  abs_primitive.reserve(d.d_primitive.size());
  for (const BigInt& x : d.d_primitive) abs_primitive.push_back(boost::multiprecision::abs(x));
  std::vector<BigInt> x = degeneration_covector(I, abs_primitive);

  SlopeRecord rec;
  rec.vM = wedge(sys.m, x);
  rec.vL = wedge(sys.l, x);
  rec.vIM = -boost::multiprecision::abs(rec.vM);
  rec.vIL = -boost::multiprecision::abs(rec.vL);
  rec.vM_unreduced = rec.vM * d.gcd_value;
  rec.vL_unreduced = rec.vL * d.gcd_value;

  if (rec.vM != 0 || rec.vL != 0) {
    rec.detects_X_ideal_point = true;
    rec.has_slope = true;
    BigInt p = -rec.vL, q = rec.vM;
    BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(p),
                                          boost::multiprecision::abs(q));
    p /= g;
    q /= g;
    if (q < 0) { p = -p; q = -q; }
    if (q == 0) p = 1;
    rec.slope_p = p;
    rec.slope_q = q;
  } else {
    rec.slope_p = 0;
    rec.slope_q = 0;
  }
  return rec;
}

}  // namespace idealscan
