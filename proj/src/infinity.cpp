#include "idealscan/infinity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace idealscan {

bool operator<(const UnitRootVector& a, const UnitRootVector& b) {
  return std::lexicographical_compare(a.angles.begin(), a.angles.end(), b.angles.begin(),
                                      b.angles.end());
}

namespace {

bool strictly_one_signed(const std::vector<BigInt>& d) {
  bool pos = false, neg = false;
  for (const BigInt& x : d) {
    if (x > 0) pos = true;
    else if (x < 0) neg = true;
    else return false;
  }
  return pos != neg;
}

std::size_t default_chart(const std::vector<BigInt>& weights) {
  std::size_t best = 0;
  for (std::size_t nu = 1; nu < weights.size(); ++nu)
    if (weights[nu] > weights[best]) best = nu;
  return best;
}

std::vector<BigInt> abs_primitive(const DegenerationVector& d) {
  std::vector<BigInt> w;
  w.reserve(d.d_primitive.size());
  for (const BigInt& x : d.d_primitive) w.push_back(boost::multiprecision::abs(x));
  return w;
}

}  // namespace

MonomialSystem equations_at_infinity(const GluingSystem& sys, const DegenerationIndex& I,
                                     const DegenerationVector& d,
                                     std::optional<std::size_t> chart) {
  if (!strictly_one_signed(d.d))
    throw std::invalid_argument("equations at infinity need a certified index");
  const std::size_t n = static_cast<std::size_t>(sys.n);
  ReducedSystem red = reduce(sys);

  MonomialSystem msys;
  msys.exponents = degeneration_matrix(red, I);
  msys.weights = abs_primitive(d);
  msys.multiplicity = d.gcd_value;
  msys.chart = chart ? *chart : default_chart(msys.weights);
  if (msys.chart >= n) throw std::invalid_argument("chart position out of range");

  if (sys.signs) {
    std::vector<int> targets;
    targets.reserve(red.active_rows.size());
    for (std::size_t i = 0; i < red.active_rows.size(); ++i) {
      // Each tetrahedron sent to infinity rewrites z^{r'} w^{r''} in the
      // variable 1/z, and the leftover factor (z^{-1} w)^{r''} tends to
      // (-1)^{r''}; fold those parities into the equation sign.
      long long flip = 0;
      for (std::size_t nu = 0; nu < n; ++nu)
        if (I.entries[nu] == Degeneration::Inf) flip += red.active_rows[i][2 * nu + 1];
      int tau = (*sys.signs)[i];
      if (flip % 2 != 0) tau = -tau;
      targets.push_back(tau);
    }
    msys.targets = std::move(targets);
  }
  return msys;
}

std::vector<UnitRootVector> solve_at_infinity(const MonomialSystem& msys) {
  if (!msys.targets)
    throw std::logic_error("equation targets undefined (input system has no signs)");
  const std::size_t n = msys.exponents.cols();
  const std::size_t k = msys.exponents.rows();

  TriangularSystem tri = triangularize(msys.exponents.without_column(msys.chart),
                                       *msys.targets);

  // Back-substitute bottom-up; row i contributes |c_ii| branches, so the
  // total is |det| = |d_chart| solutions.
  std::vector<std::vector<Rational>> partials{std::vector<Rational>(k)};
  for (std::size_t i = k; i-- > 0;) {
    const BigInt& c = tri.matrix.at(i, i);
    BigInt cabs = boost::multiprecision::abs(c);
    std::vector<std::vector<Rational>> next;
    for (const auto& partial : partials) {
      Rational rhs = tri.targets[i] == 1 ? Rational(0) : Rational(1, 2);
      for (std::size_t j = i + 1; j < k; ++j)
        rhs -= Rational(tri.matrix.at(i, j)) * partial[j];
      for (BigInt step = 0; step < cabs; ++step) {
        auto branch = partial;
        branch[i] = frac((rhs + Rational(step)) / Rational(c));
        next.push_back(std::move(branch));
      }
    }
    partials = std::move(next);
  }

  std::vector<UnitRootVector> out;
  out.reserve(partials.size());
  for (const auto& partial : partials) {
    UnitRootVector v;
    v.angles.reserve(n);
    std::size_t jo = 0;
    for (std::size_t nu = 0; nu < n; ++nu)
      v.angles.push_back(nu == msys.chart ? Rational(0) : partial[jo++]);
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<UnitRootVector> quotient_by_weight_action(
    const std::vector<UnitRootVector>& solutions, const MonomialSystem& msys) {
  const BigInt& cw = msys.weights[msys.chart];
  std::set<UnitRootVector> pool(solutions.begin(), solutions.end());
  std::set<UnitRootVector> seen;
  std::vector<UnitRootVector> reps;

  for (const UnitRootVector& s : solutions) {
    if (seen.count(s)) continue;
    std::set<UnitRootVector> orbit;
    for (BigInt step = 0; step < cw; ++step) {
      UnitRootVector shifted;
      shifted.angles.reserve(s.angles.size());
      for (std::size_t nu = 0; nu < s.angles.size(); ++nu)
        shifted.angles.push_back(
            frac(s.angles[nu] + Rational(step * msys.weights[nu], cw)));
      if (!pool.count(shifted))
        throw std::logic_error("weight action left the solution set");
      orbit.insert(std::move(shifted));
    }
    if (BigInt(orbit.size()) != cw)
      throw std::logic_error("weight action is not free on the solutions");
    // Ascending iteration makes the first-seen orbit element its minimum.
    reps.push_back(s);
    seen.insert(orbit.begin(), orbit.end());
  }

  if (BigInt(reps.size()) != msys.multiplicity)
    throw std::logic_error("orbit count " + std::to_string(reps.size()) +
                           " does not equal gcd " + msys.multiplicity.str());
  return reps;
}

namespace {

using Cplx = std::complex<double>;

Cplx cpow_int(Cplx base, long long e) {
  if (e < 0) return 1.0 / cpow_int(base, -e);
  Cplx acc = 1.0;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

// Principal-branch log residual folded into (-pi, pi] imaginary part.
Cplx fold_2pi(Cplx g) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  double im = std::remainder(g.imag(), two_pi);
  return {g.real(), im};
}

// Gaussian elimination with partial pivoting for the small Newton systems.
std::vector<Cplx> solve_linear(std::vector<std::vector<Cplx>> a, std::vector<Cplx> b) {
  const std::size_t k = b.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < k; ++i)
      if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    if (std::abs(a[col][col]) == 0.0) throw std::domain_error("singular Newton system");
    for (std::size_t i = col + 1; i < k; ++i) {
      Cplx f = a[i][col] / a[col][col];
      for (std::size_t j = col; j < k; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  std::vector<Cplx> x(k);
  for (std::size_t i = k; i-- > 0;) {
    Cplx acc = b[i];
    for (std::size_t j = i + 1; j < k; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

constexpr double kCollisionTol = 1e-280;

void check_shapes(const std::vector<Cplx>& z) {
  for (const Cplx& zv : z) {
    if (!std::isfinite(zv.real()) || !std::isfinite(zv.imag()) ||
        std::abs(zv) < kCollisionTol || std::abs(zv - 1.0) < kCollisionTol)
      throw std::domain_error("shape parameter collided with 0 or 1");
  }
}

}  // namespace

BranchTrace trace_branch(const GluingSystem& sys, const DegenerationIndex& I,
                         const DegenerationVector& d, const UnitRootVector& a, double t,
                         const TraceOptions& opts) {
  if (!(t > 0.0) || t > opts.t_max)
    throw std::invalid_argument("t must lie in (0, t_max]");
  if (!strictly_one_signed(d.d))
    throw std::invalid_argument("branch tracing needs a certified index");
  if (!sys.signs) throw std::logic_error("branch tracing needs equation signs");
  const std::size_t n = static_cast<std::size_t>(sys.n);
  if (a.angles.size() != n) throw std::invalid_argument("solution length does not match n");

  std::vector<BigInt> weights = abs_primitive(d);
  const std::size_t chart = opts.chart ? *opts.chart : default_chart(weights);
  if (chart >= n) throw std::invalid_argument("chart position out of range");

  BranchTrace trace;
  trace.t_value = t;
  trace.jacobian_ok = d.d[chart] != 0;

  constexpr double two_pi = 6.283185307179586476925286766559;
  std::vector<Cplx> z(n);
  for (std::size_t nu = 0; nu < n; ++nu) {
    double angle = two_pi * a.angles[nu].convert_to<double>();
    Cplx unit(std::cos(angle), std::sin(angle));
    Cplx base = unit * std::pow(t, weights[nu].convert_to<double>());
    switch (I.entries[nu]) {
      case Degeneration::One: z[nu] = 1.0 - base; break;
      case Degeneration::Zero: z[nu] = base; break;
      case Degeneration::Inf: z[nu] = 1.0 / base; break;
    }
  }
  check_shapes(z);

  ReducedSystem red = reduce(sys);
  const std::size_t k = red.active_rows.size();
  std::vector<std::size_t> vars;  // Newton unknowns: every position but the chart
  for (std::size_t nu = 0; nu < n; ++nu)
    if (nu != chart) vars.push_back(nu);

  auto log_residuals = [&](const std::vector<Cplx>& zz) {
    std::vector<Cplx> g(k);
    for (std::size_t i = 0; i < k; ++i) {
      Cplx acc = 0.0;
      for (std::size_t nu = 0; nu < n; ++nu) {
        long long rp = red.active_rows[i][2 * nu], rpp = red.active_rows[i][2 * nu + 1];
        if (rp) acc += static_cast<double>(rp) * std::log(zz[nu]);
        if (rpp) acc += static_cast<double>(rpp) * std::log(1.0 - zz[nu]);
      }
      if ((*sys.signs)[i] == -1) acc -= Cplx(0.0, 3.1415926535897932384626433832795);
      g[i] = fold_2pi(acc);
    }
    return g;
  };
  auto max_abs = [](const std::vector<Cplx>& g) {
    double m = 0.0;
    for (const Cplx& x : g) m = std::max(m, std::abs(x));
    return m;
  };

  std::vector<Cplx> g = log_residuals(z);
  double resid = max_abs(g);
  trace.newton_residuals.push_back(resid);
  for (int iter = 0; iter < opts.max_iter && resid >= opts.tol; ++iter) {
    std::vector<std::vector<Cplx>> jac(k, std::vector<Cplx>(vars.size()));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t v = 0; v < vars.size(); ++v) {
        std::size_t nu = vars[v];
        long long rp = red.active_rows[i][2 * nu], rpp = red.active_rows[i][2 * nu + 1];
        jac[i][v] = static_cast<double>(rp) / z[nu] -
                    static_cast<double>(rpp) / (1.0 - z[nu]);
      }
    std::vector<Cplx> rhs(k);
    for (std::size_t i = 0; i < k; ++i) rhs[i] = -g[i];
    std::vector<Cplx> delta = solve_linear(std::move(jac), std::move(rhs));

    double lambda = 1.0;
    std::vector<Cplx> znew;
    std::vector<Cplx> gnew;
    double rnew = resid;
    for (int halvings = 0; halvings < 12; ++halvings) {
      znew = z;
      for (std::size_t v = 0; v < vars.size(); ++v) znew[vars[v]] += lambda * delta[v];
      check_shapes(znew);
      gnew = log_residuals(znew);
      rnew = max_abs(gnew);
      if (rnew < resid) break;
      lambda /= 2.0;
    }
    if (rnew >= resid) break;  // stalled; report what we have
    z = std::move(znew);
    g = std::move(gnew);
    resid = rnew;
    trace.newton_residuals.push_back(resid);
  }
  trace.converged = resid < opts.tol;

  // Multiplicative-form residual of the refined point.
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    Cplx prod = 1.0;
    for (std::size_t nu = 0; nu < n; ++nu) {
      long long rp = red.active_rows[i][2 * nu], rpp = red.active_rows[i][2 * nu + 1];
      prod *= cpow_int(z[nu], rp) * cpow_int(1.0 - z[nu], rpp);
    }
    worst = std::max(worst, std::abs(prod - static_cast<double>((*sys.signs)[i])));
  }
  trace.point = std::move(z);
  trace.residual = worst;
  return trace;
}

}  // namespace idealscan
