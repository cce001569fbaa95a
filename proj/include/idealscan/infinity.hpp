#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "idealscan/degeneration.hpp"
#include "idealscan/gluing.hpp"
#include "idealscan/intmat.hpp"
#include "idealscan/numeric.hpp"

namespace idealscan {

/// The equations cut out on the divisor at infinity for a certified index:
/// prod_nu a_nu^{exponents[i][nu]} = targets[i], solved in the chart
/// a_chart = 1. weights = |d'| are the coordinate weights of the ambient
/// weighted projective space; multiplicity = gcd(d) is the expected number
/// of solution orbits. targets is absent when the input system carries no
/// equation signs (count-only mode).
struct MonomialSystem {
  IntMatrix exponents;  // (n-1) x n
  std::optional<std::vector<int>> targets;
  std::vector<BigInt> weights;
  std::size_t chart = 0;
  BigInt multiplicity;

  bool operator==(const MonomialSystem&) const = default;
};

/// An exact solution: a_nu = exp(2 pi i * angles[nu]) with rational angles
/// in [0,1) and angle 0 at the chart position.
struct UnitRootVector {
  std::vector<Rational> angles;

  bool operator==(const UnitRootVector&) const = default;
};
bool operator<(const UnitRootVector& a, const UnitRootVector& b);

/// One numerically traced point of the deformation variety near an ideal
/// point: shapes seeded from the degeneration substitution at parameter t,
/// refined by damped Newton on the log-form gluing equations with the
/// chart variable frozen.
struct BranchTrace {
  double t_value = 0;
  std::vector<std::complex<double>> point;
  double residual = 0;        // max_i |prod z^{r'} (1-z)^{r''} - sign_i|
  bool jacobian_ok = false;   // exact certificate d_chart != 0
  bool converged = false;
  std::vector<double> newton_residuals;  // log-form residual per iteration
};

struct TraceOptions {
  double tol = 1e-10;
  int max_iter = 50;
  double t_max = 1e-2;
  std::optional<std::size_t> chart;
};

/// Builds the monomial system for a certified index. The target of
/// equation i is sign_i * (-1)^(sum of r''_{i,nu} over nu with i_nu = inf);
/// each inverted tetrahedron contributes that parity flip. Default chart:
/// the position of the largest |d'_nu|, ties to the smallest index.
MonomialSystem equations_at_infinity(const GluingSystem& sys, const DegenerationIndex& I,
                                     const DegenerationVector& d,
                                     std::optional<std::size_t> chart = std::nullopt);

/// All exact solutions in the chart, |d_chart| of them, sorted. Works by
/// sign-tracked triangularization of the chart-deleted square system and
/// back-substitution over rational angles.
std::vector<UnitRootVector> solve_at_infinity(const MonomialSystem& msys);

/// Groups solutions under a_nu -> exp(2 pi i k w_nu / w_chart) a_nu and
/// returns the least representative of each orbit, sorted. Verifies the
/// action is free and that the orbit count equals msys.multiplicity,
/// throwing std::logic_error otherwise (that would contradict the
/// certificate).
std::vector<UnitRootVector> quotient_by_weight_action(
    const std::vector<UnitRootVector>& solutions, const MonomialSystem& msys);

/// Seeds shapes from the substitution (w_nu, z_nu or 1/z_nu) = a_nu t^{d'_nu}
/// according to the limit value, then runs damped Newton. Requires
/// 0 < t <= opts.t_max and equation signs on sys.
BranchTrace trace_branch(const GluingSystem& sys, const DegenerationIndex& I,
                         const DegenerationVector& d, const UnitRootVector& a, double t,
                         const TraceOptions& opts = {});

}  // namespace idealscan
