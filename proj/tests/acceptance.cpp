// End-to-end acceptance gate. Every check is a hard requirement: the first
// failure prints [FAIL] and exits nonzero. Run via ctest or directly.

#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "idealscan/report.hpp"
#include "oracles.hpp"

using namespace idealscan;

namespace {

int g_checks = 0;

#define REQUIRE(cond, msg)                                                      \
  do {                                                                          \
    ++g_checks;                                                                 \
    if (!(cond)) {                                                              \
      std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg       \
                << "\n";                                                        \
      std::exit(1);                                                             \
    }                                                                           \
  } while (0)

std::string fixture(const char* name) {
  return std::string(IDEALSCAN_FIXTURE_DIR) + "/" + name;
}

std::vector<BigInt> big(const std::vector<long long>& v) {
  return std::vector<BigInt>(v.begin(), v.end());
}

std::string join(const std::vector<BigInt>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i].str();
  }
  return out;
}

// Certified rows are checked field by field against hand-computed values.
struct CertifiedExpect {
  const char* index;
  std::vector<long long> d;
  long long gcd;
  long long vM, vL;
  const char* slope;
};

void check_certified(const ScanReport& report, const std::vector<CertifiedExpect>& rows) {
  REQUIRE(report.certified.size() == rows.size(),
          report.name << ": expected " << rows.size() << " certified indices, got "
                      << report.certified.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const IdealPointRecord& rec = report.certified[i];
    const CertifiedExpect& want = rows[i];
    REQUIRE(rec.index.str() == want.index,
            report.name << ": certified[" << i << "] is " << rec.index.str() << ", want "
                        << want.index);
    REQUIRE(rec.d.d == big(want.d),
            report.name << " " << want.index << ": d = (" << join(rec.d.d) << "), want ("
                        << join(big(want.d)) << ")");
    REQUIRE(rec.d.gcd_value == want.gcd,
            report.name << " " << want.index << ": gcd " << rec.d.gcd_value << ", want "
                        << want.gcd);
    REQUIRE(rec.count == want.gcd,
            report.name << " " << want.index << ": count != gcd");
    REQUIRE(rec.slopes.vM == want.vM && rec.slopes.vL == want.vL,
            report.name << " " << want.index << ": valuations (" << rec.slopes.vM << ","
                        << rec.slopes.vL << "), want (" << want.vM << "," << want.vL
                        << ")");
    REQUIRE(rec.slopes.slope_string() == want.slope,
            report.name << " " << want.index << ": slope " << rec.slopes.slope_string()
                        << ", want " << want.slope);
  }
}

// 1. m006: certified indices, degeneration vectors, valuations, slopes,
//    counts, all exact.
void criterion_m006_scan() {
  ScanReport report = run_pipeline(fixture("m006.json"));
  check_certified(report, {{"1,1,inf", {1, 3, 1}, 1, -1, -3, "-3/1"},
                           {"1,inf,1", {-1, -1, -3}, 1, 1, 3, "-3/1"},
                           {"0,0,inf", {-1, -2, -2}, 1, -4, 2, "1/2"},
                           {"0,inf,0", {1, 2, 2}, 1, 4, -2, "1/2"}});
  std::cout << "[PASS] 1. m006 scan: 4 certified indices with exact d, valuations, "
               "slopes, counts\n";
}

// 2. m006, I=(inf,0,0): d = 0, rank 1, face minors up to ray sign, and the
//    two cone generators.
void criterion_m006_cone() {
  GluingSystem sys = load_gluing_file(fixture("m006.json"));
  ReducedSystem red = reduce(sys);
  DegenerationIndex I = DegenerationIndex::parse("inf,0,0");

  DegenerationVector d = degeneration_vector(red, I);
  REQUIRE(d.d == big({0, 0, 0}), "m006 (inf,0,0): d = (" << join(d.d) << "), want 0");
  REQUIRE(rank(degeneration_matrix(red, I)) == 1, "m006 (inf,0,0): rank != 1");

  std::vector<ConeFace> faces = cone_faces(red, I);
  REQUIRE(faces.size() == 3, "m006 (inf,0,0): expected 3 faces");
  struct FaceExpect {
    std::vector<int> mask;
    std::vector<long long> minors;  // up to one overall sign per face
  };
  std::vector<FaceExpect> want_faces = {
      {{0, 1, 1}, {-1, 1}}, {{1, 0, 1}, {1, 1}}, {{1, 1, 0}, {1, 1}}};
  for (std::size_t i = 0; i < faces.size(); ++i) {
    REQUIRE(faces[i].mask == want_faces[i].mask, "m006 (inf,0,0): face mask mismatch");
    std::vector<BigInt> got = faces[i].minor_vector;
    std::vector<BigInt> flipped;
    for (const BigInt& x : got) flipped.push_back(-x);
    std::vector<BigInt> want = big(want_faces[i].minors);
    REQUIRE(got == want || flipped == want,
            "m006 (inf,0,0): face " << i << " minors (" << join(got) << "), want ("
                                    << join(want) << ") up to sign");
  }

  // Generators as interleaved covectors: (rho_inf, 0, rho_0) and
  // (rho_inf, rho_0, 0), i.e. coefficient vectors (1,0,1) and (1,1,0).
  std::vector<ConeGenerator> gens = cone_generators(red, I);
  REQUIRE(gens.size() == 2, "m006 (inf,0,0): expected 2 generators");
  REQUIRE(gens[0].coefficients == big({1, 0, 1}), "m006 (inf,0,0): generator 1");
  REQUIRE(gens[1].coefficients == big({1, 1, 0}), "m006 (inf,0,0): generator 2");
  REQUIRE(degeneration_covector(I, gens[0].coefficients) == big({-1, 1, 0, 0, 0, -1}),
          "m006 (inf,0,0): covector of generator 1");
  REQUIRE(degeneration_covector(I, gens[1].coefficients) == big({-1, 1, 0, -1, 0, 0}),
          "m006 (inf,0,0): covector of generator 2");
  std::cout << "[PASS] 2. m006 (inf,0,0) cone: d = 0, rank 1, face minors and both "
               "generators exact\n";
}

// 3. m009: certified pair with counts 2, plus two specific candidates that
//    must not be certified.
void criterion_m009_scan() {
  ScanReport report = run_pipeline(fixture("m009.json"));
  check_certified(report, {{"0,0,inf", {-2, -2, -4}, 2, 1, -3, "3/1"},
                           {"inf,0,0", {4, 2, 2}, 2, -1, 3, "3/1"}});

  bool found_011 = false, found_0inf1 = false;
  for (const CandidateRecord& c : report.candidates) {
    if (c.index.str() == "0,1,1") {
      found_011 = true;
      REQUIRE(c.d.d == big({0, 2, 4}), "m009 (0,1,1): d mismatch");
    }
    if (c.index.str() == "0,inf,1") {
      found_0inf1 = true;
      REQUIRE(c.d.d == big({2, 2, 0}), "m009 (0,inf,1): d mismatch");
    }
  }
  REQUIRE(found_011, "m009: candidate (0,1,1) missing");
  REQUIRE(found_0inf1, "m009: candidate (0,inf,1) missing");
  for (const IdealPointRecord& rec : report.certified)
    REQUIRE(rec.index.str() != "0,1,1" && rec.index.str() != "0,inf,1",
            "m009: a candidate index was certified");
  std::cout << "[PASS] 3. m009 scan: certified (0,0,inf), (inf,0,0) with counts 2; "
               "(0,1,1), (0,inf,1) stay candidates\n";
}

// 4. m009, I=(inf,0,0), chart a_3 = 1: the two equations at infinity and
//    their exact solution set {(-1,1), (-1,-1)}; orbit count 2 = gcd.
void criterion_m009_infinity() {
  GluingSystem sys = load_gluing_file(fixture("m009.json"));
  ReducedSystem red = reduce(sys);
  DegenerationIndex I = DegenerationIndex::parse("inf,0,0");
  DegenerationVector d = degeneration_vector(red, I);

  MonomialSystem msys = equations_at_infinity(sys, I, d, 2);
  REQUIRE(msys.exponents == IntMatrix::from_rows({{-2, 2, 2}, {1, -2, 0}}),
          "m009 (inf,0,0): exponent matrix mismatch");
  REQUIRE(msys.targets && *msys.targets == std::vector<int>({1, -1}),
          "m009 (inf,0,0): targets mismatch (want a_1^-2 a_2^2 = 1, a_1 a_2^-2 = -1)");

  std::vector<UnitRootVector> sols = solve_at_infinity(msys);
  std::vector<UnitRootVector> want = {
      UnitRootVector{{Rational(1, 2), Rational(0), Rational(0)}},       // (-1, 1, 1)
      UnitRootVector{{Rational(1, 2), Rational(1, 2), Rational(0)}}};   // (-1, -1, 1)
  REQUIRE(sols == want, "m009 (inf,0,0) chart a_3: solution set mismatch");

  std::vector<UnitRootVector> reps = quotient_by_weight_action(sols, msys);
  REQUIRE(reps.size() == 2 && msys.multiplicity == 2,
          "m009 (inf,0,0): orbit count != gcd(4,2,2) = 2");
  std::cout << "[PASS] 4. m009 (inf,0,0) infinity: equations in chart a_3 = 1 and "
               "solutions {(-1,1), (-1,-1)}, orbit count 2\n";
}

// 5. Kernel membership: R(I) d(I) = 0 for all 27 indices of both fixtures.
void criterion_kernel_membership() {
  int indices_checked = 0;
  for (const char* name : {"m006.json", "m009.json"}) {
    ReducedSystem red = reduce(load_gluing_file(fixture(name)));
    for (std::uint64_t code = 0; code < 27; ++code) {
      DegenerationIndex I = DegenerationIndex::from_code(code, 3);
      IntMatrix R = degeneration_matrix(red, I);
      std::vector<BigInt> d = degeneration_vector(red, I).d;
      bool in_kernel = true;
      for (std::size_t i = 0; i < R.rows(); ++i) {
        BigInt acc = 0;
        for (std::size_t nu = 0; nu < R.cols(); ++nu) acc += R.at(i, nu) * d[nu];
        in_kernel = in_kernel && acc == 0;
      }
      REQUIRE(in_kernel, name << " " << I.str() << ": R(I) d != 0");
      ++indices_checked;
    }
  }
  std::cout << "[PASS] 5. kernel membership: R(I) d(I) = 0 for all " << indices_checked
            << " indices across both fixtures\n";
}

// 6. Symplectic pairing: antisymmetry and bilinearity on 1000 random
//    triples; gluing rows and the detected slope curve pair to zero at
//    every certified index.
void criterion_symplectic() {
  std::mt19937 rng(97);
  std::uniform_int_distribution<long long> entry(-40, 40);
  auto rand_vec = [&](std::size_t len) {
    std::vector<BigInt> v(len);
    for (auto& x : v) x = entry(rng);
    return v;
  };
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<BigInt> x = rand_vec(6), y = rand_vec(6), z = rand_vec(6);
    REQUIRE(wedge(x, y) == -wedge(y, x), "wedge antisymmetry failed");
    std::vector<BigInt> combo(6);
    for (std::size_t k = 0; k < 6; ++k) combo[k] = 5 * y[k] + 7 * z[k];
    REQUIRE(wedge(x, combo) == 5 * wedge(x, y) + 7 * wedge(x, z),
            "wedge bilinearity failed");
  }

  for (const char* name : {"m006.json", "m009.json"}) {
    GluingSystem sys = load_gluing_file(fixture(name));
    ReducedSystem red = reduce(sys);
    for (const ScanEntry& e : scan(red).certified) {
      SlopeRecord rec = peripheral_valuations(sys, e.index, e.d);
      std::vector<BigInt> weights;
      for (const BigInt& v : e.d.d_primitive)
        weights.push_back(boost::multiprecision::abs(v));
      std::vector<BigInt> x = degeneration_covector(e.index, weights);
      for (const auto& row : red.active_rows)
        REQUIRE(wedge(row, x) == 0,
                name << " " << e.index.str() << ": gluing row pairs nonzero");
      std::vector<BigInt> curve(sys.m.size());
      for (std::size_t k = 0; k < curve.size(); ++k)
        curve[k] = -rec.vL * sys.m[k] + rec.vM * sys.l[k];
      REQUIRE(wedge(curve, x) == 0,
              name << " " << e.index.str() << ": slope curve pairs nonzero");
    }
  }
  std::cout << "[PASS] 6. symplectic pairing: 1000 random antisymmetry/bilinearity "
               "checks; row and slope-curve pairings vanish at all certified "
               "indices\n";
}

// 7. Oracle equivalence: fraction-free determinants and minor vectors vs
//    cofactor expansion on 120 random matrices up to size 5; exact solution
//    sets vs brute-force roots-of-unity enumeration at every certified
//    index of both fixtures.
void criterion_oracles() {
  std::mt19937 rng(20260819);
  std::uniform_int_distribution<int> size(1, 5), entry(-6, 6);
  for (int iter = 0; iter < 120; ++iter) {
    std::size_t n = static_cast<std::size_t>(size(rng));
    IntMatrix sq(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sq.at(i, j) = entry(rng);
    REQUIRE(det(sq) == oracle::cofactor_det(sq), "determinant disagrees with oracle");

    std::size_t k = std::min<std::size_t>(n, 4);
    IntMatrix rect(k, k + 1);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j <= k; ++j) rect.at(i, j) = entry(rng);
    REQUIRE(maximal_minor_vector(rect) == oracle::cofactor_minor_vector(rect),
            "minor vector disagrees with oracle");
  }

  int branches = 0;
  for (const char* name : {"m006.json", "m009.json"}) {
    GluingSystem sys = load_gluing_file(fixture(name));
    ReducedSystem red = reduce(sys);
    for (const ScanEntry& e : scan(red).certified) {
      MonomialSystem msys = equations_at_infinity(sys, e.index, e.d);
      std::vector<UnitRootVector> got = solve_at_infinity(msys);

      IntMatrix square = msys.exponents.without_column(msys.chart);
      BigInt det_abs = boost::multiprecision::abs(det(square));
      unsigned q = 2 * det_abs.convert_to<unsigned>();
      auto raw = oracle::roots_of_unity_solutions(square, *msys.targets, q);
      std::vector<UnitRootVector> want;
      for (const auto& partial : raw) {
        UnitRootVector v;
        std::size_t jo = 0;
        for (std::size_t nu = 0; nu < msys.weights.size(); ++nu)
          v.angles.push_back(nu == msys.chart ? Rational(0) : partial[jo++]);
        want.push_back(std::move(v));
      }
      std::sort(want.begin(), want.end());
      REQUIRE(got == want,
              name << " " << e.index.str() << ": solution set disagrees with oracle");
      ++branches;
    }
  }
  std::cout << "[PASS] 7. oracle equivalence: 120 random det/minor checks; exact "
               "solution sets match brute force at " << branches
            << " certified indices\n";
}

// 8. Branch trace: m009, I=(inf,0,0), a=(-1,1,1), t=1e-3 converges below
//    1e-9, and log|z_nu| slopes over t in {1e-2, 1e-3, 1e-4} match the
//    predicted directions (-2, +1, +1) within 5%.
void criterion_branch_trace() {
  GluingSystem sys = load_gluing_file(fixture("m009.json"));
  ReducedSystem red = reduce(sys);
  DegenerationIndex I = DegenerationIndex::parse("inf,0,0");
  DegenerationVector d = degeneration_vector(red, I);
  UnitRootVector a{{Rational(1, 2), Rational(0), Rational(0)}};  // (-1, 1, 1)

  BranchTrace at_1e3 = trace_branch(sys, I, d, a, 1e-3);
  REQUIRE(at_1e3.converged, "m009 trace at t=1e-3 did not converge");
  REQUIRE(at_1e3.jacobian_ok, "m009 trace: transversality certificate failed");
  REQUIRE(at_1e3.residual < 1e-9,
          "m009 trace residual " << at_1e3.residual << " >= 1e-9");

  std::vector<double> log_t;
  std::vector<std::vector<double>> log_abs(3);
  for (double t : {1e-2, 1e-3, 1e-4}) {
    BranchTrace tr = trace_branch(sys, I, d, a, t);
    REQUIRE(tr.converged, "m009 trace at t=" << t << " did not converge");
    log_t.push_back(std::log(t));
    for (std::size_t nu = 0; nu < 3; ++nu)
      log_abs[nu].push_back(std::log(std::abs(tr.point[nu])));
  }
  auto slope = [&](const std::vector<double>& y) {
    double xm = 0, ym = 0;
    for (std::size_t i = 0; i < log_t.size(); ++i) xm += log_t[i], ym += y[i];
    xm /= static_cast<double>(log_t.size());
    ym /= static_cast<double>(y.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
      num += (log_t[i] - xm) * (y[i] - ym);
      den += (log_t[i] - xm) * (log_t[i] - xm);
    }
    return num / den;
  };
  double expected[3] = {-2.0, 1.0, 1.0};
  for (std::size_t nu = 0; nu < 3; ++nu) {
    double s = slope(log_abs[nu]);
    REQUIRE(std::abs(s - expected[nu]) <= 0.05 * std::abs(expected[nu]),
            "m009 trace: log|z_" << nu + 1 << "| slope " << s << ", want "
                                 << expected[nu] << " within 5%");
  }
  std::cout << "[PASS] 8. branch trace: m009 (inf,0,0) at a=(-1,1,1) converges below "
               "1e-9 and growth rates fit (-2,+1,+1) within 5%\n";
}

// 9. Determinism: consecutive analyze runs emit byte-identical JSON, also
//    under maximal parallelism.
void criterion_determinism() {
  for (const char* name : {"m006.json", "m009.json"}) {
    std::string path = fixture(name);
    std::string first = emit_report(run_pipeline(path), ReportFormat::Json);
    std::string second = emit_report(run_pipeline(path), ReportFormat::Json);
    REQUIRE(first == second, name << ": consecutive runs differ");

#ifdef _OPENMP
    int saved = omp_get_max_threads();
    omp_set_num_threads(std::max(4, omp_get_num_procs()));
    std::string parallel = emit_report(run_pipeline(path), ReportFormat::Json);
    omp_set_num_threads(saved);
    REQUIRE(parallel == first, name << ": maximal-parallelism run differs");
#endif
  }
  std::cout << "[PASS] 9. determinism: byte-identical JSON across repeated and "
               "maximally parallel runs on both fixtures\n";
}

}  // namespace

int main() {
  criterion_m006_scan();
  criterion_m006_cone();
  criterion_m009_scan();
  criterion_m009_infinity();
  criterion_kernel_membership();
  criterion_symplectic();
  criterion_oracles();
  criterion_branch_trace();
  criterion_determinism();
  std::cout << "all 9 criteria passed (" << g_checks << " checks)\n";
  return 0;
}
