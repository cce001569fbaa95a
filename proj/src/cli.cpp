#include "idealscan/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "idealscan/report.hpp"

namespace idealscan {

namespace {

using nlohmann::ordered_json;

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  return ReportFormat::Markdown;
}

std::string angle_tuple(const UnitRootVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.angles.size(); ++i) {
    if (i) out += ", ";
    out += fraction_string(v.angles[i]);
  }
  return out + ")";
}

// Unit-circle rendering for small denominators, e.g. -1 or i; falls back
// to e(p/q) notation for exp(2 pi i p/q).
std::string unit_value(const Rational& angle) {
  if (angle == 0) return "1";
  if (angle == Rational(1, 2)) return "-1";
  if (angle == Rational(1, 4)) return "i";
  if (angle == Rational(3, 4)) return "-i";
  return "e(" + fraction_string(angle) + ")";
}

std::string monomial(const IntMatrix& exponents, std::size_t row) {
  std::string out;
  for (std::size_t nu = 0; nu < exponents.cols(); ++nu) {
    const BigInt& e = exponents.at(row, nu);
    if (e == 0) continue;
    if (!out.empty()) out += ' ';
    out += "a_" + std::to_string(nu + 1);
    if (e != 1) out += "^" + e.str();
  }
  return out.empty() ? "1" : out;
}

const char* class_name(Classification c) {
  switch (c) {
    case Classification::Certified: return "certified";
    case Classification::Candidate: return "candidate";
    case Classification::Rejected: return "rejected";
  }
  return "?";
}

std::string join_ints(const std::vector<BigInt>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i].str();
  }
  return out;
}

int cmd_analyze(const std::string& path, const PipelineOptions& opts,
                const std::string& format, std::ostream& out) {
  ScanReport report = run_pipeline(path, opts);
  out << emit_report(report, parse_format(format));
  return 0;
}

int cmd_indices(const std::string& path, std::uint64_t max_indices,
                const std::string& format, std::ostream& out) {
  GluingSystem sys = load_gluing_file(path);
  ValidationReport val = validate(sys);
  if (!val.ok()) {
    std::string msg = "validation failed";
    for (const std::string& e : val.errors) msg += "; " + e;
    throw ValidationError(msg);
  }
  ReducedSystem red = reduce(sys);

  // Reuse the scan (it already enforces the cap), then fill in rejected
  // indices by walking the canonical enumeration once.
  ScanResult res = scan(red, ScanOptions{max_indices});
  struct Row {
    std::string index;
    const char* cls;
    std::string d;
  };
  std::vector<Row> rows;
  std::size_t icert = 0, icand = 0;
  for (std::uint64_t code = 0; code < res.total; ++code) {
    if (icert < res.certified.size() && res.certified[icert].index.code() == code) {
      const ScanEntry& e = res.certified[icert++];
      rows.push_back({e.index.str(), class_name(e.cls.kind), join_ints(e.d.d)});
    } else if (icand < res.candidates.size() && res.candidates[icand].index.code() == code) {
      const ScanEntry& e = res.candidates[icand++];
      rows.push_back({e.index.str(), class_name(e.cls.kind), join_ints(e.d.d)});
    } else {
      DegenerationIndex I = DegenerationIndex::from_code(code, sys.n);
      rows.push_back({I.str(), class_name(Classification::Rejected),
                      join_ints(degeneration_vector(red, I).d)});
    }
  }

  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const Row& r : rows) {
      ordered_json j;
      j["index"] = r.index;
      j["class"] = r.cls;
      j["d"] = r.d;
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << "\n";
  } else if (format == "csv") {
    out << "index,class,d\n";
    for (const Row& r : rows)
      out << '"' << r.index << "\"," << r.cls << ",\"" << r.d << "\"\n";
  } else {
    out << "| index | class | d |\n|---|---|---|\n";
    for (const Row& r : rows)
      out << "| " << r.index << " | " << r.cls << " | (" << r.d << ") |\n";
  }
  return 0;
}

int cmd_cones(const std::string& path, const std::string& index_literal,
              const std::string& format, std::ostream& out) {
  GluingSystem sys = load_gluing_file(path);
  ReducedSystem red = reduce(sys);
  DegenerationIndex I = DegenerationIndex::parse(index_literal);
  DegenerationVector d = degeneration_vector(red, I);
  std::size_t r = rank(degeneration_matrix(red, I));
  std::vector<ConeFace> faces = cone_faces(red, I);
  std::vector<ConeGenerator> gens = cone_generators(red, I);

  if (format == "json") {
    ordered_json j;
    j["index"] = I.str();
    j["d"] = "(" + join_ints(d.d) + ")";
    j["rank"] = r;
    ordered_json farr = ordered_json::array();
    for (const ConeFace& f : faces) {
      ordered_json fj;
      fj["mask"] = f.mask;
      fj["minors"] = "(" + join_ints(f.minor_vector) + ")";
      fj["one_signed"] = f.one_signed;
      farr.push_back(std::move(fj));
    }
    j["faces"] = std::move(farr);
    ordered_json garr = ordered_json::array();
    for (const ConeGenerator& g : gens) garr.push_back("(" + join_ints(g.coefficients) + ")");
    j["generators"] = std::move(garr);
    out << j.dump(2) << "\n";
    return 0;
  }

  out << "index: " << I.str() << "\n";
  out << "d: (" << join_ints(d.d) << "), gcd " << d.gcd_value << "\n";
  out << "rank: " << r << "\n";
  out << "faces (mask -> maximal minors):\n";
  for (const ConeFace& f : faces) {
    out << "  (";
    for (std::size_t i = 0; i < f.mask.size(); ++i) {
      if (i) out << ",";
      out << f.mask[i];
    }
    out << ") -> (" << join_ints(f.minor_vector) << ")"
        << (f.one_signed ? "  one-signed" : "") << "\n";
  }
  out << "generators:\n";
  if (gens.empty()) out << "  none\n";
  for (const ConeGenerator& g : gens) out << "  (" << join_ints(g.coefficients) << ")\n";
  return 0;
}

int cmd_infinity(const std::string& path, const std::string& index_literal,
                 std::optional<std::size_t> chart_1based, const std::string& format,
                 std::ostream& out) {
  GluingSystem sys = load_gluing_file(path);
  ReducedSystem red = reduce(sys);
  DegenerationIndex I = DegenerationIndex::parse(index_literal);
  DegenerationVector d = degeneration_vector(red, I);
  std::optional<std::size_t> chart;
  if (chart_1based) {
    if (*chart_1based < 1) throw std::invalid_argument("chart positions are 1-based");
    chart = *chart_1based - 1;
  }
  MonomialSystem msys = equations_at_infinity(sys, I, d, chart);

  std::vector<UnitRootVector> sols, reps;
  if (msys.targets) {
    sols = solve_at_infinity(msys);
    reps = quotient_by_weight_action(sols, msys);
  }

  if (format == "json") {
    ordered_json j;
    j["index"] = I.str();
    j["d"] = "(" + join_ints(d.d) + ")";
    j["weights"] = "(" + join_ints(msys.weights) + ")";
    j["chart"] = msys.chart + 1;
    if (msys.targets) {
      j["targets"] = *msys.targets;
      ordered_json sarr = ordered_json::array();
      for (const UnitRootVector& s : sols) {
        ordered_json one = ordered_json::array();
        for (const Rational& a : s.angles) one.push_back(fraction_string(a));
        sarr.push_back(std::move(one));
      }
      j["solutions"] = std::move(sarr);
      ordered_json rarr = ordered_json::array();
      for (const UnitRootVector& s : reps) {
        ordered_json one = ordered_json::array();
        for (const Rational& a : s.angles) one.push_back(fraction_string(a));
        rarr.push_back(std::move(one));
      }
      j["orbit_representatives"] = std::move(rarr);
    } else {
      j["targets"] = nullptr;
      j["note"] = "no equation signs in input; count-only mode";
    }
    j["count"] = msys.multiplicity.str();
    out << j.dump(2) << "\n";
    return 0;
  }

  out << "index: " << I.str() << "\n";
  out << "d: (" << join_ints(d.d) << "), gcd " << msys.multiplicity << "\n";
  out << "weights |d'|: (" << join_ints(msys.weights) << ")\n";
  out << "chart: a_" << msys.chart + 1 << " = 1\n";
  if (!msys.targets) {
    out << "no equation signs in input; count-only mode: " << msys.multiplicity
        << " ideal points\n";
    return 0;
  }
  out << "equations at infinity:\n";
  for (std::size_t i = 0; i < msys.exponents.rows(); ++i)
    out << "  " << monomial(msys.exponents, i) << " = "
        << ((*msys.targets)[i] == 1 ? "1" : "-1") << "\n";
  out << "solutions (" << sols.size() << "):\n";
  for (const UnitRootVector& s : sols) {
    out << "  " << angle_tuple(s) << "  =  (";
    for (std::size_t i = 0; i < s.angles.size(); ++i) {
      if (i) out << ", ";
      out << unit_value(s.angles[i]);
    }
    out << ")\n";
  }
  out << "orbit representatives (" << reps.size() << " = gcd):\n";
  for (const UnitRootVector& s : reps) out << "  " << angle_tuple(s) << "\n";
  return 0;
}

int cmd_trace(const std::string& path, const std::string& index_literal, double t,
              std::optional<std::size_t> chart_1based, std::size_t solution_idx,
              std::ostream& out) {
  GluingSystem sys = load_gluing_file(path);
  ReducedSystem red = reduce(sys);
  DegenerationIndex I = DegenerationIndex::parse(index_literal);
  DegenerationVector d = degeneration_vector(red, I);
  TraceOptions topts;
  if (chart_1based) {
    if (*chart_1based < 1) throw std::invalid_argument("chart positions are 1-based");
    topts.chart = *chart_1based - 1;
  }
  MonomialSystem msys = equations_at_infinity(sys, I, d, topts.chart);
  std::vector<UnitRootVector> reps = quotient_by_weight_action(solve_at_infinity(msys), msys);
  if (solution_idx >= reps.size())
    throw std::invalid_argument("solution index out of range (have " +
                                std::to_string(reps.size()) + " orbit representatives)");
  const UnitRootVector& a = reps[solution_idx];

  BranchTrace tr = trace_branch(sys, I, d, a, t, topts);
  out << "index: " << I.str() << ", solution " << angle_tuple(a) << ", t = " << t << "\n";
  out << "converged: " << (tr.converged ? "yes" : "no") << " in "
      << tr.newton_residuals.size() - 1 << " Newton steps\n";
  out << "residual max|R_i(z) - sign_i|: " << tr.residual << "\n";
  out << "transversality certificate d_chart != 0: " << (tr.jacobian_ok ? "yes" : "no")
      << "\n";
  out << "shapes:\n";
  for (std::size_t nu = 0; nu < tr.point.size(); ++nu)
    out << "  z_" << nu + 1 << " = " << tr.point[nu].real() << " + "
        << tr.point[nu].imag() << "i\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certifies and counts ideal points of the deformation variety of a "
               "one-cusped manifold from its gluing-equation data"};
  app.require_subcommand(1);

  std::string path, index_literal, format = "markdown";
  std::uint64_t max_indices = ScanOptions{}.max_indices;
  bool no_solve = false;
  double trace_t = 0;
  double t_param = 1e-3;
  std::uint64_t chart_flag = 0;
  std::uint64_t solution_idx = 0;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "markdown"}));
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Full pipeline: scan, valuations, "
                                                    "slopes, solutions at infinity");
  analyze->add_option("file", path, "Gluing-system file (JSON or text)")->required();
  add_format(analyze);
  analyze->add_option("--max-indices", max_indices, "Enumeration cap on 3^n");
  analyze->add_flag("--no-solve", no_solve, "Skip solving the equations at infinity");
  analyze->add_option("--trace-t", trace_t, "Also trace one branch per certified index "
                                            "at this parameter value");

  CLI::App* indices = app.add_subcommand("indices", "Classification table of all 3^n "
                                                    "degeneration indices");
  indices->add_option("file", path)->required();
  add_format(indices);
  indices->add_option("--max-indices", max_indices, "Enumeration cap on 3^n");

  CLI::App* cones = app.add_subcommand("cones", "Cone faces and generators for one index");
  cones->add_option("file", path)->required();
  cones->add_option("--index", index_literal, "Degeneration index, e.g. inf,0,0")->required();
  add_format(cones);

  CLI::App* infinity = app.add_subcommand("infinity", "Equations at infinity and their "
                                                      "exact solutions for one index");
  infinity->add_option("file", path)->required();
  infinity->add_option("--index", index_literal)->required();
  infinity->add_option("--chart", chart_flag, "Chart position (1-based, a_k = 1)")
      ->check(CLI::PositiveNumber);
  add_format(infinity);

  CLI::App* trace = app.add_subcommand("trace", "Numerically trace a branch into the "
                                                "deformation variety");
  trace->add_option("file", path)->required();
  trace->add_option("--index", index_literal)->required();
  trace->add_option("--t", t_param, "Branch parameter in (0, 1e-2]")->required();
  trace->add_option("--chart", chart_flag, "Chart position (1-based)")
      ->check(CLI::PositiveNumber);
  trace->add_option("--solution", solution_idx, "Orbit representative to trace (0-based)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    std::optional<std::size_t> chart;
    if (chart_flag) chart = static_cast<std::size_t>(chart_flag);
    if (analyze->parsed()) {
      PipelineOptions opts;
      opts.max_indices = max_indices;
      opts.solve = !no_solve;
      if (analyze->count("--trace-t")) opts.trace_t = trace_t;
      return cmd_analyze(path, opts, format, out);
    }
    if (indices->parsed()) return cmd_indices(path, max_indices, format, out);
    if (cones->parsed()) return cmd_cones(path, index_literal, format, out);
    if (infinity->parsed()) return cmd_infinity(path, index_literal, chart, format, out);
    if (trace->parsed()) return cmd_trace(path, index_literal, t_param, chart, solution_idx, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace idealscan
