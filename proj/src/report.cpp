#include "idealscan/report.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

namespace idealscan {

namespace {

using nlohmann::ordered_json;

ordered_json json_int(const BigInt& x) {
  if (fits_int64(x)) return x.convert_to<std::int64_t>();
  return x.str();  // decimal-string fallback beyond 64 bits
}

BigInt bigint_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
  if (v.is_string()) return BigInt(v.get<std::string>());
  throw ParseError("expected an integer or decimal string");
}

ordered_json json_int_vector(const std::vector<BigInt>& v) {
  ordered_json arr = ordered_json::array();
  for (const BigInt& x : v) arr.push_back(json_int(x));
  return arr;
}

std::vector<BigInt> bigint_vector_from_json(const nlohmann::json& arr) {
  std::vector<BigInt> out;
  for (const auto& x : arr) out.push_back(bigint_from_json(x));
  return out;
}

ordered_json json_angles(const UnitRootVector& v) {
  ordered_json arr = ordered_json::array();
  for (const Rational& a : v.angles) arr.push_back(fraction_string(a));
  return arr;
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) throw ParseError("expected \"p/q\" fraction: " + s);
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

ordered_json json_trace(const BranchTrace& tr) {
  ordered_json j;
  j["t"] = tr.t_value;
  j["converged"] = tr.converged;
  j["jacobian_ok"] = tr.jacobian_ok;
  j["residual"] = tr.residual;
  ordered_json pt = ordered_json::array();
  for (const auto& z : tr.point) pt.push_back(ordered_json::array({z.real(), z.imag()}));
  j["point"] = pt;
  j["newton_residuals"] = tr.newton_residuals;
  return j;
}

BranchTrace trace_from_json(const nlohmann::json& j) {
  BranchTrace tr;
  tr.t_value = j.at("t").get<double>();
  tr.converged = j.at("converged").get<bool>();
  tr.jacobian_ok = j.at("jacobian_ok").get<bool>();
  tr.residual = j.at("residual").get<double>();
  for (const auto& z : j.at("point"))
    tr.point.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  tr.newton_residuals = j.at("newton_residuals").get<std::vector<double>>();
  return tr;
}

ordered_json report_to_json(const ScanReport& report) {
  ordered_json j;
  j["name"] = report.name;
  j["n"] = report.n;
  ordered_json cfg;
  cfg["max_indices"] = report.config.max_indices;
  cfg["solve"] = report.config.solve;
  cfg["trace_t"] = report.config.trace_t ? ordered_json(*report.config.trace_t)
                                         : ordered_json(nullptr);
  j["config"] = std::move(cfg);

  ordered_json certified = ordered_json::array();
  for (const IdealPointRecord& rec : report.certified) {
    ordered_json r;
    r["index"] = rec.index.str();
    r["d"] = json_int_vector(rec.d.d);
    r["gcd"] = json_int(rec.d.gcd_value);
    r["d_primitive"] = json_int_vector(rec.d.d_primitive);
    r["orientation"] = rec.orientation;
    r["count"] = json_int(rec.count);
    r["vM"] = json_int(rec.slopes.vM);
    r["vL"] = json_int(rec.slopes.vL);
    r["vIM"] = json_int(rec.slopes.vIM);
    r["vIL"] = json_int(rec.slopes.vIL);
    r["vM_unreduced"] = json_int(rec.slopes.vM_unreduced);
    r["vL_unreduced"] = json_int(rec.slopes.vL_unreduced);
    r["slope"] = rec.slopes.has_slope ? ordered_json(rec.slopes.slope_string())
                                      : ordered_json(nullptr);
    r["detects_X_ideal_point"] = rec.slopes.detects_X_ideal_point;
    if (rec.chart) r["chart"] = *rec.chart + 1;  // 1-based, as in a_3 = 1
    if (rec.solutions) {
      ordered_json sols = ordered_json::array();
      for (const UnitRootVector& s : *rec.solutions) sols.push_back(json_angles(s));
      r["solutions_at_infinity"] = std::move(sols);
    }
    if (rec.trace) r["trace"] = json_trace(*rec.trace);
    certified.push_back(std::move(r));
  }
  j["certified"] = std::move(certified);

  ordered_json candidates = ordered_json::array();
  for (const CandidateRecord& rec : report.candidates) {
    ordered_json r;
    r["index"] = rec.index.str();
    r["d"] = json_int_vector(rec.d.d);
    r["gcd"] = json_int(rec.d.gcd_value);
    ordered_json gens = ordered_json::array();
    for (const ConeGenerator& g : rec.generators) {
      ordered_json gj;
      gj["coefficients"] = json_int_vector(g.coefficients);
      gj["face_mask"] = g.face_mask;
      gens.push_back(std::move(gj));
    }
    r["cone_generators"] = std::move(gens);
    candidates.push_back(std::move(r));
  }
  j["candidates"] = std::move(candidates);
  j["rejected"] = report.rejected;
  j["total"] = report.total;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string join_ints(const std::vector<BigInt>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i].str();
  }
  return out;
}

std::string emit_csv(const ScanReport& report) {
  std::string out = "index,d,gcd,vM,vL,slope\n";
  for (const IdealPointRecord& rec : report.certified) {
    out += csv_field(rec.index.str());
    out += ',' + join_ints(rec.d.d, " ");
    out += ',' + rec.d.gcd_value.str();
    out += ',' + rec.slopes.vM.str();
    out += ',' + rec.slopes.vL.str();
    out += ',' + (rec.slopes.has_slope ? rec.slopes.slope_string() : std::string());
    out += '\n';
  }
  return out;
}

std::string emit_markdown(const ScanReport& report) {
  std::ostringstream out;
  out << "# Ideal point scan: " << report.name << "\n\n";
  out << "- tetrahedra: " << report.n << "\n";
  out << "- indices scanned: " << report.total << " (certified " << report.certified.size()
      << ", candidates " << report.candidates.size() << ", rejected " << report.rejected
      << ")\n";
  out << "- config: max_indices=" << report.config.max_indices << ", solve="
      << (report.config.solve ? "on" : "off");
  if (report.config.trace_t) out << ", trace_t=" << *report.config.trace_t;
  out << "\n";
  out << "- elapsed: " << report.elapsed_ms << " ms\n\n";

  out << "## Certified ideal points\n\n";
  if (report.certified.empty()) {
    out << "none\n";
  } else {
    out << "| index | d | gcd | points | vM | vL | slope | solutions at infinity |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    for (const IdealPointRecord& rec : report.certified) {
      out << "| " << rec.index.str() << " | (" << join_ints(rec.d.d, ",") << ") | "
          << rec.d.gcd_value << " | " << rec.count << " | " << rec.slopes.vM << " | "
          << rec.slopes.vL << " | "
          << (rec.slopes.has_slope ? rec.slopes.slope_string() : "none") << " | ";
      if (rec.solutions) {
        for (std::size_t i = 0; i < rec.solutions->size(); ++i) {
          if (i) out << "; ";
          out << "(";
          const auto& angles = (*rec.solutions)[i].angles;
          for (std::size_t k = 0; k < angles.size(); ++k) {
            if (k) out << ",";
            out << fraction_string(angles[k]);
          }
          out << ")";
        }
        if (rec.chart) out << " in chart a_" << *rec.chart + 1 << "=1";
      } else {
        out << "not solved";
      }
      out << " |\n";
    }
  }

  out << "\n## Candidates (necessary condition only)\n\n";
  if (report.candidates.empty()) {
    out << "none\n";
  } else {
    out << "| index | d | cone generators |\n";
    out << "|---|---|---|\n";
    for (const CandidateRecord& rec : report.candidates) {
      out << "| " << rec.index.str() << " | (" << join_ints(rec.d.d, ",") << ") | ";
      if (rec.generators.empty()) {
        out << "none";
      } else {
        for (std::size_t i = 0; i < rec.generators.size(); ++i) {
          if (i) out << "; ";
          out << "(" << join_ints(rec.generators[i].coefficients, ",") << ")";
        }
      }
      out << " |\n";
    }
  }
  return std::move(out).str();
}

}  // namespace

GluingSystem load_gluing_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = std::move(buf).str();

  auto first = text.find_first_not_of(" \t\r\n");
  InputFormat fmt = (first != std::string::npos && text[first] == '{') ? InputFormat::Json
                                                                       : InputFormat::SnapText;
  GluingSystem sys = parse_gluing_system(text, fmt);
  if (sys.name.empty()) {
    auto slash = path.find_last_of("/\\");
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem.erase(dot);
    sys.name = stem;
  }
  return sys;
}

ScanReport run_pipeline_on(const GluingSystem& sys, const PipelineOptions& options) {
  auto t0 = std::chrono::steady_clock::now();

  ValidationReport val = validate(sys);
  if (!val.ok()) {
    std::string msg = "validation failed";
    for (const std::string& e : val.errors) msg += "; " + e;
    throw ValidationError(msg);
  }
  ReducedSystem red = reduce(sys);
  ScanResult scanned = scan(red, ScanOptions{options.max_indices});

  ScanReport report;
  report.name = sys.name;
  report.n = sys.n;
  report.config = options;
  report.rejected = scanned.rejected;
  report.total = scanned.total;

  for (ScanEntry& entry : scanned.certified) {
    IdealPointRecord rec;
    rec.orientation = entry.cls.orientation;
    rec.count = entry.d.gcd_value;
    rec.slopes = peripheral_valuations(sys, entry.index, entry.d);
    if (options.solve && sys.signs) {
      MonomialSystem msys = equations_at_infinity(sys, entry.index, entry.d);
      rec.chart = msys.chart;
      rec.solutions = quotient_by_weight_action(solve_at_infinity(msys), msys);
      if (options.trace_t && !rec.solutions->empty())
        rec.trace = trace_branch(sys, entry.index, entry.d, rec.solutions->front(),
                                 *options.trace_t);
    }
    rec.index = std::move(entry.index);
    rec.d = std::move(entry.d);
    report.certified.push_back(std::move(rec));
  }
  for (ScanEntry& entry : scanned.candidates) {
    CandidateRecord rec;
    rec.generators = cone_generators(red, entry.index);
    rec.index = std::move(entry.index);
    rec.d = std::move(entry.d);
    report.candidates.push_back(std::move(rec));
  }

  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

ScanReport run_pipeline(const std::string& path, const PipelineOptions& options) {
  return run_pipeline_on(load_gluing_file(path), options);
}

std::string emit_report(const ScanReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return report_to_json(report).dump(2) + "\n";
    case ReportFormat::Csv: return emit_csv(report);
    case ReportFormat::Markdown: return emit_markdown(report);
  }
  throw std::logic_error("unreachable");
}

ScanReport parse_report_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what());
  }
  ScanReport report;
  report.name = j.at("name").get<std::string>();
  report.n = j.at("n").get<int>();
  report.config.max_indices = j.at("config").at("max_indices").get<std::uint64_t>();
  report.config.solve = j.at("config").at("solve").get<bool>();
  if (!j.at("config").at("trace_t").is_null())
    report.config.trace_t = j.at("config").at("trace_t").get<double>();

  for (const auto& r : j.at("certified")) {
    IdealPointRecord rec;
    rec.index = DegenerationIndex::parse(r.at("index").get<std::string>());
    rec.d = DegenerationVector::from(bigint_vector_from_json(r.at("d")));
    rec.orientation = r.at("orientation").get<int>();
    rec.count = bigint_from_json(r.at("count"));
    rec.slopes.vM = bigint_from_json(r.at("vM"));
    rec.slopes.vL = bigint_from_json(r.at("vL"));
    rec.slopes.vIM = bigint_from_json(r.at("vIM"));
    rec.slopes.vIL = bigint_from_json(r.at("vIL"));
    rec.slopes.vM_unreduced = bigint_from_json(r.at("vM_unreduced"));
    rec.slopes.vL_unreduced = bigint_from_json(r.at("vL_unreduced"));
    rec.slopes.detects_X_ideal_point = r.at("detects_X_ideal_point").get<bool>();
    rec.slopes.has_slope = !r.at("slope").is_null();
    if (rec.slopes.has_slope) {
      // Parsed as a raw pair, not a Rational: the canonical form allows
      // the denominator 0 ("1/0").
      std::string s = r.at("slope").get<std::string>();
      auto slash = s.find('/');
      if (slash == std::string::npos) throw ParseError("expected \"p/q\" slope: " + s);
      rec.slopes.slope_p = BigInt(s.substr(0, slash));
      rec.slopes.slope_q = BigInt(s.substr(slash + 1));
    } else {
      rec.slopes.slope_p = 0;
      rec.slopes.slope_q = 0;
    }
    if (r.contains("chart")) rec.chart = r.at("chart").get<std::size_t>() - 1;
    if (r.contains("solutions_at_infinity")) {
      std::vector<UnitRootVector> sols;
      for (const auto& s : r.at("solutions_at_infinity")) {
        UnitRootVector v;
        for (const auto& a : s) v.angles.push_back(rational_from_string(a.get<std::string>()));
        sols.push_back(std::move(v));
      }
      rec.solutions = std::move(sols);
    }
    if (r.contains("trace")) rec.trace = trace_from_json(r.at("trace"));
    report.certified.push_back(std::move(rec));
  }
  for (const auto& r : j.at("candidates")) {
    CandidateRecord rec;
    rec.index = DegenerationIndex::parse(r.at("index").get<std::string>());
    rec.d = DegenerationVector::from(bigint_vector_from_json(r.at("d")));
    for (const auto& g : r.at("cone_generators")) {
      ConeGenerator gen;
      gen.coefficients = bigint_vector_from_json(g.at("coefficients"));
      gen.face_mask = g.at("face_mask").get<std::vector<int>>();
      rec.generators.push_back(std::move(gen));
    }
    report.candidates.push_back(std::move(rec));
  }
  report.rejected = j.at("rejected").get<std::uint64_t>();
  report.total = j.at("total").get<std::uint64_t>();
  return report;
}

}  // namespace idealscan
