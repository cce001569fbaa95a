#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "idealscan/cli.hpp"
#include "idealscan/report.hpp"

using namespace idealscan;
using test_helpers::fixture_path;
using test_helpers::read_file;

namespace {

// Writes a scratch input file for CLI error-path tests; removed afterwards.
struct TempFile {
  std::string path;
  TempFile(const std::string& name, const std::string& content) : path(name) {
    std::ofstream(path) << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("pipeline report for m006") {
  ScanReport report = run_pipeline(fixture_path("m006.json"));
  CHECK(report.name == "m006");
  CHECK(report.n == 3);
  CHECK(report.total == 27);
  CHECK(report.rejected == 18);
  REQUIRE(report.certified.size() == 4);
  CHECK(report.candidates.size() == 5);

  const IdealPointRecord& first = report.certified[0];
  CHECK(first.index.str() == "1,1,inf");
  CHECK(first.orientation == 1);
  CHECK(first.count == 1);
  CHECK(first.slopes.slope_string() == "-3/1");
  REQUIRE(first.chart.has_value());
  CHECK(*first.chart == 1);
  REQUIRE(first.solutions.has_value());
  REQUIRE(first.solutions->size() == 1);
  CHECK((*first.solutions)[0].angles ==
        std::vector<Rational>{Rational(1, 6), 0, Rational(1, 6)});
  CHECK_FALSE(first.trace.has_value());

  // Candidates carry their cone generators.
  bool found = false;
  for (const CandidateRecord& c : report.candidates)
    if (c.index.str() == "inf,0,0") {
      found = true;
      REQUIRE(c.generators.size() == 2);
      CHECK(c.generators[0].coefficients == std::vector<BigInt>{1, 0, 1});
    }
  CHECK(found);
}

TEST_CASE("pipeline report for m009 with tracing") {
  PipelineOptions opts;
  opts.trace_t = 1e-3;
  ScanReport report = run_pipeline(fixture_path("m009.json"), opts);
  REQUIRE(report.certified.size() == 2);
  for (const IdealPointRecord& rec : report.certified) {
    CHECK(rec.count == 2);
    REQUIRE(rec.solutions.has_value());
    CHECK(rec.solutions->size() == 2);
    REQUIRE(rec.trace.has_value());
    CHECK(rec.trace->converged);
    CHECK(rec.trace->residual < 1e-9);
  }
}

TEST_CASE("solving can be switched off") {
  PipelineOptions opts;
  opts.solve = false;
  ScanReport report = run_pipeline(fixture_path("m006.json"), opts);
  for (const IdealPointRecord& rec : report.certified) {
    CHECK_FALSE(rec.chart.has_value());
    CHECK_FALSE(rec.solutions.has_value());
  }
}

TEST_CASE("a system without signs is scanned but not solved") {
  GluingSystem sys = load_gluing_file(fixture_path("m009.json"));
  sys.signs.reset();
  ScanReport report = run_pipeline_on(sys);
  REQUIRE(report.certified.size() == 2);
  for (const IdealPointRecord& rec : report.certified) {
    CHECK(rec.count == 2);  // the count needs no signs
    CHECK_FALSE(rec.solutions.has_value());
  }
}

TEST_CASE("pipeline rejects an invalid system") {
  // Component 1 of the row sum is 1, not 0.
  TempFile bad("report_bad_rowsum.json",
               R"({"name":"bad","n":2,"rows":[[1,0,0,0],[0,0,-1,0]],)"
               R"("m":[1,0,0,0],"l":[0,0,0,1]})");
  CHECK_THROWS_AS(run_pipeline(bad.path), ValidationError);
}

TEST_CASE("json report round-trips byte for byte") {
  PipelineOptions opts;
  opts.trace_t = 1e-3;
  for (const char* name : {"m006.json", "m009.json"}) {
    ScanReport report = run_pipeline(fixture_path(name), opts);
    std::string emitted = emit_report(report, ReportFormat::Json);
    std::string again = emit_report(parse_report_json(emitted), ReportFormat::Json);
    INFO(name);
    CHECK(again == emitted);
  }
}

TEST_CASE("repeated runs emit identical json") {
  std::string a = emit_report(run_pipeline(fixture_path("m009.json")), ReportFormat::Json);
  std::string b = emit_report(run_pipeline(fixture_path("m009.json")), ReportFormat::Json);
  CHECK(a == b);  // elapsed time is excluded from the machine format
}

TEST_CASE("csv rendering of the certified table") {
  ScanReport report = run_pipeline(fixture_path("m006.json"));
  CHECK(emit_report(report, ReportFormat::Csv) ==
        "index,d,gcd,vM,vL,slope\n"
        "\"1,1,inf\",1 3 1,1,-1,-3,-3/1\n"
        "\"1,inf,1\",-1 -1 -3,1,1,3,-3/1\n"
        "\"0,0,inf\",-1 -2 -2,1,-4,2,1/2\n"
        "\"0,inf,0\",1 2 2,1,4,-2,1/2\n");
}

TEST_CASE("empty report renders headers only") {
  ScanReport empty;
  CHECK(emit_report(empty, ReportFormat::Csv) == "index,d,gcd,vM,vL,slope\n");
  std::string md = emit_report(empty, ReportFormat::Markdown);
  CHECK(md.find("none") != std::string::npos);
}

TEST_CASE("chart positions are 1-based in the json report") {
  ScanReport report = run_pipeline(fixture_path("m006.json"));
  std::string json = emit_report(report, ReportFormat::Json);
  // Internal chart 1 for index (1,1,inf) renders as a_2, i.e. "chart": 2.
  CHECK(json.find("\"chart\": 2") != std::string::npos);
  ScanReport back = parse_report_json(json);
  REQUIRE(back.certified[0].chart.has_value());
  CHECK(*back.certified[0].chart == 1);
}

TEST_CASE("gluing files load with sniffed format and stem names") {
  GluingSystem from_snap = load_gluing_file(fixture_path("m006.snap"));
  CHECK(from_snap.name == "m006");  // no name line: falls back to the stem
  GluingSystem from_json = load_gluing_file(fixture_path("m006.json"));
  CHECK(from_snap.rows == from_json.rows);
  CHECK_THROWS_AS(load_gluing_file(fixture_path("does_not_exist.json")), IoError);
}

TEST_CASE("cli maps failures to distinct exit codes") {
  CHECK(cli({"analyze", fixture_path("does_not_exist.json")}).code == 5);

  TempFile malformed("cli_malformed.json", "{oops");
  CHECK(cli({"analyze", malformed.path}).code == 2);

  TempFile invalid("cli_invalid.json",
                   R"({"name":"bad","n":2,"rows":[[1,0,0,0],[0,0,-1,0]],)"
                   R"("m":[1,0,0,0],"l":[0,0,0,1]})");
  CHECK(cli({"analyze", invalid.path}).code == 3);

  CHECK(cli({"analyze", fixture_path("m006.json"), "--max-indices", "10"}).code == 4);

  // Tracing at t = 0 fails inside the numeric kernel, not in the parser.
  CliRun run = cli({"trace", fixture_path("m009.json"), "--index", "inf,0,0", "--t", "0"});
  CHECK(run.code == 1);

  CHECK(cli({}).code != 0);
  CHECK(cli({"analyze"}).code != 0);
  CHECK(cli({"analyze", fixture_path("m006.json"), "--bogus"}).code != 0);
}

TEST_CASE("cli analyze emits the requested format") {
  CliRun json = cli({"analyze", fixture_path("m006.json"), "--format", "json"});
  CHECK(json.code == 0);
  CHECK(json.out.substr(0, 1) == "{");
  CHECK(json.out.find("\"name\": \"m006\"") != std::string::npos);

  CliRun csv = cli({"analyze", fixture_path("m006.json"), "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("index,d,gcd,vM,vL,slope\n", 0) == 0);

  CliRun md = cli({"analyze", fixture_path("m006.json")});
  CHECK(md.code == 0);
  CHECK(md.out.find("# Ideal point scan: m006") != std::string::npos);
}

TEST_CASE("cli subcommands cover each pipeline stage") {
  CliRun indices = cli({"indices", fixture_path("m006.json"), "--format", "csv"});
  CHECK(indices.code == 0);
  CHECK(indices.out.rfind("index,class,d\n", 0) == 0);
  CHECK(indices.out.find("\"1,1,inf\",certified,\"1,3,1\"") != std::string::npos);

  CliRun cones = cli({"cones", fixture_path("m006.json"), "--index", "inf,0,0"});
  CHECK(cones.code == 0);
  CHECK(cones.out.find("rank: 1") != std::string::npos);
  CHECK(cones.out.find("(1,1,0)") != std::string::npos);

  CliRun infinity =
      cli({"infinity", fixture_path("m009.json"), "--index", "inf,0,0", "--chart", "3"});
  CHECK(infinity.code == 0);
  CHECK(infinity.out.find("chart: a_3 = 1") != std::string::npos);
  CHECK(infinity.out.find("(1/2, 0/1, 0/1)") != std::string::npos);
  CHECK(infinity.out.find("orbit representatives (2 = gcd)") != std::string::npos);

  CliRun trace =
      cli({"trace", fixture_path("m009.json"), "--index", "inf,0,0", "--t", "1e-3"});
  CHECK(trace.code == 0);
  CHECK(trace.out.find("converged: yes") != std::string::npos);
  CHECK(trace.out.find("transversality certificate d_chart != 0: yes") !=
        std::string::npos);
}

TEST_CASE("cli infinity reports count-only mode without signs") {
  // Same system as the m009 fixture with the sign column removed.
  GluingSystem sys = load_gluing_file(fixture_path("m009.json"));
  std::ostringstream text;
  for (const auto& row : sys.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) text << (i ? " " : "") << row[i];
    text << "\n";
  }
  text << "m:";
  for (long long x : sys.m) text << " " << x;
  text << "\nl:";
  for (long long x : sys.l) text << " " << x;
  text << "\n";
  TempFile unsigned_file("cli_unsigned.snap", text.str());

  CliRun run = cli({"infinity", unsigned_file.path, "--index", "inf,0,0"});
  CHECK(run.code == 0);
  CHECK(run.out.find("count-only mode: 2 ideal points") != std::string::npos);
}
