#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idealscan/degeneration.hpp"
#include "idealscan/infinity.hpp"
#include "idealscan/valuation.hpp"

namespace idealscan {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One certified ideal-point family: the index, its certificate vector,
/// the exact point count gcd(d), peripheral valuations/slope, and (when
/// solving is enabled and signs are present) the solved points at infinity
/// as orbit representatives in the chosen chart.
struct IdealPointRecord {
  DegenerationIndex index;
  DegenerationVector d;
  int orientation = 0;
  BigInt count;
  SlopeRecord slopes;
  std::optional<std::size_t> chart;  // set when solutions were computed
  std::optional<std::vector<UnitRootVector>> solutions;  // orbit representatives
  std::optional<BranchTrace> trace;
};

struct CandidateRecord {
  DegenerationIndex index;
  DegenerationVector d;
  std::vector<ConeGenerator> generators;
};

struct PipelineOptions {
  std::uint64_t max_indices = 43046721;  // 3^16
  bool solve = true;
  std::optional<double> trace_t;
};

struct ScanReport {
  std::string name;
  int n = 0;
  PipelineOptions config;
  std::vector<IdealPointRecord> certified;
  std::vector<CandidateRecord> candidates;
  std::uint64_t rejected = 0;
  std::uint64_t total = 0;
  double elapsed_ms = 0;  // rendered in markdown only, never in JSON/CSV
};

enum class ReportFormat { Json, Csv, Markdown };

/// Reads a gluing-system file (JSON or line-oriented text, sniffed by the
/// leading character), validates it, scans all degeneration indices and
/// assembles the full report. Throws IoError / ParseError /
/// ValidationError / CapExceeded.
ScanReport run_pipeline(const std::string& path, const PipelineOptions& options = {});

/// Same pipeline on an already-parsed system (used by tests and the CLI).
ScanReport run_pipeline_on(const GluingSystem& sys, const PipelineOptions& options = {});

/// Deterministic rendering. JSON is the canonical machine format and is
/// byte-stable for a fixed report; CSV flattens one row per certified
/// index; markdown is the human summary (the only format showing timing).
std::string emit_report(const ScanReport& report, ReportFormat format);

/// Parses the JSON produced by emit_report back into a ScanReport.
ScanReport parse_report_json(const std::string& text);

/// File loading shared by CLI subcommands; sniffs the format.
GluingSystem load_gluing_file(const std::string& path);

}  // namespace idealscan
