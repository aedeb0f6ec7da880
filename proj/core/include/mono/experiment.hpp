#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mono/optimizer.hpp"
#include "mono/pattern.hpp"

namespace mono {

enum class Model { fgraph, gnp };
std::string to_string(Model m);

// Sweep description, read from "key = value" lines; grids are comma lists
// and integer lists also accept "a..b" ranges. '#' starts a comment.
//
//   pattern = data/patterns/k3.txt
//   model = fgraph            # or gnp
//   n = 500, 1000
//   c = 0.3, 1, 2, 3
//   seeds = 0..9
//   method = anneal           # or exact
//   restarts = 16
//   steps = 0                 # 0: 200 n per restart
//   cooling = 0.999
//   threads = 1               # 0: all cores
//   gnp_max_n = 200
//   record_timing = true      # false writes wall_ms = 0
//   out = results.csv
struct RunConfig {
  std::string pattern_path;
  Model model = Model::fgraph;
  std::vector<int> n_grid;
  std::vector<double> c_grid;
  std::vector<std::uint64_t> seeds;
  Method method = Method::anneal;
  int restarts = 16;
  std::int64_t steps = 0;
  double cooling = 0.999;
  unsigned threads = 1;
  int gnp_max_n = 200;
  bool record_timing = true;
  std::string out_path;

  // Throws DomainError on empty grids, non-positive c, or n < r.
  void validate(int r) const;
};

RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::string& path);

struct EstimateRecord {
  int n = 0;
  double c = 0.0;
  std::uint64_t seed = 0;
  Model model = Model::fgraph;
  Method method = Method::anneal;
  std::int64_t min_mono = 0;
  std::int64_t edges = 0;
  double min_mono_per_n = 0.0;
  double predictor_m = 0.0;
  bool certified = false;
  double wall_ms = 0.0;
  // "ok", or "capability: <reason>" when the cell could not be run.
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

// Seed of the instance behind one (n, c, seed) cell.
Seed cell_seed(int n, double c, std::uint64_t seed);

// One record per (n, c, seed) in grid order. A cell that exceeds a
// capability limit is recorded with its reason and the sweep continues.
std::vector<EstimateRecord> estimate_m(const Pattern& pattern, const RunConfig& cfg);

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

void write_estimate_csv(std::ostream& os, const std::vector<EstimateRecord>& rows);
std::string estimate_csv(const std::vector<EstimateRecord>& rows);
// Throws ParseError (with line number) on malformed input.
std::vector<EstimateRecord> parse_estimate_csv(std::string_view text);

struct NSummary {
  int n = 0;
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // across seeds
};

struct CSummary {
  double c = 0.0;
  bool certified = false;
  double predictor_m = 0.0;
  std::vector<NSummary> by_n;  // increasing n
  double mean = 0.0;           // over every record of the group
  double std = 0.0;
  double slope_inv_n = 0.0;    // least-squares slope of per-n means against 1/n
  double intercept = 0.0;      // extrapolation to 1/n = 0
  double spread_of_means = 0.0;
};

struct ConvergenceReport {
  // Certified and uncertified rows form separate groups and are never mixed.
  std::vector<CSummary> groups;
  std::vector<std::string> anomalies;
  std::size_t skipped = 0;  // rows whose status is not "ok"
};

// Throws DomainError on empty input or fewer than two distinct n values.
ConvergenceReport convergence_report(const std::vector<EstimateRecord>& rows);
void write_report(std::ostream& os, const ConvergenceReport& report);

enum class CheckKind { exact, statistical };

struct CheckResult {
  std::string name;
  CheckKind kind = CheckKind::exact;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  Seed seed{20240607, 0};
  // Scale one entry of every Gaussian field in the covariance check so the
  // Monte Carlo estimate drifts away from the exact value.
  bool inject_fault = false;
  unsigned threads = 1;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  std::size_t count(CheckKind k) const;
  std::size_t failures(CheckKind k) const;
  bool exact_passed() const { return failures(CheckKind::exact) == 0; }
};

VerifyReport verify_suite(const VerifyOptions& opts = {});
void write_verify_report(std::ostream& os, const VerifyReport& report);

}  // namespace mono
