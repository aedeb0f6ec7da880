// monochrome: command-line front end for the mono library.
//
// Exit codes: 0 success, 1 usage error, 2 capability error, 3 verification
// failure.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "mono/error.hpp"
#include "mono/experiment.hpp"
#include "mono/optimizer.hpp"
#include "mono/pattern.hpp"
#include "mono/random_models.hpp"
#include "mono/subgraph.hpp"
#include "mono/surrogate.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kCapability = 2;
constexpr int kVerification = 3;

struct Globals {
  std::string pattern;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw mono::DomainError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mono::DomainError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

mono::Pattern need_pattern(const Globals& g) {
  if (g.pattern.empty()) throw mono::DomainError("--pattern is required for this subcommand");
  return mono::load_pattern(g.pattern);
}

double fgraph_q(const mono::Pattern& p, int n, double c) {
  const double q = std::pow(c, p.s()) * std::pow(static_cast<double>(n), 1 - p.r());
  if (q > 1.0) throw mono::DomainError("q = c^s n^(1-r) = " + mono::format_double(q) + " exceeds 1");
  return q;
}

int cmd_check_balance(const Globals& g) {
  const auto p = need_pattern(g);
  const auto rep = mono::is_strictly_1_balanced(p);
  Output out(g.out);
  auto& os = out.stream();
  os << "r " << p.r() << "\ns " << p.s() << "\naut " << p.aut_count() << "\nd1 " << mono::to_string(p.d1())
     << "\nlabelled_copies " << mono::LabeledCopySet(p).count() << "\nstrictly_1_balanced "
     << (rep.strictly_balanced ? "yes" : "no") << '\n';
  if (rep.witness) {
    os << "witness_vertices";
    for (int v : rep.witness->vertices) os << ' ' << v;
    os << "\nwitness_edges";
    for (const auto& [u, v] : rep.witness->edges) os << ' ' << u << '-' << v;
    os << "\nwitness_d1 " << mono::to_string(rep.witness->d1) << '\n';
  }
  return 0;
}

int cmd_count_copies(const Globals& g, int n, double p, const std::string& host_path) {
  const auto pattern = need_pattern(g);
  std::optional<mono::HostGraph> host;
  if (!host_path.empty()) {
    // Host file: "n m" then m lines "u v".
    std::istringstream in(read_file(host_path));
    int hn = 0;
    std::size_t m = 0;
    if (!(in >> hn >> m)) throw mono::ParseError(1, "expected 'n m'");
    mono::EdgeSet edges;
    for (std::size_t i = 0; i < m; ++i) {
      int u = 0;
      int v = 0;
      if (!(in >> u >> v)) throw mono::ParseError(i + 2, "expected 'u v'");
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    host.emplace(hn, std::move(edges));
  } else if (p >= 1.0) {
    host.emplace(mono::HostGraph::complete(n));
  } else {
    host.emplace(mono::sample_gnp(n, p, mono::Seed{g.seed, 0}));
  }
  const auto copies = mono::enumerate_copies(*host, pattern);
  Output out(g.out);
  out.stream() << "n " << host->n() << "\nhost_edges " << host->edges().size() << "\ncopies " << copies.size()
               << '\n';
  return 0;
}

int cmd_sample(const Globals& g, int n, double c, double q_opt, const std::string& dump, const std::string& load,
               bool gnp) {
  const auto pattern = need_pattern(g);
  const auto copies = std::make_shared<const mono::LabeledCopySet>(pattern);
  Output out(g.out);
  auto& os = out.stream();
  if (!load.empty()) {
    const auto h = mono::parse_hypergraph(read_file(load), copies);
    os << "n " << h.n() << "\nhyperedges " << h.size() << '\n';
    return 0;
  }
  if (gnp) {
    const double p = c * std::pow(static_cast<double>(n), -1.0 / mono::to_double(pattern.d1()));
    if (p > 1.0) throw mono::DomainError("p = c n^(-1/d1) exceeds 1");
    const auto host = mono::sample_gnp(n, p, mono::Seed{g.seed, 0});
    const auto found = mono::enumerate_copies(host, copies);
    os << "model gnp\nn " << n << "\np " << mono::format_double(p) << "\nhost_edges " << host.edges().size()
       << "\ncopies " << found.size() << '\n';
    if (!dump.empty()) {
      std::ofstream f(dump);
      f << mono::serialize(found.as_hypergraph());
    }
    return 0;
  }
  const double q = q_opt >= 0.0 ? q_opt : fgraph_q(pattern, n, c);
  const auto h = mono::sample_fgraph(copies, n, q, mono::Seed{g.seed, 0});
  os << "model fgraph\nn " << n << "\nq " << mono::format_double(q) << "\nexpected "
     << mono::format_double(static_cast<double>(mono::potential_copies(*copies, n)) * q) << "\nhyperedges "
     << h.size() << '\n';
  if (!dump.empty()) {
    std::ofstream f(dump);
    if (!f) throw mono::DomainError("cannot write '" + dump + "'");
    f << mono::serialize(h);
  }
  return 0;
}

struct MinimizeArgs {
  int n = 0;
  double c = 1.0;
  std::string method = "anneal";
  bool balanced = false;
  int restarts = 16;
  std::int64_t steps = 0;
  int runs = 1;
  std::string load;
};

int cmd_minimize(const Globals& g, const MinimizeArgs& a) {
  const auto pattern = need_pattern(g);
  const auto copies = std::make_shared<const mono::LabeledCopySet>(pattern);
  if (a.method != "exact" && a.method != "anneal") throw mono::DomainError("--method must be exact or anneal");
  // Refuse before any output so a capability failure leaves no partial CSV.
  if (a.method == "exact" && a.load.empty() && a.n > mono::kMaxExactVertices)
    throw mono::CapabilityError("exact minimisation limited to n <= " + std::to_string(mono::kMaxExactVertices) +
                                " (got " + std::to_string(a.n) + ")");
  Output out(g.out);
  auto& os = out.stream();
  os << "run_id,method,n,c,seed,min_mono,edges,certified,wall_ms\n";
  for (int run = 0; run < a.runs; ++run) {
    const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(run);
    std::optional<mono::FHypergraph> h;
    if (!a.load.empty()) {
      h.emplace(mono::parse_hypergraph(read_file(a.load), copies));
    } else {
      if (a.n < pattern.r()) throw mono::DomainError("--n must be at least r");
      h.emplace(mono::sample_fgraph(copies, a.n, fgraph_q(pattern, a.n, a.c), mono::cell_seed(a.n, a.c, seed).child(1)));
    }
    const mono::HyperInstance inst(*h);
    std::optional<mono::MagnetizationBand> band;
    if (a.balanced) band = mono::MagnetizationBand::balanced(inst.n());
    mono::OptResult res;
    if (a.method == "exact") {
      res = mono::minimize_exact(inst, band);
    } else {
      mono::AnnealConfig cfg;
      cfg.restarts = a.restarts;
      cfg.steps_per_restart = a.steps;
      cfg.seed = mono::cell_seed(inst.n(), a.c, seed).child(2);
      cfg.threads = g.threads;
      res = mono::minimize_anneal(inst, cfg, band);
    }
    os << run << ',' << mono::to_string(res.method) << ',' << inst.n() << ',' << mono::format_double(a.c) << ','
       << seed << ',' << res.best_value << ',' << inst.size() << ',' << (res.certified ? "true" : "false") << ','
       << mono::format_double(res.wall_time.count()) << '\n';
  }
  return 0;
}

struct SurrogateArgs {
  int n = 0;
  double c = 1.0;
  int fields = 64;
  double h0 = 0.1;
  std::string mode = "exact";
  bool antithetic = true;
};

int cmd_surrogate(const Globals& g, const SurrogateArgs& a) {
  const auto pattern = need_pattern(g);
  mono::VnConfig cfg;
  cfg.num_fields = a.fields;
  cfg.h0 = a.h0;
  cfg.antithetic = a.antithetic;
  cfg.seed = mono::Seed{g.seed, 0};
  cfg.threads = g.threads;
  if (a.mode == "exact") cfg.search.mode = mono::SearchMode::exact;
  else if (a.mode == "anneal") cfg.search.mode = mono::SearchMode::anneal;
  else throw mono::DomainError("--mode must be exact or anneal");
  const auto res = mono::t_alpha_and_vn(pattern, a.n, a.c, cfg);

  Output out(g.out);
  auto& os = out.stream();
  os << "field_seed,bucket_h,alpha,T_alpha,objective,vn_running_mean\n";
  for (std::size_t i = 0; i < res.fields.size(); ++i)
    for (const auto& b : res.fields[i].buckets)
      os << res.fields[i].field_seed << ',' << mono::format_double(mono::to_double(b.h)) << ','
         << mono::format_double(b.alpha) << ',' << mono::format_double(b.t_alpha) << ','
         << mono::format_double(b.objective) << ',' << mono::format_double(res.running_mean[i]) << '\n';
  std::ostream& summary = out.to_file() ? std::cout : std::cerr;
  summary << "V_n " << mono::format_double(res.vn) << "\nkappa " << mono::format_double(res.constants.kappa)
          << "\npredictor_m (leading-order) " << mono::format_double(mono::predictor_m(pattern, a.c))
          << "\nfitted |alpha_win| sqrt(d) " << mono::format_double(res.fitted_alpha_constant) << '\n';
  return 0;
}

int cmd_estimate(const Globals& g, const std::string& config_path, bool no_timing) {
  auto cfg = mono::load_run_config(config_path);
  if (!g.pattern.empty()) cfg.pattern_path = g.pattern;
  if (cfg.pattern_path.empty()) throw mono::DomainError("no pattern given (config key 'pattern' or --pattern)");
  if (g.threads != 1) cfg.threads = g.threads;
  if (no_timing) cfg.record_timing = false;
  const auto pattern = mono::load_pattern(cfg.pattern_path);
  const auto rows = mono::estimate_m(pattern, cfg);
  Output out(g.out.empty() ? cfg.out_path : g.out);
  mono::write_estimate_csv(out.stream(), rows);
  return 0;
}

int cmd_report(const Globals& g, const std::string& in_path) {
  const auto rows = mono::parse_estimate_csv(read_file(in_path));
  const auto rep = mono::convergence_report(rows);
  Output out(g.out);
  mono::write_report(out.stream(), rep);
  return 0;
}

int cmd_verify(const Globals& g, bool inject_fault) {
  mono::VerifyOptions opts;
  if (g.seed != 0) opts.seed = mono::Seed{g.seed, 0};
  opts.inject_fault = inject_fault;
  opts.threads = g.threads;
  const auto rep = mono::verify_suite(opts);
  Output out(g.out);
  mono::write_verify_report(out.stream(), rep);
  return rep.exact_passed() ? 0 : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monochromatic subgraph minimisation in random F-graphs and its Gaussian surrogate"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--pattern", g.pattern, "Pattern file ('r s' then s lines 'u v')");
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--out", g.out, "Output file (default: stdout)");

  auto* balance = app.add_subcommand("check-balance", "Density, automorphisms and strict 1-balance of the pattern");

  auto* count = app.add_subcommand("count-copies", "Count copies of the pattern in a host graph");
  int count_n = 0;
  double count_p = 1.0;
  std::string host_path;
  count->add_option("--n", count_n, "Vertices of a sampled host");
  count->add_option("--p", count_p, "Edge probability of the sampled host (1 = complete graph)");
  count->add_option("--host", host_path, "Host edge list ('n m' then m lines 'u v')");

  auto* sample = app.add_subcommand("sample", "Sample an F-graph (or G(n, p) copies)");
  int sample_n = 0;
  double sample_c = 1.0;
  double sample_q = -1.0;
  std::string dump;
  std::string load;
  bool gnp = false;
  sample->add_option("--n", sample_n, "Vertices");
  sample->add_option("--c", sample_c, "Density constant: q = c^s n^(1-r)");
  sample->add_option("--q", sample_q, "Copy probability (overrides --c)");
  sample->add_flag("--gnp", gnp, "Sample G(n, c n^(-1/d1)) and enumerate copies instead");
  sample->add_option("--dump", dump, "Write the sample to this file");
  sample->add_option("--load", load, "Read a sample instead of drawing one");

  auto* minimize = app.add_subcommand("minimize", "Minimise the monochromatic copy count of a sampled F-graph");
  MinimizeArgs margs;
  minimize->add_option("--n", margs.n, "Vertices");
  minimize->add_option("--c", margs.c, "Density constant");
  minimize->add_option("--method", margs.method, "exact or anneal")->check(CLI::IsMember({"exact", "anneal"}));
  minimize->add_flag("--balanced", margs.balanced, "Restrict to balanced bipartitions");
  minimize->add_option("--restarts", margs.restarts, "Annealing restarts");
  minimize->add_option("--steps", margs.steps, "Annealing steps per restart (0 = 200 n)");
  minimize->add_option("--runs", margs.runs, "Independent instances (seeds seed, seed+1, ...)");
  minimize->add_option("--load", margs.load, "Minimise a dumped sample instead");

  auto* surrogate = app.add_subcommand("surrogate", "Per-bucket T_alpha and the Monte Carlo estimate of V_n");
  SurrogateArgs sargs;
  surrogate->add_option("--n", sargs.n, "Vertices")->required();
  surrogate->add_option("--c", sargs.c, "Density constant");
  surrogate->add_option("--fields", sargs.fields, "Gaussian fields");
  surrogate->add_option("--h0", sargs.h0, "Largest |magnetisation| searched");
  surrogate->add_option("--mode", sargs.mode, "exact or anneal")->check(CLI::IsMember({"exact", "anneal"}));
  surrogate->add_flag("!--no-antithetic", sargs.antithetic, "Draw every field independently");

  auto* estimate = app.add_subcommand("estimate-m", "Sweep (n, c, seed) cells from a run config");
  std::string config_path;
  bool no_timing = false;
  estimate->add_option("--config", config_path, "Run config ('key = value' lines)")->required();
  estimate->add_flag("--no-timing", no_timing, "Write wall_ms = 0 so reruns are byte-identical");

  auto* report = app.add_subcommand("report", "Convergence summary of an estimate-m CSV");
  std::string in_path;
  report->add_option("--in", in_path, "estimate-m CSV")->required();

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  bool inject_fault = false;
  verify->add_flag("--inject-fault", inject_fault, "Corrupt one Gaussian entry in the covariance check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*balance) return cmd_check_balance(g);
    if (*count) return cmd_count_copies(g, count_n, count_p, host_path);
    if (*sample) return cmd_sample(g, sample_n, sample_c, sample_q, dump, load, gnp);
    if (*minimize) return cmd_minimize(g, margs);
    if (*surrogate) return cmd_surrogate(g, sargs);
    if (*estimate) return cmd_estimate(g, config_path, no_timing);
    if (*report) return cmd_report(g, in_path);
    if (*verify) return cmd_verify(g, inject_fault);
  } catch (const mono::CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << '\n';
    return kCapability;
  } catch (const mono::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const mono::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
