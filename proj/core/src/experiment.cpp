#include "mono/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "mono/combinatorics.hpp"
#include "mono/error.hpp"
#include "mono/parallel.hpp"
#include "mono/random_models.hpp"
#include "mono/subgraph.hpp"
#include "mono/surrogate.hpp"

namespace mono {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

template <typename T>
T number_or_throw(std::string_view s, std::size_t line, const char* what) {
  T v{};
  if (!parse_number(s, v)) throw ParseError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

template <typename T>
std::vector<T> parse_int_list(std::string_view s, std::size_t line, const char* what) {
  std::vector<T> out;
  for (auto item : split(s, ',')) {
    const auto dots = item.find("..");
    if (dots != std::string_view::npos) {
      const T a = number_or_throw<T>(item.substr(0, dots), line, what);
      const T b = number_or_throw<T>(item.substr(dots + 2), line, what);
      if (b < a) throw ParseError(line, std::string("empty range in ") + what);
      for (T v = a; v <= b; ++v) out.push_back(v);
    } else {
      out.push_back(number_or_throw<T>(item, line, what));
    }
  }
  return out;
}

bool parse_bool(std::string_view s, std::size_t line) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ParseError(line, "bad boolean '" + std::string(s) + "'");
}

std::string csv_safe(std::string s) {
  for (auto& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return s;
}

double mean_of(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::string to_string(Model m) { return m == Model::fgraph ? "fgraph" : "gnp"; }

void RunConfig::validate(int r) const {
  if (n_grid.empty()) throw DomainError("run config: n grid is empty");
  if (c_grid.empty()) throw DomainError("run config: c grid is empty");
  if (seeds.empty()) throw DomainError("run config: seed list is empty");
  for (int n : n_grid)
    if (n < r) throw DomainError("run config: n = " + std::to_string(n) + " is below r = " + std::to_string(r));
  for (double c : c_grid)
    if (!(c > 0.0)) throw DomainError("run config: c must be positive");
  if (method != Method::exact && method != Method::anneal)
    throw DomainError("run config: method must be exact or anneal");
  if (restarts < 1) throw DomainError("run config: restarts must be positive");
  if (!(cooling > 0.0 && cooling <= 1.0)) throw DomainError("run config: cooling must lie in (0, 1]");
}

RunConfig parse_run_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    start = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (value.empty()) throw ParseError(line_no, "missing value for '" + std::string(key) + "'");
    if (key == "pattern") {
      cfg.pattern_path = std::string(value);
    } else if (key == "model") {
      if (value == "fgraph") cfg.model = Model::fgraph;
      else if (value == "gnp") cfg.model = Model::gnp;
      else throw ParseError(line_no, "model must be fgraph or gnp");
    } else if (key == "n") {
      cfg.n_grid = parse_int_list<int>(value, line_no, "n");
    } else if (key == "c") {
      cfg.c_grid.clear();
      for (auto item : split(value, ',')) cfg.c_grid.push_back(number_or_throw<double>(item, line_no, "c"));
    } else if (key == "seeds") {
      cfg.seeds = parse_int_list<std::uint64_t>(value, line_no, "seeds");
    } else if (key == "method") {
      if (value == "exact") cfg.method = Method::exact;
      else if (value == "anneal") cfg.method = Method::anneal;
      else throw ParseError(line_no, "method must be exact or anneal");
    } else if (key == "restarts") {
      cfg.restarts = number_or_throw<int>(value, line_no, "restarts");
    } else if (key == "steps") {
      cfg.steps = number_or_throw<std::int64_t>(value, line_no, "steps");
    } else if (key == "cooling") {
      cfg.cooling = number_or_throw<double>(value, line_no, "cooling");
    } else if (key == "threads") {
      cfg.threads = number_or_throw<unsigned>(value, line_no, "threads");
    } else if (key == "gnp_max_n") {
      cfg.gnp_max_n = number_or_throw<int>(value, line_no, "gnp_max_n");
    } else if (key == "record_timing") {
      cfg.record_timing = parse_bool(value, line_no);
    } else if (key == "out") {
      cfg.out_path = std::string(value);
    } else {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open run config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

Seed cell_seed(int n, double c, std::uint64_t seed) {
  std::uint64_t cbits = 0;
  std::memcpy(&cbits, &c, sizeof cbits);
  return Seed{seed, 0}.child(static_cast<std::uint64_t>(n)).child(cbits);
}

std::vector<EstimateRecord> estimate_m(const Pattern& pattern, const RunConfig& cfg) {
  cfg.validate(pattern.r());
  const auto copies = std::make_shared<const LabeledCopySet>(pattern);
  struct Cell {
    int n;
    double c;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int n : cfg.n_grid)
    for (double c : cfg.c_grid)
      for (auto s : cfg.seeds) cells.push_back({n, c, s});

  std::vector<EstimateRecord> out(cells.size());
  parallel_for(cells.size(), cfg.threads, [&](std::size_t i) {
    const auto& cell = cells[i];
    EstimateRecord rec;
    rec.n = cell.n;
    rec.c = cell.c;
    rec.seed = cell.seed;
    rec.model = cfg.model;
    rec.method = cfg.method;
    rec.predictor_m = predictor_m(pattern, cell.c);
    const Seed base = cell_seed(cell.n, cell.c, cell.seed);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      std::optional<HyperInstance> inst;
      if (cfg.model == Model::fgraph) {
        const double q = std::pow(cell.c, pattern.s()) * std::pow(static_cast<double>(cell.n), 1 - pattern.r());
        if (q > 1.0) throw DomainError("q = c^s n^(1-r) exceeds 1");
        inst.emplace(sample_fgraph(copies, cell.n, q, base.child(1)));
      } else {
        if (cell.n > cfg.gnp_max_n)
          throw CapabilityError("gnp model limited to n <= " + std::to_string(cfg.gnp_max_n));
        const double p = cell.c * std::pow(static_cast<double>(cell.n), -1.0 / to_double(pattern.d1()));
        if (p > 1.0) throw DomainError("p = c n^(-1/d1) exceeds 1");
        inst.emplace(enumerate_copies(sample_gnp(cell.n, p, base.child(1)), copies));
      }
      rec.edges = static_cast<std::int64_t>(inst->size());
      OptResult res;
      if (cfg.method == Method::exact) {
        res = minimize_exact(*inst);
      } else {
        AnnealConfig acfg;
        acfg.restarts = cfg.restarts;
        acfg.steps_per_restart = cfg.steps;
        acfg.cooling_ratio = cfg.cooling;
        acfg.seed = base.child(2);
        acfg.threads = 1;
        res = minimize_anneal(*inst, acfg);
      }
      rec.min_mono = res.best_value;
      rec.min_mono_per_n = static_cast<double>(res.best_value) / cell.n;
      rec.certified = res.certified;
    } catch (const CapabilityError& e) {
      rec.status = csv_safe(std::string("capability: ") + e.what());
    } catch (const DomainError& e) {
      rec.status = csv_safe(std::string("domain: ") + e.what());
    }
    if (cfg.record_timing)
      rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out[i] = std::move(rec);
  });
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

namespace {
constexpr const char* kEstimateHeader =
    "n,c,seed,model,method,min_mono,edges,min_mono_per_n,predictor_m,certified,wall_ms,status";
}

void write_estimate_csv(std::ostream& os, const std::vector<EstimateRecord>& rows) {
  os << kEstimateHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << format_double(r.c) << ',' << r.seed << ',' << to_string(r.model) << ','
       << to_string(r.method) << ',';
    if (r.ok()) os << r.min_mono;
    os << ',' << r.edges << ',';
    if (r.ok()) os << format_double(r.min_mono_per_n);
    os << ',' << format_double(r.predictor_m) << ',' << (r.certified ? "true" : "false") << ','
       << format_double(r.wall_ms) << ',' << r.status << '\n';
  }
}

std::string estimate_csv(const std::vector<EstimateRecord>& rows) {
  std::ostringstream os;
  write_estimate_csv(os, rows);
  return os.str();
}

std::vector<EstimateRecord> parse_estimate_csv(std::string_view text) {
  std::vector<EstimateRecord> rows;
  std::map<std::string, std::size_t> col;
  std::size_t line_no = 0;
  std::size_t start = 0;
  const std::vector<std::string> required{"n", "c", "seed", "min_mono", "edges", "min_mono_per_n",
                                          "predictor_m", "certified", "wall_ms"};
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    const auto line = trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    start = (end == std::string_view::npos) ? text.size() : end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (col.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) col[std::string(fields[i])] = i;
      for (const auto& name : required)
        if (!col.count(name)) throw ParseError(line_no, "missing column '" + name + "'");
      continue;
    }
    if (fields.size() != col.size())
      throw ParseError(line_no, "expected " + std::to_string(col.size()) + " fields, got " +
                                    std::to_string(fields.size()));
    auto get = [&](const char* name) { return fields[col.at(name)]; };
    EstimateRecord r;
    r.n = number_or_throw<int>(get("n"), line_no, "n");
    r.c = number_or_throw<double>(get("c"), line_no, "c");
    r.seed = number_or_throw<std::uint64_t>(get("seed"), line_no, "seed");
    if (col.count("model")) {
      const auto m = get("model");
      if (m == "fgraph") r.model = Model::fgraph;
      else if (m == "gnp") r.model = Model::gnp;
      else throw ParseError(line_no, "bad model");
    }
    if (col.count("method")) {
      const auto m = get("method");
      if (m == "exact") r.method = Method::exact;
      else if (m == "anneal") r.method = Method::anneal;
      else if (m == "swap_anneal") r.method = Method::swap_anneal;
      else throw ParseError(line_no, "bad method");
    }
    if (col.count("status")) r.status = std::string(get("status"));
    if (r.ok()) {
      r.min_mono = number_or_throw<std::int64_t>(get("min_mono"), line_no, "min_mono");
      r.min_mono_per_n = number_or_throw<double>(get("min_mono_per_n"), line_no, "min_mono_per_n");
    }
    r.edges = number_or_throw<std::int64_t>(get("edges"), line_no, "edges");
    r.predictor_m = number_or_throw<double>(get("predictor_m"), line_no, "predictor_m");
    const auto cert = get("certified");
    if (cert == "true") r.certified = true;
    else if (cert == "false") r.certified = false;
    else throw ParseError(line_no, "certified must be true or false");
    r.wall_ms = number_or_throw<double>(get("wall_ms"), line_no, "wall_ms");
    if (r.ok() && r.min_mono > r.edges) throw ParseError(line_no, "min_mono exceeds edges");
    rows.push_back(std::move(r));
  }
  if (col.empty()) throw ParseError(line_no, "empty CSV");
  return rows;
}

ConvergenceReport convergence_report(const std::vector<EstimateRecord>& rows) {
  if (rows.empty()) throw DomainError("convergence report needs at least one record");
  ConvergenceReport rep;
  // (certified, c) -> n -> values
  std::map<std::pair<bool, double>, std::map<int, std::vector<double>>> groups;
  std::map<std::pair<bool, double>, double> predictors;
  std::set<int> distinct_n;
  for (const auto& r : rows) {
    if (!r.ok()) {
      ++rep.skipped;
      continue;
    }
    groups[{r.certified, r.c}][r.n].push_back(r.min_mono_per_n);
    predictors[{r.certified, r.c}] = r.predictor_m;
    distinct_n.insert(r.n);
  }
  if (distinct_n.size() < 2) throw DomainError("convergence report needs at least two n values");

  for (const auto& [key, by_n] : groups) {
    CSummary g;
    g.certified = key.first;
    g.c = key.second;
    g.predictor_m = predictors[key];
    std::vector<double> all;
    std::vector<double> means;
    std::vector<double> inv_n;
    for (const auto& [n, vals] : by_n) {
      NSummary s{n, vals.size(), mean_of(vals), sample_std(vals)};
      g.by_n.push_back(s);
      all.insert(all.end(), vals.begin(), vals.end());
      means.push_back(s.mean);
      inv_n.push_back(1.0 / n);
    }
    g.mean = mean_of(all);
    g.std = sample_std(all);
    g.spread_of_means = sample_std(means);
    if (means.size() >= 2) {
      const double mx = mean_of(inv_n);
      const double my = mean_of(means);
      double sxy = 0.0;
      double sxx = 0.0;
      for (std::size_t i = 0; i < means.size(); ++i) {
        sxy += (inv_n[i] - mx) * (means[i] - my);
        sxx += (inv_n[i] - mx) * (inv_n[i] - mx);
      }
      g.slope_inv_n = sxx > 0.0 ? sxy / sxx : 0.0;
      g.intercept = my - g.slope_inv_n * mx;
    } else {
      g.intercept = g.mean;
      rep.anomalies.push_back("c = " + format_double(g.c) + (g.certified ? " (certified)" : "") +
                              ": only one n value, no slope");
    }
    if (g.by_n.size() >= 2 && g.by_n.front().count > 1 && g.by_n.back().std > g.by_n.front().std)
      rep.anomalies.push_back("c = " + format_double(g.c) + (g.certified ? " (certified)" : "") +
                              ": seed dispersion grows from n = " + std::to_string(g.by_n.front().n) +
                              " to n = " + std::to_string(g.by_n.back().n));
    rep.groups.push_back(std::move(g));
  }
  // Within one certification class, the minimum per vertex should not fall
  // as c grows (more hyperedges never help).
  for (std::size_t i = 1; i < rep.groups.size(); ++i) {
    const auto& a = rep.groups[i - 1];
    const auto& b = rep.groups[i];
    if (a.certified == b.certified && b.mean < a.mean)
      rep.anomalies.push_back("non-monotone in c: mean " + format_double(b.mean) + " at c = " +
                              format_double(b.c) + " is below " + format_double(a.mean) + " at c = " +
                              format_double(a.c));
  }
  return rep;
}

void write_report(std::ostream& os, const ConvergenceReport& rep) {
  os << "certified,c,n,count,mean,std,predictor_m_leading_order\n";
  for (const auto& g : rep.groups)
    for (const auto& s : g.by_n)
      os << (g.certified ? "true" : "false") << ',' << format_double(g.c) << ',' << s.n << ',' << s.count << ','
         << format_double(s.mean) << ',' << format_double(s.std) << ',' << format_double(g.predictor_m) << '\n';
  os << "\ncertified,c,mean,std,slope_vs_inv_n,intercept,spread_of_n_means\n";
  for (const auto& g : rep.groups)
    os << (g.certified ? "true" : "false") << ',' << format_double(g.c) << ',' << format_double(g.mean) << ','
       << format_double(g.std) << ',' << format_double(g.slope_inv_n) << ',' << format_double(g.intercept) << ','
       << format_double(g.spread_of_means) << '\n';
  os << "\nskipped rows: " << rep.skipped << '\n';
  if (rep.anomalies.empty()) os << "anomalies: none\n";
  for (const auto& a : rep.anomalies) os << "anomaly: " << a << '\n';
  os << "note: certified=false rows are upper bounds from annealing; predictor is leading-order\n";
}

// ---------------------------------------------------------------------------
// verification suite

std::size_t VerifyReport::count(CheckKind k) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.kind == k; }));
}

std::size_t VerifyReport::failures(CheckKind k) const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(), [&](const CheckResult& c) { return c.kind == k && !c.passed; }));
}

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

// Calls fn(tuple) for every tuple in [0, n)^r.
template <typename Fn>
void for_each_tuple(int n, int r, Fn&& fn) {
  std::vector<int> t(static_cast<std::size_t>(r), 0);
  for (;;) {
    fn(std::span<const int>(t));
    int i = r - 1;
    while (i >= 0 && ++t[static_cast<std::size_t>(i)] == n) t[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
  }
}

SpinConfig random_spins(int n, Engine& eng) {
  std::vector<std::int8_t> s(static_cast<std::size_t>(n));
  for (auto& x : s) x = (eng() & 1U) ? 1 : -1;
  return SpinConfig(std::move(s));
}

SpinConfig balanced_spins(int n, Engine& eng) {
  std::vector<std::int8_t> s(static_cast<std::size_t>(n), -1);
  std::fill(s.begin(), s.begin() + n / 2, 1);
  std::shuffle(s.begin(), s.end(), eng);
  return SpinConfig(std::move(s));
}

std::vector<int> spins_of(const SpinConfig& s, std::span<const int> t) {
  std::vector<int> x(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) x[i] = s[t[i]];
  return x;
}

BigInt brute_covariance(const SpinConfig& x, const SpinConfig& y, int r) {
  BigInt sum = 0;
  for_each_tuple(x.n(), r, [&](std::span<const int> t) {
    sum += f_poly(spins_of(x, t)) * f_poly(spins_of(y, t));
  });
  return sum;
}

std::int64_t brute_min(const HyperInstance& h) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << h.n()); ++m)
    best = std::min(best, hamiltonian(h, SpinConfig::from_mask(h.n(), m)));
  return best;
}

std::vector<Pattern> fixture_patterns() {
  return {Pattern::complete(2),
          Pattern::complete(3),
          Pattern(3, {{0, 1}, {1, 2}}),
          Pattern(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}),
          Pattern(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}),
          Pattern::complete(4)};
}

struct Suite {
  VerifyReport report;
  void add(std::string name, CheckKind kind, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), kind, passed, std::move(detail)});
  }
  // A check that throws is a failed check, not an aborted suite.
  template <typename Fn>
  void run(const std::string& name, CheckKind kind, Fn&& fn) {
    try {
      std::string detail;
      const bool ok = fn(detail);
      add(name, kind, ok, detail);
    } catch (const std::exception& e) {
      add(name, kind, false, std::string("threw: ") + e.what());
    }
  }
};

}  // namespace

VerifyReport verify_suite(const VerifyOptions& opts) {
  Suite s;
  const Seed root = opts.seed;
  constexpr auto kExact = CheckKind::exact;
  constexpr auto kStat = CheckKind::statistical;

  s.run("f polynomial: subset definition equals closed form, r <= 6", kExact, [&](std::string& d) {
    std::size_t cases = 0;
    for (int r = 1; r <= 6; ++r)
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << r); ++m) {
        const auto x = SpinConfig::from_mask(r, m);
        std::vector<int> v(x.values().begin(), x.values().end());
        if (f_poly(v) != f_poly_closed(v)) {
          d = "mismatch at r = " + std::to_string(r);
          return false;
        }
        ++cases;
      }
    d = std::to_string(cases) + " inputs";
    return true;
  });

  s.run("f summed over all tuples: closed form in sum(sigma), n <= 6, r <= 4", kExact, [&](std::string& d) {
    std::size_t cases = 0;
    for (int n = 1; n <= 6; ++n)
      for (int r = 1; r <= 4; ++r)
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
          const auto sigma = SpinConfig::from_mask(n, m);
          std::int64_t direct = 0;
          for_each_tuple(n, r, [&](std::span<const int> t) { direct += f_poly(spins_of(sigma, t)); });
          if (Rational(direct) != f_tuple_sum(sigma, r)) {
            d = "mismatch at n = " + std::to_string(n) + ", r = " + std::to_string(r);
            return false;
          }
          ++cases;
        }
    d = std::to_string(cases) + " configurations";
    return true;
  });

  s.run("spin-form identity for H on random F-graphs (exact rationals)", kExact, [&](std::string& d) {
    Engine eng = make_engine(root.child(1));
    const auto patterns = fixture_patterns();
    int cases = 0;
    for (int i = 0; i < 120; ++i) {
      const auto& p = patterns[static_cast<std::size_t>(i) % patterns.size()];
      const int n = p.r() + static_cast<int>(eng() % static_cast<std::uint64_t>(10 - p.r() + 1));
      const auto h = sample_fgraph(p, n, 0.3, root.child(1).child(static_cast<std::uint64_t>(i)));
      const auto sigma = random_spins(n, eng);
      if (Rational(hamiltonian(h, sigma)) != spin_form_rhs(h, sigma)) {
        d = "mismatch on instance " + std::to_string(i);
        return false;
      }
      ++cases;
    }
    d = std::to_string(cases) + " instances";
    return true;
  });

  s.run("monochromatic count plus cut equals hyperedge count", kExact, [&](std::string& d) {
    Engine eng = make_engine(root.child(2));
    const auto p = Pattern::complete(3);
    for (int i = 0; i < 200; ++i) {
      const int n = 3 + static_cast<int>(eng() % 30);
      const HyperInstance h(sample_fgraph(p, n, 0.05, root.child(2).child(static_cast<std::uint64_t>(i))));
      const auto sigma = random_spins(n, eng);
      if (hamiltonian(h, sigma) + cut_value(h, sigma) != static_cast<std::int64_t>(h.size())) {
        d = "mismatch on case " + std::to_string(i);
        return false;
      }
    }
    d = "200 cases";
    return true;
  });

  s.run("Goodman minima: monochromatic triangles of edge 2-colourings of K_n, n = 5..8", kExact,
        [&](std::string& d) {
          bool ok = true;
          for (int n = 5; n <= 8; ++n) {
            // T(n) for n = 2u, 4u + 1, 4u + 3.
            std::int64_t t = 0;
            if (n % 2 == 0) {
              const std::int64_t u = n / 2;
              t = u * (u - 1) * (u - 2) / 3;
            } else if (n % 4 == 1) {
              const std::int64_t u = n / 4;
              t = 2 * u * (u - 1) * (4 * u + 1) / 3;
            } else {
              const std::int64_t u = n / 4;
              t = 2 * u * (u + 1) * (4 * u - 1) / 3;
            }
            const auto got = minimize_exact(edge_triangle_instance(n)).best_value;
            d += (n > 5 ? " " : "") + std::to_string(got) + "/" + std::to_string(t);
            ok = ok && got == t;
          }
          d = "minimum/T(n):" + d;
          return ok;
        });

  s.run("vertex bipartitions of K_n: triangle minimum C(ceil(n/2),3) + C(floor(n/2),3)", kExact,
        [&](std::string& d) {
          for (int n = 3; n <= 14; ++n) {
            const HyperInstance h(enumerate_copies(HostGraph::complete(n), Pattern::complete(3)));
            const auto expected = static_cast<std::int64_t>(binomial((n + 1) / 2, 3) + binomial(n / 2, 3));
            if (minimize_exact(h).best_value != expected) {
              d = "mismatch at n = " + std::to_string(n);
              return false;
            }
          }
          d = "n = 3..14";
          return true;
        });

  s.run("exact optimizer equals 2^n enumeration", kExact, [&](std::string& d) {
    const auto p = Pattern::complete(3);
    for (int i = 0; i < 12; ++i) {
      const int n = 6 + i % 7;
      const HyperInstance h(sample_fgraph(p, n, 0.15, root.child(3).child(static_cast<std::uint64_t>(i))));
      if (minimize_exact(h).best_value != brute_min(h)) {
        d = "mismatch on instance " + std::to_string(i);
        return false;
      }
    }
    d = "12 instances, n = 6..12";
    return true;
  });

  s.run("covariance closed form equals tuple summation", kExact, [&](std::string& d) {
    Engine eng = make_engine(root.child(4));
    for (int i = 0; i < 60; ++i) {
      const int n = 1 + static_cast<int>(eng() % 6);
      const int r = 2 + static_cast<int>(eng() % 3);
      const auto x = random_spins(n, eng);
      const auto y = random_spins(n, eng);
      if (exact_covariance(x, y, r) != brute_covariance(x, y, r)) {
        d = "mismatch on pair " + std::to_string(i);
        return false;
      }
    }
    d = "60 random pairs, n <= 6, r <= 4";
    return true;
  });

  s.run("covariance of balanced pairs equals n^r((1+l)^r + (1-l)^r - 2)/2", kExact, [&](std::string& d) {
    Engine eng = make_engine(root.child(5));
    for (int i = 0; i < 100; ++i) {
      const int n = 2 * (1 + static_cast<int>(eng() % 10));
      const int r = 2 + static_cast<int>(eng() % 5);
      const auto x = balanced_spins(n, eng);
      const auto y = balanced_spins(n, eng);
      int dot = 0;
      for (int v = 0; v < n; ++v) dot += x[v] * y[v];
      const Rational l(dot, n);
      const auto ur = static_cast<unsigned>(r);
      const Rational closed = Rational(pow(BigInt(n), ur)) * (rpow(1 + l, ur) + rpow(1 - l, ur) - 2) / 2;
      if (Rational(exact_covariance(x, y, r)) != closed) {
        d = "mismatch on pair " + std::to_string(i);
        return false;
      }
    }
    d = "100 balanced pairs";
    return true;
  });

  s.run("fast U evaluation equals term-by-term sum", kExact, [&](std::string& d) {
    Engine eng = make_engine(root.child(6));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const int r = 2 + static_cast<int>(eng() % 3);
      const int n = r + static_cast<int>(eng() % static_cast<std::uint64_t>(9 - r));
      const auto field = GaussianField::sample(n, r, root.child(6).child(static_cast<std::uint64_t>(i)));
      const auto sigma = random_spins(n, eng);
      const double fast = u_field(field, sigma);
      const double naive = u_field_naive(field, sigma);
      worst = std::max(worst, std::abs(fast - naive) / std::max(1.0, std::abs(naive)));
    }
    d = "worst relative gap " + format_double(worst);
    return worst <= 1e-10;
  });

  s.run("g^2 weighting over sorted tuples equals sum over all tuples", kExact, [&](std::string& d) {
    Engine eng = make_engine(root.child(7));
    double worst = 0.0;
    for (int n = 1; n <= 5; ++n)
      for (int r = 1; r <= 3; ++r) {
        std::map<std::vector<int>, double> table;
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double all = 0.0;
        for_each_tuple(n, r, [&](std::span<const int> t) {
          std::vector<int> key(t.begin(), t.end());
          std::sort(key.begin(), key.end());
          auto it = table.find(key);
          if (it == table.end()) it = table.emplace(key, u(eng)).first;
          all += it->second;
        });
        double weighted = 0.0;
        for (const auto& [key, h] : table) weighted += g_factor(key) * g_factor(key) * h;
        worst = std::max(worst, std::abs(all - weighted));
      }
    d = "worst gap " + format_double(worst);
    return worst <= 1e-12;
  });

  s.run("balanced pair counts: brute force and totals", kExact, [&](std::string& d) {
    for (int n : {4, 8}) {
      std::vector<SpinConfig> bal;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
        if (std::popcount(m) == n / 2) bal.push_back(SpinConfig::from_mask(n, m));
      std::map<int, std::uint64_t> by_y;
      for (const auto& a : bal)
        for (const auto& b : bal) {
          int dot = 0;
          for (int v = 0; v < n; ++v) dot += a[v] * b[v];
          ++by_y[dot / 4];
        }
      for (int y = -n / 4; y <= n / 4; ++y)
        if (balanced_pair_count(n, y) != BigInt(by_y[y])) {
          d = "mismatch at n = " + std::to_string(n) + ", y = " + std::to_string(y);
          return false;
        }
    }
    for (int n : {4, 8, 12}) {
      BigInt total = 0;
      for (int y = -n / 4; y <= n / 4; ++y) total += balanced_pair_count(n, y);
      const BigInt half = binomial_big(n, n / 2);
      if (total != half * half) {
        d = "total mismatch at n = " + std::to_string(n);
        return false;
      }
    }
    d = "n = 4, 8 brute force; totals for n = 4, 8, 12";
    return true;
  });

  s.run("Stirling log of pair counts within 1% at n >= 64", kExact, [&](std::string& d) {
    double worst = 0.0;
    for (int n = 64; n <= 256; n += 64)
      for (int y = -n / 4 + 1; y < n / 4; ++y) {
        const double exact = std::log(static_cast<double>(balanced_pair_count(n, y).convert_to<long double>()));
        const double approx = log_balanced_pair_count_stirling(n, y);
        worst = std::max(worst, std::abs(approx - exact) / exact);
      }
    d = "worst relative error " + format_double(worst);
    return worst <= 0.01;
  });

  s.run("Gaussian tail bounds sandwich a 50-digit tail", kExact, [&](std::string& d) {
    int checked = 0;
    for (int i = 0; i <= 30; ++i) {
      const double x = 0.5 + 0.25 * i;
      const Float50 tail = boost::math::erfc(Float50(x) / boost::multiprecision::sqrt(Float50(2))) / 2;
      const auto [lo, hi] = gauss_tail_bounds(x);
      if (Float50(hi) < tail || Float50(lo) > tail) {
        d = "violated at x = " + format_double(x);
        return false;
      }
      ++checked;
    }
    d = std::to_string(checked) + " grid points on [0.5, 8]";
    return true;
  });

  s.run("automorphism counts and labelled copies", kExact, [&](std::string& d) {
    // (pattern, aut) with aut from hand counts.
    const auto ps = fixture_patterns();
    const std::uint64_t aut[] = {2, 6, 2, 8, 4, 24};
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps[i].aut_count() != aut[i]) {
        d = "aut mismatch for pattern " + std::to_string(i);
        return false;
      }
      if (LabeledCopySet(ps[i]).count() * aut[i] != factorial(ps[i].r())) {
        d = "orbit mismatch for pattern " + std::to_string(i);
        return false;
      }
    }
    d = "6 patterns";
    return true;
  });

  s.run("strict 1-balance of reference patterns", kExact, [&](std::string& d) {
    const bool ok = is_strictly_1_balanced(Pattern::complete(3)).strictly_balanced &&
                    is_strictly_1_balanced(Pattern::complete(4)).strictly_balanced &&
                    is_strictly_1_balanced(Pattern(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})).strictly_balanced &&
                    !is_strictly_1_balanced(Pattern(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}})).strictly_balanced &&
                    !is_strictly_1_balanced(Pattern(3, {{0, 1}, {1, 2}})).strictly_balanced;
    d = "K3, K4, C4 balanced; triangle with pendant and P3 not";
    return ok;
  });

  s.run("coupling to K_r keeps one hyperedge per supporting r-set", kExact, [&](std::string& d) {
    const Pattern c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    for (int i = 0; i < 20; ++i) {
      const auto h = sample_fgraph(c4, 9, 0.05, root.child(8).child(static_cast<std::uint64_t>(i)));
      const auto k = couple_to_kr(h);
      std::set<std::vector<int>> supports;
      for (const auto& e : h.hyperedges()) supports.insert(e.vertices);
      if (k.size() != supports.size()) {
        d = "support count mismatch";
        return false;
      }
      for (const auto& e : k.hyperedges())
        if (!supports.count(e.vertices)) {
          d = "foreign support";
          return false;
        }
    }
    d = "20 C4-graphs on 9 vertices";
    return true;
  });

  s.run("predictor arithmetic for triangles at c = 2", kExact, [&](std::string& d) {
    const double expected = 1.0 / 3.0 + std::sqrt(2.0 * std::log(2.0) / 3.0);
    const double got = predictor_m(Pattern::complete(3), 2.0);
    d = "predictor " + format_double(got);
    return std::abs(got - expected) <= 1e-12;
  });

  // Statistical checks ------------------------------------------------------

  s.run("sampler: mean size of H_K3(10, 0.08) over 500 seeds", kStat, [&](std::string& d) {
    const auto copies = std::make_shared<const LabeledCopySet>(Pattern::complete(3));
    std::vector<double> sizes;
    for (int i = 0; i < 500; ++i)
      sizes.push_back(static_cast<double>(sample_fgraph(copies, 10, 0.08, root.child(9).child(i)).size()));
    const double m = mean_of(sizes);
    const double se = sample_std(sizes) / std::sqrt(500.0);
    d = "mean " + format_double(m) + ", target 9.6, se " + format_double(se);
    return std::abs(m - 9.6) <= 3 * se;
  });

  s.run("sampler: dense and sparse paths agree in mean", kStat, [&](std::string& d) {
    const auto copies = std::make_shared<const LabeledCopySet>(Pattern(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
    std::vector<double> a;
    std::vector<double> b;
    for (int i = 0; i < 300; ++i) {
      a.push_back(static_cast<double>(
          sample_fgraph(copies, 12, 0.02, root.child(10).child(i), SamplerPath::sparse).size()));
      b.push_back(static_cast<double>(
          sample_fgraph(copies, 12, 0.02, root.child(11).child(i), SamplerPath::dense).size()));
    }
    const double target = static_cast<double>(potential_copies(*copies, 12)) * 0.02;
    const double se = std::sqrt((sample_std(a) * sample_std(a) + sample_std(b) * sample_std(b)) / 300.0);
    d = "sparse " + format_double(mean_of(a)) + ", dense " + format_double(mean_of(b)) + ", expected " +
        format_double(target);
    return std::abs(mean_of(a) - mean_of(b)) <= 4 * se;
  });

  s.run("G(n, p): mean triangle count", kStat, [&](std::string& d) {
    const auto copies = std::make_shared<const LabeledCopySet>(Pattern::complete(3));
    std::vector<double> counts;
    for (int i = 0; i < 400; ++i)
      counts.push_back(static_cast<double>(enumerate_copies(sample_gnp(12, 0.4, root.child(12).child(i)), copies).size()));
    const double expected = static_cast<double>(binomial(12, 3)) * 0.4 * 0.4 * 0.4;
    const double se = sample_std(counts) / std::sqrt(400.0);
    d = "mean " + format_double(mean_of(counts)) + ", expected " + format_double(expected);
    return std::abs(mean_of(counts) - expected) <= 4 * se;
  });

  s.run("U covariance over 10^4 fields matches r! times exact covariance", kStat, [&](std::string& d) {
    const int n = 8;
    const int r = 3;
    const SpinConfig x(std::vector<std::int8_t>{1, 1, 1, 1, -1, -1, -1, -1});
    const SpinConfig y(std::vector<std::int8_t>{1, 1, 1, -1, 1, -1, -1, -1});
    const double target = static_cast<double>(factorial(r)) * exact_covariance(x, y, r).convert_to<double>();
    std::vector<int> fault;
    if (opts.inject_fault) {
      // The entry whose variance moves the covariance most; ties broken by
      // a seeded draw.
      double best = -1.0;
      std::vector<std::vector<int>> ties;
      for_each_multiset(n, r, [&](std::span<const int> t, std::size_t) {
        const double g = g_factor(t);
        const double score = std::abs(g * g * static_cast<double>(f_poly(spins_of(x, t)) * f_poly(spins_of(y, t))));
        if (score > best) {
          best = score;
          ties.clear();
        }
        if (score == best) ties.emplace_back(t.begin(), t.end());
      });
      Engine eng = make_engine(root.child(13).child(1));
      fault = ties[eng() % ties.size()];
    }
    const int fields = 10000;
    std::vector<double> prod(fields);
    parallel_for(static_cast<std::size_t>(fields), opts.threads, [&](std::size_t i) {
      auto field = GaussianField::sample(n, r, root.child(13).child(100 + i));
      if (!fault.empty()) field.set(fault, 3.0 * field.at(fault));
      const SupportWeights w(field);
      prod[i] = u_field(w, x) * u_field(w, y);
    });
    const double m = mean_of(prod);
    const double se = sample_std(prod) / std::sqrt(static_cast<double>(fields));
    d = "estimate " + format_double(m) + ", exact " + format_double(target) + ", se " + format_double(se);
    if (!fault.empty()) d += " (fault injected)";
    return std::abs(m - target) <= 4 * se;
  });

  s.run("Var W = 1/n for a balanced configuration", kStat, [&](std::string& d) {
    const int n = 8;
    const int r = 3;
    const SpinConfig x(std::vector<std::int8_t>{1, -1, 1, -1, 1, -1, 1, -1});
    const int fields = 10000;
    std::vector<double> w(fields);
    parallel_for(static_cast<std::size_t>(fields), opts.threads, [&](std::size_t i) {
      const auto field = GaussianField::sample(n, r, root.child(14).child(i));
      w[i] = w_norm(u_field(field, x), n, r);
    });
    double ss = 0.0;
    for (double v : w) ss += v * v;
    const double var = ss / fields;  // mean is known to be 0
    const double se = (1.0 / n) * std::sqrt(2.0 / fields);
    d = "variance " + format_double(var) + ", target " + format_double(1.0 / n);
    return std::abs(var - 1.0 / n) <= 3 * se;
  });

  s.run("Slepian bound dominates Monte Carlo joint tails", kStat, [&](std::string& d) {
    Engine eng = make_engine(root.child(15));
    std::normal_distribution<double> normal;
    const int pairs = 200000;
    for (double rho : {0.0, 0.5, 0.9})
      for (double u : {1.5, 2.5}) {
        int hits = 0;
        const double c = std::sqrt(1 - rho * rho);
        for (int i = 0; i < pairs; ++i) {
          const double z = normal(eng);
          const double zr = rho * z + c * normal(eng);
          hits += (z > u && zr > u);
        }
        const double p = static_cast<double>(hits) / pairs;
        if (slepian_joint_bound(rho, u) < p) {
          d = "violated at rho = " + format_double(rho) + ", u = " + format_double(u);
          return false;
        }
      }
    d = "6 (rho, u) pairs, 2e5 draws each";
    return true;
  });

  s.run("annealing reaches the exact minimum on small instances", kStat, [&](std::string& d) {
    const auto p = Pattern::complete(3);
    int equal = 0;
    int worse = 0;
    const int total = 20;
    for (int i = 0; i < total; ++i) {
      const HyperInstance h(sample_fgraph(p, 14, 0.08, root.child(16).child(i)));
      AnnealConfig cfg;
      cfg.seed = root.child(17).child(i);
      const auto a = minimize_anneal(h, cfg).best_value;
      const auto e = minimize_exact(h).best_value;
      equal += (a == e);
      worse += (a < e);
    }
    d = std::to_string(equal) + "/" + std::to_string(total) + " equal";
    return worse == 0 && equal * 10 >= total * 9;
  });

  s.run("max of U over balanced slice is symmetric under J -> -J", kStat, [&](std::string& d) {
    const int fields = 300;
    std::vector<double> diff(fields);
    parallel_for(static_cast<std::size_t>(fields), opts.threads, [&](std::size_t i) {
      const auto field = GaussianField::sample(8, 3, root.child(18).child(i));
      diff[i] = max_w_balanced(field, 0.0).front().max_w - max_w_balanced(field.negated(), 0.0).front().max_w;
    });
    const double se = sample_std(diff) / std::sqrt(static_cast<double>(fields));
    d = "mean difference " + format_double(mean_of(diff)) + ", se " + format_double(se);
    return std::abs(mean_of(diff)) <= 4 * se;
  });

  return s.report;
}

void write_verify_report(std::ostream& os, const VerifyReport& report) {
  for (const auto& c : report.checks)
    os << (c.passed ? "PASS" : (c.kind == CheckKind::exact ? "FAIL" : "FLAG")) << "  "
       << (c.kind == CheckKind::exact ? "exact      " : "statistical") << "  " << c.name << "  [" << c.detail
       << "]\n";
  os << "exact checks: " << report.count(CheckKind::exact) - report.failures(CheckKind::exact) << "/"
     << report.count(CheckKind::exact) << " passed; statistical checks: "
     << report.count(CheckKind::statistical) - report.failures(CheckKind::statistical) << "/"
     << report.count(CheckKind::statistical) << " passed\n";
}

}  // namespace mono
