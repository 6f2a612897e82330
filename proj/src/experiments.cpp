#include "rainbow/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <new>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "rainbow/dangerous_sets.hpp"
#include "rainbow/linker.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/random.hpp"
#include "rainbow/sampler.hpp"

namespace rainbow {

using nlohmann::ordered_json;

void SweepConfig::validate() const {
  using K = ParameterError::Kind;
  if (n.empty() || a.empty() || b.empty()) throw ParameterError(K::Range, "sweep grid is empty");
  if (trials < 1) throw ParameterError(K::Range, "trials must be at least 1");
  if (jobs < 1) throw ParameterError(K::Range, "jobs must be at least 1");
}

std::vector<Cell> grid(const SweepConfig& cfg) {
  std::vector<Cell> out;
  for (int n : cfg.n)
    for (double a : cfg.a)
      for (double b : cfg.b) out.push_back({n, a, b});
  return out;
}

ParamSet cell_params(const SweepConfig& cfg, const Cell& c) {
  ParamSet ps;
  if (cfg.mode == CellMode::Derived) {
    ps = derive_parameters(c.n, c.a, c.b, cfg.L_override);
  } else {
    const double p = c.a * std::log(static_cast<double>(c.n)) / c.n;
    ps = params_for_merged_p(c.n, p, static_cast<int>(std::lround(c.b * c.n)), cfg.L_override);
  }
  if (cfg.p_override || cfg.kappa_override) ps = apply_override(ps, {cfg.p_override, cfg.kappa_override, std::nullopt});
  return ps;
}

uint64_t trial_seed(uint64_t base, const Cell& c, int trial) {
  uint64_t cell = hash_combine(static_cast<uint64_t>(c.n), std::bit_cast<uint64_t>(c.a));
  cell = hash_combine(cell, std::bit_cast<uint64_t>(c.b));
  return splitmix64(hash_combine(hash_combine(base, cell), static_cast<uint64_t>(trial)));
}

namespace {

struct TrialOutcome {
  bool done = false;
  bool success = false;
  int fail_stage = -1;
  int oracle = -1;  // -1 unchecked, 0 absent or unknown, 1 exists
  TrialDiagnostics diag;
  std::array<double, kStageCount> seconds{};
};

TrialOutcome one_trial(const SweepConfig& cfg, const ParamSet& ps, uint64_t seed) {
  TrialOutcome o;
  TrialReport rep;
  if (cfg.oracle_crosscheck && ps.n <= 12) {
    LayeredSample s = sample_layered(ps, RandomSource(seed, "sample"), cfg.pipeline.sampler);
    rep = run_pipeline(s, seed, cfg.pipeline);
    OracleResult r = exact_rainbow_hamilton(merge_to_colored_graph(s));
    o.oracle = std::holds_alternative<HamiltonCycleCertificate>(r) ? 1 : 0;
  } else {
    rep = find_rainbow_hamilton(ps, seed, cfg.pipeline);
  }
  o.done = true;
  o.success = rep.success();
  if (rep.failure) o.fail_stage = static_cast<int>(rep.failure->stage);
  o.diag = rep.diag;
  for (int i = 0; i < kStageCount; ++i) o.seconds[i] = rep.stages[i].seconds;
  return o;
}

}  // namespace

SweepResult monte_carlo(const SweepConfig& cfg) {
  cfg.validate();
  const std::vector<Cell> cells = grid(cfg);
  std::vector<ParamSet> params;
  for (const Cell& c : cells) params.push_back(cell_params(cfg, c));

  const long long tasks = static_cast<long long>(cells.size()) * cfg.trials;
  std::vector<TrialOutcome> out(static_cast<size_t>(tasks));
  std::atomic<bool> stop{false};
  std::string stop_reason;
  std::exception_ptr error;
  const auto t0 = std::chrono::steady_clock::now();

#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.jobs)
  for (long long t = 0; t < tasks; ++t) {
    if (stop.load()) continue;
    if (cfg.time_budget_seconds &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > *cfg.time_budget_seconds) {
#pragma omp critical(rainbow_sweep)
      if (!stop.exchange(true)) stop_reason = "time budget exhausted";
      continue;
    }
    const size_t ci = static_cast<size_t>(t / cfg.trials);
    const int trial = static_cast<int>(t % cfg.trials);
    try {
      out[static_cast<size_t>(t)] = one_trial(cfg, params[ci], trial_seed(cfg.base_seed, cells[ci], trial));
    } catch (const std::bad_alloc&) {
#pragma omp critical(rainbow_sweep)
      if (!stop.exchange(true)) stop_reason = "out of memory";
    } catch (...) {
#pragma omp critical(rainbow_sweep)
      {
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  }
  if (error) std::rethrow_exception(error);

  SweepResult res;
  res.truncated = stop.load();
  res.truncation_reason = stop_reason;
  for (size_t ci = 0; ci < cells.size(); ++ci) {
    SweepRow row;
    row.cell = cells[ci];
    row.params = params[ci];
    row.trials = cfg.trials;
    for (int t = 0; t < cfg.trials; ++t) {
      const TrialOutcome& o = out[ci * static_cast<size_t>(cfg.trials) + static_cast<size_t>(t)];
      if (!o.done) continue;
      ++row.completed;
      row.successes += o.success ? 1 : 0;
      if (o.fail_stage >= 0) ++row.failures[o.fail_stage];
      if (o.oracle >= 0) {
        ++row.oracle_checked;
        row.oracle_exists += o.oracle;
      }
      row.mean_s0 += o.diag.s0;
      row.mean_s += o.diag.s;
      row.mean_s00 += o.diag.s00;
      row.mean_red += o.diag.red_count;
      row.mean_path += o.diag.path_length;
      row.mean_bad_step1 += o.diag.bad_step1;
      row.mean_bad_step4 += o.diag.bad_step4;
      row.mean_merges += o.diag.merges;
      row.mean_segments += o.diag.segments_final;
      for (int i = 0; i < kStageCount; ++i) row.mean_seconds[i] += o.seconds[i];
    }
    if (row.completed) {
      const double k = row.completed;
      for (double* x : {&row.mean_s0, &row.mean_s, &row.mean_s00, &row.mean_red, &row.mean_path, &row.mean_bad_step1,
                        &row.mean_bad_step4, &row.mean_merges, &row.mean_segments})
        *x /= k;
      for (double& x : row.mean_seconds) x /= k;
    }
    res.rows.push_back(row);
  }
  return res;
}

const char* const kSweepCsvColumns =
    "n,a,b,p1,p2,p3,p_merged,kappa,L,trials,completed,successes,success_fraction,"
    "fail_sample,fail_s_sets,fail_cover,fail_long_path,fail_segments,fail_linker,fail_oracle,"
    "oracle_checked,oracle_exists,mean_S0,mean_S,mean_S00,mean_red,mean_path,"
    "mean_bad_step1,mean_bad_step4,mean_merges,mean_segments";

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

ordered_json row_json(const SweepRow& r, bool timings) {
  ordered_json j;
  j["n"] = r.cell.n;
  j["a"] = r.cell.a;
  j["b"] = r.cell.b;
  j["p"] = r.params.p;
  j["p_merged"] = r.params.p_merged;
  j["kappa"] = r.params.kappa;
  j["L"] = r.params.L_effective;
  j["trials"] = r.trials;
  j["completed"] = r.completed;
  j["successes"] = r.successes;
  j["success_fraction"] = r.success_fraction();
  ordered_json f;
  for (int i = 0; i < kStageCount; ++i) f[to_string(static_cast<Stage>(i))] = r.failures[i];
  j["failures"] = f;
  j["oracle_checked"] = r.oracle_checked;
  j["oracle_exists"] = r.oracle_exists;
  j["mean"] = {{"S0", r.mean_s0},           {"S", r.mean_s},
               {"S00", r.mean_s00},         {"red", r.mean_red},
               {"path", r.mean_path},       {"bad_step1", r.mean_bad_step1},
               {"bad_step4", r.mean_bad_step4}, {"merges", r.mean_merges},
               {"segments", r.mean_segments}};
  if (timings) {
    ordered_json s;
    for (int i = 0; i < kStageCount; ++i) s[to_string(static_cast<Stage>(i))] = r.mean_seconds[i];
    j["mean_seconds"] = s;
  }
  return j;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& r, bool timings) {
  out << kSweepCsvColumns;
  if (timings)
    for (int i = 0; i < kStageCount; ++i) out << ",sec_" << to_string(static_cast<Stage>(i));
  out << '\n';
  for (const SweepRow& row : r.rows) {
    out << row.cell.n << ',' << num(row.cell.a) << ',' << num(row.cell.b);
    for (double p : row.params.p) out << ',' << num(p);
    out << ',' << num(row.params.p_merged) << ',' << row.params.kappa << ',' << row.params.L_effective << ','
        << row.trials << ',' << row.completed << ',' << row.successes << ',' << num(row.success_fraction());
    for (int f : row.failures) out << ',' << f;
    out << ',' << row.oracle_checked << ',' << row.oracle_exists;
    for (double x : {row.mean_s0, row.mean_s, row.mean_s00, row.mean_red, row.mean_path, row.mean_bad_step1,
                     row.mean_bad_step4, row.mean_merges, row.mean_segments})
      out << ',' << num(x);
    if (timings)
      for (double x : row.mean_seconds) out << ',' << num(x);
    out << '\n';
  }
  if (r.truncated) out << "# truncated: " << r.truncation_reason << '\n';
}

void write_sweep_json(std::ostream& out, const SweepResult& r, bool timings) {
  ordered_json arr = ordered_json::array();
  for (const SweepRow& row : r.rows) arr.push_back(row_json(row, timings));
  if (r.truncated) arr.push_back({{"truncated", true}, {"reason", r.truncation_reason}});
  out << arr.dump(2) << '\n';
}

SparseCheck sparse_grown_sets(const LayeredSample& s, const std::vector<Vertex>& s0,
                              const std::vector<Vertex>& absorbed) {
  const int n = s.n();
  std::vector<uint8_t> in_set(static_cast<size_t>(n) + 1, 0);
  for (Vertex v : s0) in_set[v] = 1;
  size_t e = arcs_spanned(s, in_set);
  size_t size = s0.size();
  SparseCheck c;
  auto check = [&] {
    if (size == 0) return;
    ++c.sets_checked;
    const double ratio = static_cast<double>(e) / static_cast<double>(size);
    if (ratio > c.worst_ratio) {
      c.worst_ratio = ratio;
      c.worst_size = static_cast<int>(size);
    }
    if (e >= 2 * size) c.within = false;
  };
  check();
  for (Vertex v : absorbed) {
    std::unordered_set<uint64_t> pairs;
    for (int i = 0; i < 3; ++i) {
      for (const Arc& a : s.cls[i].out(v))
        if (in_set[a.to]) pairs.insert(arc_key(v, a.to));
      for (const Arc& a : s.cls[i].in(v))
        if (in_set[a.to]) pairs.insert(arc_key(a.to, v));
    }
    in_set[v] = 1;
    e += pairs.size();
    ++size;
    check();
  }
  return c;
}

std::vector<Measurement> measure_sample(const LayeredSample& s, const TrialReport* report) {
  const int n = s.n();
  const double ln = std::log(static_cast<double>(n));
  const double gamma = s.params.gamma;
  ExposureLedger ledger(false);
  S0Sets s0 = compute_S0(s, ledger);
  DangerousSets ds = grow_S(s, s0, 4, ledger);
  ColoredGraph g = merge_to_colored_graph(s);
  int maxdeg = 0;
  for (Vertex v = 1; v <= n; ++v) maxdeg = std::max(maxdeg, g.degree(v));

  std::vector<Measurement> m;
  const double n1g = std::pow(static_cast<double>(n), 1.0 - gamma);
  m.push_back({"S0", static_cast<double>(ds.s0.size()), n1g / 3.0, ds.s0.size() <= n1g / 3.0});
  m.push_back({"S", static_cast<double>(ds.s.size()), n1g, ds.s.size() <= n1g});
  m.push_back({"max_degree", static_cast<double>(maxdeg), 5.0 * ln, maxdeg <= 5.0 * ln});
  SparseCheck sp = sparse_grown_sets(s, ds.s0, ds.absorbed);
  m.push_back({"sparse_grown_sets", sp.worst_ratio, 2.0, sp.within});
  const double b00 = std::pow(static_cast<double>(n), 0.48);
  m.push_back({"S00", static_cast<double>(ds.s00.size()), b00, ds.s00.size() < b00});
  auto dist = min_pairwise_distance(s.g[1], ds.s00);
  m.push_back({"S00_distance", dist ? static_cast<double>(*dist) : -1.0, 5.0, !dist || *dist >= 5});
  const int nb = max_neighbors_in(s.g[1], ds.in_s);
  m.push_back({"G2_nbrs_in_S", static_cast<double>(nb), 2.0 / gamma, nb <= 2.0 / gamma});

  const double red_bound = n * std::exp(-std::cbrt(ln) / 300.0);
  const double bad_bound = n * std::exp(-std::sqrt(ln));
  Measurement red{"red_vertices", 0, red_bound, true, false};
  Measurement b1{"bad_step1", 0, bad_bound, true, false};
  Measurement b4{"bad_step4", 0, bad_bound, true, false};
  if (report) {
    if (report->stage(Stage::LongPath).status != StageStatus::Skipped) {
      red.value = report->diag.red_count;
      red.within = red.value <= red_bound;
      red.reached = true;
    }
    const StageOutcome& seg = report->stage(Stage::Segments);
    if (seg.status != StageStatus::Skipped && report->diag.segments_initial > 0) {
      b1.value = report->diag.bad_step1;
      b1.within = b1.value <= bad_bound;
      b1.reached = true;
      if (seg.status == StageStatus::Ok || seg.reason.rfind("merge", 0) == 0) {
        b4.value = report->diag.bad_step4;
        b4.within = b4.value <= bad_bound;
        b4.reached = true;
      }
    }
  }
  m.push_back(red);
  m.push_back(b1);
  m.push_back(b4);
  return m;
}

DiagResult diagnostics_run(const DiagConfig& cfg) {
  cfg.sweep.validate();
  const Cell cell = grid(cfg.sweep).front();
  DiagResult res;
  res.params = cell_params(cfg.sweep, cell);
  res.trials.resize(static_cast<size_t>(cfg.sweep.trials));
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.sweep.jobs)
  for (int t = 0; t < cfg.sweep.trials; ++t) {
    try {
      const uint64_t seed = trial_seed(cfg.sweep.base_seed, cell, t);
      LayeredSample s = sample_layered(res.params, RandomSource(seed, "sample"), cfg.sweep.pipeline.sampler);
      TrialReport rep = run_pipeline(s, seed, cfg.sweep.pipeline);
      res.trials[static_cast<size_t>(t)] = {t, seed, measure_sample(s, &rep)};
    } catch (...) {
#pragma omp critical(rainbow_diag)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  for (const auto& tr : res.trials) {
    for (size_t i = 0; i < tr.m.size(); ++i) {
      if (res.summary.size() <= i) res.summary.push_back({tr.m[i].name});
      if (!tr.m[i].reached) continue;
      ++res.summary[i].reached;
      res.summary[i].violated += tr.m[i].within ? 0 : 1;
    }
  }
  return res;
}

void write_diag_csv(std::ostream& out, const DiagResult& r) {
  out << "trial,seed,measure,value,bound,within,reached\n";
  for (const auto& t : r.trials)
    for (const auto& m : t.m)
      out << t.trial << ',' << t.seed << ',' << m.name << ',' << num(m.value) << ',' << num(m.bound) << ','
          << (m.within ? 1 : 0) << ',' << (m.reached ? 1 : 0) << '\n';
  out << "# summary: measure,reached,violated,violation_rate\n";
  for (const auto& s : r.summary)
    out << "# " << s.name << ',' << s.reached << ',' << s.violated << ',' << num(s.violation_rate()) << '\n';
}

void write_diag_json(std::ostream& out, const DiagResult& r) {
  ordered_json j;
  ordered_json trials = ordered_json::array();
  for (const auto& t : r.trials) {
    ordered_json ms = ordered_json::array();
    for (const auto& m : t.m)
      ms.push_back({{"measure", m.name}, {"value", m.value}, {"bound", m.bound}, {"within", m.within},
                    {"reached", m.reached}});
    trials.push_back({{"trial", t.trial}, {"seed", t.seed}, {"measurements", ms}});
  }
  ordered_json summary = ordered_json::array();
  for (const auto& s : r.summary)
    summary.push_back({{"measure", s.name}, {"reached", s.reached}, {"violated", s.violated},
                       {"violation_rate", s.violation_rate()}});
  j["n"] = r.params.n;
  j["trials"] = trials;
  j["summary"] = summary;
  out << j.dump(2) << '\n';
}

TailCheck binomial_tail_check(long long m, double q) {
  if (m < 1) throw ParameterError(ParameterError::Kind::Range, "m must be a positive integer");
  if (!(q > 0.0 && q < 1.0)) throw ParameterError(ParameterError::Kind::Range, "q must lie in (0, 1)");
  TailCheck t;
  t.m = m;
  t.q = q;
  const double mq = static_cast<double>(m) * q;
  t.k = static_cast<long long>(std::floor(mq / 9.0));
  // log pmf(0) = m log(1-q); pmf(i+1)/pmf(i) = (m-i)/(i+1) * q/(1-q)
  const double log_odds = std::log(q) - std::log1p(-q);
  double lp = static_cast<double>(m) * std::log1p(-q);
  double hi = lp;
  std::vector<double> terms{lp};
  for (long long i = 0; i < t.k; ++i) {
    lp += std::log(static_cast<double>(m - i)) - std::log(static_cast<double>(i + 1)) + log_odds;
    terms.push_back(lp);
    hi = std::max(hi, lp);
  }
  double sum = 0;
  for (double x : terms) sum += std::exp(x - hi);
  t.log_exact = hi + std::log(sum);
  t.exact = std::exp(t.log_exact);
  t.log_bound = -0.533 * mq;
  t.bound = std::exp(t.log_bound);
  t.holds = t.log_exact <= t.log_bound;
  t.in_scope = t.k >= 1;
  return t;
}

std::optional<double> tail_scope_start(double q, const std::vector<long long>& m_values) {
  std::optional<double> start;
  for (long long m : m_values) {
    TailCheck t = binomial_tail_check(m, q);
    if (!t.holds)
      start.reset();
    else if (!start)
      start = static_cast<double>(m) * q;
  }
  return start;
}

CouplingStats coupling_diagnostic(int r, int delta, int c1, double f2, int L, int n, int trials, uint64_t seed) {
  CouplingStats st{};
  st.r = r;
  st.q = std::min(1.0, 130.0 * L * std::log(static_cast<double>(n)) / n);
  st.trials = 0;
  std::vector<int> hits(static_cast<size_t>(r) * r, 0);
  int contained = 0;
  long long conflicts = 0;
  const RandomSource root(seed, "coupling");
  const std::vector<int> deg(static_cast<size_t>(r), delta);
  for (int t = 0; t < trials; ++t) {
    RandomSource rng = root.split(static_cast<uint64_t>(t));
    GammaGraph g = sample_gamma_model(r, deg, deg, c1, rng.split("gamma"));
    auto sel = select_rainbow_3in3out(g);
    if (!std::holds_alternative<Selection>(sel)) continue;
    ++st.trials;
    const Selection& s = std::get<Selection>(sel);
    std::vector<uint8_t> selected(g.gens.size(), 0);
    for (int k = 0; k < g.r; ++k) {
      for (int i : s.out[k]) selected[i] = 1;
      for (int i : s.in[k]) selected[i] = 1;
    }
    std::vector<uint8_t> conflict(static_cast<size_t>(r) * r, 0);
    const RandomSource f2rng = rng.split("f2");
    for (size_t i = 0; i < g.gens.size(); ++i) {
      const auto& gen = g.gens[i];
      const size_t a = static_cast<size_t>(gen.from()) * r + static_cast<size_t>(gen.to());
      if (!selected[i]) conflict[a] = 1;  // E3
      if (f2rng.split(arc_key(gen.from() + 1, gen.to() + 1)).bernoulli(f2)) conflict[a] = 1;  // F2
    }
    RandomSource f3 = rng.split("f3");
    bool inside = true;
    for (size_t a = 0; a < conflict.size(); ++a) {
      if (a / r == a % r) continue;
      const bool in_f3 = f3.bernoulli(st.q);
      if (!conflict[a]) continue;
      ++hits[a];
      ++conflicts;
      if (!in_f3) inside = false;
    }
    contained += inside ? 1 : 0;
  }
  if (st.trials) {
    st.max_arc_marginal = static_cast<double>(*std::max_element(hits.begin(), hits.end())) / st.trials;
    st.mean_conflicts = static_cast<double>(conflicts) / st.trials;
    st.containment_rate = static_cast<double>(contained) / st.trials;
  }
  st.marginal_dominated = st.max_arc_marginal <= st.q;
  return st;
}

}  // namespace rainbow
