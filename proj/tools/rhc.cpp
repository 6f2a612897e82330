#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "rainbow/core.hpp"
#include "rainbow/experiments.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/params.hpp"
#include "rainbow/pipeline.hpp"
#include "rainbow/report_json.hpp"
#include "rainbow/sampler.hpp"

using namespace rainbow;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelFlags {
  int n = 1000;
  double eps = 0.3;
  double theta = 0.3;
  std::optional<double> p;
  std::optional<double> p1, p2, p3;
  std::optional<int> kappa;
  std::optional<int> L;
  std::vector<int> classes;

  void add(CLI::App* app) {
    app->add_option("--n", n, "number of vertices")->check(CLI::PositiveNumber);
    app->add_option("--eps", eps, "epsilon");
    app->add_option("--theta", theta, "theta");
    app->add_option("--p", p, "merged edge probability (uses eps = pn/ln n - 1)");
    app->add_option("--p1", p1, "explicit layer-1 arc probability");
    app->add_option("--p2", p2, "explicit layer-2 arc probability");
    app->add_option("--p3", p3, "explicit layer-3 arc probability");
    app->add_option("--kappa", kappa, "number of colors");
    app->add_option("--L", L, "segment length override");
    app->add_option("--classes", classes, "explicit |C1|,|C2|,|C3| (sum is kappa)")->delimiter(',')->expected(3);
  }

  ParamSet params() const {
    ParamSet ps;
    if (p) {
      ps = params_for_merged_p(n, *p, kappa.value_or(static_cast<int>(std::lround((1 + theta) * n))), L);
    } else {
      ps = derive_parameters(n, eps, theta, L);
    }
    ProbabilityOverride o;
    if (p1 || p2 || p3) {
      if (!(p1 && p2 && p3)) throw ConfigError("--p1, --p2 and --p3 must be given together");
      o.p = std::array<double, 3>{*p1, *p2, *p3};
    }
    if (kappa && !p) o.kappa = kappa;
    if (!classes.empty()) {
      o.class_size = std::array<int, 3>{classes[0], classes[1], classes[2]};
      o.kappa = classes[0] + classes[1] + classes[2];
    }
    if (o.p || o.kappa || o.class_size) ps = apply_override(ps, o);
    return ps;
  }
};

struct Output {
  std::string path;
  std::ofstream file;
  std::ostream& stream() {
    if (path.empty() || path == "-") return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw ConfigError("cannot open " + path + " for writing");
    }
    return file;
  }
  void close() {
    if (file.is_open()) {
      file.close();
      if (!file) throw ConfigError("write to " + path + " failed");
    }
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rhc: rainbow Hamilton cycles in randomly colored random graphs"};
  app.require_subcommand(1);

  ModelFlags model;
  uint64_t seed = 1;
  int jobs = 1;
  std::string format = "csv";
  Output out;

  // gen
  auto* gen = app.add_subcommand("gen", "sample G(n,p,kappa) through the layered model and write .cgr or .lay");
  model.add(gen);
  bool gen_layers = false;
  gen->add_option("--seed", seed);
  gen->add_option("--out", out.path, "output file (default stdout)");
  gen->add_flag("--layers", gen_layers, "write the three layers and coins (.lay) instead of the merged graph");
  gen->add_option("--jobs", jobs, "sampler threads")->check(CLI::PositiveNumber);

  // find
  auto* find = app.add_subcommand("find", "run the construction once and print the trial report as JSON");
  model.add(find);
  std::string lay_in;
  std::optional<double> threshold;
  std::optional<double> stop_below;
  std::optional<int> min_vertices;
  bool oracle_fallback = false, timings = false;
  PipelineOptions popt;
  find->add_option("--seed", seed);
  find->add_option("--out", out.path, "output file (default stdout)");
  find->add_option("--jobs", jobs, "sampler threads")->check(CLI::PositiveNumber);
  find->add_option("--lay", lay_in, "run on a stored sample instead of sampling");
  find->add_option("--threshold", threshold, "endpoint goodness threshold override");
  find->add_option("--stop-below", stop_below, "long path: stop once fewer untouched vertices remain");
  find->add_option("--min-path", min_vertices, "long path: vertices required for success");
  find->add_option("--cover-retries", popt.cover_retries);
  find->add_option("--path-retries", popt.long_path_retries);
  find->add_option("--linker-retries", popt.linker_retries);
  find->add_flag("--oracle-fallback", oracle_fallback, "use the exact oracle when n <= 12");
  find->add_flag("--timings", timings, "record stage timings (output no longer reproducible)");

  // oracle
  auto* orc = app.add_subcommand("oracle", "exact rainbow Hamiltonicity of a .cgr graph");
  std::string graph_in;
  long long budget = -1;
  orc->add_option("--in", graph_in, "input .cgr")->required();
  orc->add_option("--budget", budget, "search node budget (negative: unlimited)");
  orc->add_option("--out", out.path, "output file (default stdout)");

  // reduce
  auto* red = app.add_subcommand("reduce", "convert .cgr to .h3 or .h3 back to .cgr");
  std::string red_in;
  int red_n = 0, red_kappa = 0;
  red->add_option("--in", red_in, "input file (.cgr or .h3)")->required();
  red->add_option("--out", out.path, "output file (default stdout)");
  red->add_option("--n", red_n, "graph vertex count (for .h3 input)");
  red->add_option("--kappa", red_kappa, "color count (for .h3 input)");

  // mc
  auto* mc = app.add_subcommand("mc", std::string("Monte Carlo sweep; CSV columns: ") + kSweepCsvColumns +
                                          " (plus sec_<stage> with --timings)");
  std::vector<int> grid_n{1000};
  std::vector<double> grid_eps{0.3}, grid_theta{0.3}, grid_c, grid_f;
  int trials = 10;
  std::optional<double> time_budget;
  bool oracle_check = false;
  std::optional<double> p1, p2, p3;
  std::optional<int> kappa, L;
  for (auto* sc : {mc, app.add_subcommand("diag", "per-trial measurements against their asymptotic bounds at one cell")}) {
    sc->add_option("--n", grid_n, "vertex counts")->delimiter(',');
    sc->add_option("--eps", grid_eps, "epsilon values")->delimiter(',');
    sc->add_option("--theta", grid_theta, "theta values")->delimiter(',');
    sc->add_option("--pc", grid_c, "merged p as c ln n / n, values of c (replaces eps/theta)")->delimiter(',');
    sc->add_option("--kf", grid_f, "kappa as f n, values of f (with --pc)")->delimiter(',');
    sc->add_option("--p1", p1);
    sc->add_option("--p2", p2);
    sc->add_option("--p3", p3);
    sc->add_option("--kappa", kappa);
    sc->add_option("--L", L, "segment length override");
    sc->add_option("--seed", seed, "base seed");
    sc->add_option("--trials", trials)->check(CLI::PositiveNumber);
    sc->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sc->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sc->add_option("--out", out.path, "output file (default stdout)");
    sc->add_option("--threshold", threshold, "endpoint goodness threshold override");
    sc->add_option("--stop-below", stop_below);
    sc->add_option("--min-path", min_vertices);
    sc->add_flag("--timings", timings);
  }
  auto* diag = app.get_subcommand("diag");
  mc->add_option("--time-budget", time_budget, "seconds; trials not started by then are dropped and marked");
  mc->add_flag("--oracle-check", oracle_check, "compare with the exact oracle on cells with n <= 12");

  // tail
  auto* tail = app.add_subcommand("tail", "exact P(Bin(m,q) <= mq/9) against exp(-0.533 mq)");
  std::vector<long long> tail_m{100};
  double tail_q = 0.5;
  tail->add_option("--m", tail_m, "trial counts")->delimiter(',');
  tail->add_option("--q", tail_q, "success probability");
  tail->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  tail->add_option("--out", out.path);

  // coupling
  auto* cpl = app.add_subcommand("coupling", "empirical containment of E3 and F2 in D(r,q) for the Γ model");
  int c_r = 20, c_delta = 6, c_c1 = 0, c_L = 8, c_n = 2000, c_trials = 200;
  double c_f2 = 0.01;
  cpl->add_option("--r", c_r)->check(CLI::Range(3, 100000));
  cpl->add_option("--delta", c_delta)->check(CLI::Range(3, 1000));
  cpl->add_option("--c1", c_c1, "C1 size (default 12 r)");
  cpl->add_option("--f2", c_f2);
  cpl->add_option("--L", c_L);
  cpl->add_option("--n", c_n);
  cpl->add_option("--trials", c_trials)->check(CLI::PositiveNumber);
  cpl->add_option("--seed", seed);
  cpl->add_option("--out", out.path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (gen->parsed()) {
      popt.sampler = jobs > 1 ? Parallelism::OpenMP : Parallelism::Serial;
      if (jobs > 1) omp_set_num_threads(jobs);
      LayeredSample s = sample_layered(model.params(), RandomSource(seed, "sample"), popt.sampler);
      if (gen_layers)
        write_lay(out.stream(), s);
      else
        write_cgr(out.stream(), merge_to_colored_graph(s));
    } else if (find->parsed()) {
      popt.endpoint_threshold = threshold;
      popt.long_path.stop_below = stop_below;
      popt.long_path.min_vertices = min_vertices;
      popt.oracle_fallback = oracle_fallback;
      popt.timings = timings;
      popt.sampler = jobs > 1 ? Parallelism::OpenMP : Parallelism::Serial;
      if (jobs > 1) omp_set_num_threads(jobs);
      TrialReport rep;
      if (!lay_in.empty()) {
        std::istringstream in(read_file(lay_in));
        LayeredSample s = read_lay(in);
        rep = run_pipeline(s, seed, popt);
      } else {
        rep = find_rainbow_hamilton(model.params(), seed, popt);
      }
      out.stream() << dump(report_json(rep));
    } else if (orc->parsed()) {
      ColoredGraph g = load_cgr(graph_in);
      OracleResult r = exact_rainbow_hamilton(g, budget);
      nlohmann::ordered_json j;
      if (auto* c = std::get_if<HamiltonCycleCertificate>(&r)) {
        j["result"] = "found";
        j["certificate"] = {{"order", c->order}, {"colors", c->colors}};
      } else {
        j["result"] = std::holds_alternative<ProvenAbsent>(r) ? "proven-absent" : "budget-exhausted";
      }
      out.stream() << dump(j);
    } else if (red->parsed()) {
      if (ends_with(red_in, ".h3")) {
        std::istringstream in(read_file(red_in));
        Hypergraph3 h = read_h3(in);
        if (red_n <= 0 || red_kappa <= 0) throw ConfigError("--n and --kappa are required for .h3 input");
        auto g = hypergraph_to_graph(h, red_n, red_kappa);
        if (auto* bad = std::get_if<NotRepresentable>(&g))
          throw ConfigError("not representable: {" + std::to_string(bad->triple[0]) + "," +
                            std::to_string(bad->triple[1]) + "," + std::to_string(bad->triple[2]) + "} " + bad->reason);
        write_cgr(out.stream(), std::get<ColoredGraph>(g));
      } else {
        write_h3(out.stream(), graph_to_hypergraph(load_cgr(red_in)));
      }
    } else if (mc->parsed() || diag->parsed()) {
      SweepConfig cfg;
      cfg.n = grid_n;
      if (!grid_c.empty()) {
        cfg.mode = CellMode::MergedP;
        cfg.a = grid_c;
        cfg.b = grid_f.empty() ? std::vector<double>{1.5} : grid_f;
      } else {
        cfg.a = grid_eps;
        cfg.b = grid_theta;
      }
      if (p1 || p2 || p3) {
        if (!(p1 && p2 && p3)) throw ConfigError("--p1, --p2 and --p3 must be given together");
        cfg.p_override = std::array<double, 3>{*p1, *p2, *p3};
      }
      cfg.kappa_override = kappa;
      cfg.L_override = L;
      cfg.trials = trials;
      cfg.base_seed = seed;
      cfg.jobs = jobs;
      cfg.time_budget_seconds = time_budget;
      cfg.oracle_crosscheck = oracle_check;
      cfg.pipeline.endpoint_threshold = threshold;
      cfg.pipeline.long_path.stop_below = stop_below;
      cfg.pipeline.long_path.min_vertices = min_vertices;
      cfg.pipeline.timings = timings;
      if (mc->parsed()) {
        SweepResult r = monte_carlo(cfg);
        if (format == "json")
          write_sweep_json(out.stream(), r, timings);
        else
          write_sweep_csv(out.stream(), r, timings);
      } else {
        DiagResult r = diagnostics_run(DiagConfig{cfg});
        if (format == "json")
          write_diag_json(out.stream(), r);
        else
          write_diag_csv(out.stream(), r);
      }
    } else if (tail->parsed()) {
      std::ostream& os = out.stream();
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      if (format == "csv") os << "m,q,mq,k,exact,log_exact,bound,log_bound,holds,in_scope\n";
      for (long long m : tail_m) {
        TailCheck t = binomial_tail_check(m, tail_q);
        if (format == "csv") {
          char buf[256];
          std::snprintf(buf, sizeof buf, "%lld,%.10g,%.10g,%lld,%.17g,%.17g,%.17g,%.17g,%d,%d\n", t.m, t.q,
                        static_cast<double>(t.m) * t.q, t.k, t.exact, t.log_exact, t.bound, t.log_bound, t.holds ? 1 : 0,
                        t.in_scope ? 1 : 0);
          os << buf;
        } else {
          arr.push_back({{"m", t.m}, {"q", t.q}, {"k", t.k}, {"exact", t.exact}, {"log_exact", t.log_exact},
                         {"bound", t.bound}, {"log_bound", t.log_bound}, {"holds", t.holds}, {"in_scope", t.in_scope}});
        }
      }
      auto start = tail_scope_start(tail_q, tail_m);
      if (format == "csv") {
        os << "# bound holds from mq = " << (start ? std::to_string(*start) : std::string("never")) << " on this sweep\n";
      } else {
        arr.push_back({{"scope_start_mq", start ? nlohmann::ordered_json(*start) : nlohmann::ordered_json(nullptr)}});
        os << arr.dump(2) << '\n';
      }
    } else if (cpl->parsed()) {
      CouplingStats st = coupling_diagnostic(c_r, c_delta, c_c1 > 0 ? c_c1 : 12 * c_r, c_f2, c_L, c_n, c_trials, seed);
      nlohmann::ordered_json j{{"r", st.r},
                               {"q", st.q},
                               {"trials_with_selection", st.trials},
                               {"max_arc_marginal", st.max_arc_marginal},
                               {"mean_conflicts", st.mean_conflicts},
                               {"containment_rate", st.containment_rate},
                               {"marginal_dominated", st.marginal_dominated}};
      out.stream() << dump(j);
    }
    out.close();
  } catch (const ParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 3;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::runtime_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
