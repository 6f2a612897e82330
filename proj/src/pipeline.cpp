#include "rainbow/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

#include "rainbow/cover.hpp"
#include "rainbow/dangerous_sets.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/segments.hpp"

namespace rainbow {

const char* to_string(Stage s) {
  switch (s) {
    case Stage::Sample: return "sample";
    case Stage::SSets: return "s-sets";
    case Stage::Cover: return "cover";
    case Stage::LongPath: return "long-path";
    case Stage::Segments: return "segments";
    case Stage::Linker: return "linker";
    case Stage::Oracle: return "oracle";
  }
  return "?";
}

const char* to_string(StageStatus s) {
  switch (s) {
    case StageStatus::Ok: return "ok";
    case StageStatus::Failed: return "failed";
    case StageStatus::Skipped: return "skipped";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

class Run {
 public:
  Run(const LayeredSample& s, uint64_t seed, const PipelineOptions& opt, ExposureLedger& ledger)
      : s_(s), opt_(opt), ledger_(ledger), root_(seed, "pipeline"), used_(s.params.kappa) {
    rep_.seed = seed;
    rep_.params = s.params;
    for (int i = 0; i < kStageCount; ++i) {
      StageOutcome o;
      o.stage = static_cast<Stage>(i);
      rep_.stages.push_back(o);
    }
    try {
      auto pc = check_theorem_preconditions(s.params.n, s.params.epsilon, s.params.theta);
      rep_.precondition_satisfied = pc.satisfied;
      rep_.precondition_bound = pc.bound;
    } catch (const ParameterError&) {
      rep_.precondition_satisfied = false;
    }
  }

  TrialReport finish() {
    rep_.diag.colors_used = used_.size();
    rep_.diag.exposures = ledger_.size();
    return std::move(rep_);
  }

  void mark(Stage st, StageStatus status, int attempts, Clock::time_point t0, std::string reason = {}) {
    StageOutcome& o = rep_.stages[static_cast<int>(st)];
    o.status = status;
    o.attempts = attempts;
    o.reason = reason;
    if (opt_.timings) o.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (status == StageStatus::Failed) rep_.failure = TrialFailure{st, std::move(reason)};
  }

  void run_oracle(Clock::time_point sample_t0) {
    rep_.oracle_mode = true;
    mark(Stage::Sample, StageStatus::Ok, 1, sample_t0);
    const auto t0 = Clock::now();
    ColoredGraph g = merge_to_colored_graph(s_);
    OracleResult r = exact_rainbow_hamilton(g, opt_.oracle_budget);
    if (auto* cert = std::get_if<HamiltonCycleCertificate>(&r)) {
      if (!verify_rainbow_hamilton(g, *cert).ok()) throw InternalInconsistency("oracle certificate fails verification");
      rep_.certificate = *cert;
      mark(Stage::Oracle, StageStatus::Ok, 1, t0);
    } else {
      mark(Stage::Oracle, StageStatus::Failed, 1, t0,
           std::holds_alternative<ProvenAbsent>(r) ? "proven-absent" : "budget-exhausted");
    }
  }

  void run_stages(Clock::time_point sample_t0) {
    mark(Stage::Sample, StageStatus::Ok, 1, sample_t0);
    const int n = s_.n();
    auto& d = rep_.diag;

    // S-sets
    auto t0 = Clock::now();
    ledger_.set_stage(2);
    S0Sets s0 = compute_S0(s_, ledger_);
    DangerousSets ds = grow_S(s_, s0, 4, ledger_);
    d.s0 = static_cast<int>(ds.s0.size());
    d.s = static_cast<int>(ds.s.size());
    d.s00 = static_cast<int>(ds.s00.size());
    d.s00_min_distance = min_pairwise_distance(s_.g[1], ds.s00);
    d.max_g2_neighbors_in_s = max_neighbors_in(s_.g[1], ds.in_s);
    mark(Stage::SSets, StageStatus::Ok, 1, t0);

    // cover
    t0 = Clock::now();
    ledger_.set_stage(3);
    std::optional<PathCover> cover;
    std::string why;
    int attempt = 0;
    for (; attempt <= opt_.cover_retries && !cover; ++attempt) {
      auto snap = ledger_.snapshot();
      std::optional<RandomSource> order;
      if (attempt > 0) order = root_.split("cover").split(static_cast<uint64_t>(attempt));
      auto res = cover_dangerous(s_.g[1], ds, used_, ledger_, order);
      if (auto* pc = std::get_if<PathCover>(&res)) {
        cover = std::move(*pc);
      } else {
        const auto& f = std::get<CoverFailure>(res);
        why = std::string(to_string(f.reason)) + " at vertex " + std::to_string(f.vertex);
        ledger_.restore(snap);
      }
    }
    if (!cover) return mark(Stage::Cover, StageStatus::Failed, attempt, t0, why);
    d.cover_paths = static_cast<int>(cover->paths.size());
    mark(Stage::Cover, StageStatus::Ok, attempt, t0);

    // long path
    t0 = Clock::now();
    ledger_.set_stage(4);
    std::optional<LongPathResult> lp;
    for (attempt = 0; attempt <= opt_.long_path_retries && !lp; ++attempt) {
      auto snap = ledger_.snapshot();
      auto res = build_long_path(s_, ds, *cover, used_, ledger_, root_.split("long-path").split(static_cast<uint64_t>(attempt)),
                                 opt_.long_path);
      if (auto* ok = std::get_if<LongPathResult>(&res)) {
        lp = std::move(*ok);
      } else {
        const auto& f = std::get<LongPathFailure>(res);
        d.path_length = f.final_length;
        d.path_target = f.target;
        d.red_count = f.red_count;
        why = "path has " + std::to_string(f.final_length) + " vertices, target " + std::to_string(f.target);
        ledger_.restore(snap);
      }
    }
    if (!lp) return mark(Stage::LongPath, StageStatus::Failed, attempt, t0, why);
    d.path_length = static_cast<int>(lp->path.vertices.size());
    d.path_target = lp->target;
    d.red_count = lp->red.count;
    mark(Stage::LongPath, StageStatus::Ok, attempt, t0);

    // segments
    t0 = Clock::now();
    ledger_.set_stage(5);
    const int L = s_.params.L_effective;
    const EndpointThresholds thr = endpoint_thresholds(s_.params, L, opt_.endpoint_threshold);
    d.endpoint_threshold = thr.t180;
    std::optional<SegmentSystem> sys;
    try {
      sys = split_into_segments(lp->path, L, n, thr);
    } catch (const PathTooShort& e) {
      return mark(Stage::Segments, StageStatus::Failed, 1, t0, std::string("path-too-short: ") + e.what());
    }
    d.segments_initial = sys->stats.r_initial;
    expose_endpoint_degrees(s_, *sys, ExposeSide::TowardB, ledger_);
    d.bad_step1 = sys->stats.bad_step1;

    std::vector<Leftover> items;
    std::vector<uint8_t> placed(static_cast<size_t>(n) + 1, 0);
    for (const auto& p : cover->paths) {
      items.push_back({p.vertices, p.colors});
      for (Vertex v : p.vertices) placed[v] = 1;
    }
    for (const auto& seg : sys->segs)
      for (Vertex v : seg.vertices) placed[v] = 1;
    for (Vertex v = 1; v <= n; ++v)
      if (!placed[v]) items.push_back({{v}, {}});

    auto absorbed = absorb_leftovers(std::move(*sys), items, s_, used_, ledger_);
    if (auto* f = std::get_if<AbsorbFailure>(&absorbed))
      return mark(Stage::Segments, StageStatus::Failed, 1, t0,
                  std::string("absorb: ") + to_string(f->reason) + " for leftover " + std::to_string(f->item));
    sys = std::move(std::get<SegmentSystem>(absorbed));
    d.absorptions = sys->stats.absorptions;
    expose_endpoint_degrees(s_, *sys, ExposeSide::TowardA, ledger_);
    d.bad_step4 = sys->stats.bad_step4;
    auto merged = merge_bad_endpoints(std::move(*sys), s_, ledger_);
    if (auto* f = std::get_if<MergeFailure>(&merged))
      return mark(Stage::Segments, StageStatus::Failed, 1, t0,
                  std::string("merge: ") + to_string(f->reason) + " at vertex " + std::to_string(f->vertex));
    sys = std::move(std::get<SegmentSystem>(merged));
    d.merges = sys->stats.merges;
    d.segments_final = sys->live_count();
    auto problems = check_segment_system(*sys, &s_.params, true);
    if (!problems.empty()) throw InternalInconsistency("segment system: " + problems.front());
    mark(Stage::Segments, StageStatus::Ok, 1, t0);

    // linker
    t0 = Clock::now();
    ledger_.set_stage(6);
    GammaGraph gamma;
    try {
      gamma = build_gamma(*sys, s_, ledger_);
    } catch (const DegenerateInstance& e) {
      return mark(Stage::Linker, StageStatus::Failed, 1, t0, std::string("degenerate: ") + e.what());
    }
    d.gamma_r = gamma.r;
    d.gamma_arcs = static_cast<int>(gamma.distinct_arcs());
    d.gamma_duplicates = static_cast<int>(gamma.duplicate_arcs());
    d.hamilton_mode = gamma.r <= opt_.hamilton.exact_limit ? "exact" : "heuristic";
    const ColoredGraph g = merge_to_colored_graph(s_);
    const RandomSource link_rng = root_.split("linker");
    for (attempt = 0; attempt <= opt_.linker_retries; ++attempt) {
      RandomSource arng = link_rng.split(static_cast<uint64_t>(attempt));
      GammaGraph gm = gamma;
      // a restart permutes the generation order, which changes the matching found
      if (attempt > 0) arng.split("order").shuffle(gm.gens.begin(), gm.gens.end());
      auto sel = select_rainbow_3in3out(gm);
      if (auto* f = std::get_if<SelectionFailure>(&sel)) {
        why = "selection: Hall violation on " + std::to_string(f->witness.size()) + " W-vertices with " +
              std::to_string(f->neighborhood) + " colors";
        continue;
      }
      auto pr = prune_conflicts(gm, std::get<Selection>(sel), s_, ledger_);
      if (auto* f = std::get_if<PruneFailure>(&pr)) {
        why = std::string("prune: vertex ") + std::to_string(f->vertex) + " kept < 2 " + (f->out_side ? "out" : "in") +
              "-arcs";
        continue;
      }
      const Pruned& pruned = std::get<Pruned>(pr);
      d.pruned_arcs = static_cast<int>(pruned.arcs.size());
      std::vector<std::vector<int>> out(static_cast<size_t>(gm.r));
      std::unordered_map<uint64_t, LinkArc> by_pair;
      for (const LinkArc& a : pruned.arcs) {
        out[a.from].push_back(a.to);
        by_pair.emplace(arc_key(a.from + 1, a.to + 1), a);
      }
      auto hc = hamilton_digraph(out, opt_.hamilton, arng.split("hamilton"));
      if (auto* nf = std::get_if<NotFound>(&hc)) {
        why = nf->proven ? "hamilton: Γ proven non-Hamiltonian" : "hamilton: search budget exhausted";
        continue;
      }
      LinkResult link;
      link.cycle = std::get<std::vector<int>>(hc);
      for (size_t i = 0; i < link.cycle.size(); ++i) {
        const int a = link.cycle[i], b = link.cycle[(i + 1) % link.cycle.size()];
        link.links.push_back(by_pair.at(arc_key(a + 1, b + 1)));
      }
      HamiltonCycleCertificate cert = stitch_cycle(*sys, gm.seg_ids, link, g);
      for (const LinkArc& l : link.links) used_.add(l.color);
      rep_.certificate = std::move(cert);
      return mark(Stage::Linker, StageStatus::Ok, attempt + 1, t0);
    }
    mark(Stage::Linker, StageStatus::Failed, attempt, t0, why);
  }

 private:
  const LayeredSample& s_;
  const PipelineOptions& opt_;
  ExposureLedger& ledger_;
  RandomSource root_;
  UsedColors used_;
  TrialReport rep_;
};

TrialReport execute(const LayeredSample& sample, uint64_t seed, const PipelineOptions& opt, ExposureLedger* ledger,
                    Clock::time_point t0) {
  ExposureLedger local;
  ExposureLedger& l = ledger ? *ledger : local;
  Run run(sample, seed, opt, l);
  if (opt.oracle_fallback && sample.n() <= 12)
    run.run_oracle(t0);
  else
    run.run_stages(t0);
  return run.finish();
}

}  // namespace

TrialReport run_pipeline(const LayeredSample& sample, uint64_t seed, const PipelineOptions& opt,
                         ExposureLedger* ledger) {
  return execute(sample, seed, opt, ledger, Clock::now());
}

TrialReport find_rainbow_hamilton(const ParamSet& params, uint64_t seed, const PipelineOptions& opt) {
  const auto t0 = Clock::now();
  LayeredSample s = sample_layered(params, RandomSource(seed, "sample"), opt.sampler);
  return execute(s, seed, opt, nullptr, t0);
}

}  // namespace rainbow
