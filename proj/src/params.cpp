#include "rainbow/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rainbow {

int ParamSet::class_of(Color c) const {
  if (c < 1 || c > kappa) return 0;
  if (c <= class_size[0]) return 1;
  if (c <= class_size[0] + class_size[1]) return 2;
  return 3;
}

Color ParamSet::class_begin(int i) const {
  Color b = 1;
  for (int k = 0; k < i - 1; ++k) b += class_size[k];
  return b;
}

Color ParamSet::class_end(int i) const { return class_begin(i) + class_size[i - 1]; }

double ParamSet::log_n() const { return std::log(static_cast<double>(n)); }

double merged_probability(const std::array<double, 3>& p) {
  double keep = 1.0;
  for (double pi : p) keep *= (1.0 - pi) * (1.0 - pi);
  return 1.0 - keep;
}

static std::array<int, 3> split_classes(int n, int kappa, const std::array<double, 3>& theta_i) {
  int c1 = static_cast<int>(std::lround(theta_i[0] * n));
  int c3 = static_cast<int>(std::lround(theta_i[2] * n));
  return {c1, kappa - c1 - c3, c3};
}

static void set_L(ParamSet& ps, std::optional<int> l_override) {
  const double e3t3 = ps.epsilon_i[2] * ps.theta_i[2];
  const double a = 40.0 / e3t3;
  const double log_first = std::log(15.0) + a;
  const double second = 7.0 / ps.theta_i[0];
  ps.log_L_formula = std::max(log_first, std::log(second));
  ps.L_formula = std::exp(ps.log_L_formula);  // inf on overflow
  const int cap = std::max(1, ps.n / 3);
  if (l_override) {
    if (*l_override < 1) throw ParameterError(ParameterError::Kind::Range, "L override must be positive");
    ps.L_effective = *l_override;
    ps.L_overridden = std::abs(std::log(static_cast<double>(*l_override)) - ps.log_L_formula) > 1e-9;
    ps.L_capped = false;
  } else {
    const double ceil_l = std::ceil(ps.L_formula);
    if (!(ceil_l < cap)) {
      ps.L_effective = cap;
      ps.L_capped = ceil_l > cap;
    } else {
      ps.L_effective = static_cast<int>(ceil_l);
    }
    ps.L_overridden = false;
  }
}

ParamSet derive_parameters(int n, double epsilon, double theta, std::optional<int> l_override) {
  if (n < 3) throw ParameterError(ParameterError::Kind::Range, "n must be at least 3");
  if (!(epsilon > 0) || !(theta > 0))
    throw ParameterError(ParameterError::Kind::Range, "epsilon and theta must be positive");
  ParamSet ps;
  ps.n = n;
  ps.epsilon = epsilon;
  ps.theta = theta;
  const double e = epsilon / 3.0;
  ps.epsilon_i = {e, e, e};
  const double t13 = std::min(theta / 3.0, e / 4.0);
  const double t2 = theta - 2.0 * t13;
  if (!(t2 > 0)) throw ParameterError(ParameterError::Kind::InfeasibleSplit, "theta_2 <= 0");
  ps.theta_i = {t13, t2, t13};
  const double ln = std::log(static_cast<double>(n));
  ps.p = {e * ln / (2.0 * n), (1.0 + e) * ln / (2.0 * n), e * ln / (2.0 * n)};
  for (double pi : ps.p)
    if (!(pi < 1.0)) throw ParameterError(ParameterError::Kind::Range, "derived p_i >= 1");
  ps.kappa = static_cast<int>(std::lround((1.0 + theta) * n));
  ps.class_size = split_classes(n, ps.kappa, ps.theta_i);
  if (ps.class_size[1] < 1) throw ParameterError(ParameterError::Kind::InfeasibleSplit, "|C2| < 1");
  ps.gamma = std::min({0.25, e * t13 / 4.0, e * t13 / 4.0});
  set_L(ps, l_override);
  ps.p_merged = merged_probability(ps.p);
  return ps;
}

ParamSet apply_override(ParamSet ps, const ProbabilityOverride& o) {
  if (o.p) {
    for (double pi : *o.p)
      if (!(pi >= 0.0 && pi < 1.0))
        throw ParameterError(ParameterError::Kind::Range, "override p_i must lie in [0,1)");
    ps.p = *o.p;
    ps.probabilities_overridden = true;
  }
  if (o.kappa) {
    if (*o.kappa < 1) throw ParameterError(ParameterError::Kind::Range, "kappa must be positive");
    ps.kappa = *o.kappa;
    ps.class_size = split_classes(ps.n, ps.kappa, ps.theta_i);
    ps.probabilities_overridden = true;
  }
  if (o.class_size) {
    const auto& cs = *o.class_size;
    if (cs[0] < 0 || cs[1] < 0 || cs[2] < 0 || cs[0] + cs[1] + cs[2] != ps.kappa)
      throw ParameterError(ParameterError::Kind::InfeasibleSplit, "class sizes must sum to kappa");
    ps.class_size = cs;
    ps.probabilities_overridden = true;
  }
  if (ps.class_size[0] < 0 || ps.class_size[1] < 1 || ps.class_size[2] < 0)
    throw ParameterError(ParameterError::Kind::InfeasibleSplit, "color classes do not fit in kappa");
  ps.p_merged = merged_probability(ps.p);
  return ps;
}

ParamSet params_for_merged_p(int n, double p, int kappa, std::optional<int> l_override) {
  if (n < 3) throw ParameterError(ParameterError::Kind::Range, "n must be at least 3");
  if (!(p > 0 && p < 1)) throw ParameterError(ParameterError::Kind::Range, "p must lie in (0,1)");
  const double ln = std::log(static_cast<double>(n));
  const double eps = p * n / ln - 1.0;
  const double theta = static_cast<double>(kappa) / n - 1.0;
  if (!(eps > 0)) throw ParameterError(ParameterError::Kind::Range, "p must exceed ln n / n");
  if (!(theta > 0)) throw ParameterError(ParameterError::Kind::Range, "kappa must exceed n");
  ParamSet ps = derive_parameters(n, eps, theta, l_override);
  // bisection on a common scale factor so that the merged probability is exactly p
  double lo = 0.0, hi = 1.0 / std::max({ps.p[0], ps.p[1], ps.p[2]});
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    std::array<double, 3> q{ps.p[0] * mid, ps.p[1] * mid, ps.p[2] * mid};
    (merged_probability(q) < p ? lo : hi) = mid;
  }
  std::array<double, 3> scaled{ps.p[0] * lo, ps.p[1] * lo, ps.p[2] * lo};
  ProbabilityOverride o;
  o.p = scaled;
  o.kappa = kappa;
  return apply_override(ps, o);
}

PreconditionCheck check_theorem_preconditions(int n, double epsilon, double theta) {
  if (n < 16) throw ParameterError(ParameterError::Kind::Domain, "precondition check needs n >= 16");
  const double bound = 100.0 / std::sqrt(std::log(std::log(static_cast<double>(n))));
  return {epsilon > bound && theta > bound, bound};
}

double q2_of(const ParamSet& ps) {
  const double p1 = ps.p[0], p2 = ps.p[1];
  return 2.0 * p2 * (1.0 - p2) * (1.0 + ps.theta_i[1]) / (1.0 + ps.theta) * (1.0 - p1) * (1.0 - p1);
}

}  // namespace rainbow
