#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "rainbow/core.hpp"

namespace rainbow {

class ParameterError : public std::invalid_argument {
 public:
  enum class Kind { Range, InfeasibleSplit, Domain };
  ParameterError(Kind k, const std::string& what) : std::invalid_argument(what), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ParamSet {
  int n = 0;
  double epsilon = 0;
  double theta = 0;
  std::array<double, 3> epsilon_i{};
  std::array<double, 3> theta_i{};
  std::array<double, 3> p{};
  int kappa = 0;
  std::array<int, 3> class_size{};
  double gamma = 0;
  double L_formula = 0;      // +inf when it overflows a double
  double log_L_formula = 0;  // always finite
  int L_effective = 0;
  bool L_overridden = false;
  bool L_capped = false;      // floor(n/3) cap bound
  bool probabilities_overridden = false;
  double p_merged = 0;

  // C_1 = [1, |C1|], C_2 = next |C2| colors, C_3 = the rest
  int class_of(Color c) const;
  Color class_begin(int i) const;  // i in 1..3
  Color class_end(int i) const;    // one past the last color
  double log_n() const;
};

ParamSet derive_parameters(int n, double epsilon, double theta,
                           std::optional<int> l_override = std::nullopt);

struct ProbabilityOverride {
  std::optional<std::array<double, 3>> p;
  std::optional<int> kappa;
  std::optional<std::array<int, 3>> class_size;
};

// Replaces p_i and/or the color universe while keeping the derived ε_i, θ_i based
// thresholds. Changing kappa without class sizes rescales the classes by the same
// rounding rule.
ParamSet apply_override(ParamSet ps, const ProbabilityOverride& o);

// Parameters for a requested merged edge probability p and palette size κ:
// ε = p n / ln n - 1, θ = κ/n - 1, then p_i are rescaled so the merged probability
// equals p exactly.
ParamSet params_for_merged_p(int n, double p, int kappa, std::optional<int> l_override = std::nullopt);

double merged_probability(const std::array<double, 3>& p);

struct PreconditionCheck {
  bool satisfied;
  double bound;
};

PreconditionCheck check_theorem_preconditions(int n, double epsilon, double theta);

// q_2 = 2 p2 (1-p2) (1+θ2)/(1+θ) (1-p1)^2
double q2_of(const ParamSet& ps);

}  // namespace rainbow
