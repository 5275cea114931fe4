#include "moebius/decision.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace moebius {

namespace {

[[noreturn]] void reject(const std::string& what) {
  throw std::domain_error("scenario: " + what);
}

bool finite_at_least(double x, double lo) { return std::isfinite(x) && x >= lo; }

double budget_of(const CsrScenario& s) { return s.p - s.w; }

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
template <class F>
OracleResult golden_maximize(F&& f, double lo, double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < 200 && hi - lo > 4e-16 * (std::abs(lo) + std::abs(hi)) + 1e-300;
       ++iter) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 >= f2 ? OracleResult{x1, f1} : OracleResult{x2, f2};
}

}  // namespace

void validate(const CsrScenario& s) {
  if (s.N < 1) reject("N must be >= 1");
  if (s.M < 1) reject("M must be >= 1");
  if (!(s.a >= 0.0 && s.a < 1.0)) reject("a must lie in [0, 1)");
  if (!finite_at_least(s.k, 0.0)) reject("k must be finite and >= 0");
  if (!std::isfinite(s.beta) || !(s.beta > 0.0)) reject("beta must be finite and > 0");
  if (!(s.delta > 0.0 && s.delta < 1.0)) reject("delta must lie in (0, 1)");
  if (!finite_at_least(s.p, 0.0)) reject("p must be finite and >= 0");
  if (!finite_at_least(s.w, 0.0)) reject("w must be finite and >= 0");
  if (s.lambda != 2 && s.lambda != 4) reject("lambda must be 2 or 4");
}

std::string_view to_string(StationaryKind kind) {
  switch (kind) {
    case StationaryKind::LocalMax: return "local_max";
    case StationaryKind::LocalMin: return "local_min";
    case StationaryKind::FlatDerivative: return "flat_derivative";
  }
  return "unknown";
}

std::string_view to_string(PaperCase c) {
  switch (c) {
    case PaperCase::BetaAboveOne: return "beta_above_one";
    case PaperCase::BetaBelowOne: return "beta_below_one";
    case PaperCase::BetaEqualOne: return "beta_equal_one";
  }
  return "unknown";
}

std::string_view to_string(StaticsParam p) {
  switch (p) {
    case StaticsParam::Delta: return "delta";
    case StaticsParam::Beta: return "beta";
    case StaticsParam::Sectors: return "M";
  }
  return "unknown";
}

PaperCase paper_case(const CsrScenario& s) {
  if (s.beta > 1.0) return PaperCase::BetaAboveOne;
  if (s.beta < 1.0) return PaperCase::BetaBelowOne;
  return PaperCase::BetaEqualOne;
}

double sensitivity_bracket(const CsrScenario& s) {
  return 2.0 * s.M * (2.0 - s.delta) - 2.0 + std::pow(s.a, s.lambda - 2);
}

ReducedObjective reduced_objective(const CsrScenario& s) {
  validate(s);
  const double n = s.N;
  const double m = s.M;
  ReducedObjective h;
  h.linear = -2.0 * n * m * s.a;
  h.power = s.k * n * std::pow(s.a, 2.0 + s.beta) * (2.0 * m * (1.0 - s.delta) + 2.0 * (m - 1.0)) +
            s.k * n * std::pow(s.a, s.lambda + s.beta);
  h.exponent = s.beta;
  return h;
}

double profit_baseline(const CsrScenario& s) {
  validate(s);
  return s.N * s.M * s.a * (s.p - s.w);
}

double hcsr_of_c(double c, const CsrScenario& s) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw std::domain_error("hcsr_of_c: spend must be finite and >= 0");
  }
  const ReducedObjective h = reduced_objective(s);
  return h.linear * c + h.power * std::pow(c, h.exponent);
}

double dhcsr_dc(double c, const CsrScenario& s) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::domain_error("dhcsr_dc: spend must be finite and > 0");
  }
  validate(s);
  return -2.0 * s.N * s.M * s.a + s.beta * s.k * std::pow(c, s.beta - 1.0) * s.N *
                                      std::pow(s.a, 2.0 + s.beta) * sensitivity_bracket(s);
}

std::optional<double> stationary_closed_form(const CsrScenario& s) {
  validate(s);
  if (s.beta == 1.0 || s.a == 0.0 || s.k == 0.0) {
    return std::nullopt;
  }
  const double gain = s.beta * s.k * std::pow(s.a, 1.0 + s.beta) * sensitivity_bracket(s);
  const double cost = 2.0 * s.M;
  if (s.beta > 1.0) {
    return std::pow(cost / gain, 1.0 / (s.beta - 1.0));
  }
  return std::pow(gain / cost, 1.0 / (1.0 - s.beta));
}

StationaryKind classify_stationary(const CsrScenario& s) {
  const ReducedObjective h = reduced_objective(s);
  if (s.beta == 1.0 || h.power == 0.0) {
    return StationaryKind::FlatDerivative;
  }
  return s.beta > 1.0 ? StationaryKind::LocalMin : StationaryKind::LocalMax;
}

DecisionReport optimize_constrained(const CsrScenario& s) {
  validate(s);
  DecisionReport report;
  report.paper_case = paper_case(s);
  report.stationary = stationary_closed_form(s);
  report.stationary_kind = classify_stationary(s);
  report.budget = budget_of(s);

  if (report.budget < 0.0) {
    report.feasible = false;
    report.constrained_opt = 0.0;
    report.objective_at_opt = hcsr_of_c(0.0, s);
    return report;
  }

  // Ascending spend order so that a strict comparison keeps the smaller c on ties.
  std::array<double, 3> candidates{0.0, report.budget, report.budget};
  std::size_t used = 2;
  if (report.stationary && report.stationary_kind == StationaryKind::LocalMax &&
      *report.stationary > 0.0 && *report.stationary < report.budget) {
    candidates = {0.0, *report.stationary, report.budget};
    used = 3;
  }

  report.constrained_opt = candidates[0];
  report.objective_at_opt = hcsr_of_c(candidates[0], s);
  for (std::size_t i = 1; i < used; ++i) {
    const double value = hcsr_of_c(candidates[i], s);
    if (value > report.objective_at_opt) {
      report.constrained_opt = candidates[i];
      report.objective_at_opt = value;
    }
  }
  return report;
}

OracleResult optimize_oracle(const CsrScenario& s, std::size_t grid_points) {
  validate(s);
  if (grid_points < 3) {
    throw std::domain_error("optimize_oracle: need at least 3 grid points");
  }
  const double budget = budget_of(s);
  if (budget <= 0.0) {
    return {0.0, hcsr_of_c(0.0, s)};
  }

  const auto node = [&](std::size_t i) {
    return i + 1 == grid_points ? budget
                                : budget * static_cast<double>(i) /
                                      static_cast<double>(grid_points - 1);
  };
  const auto f = [&](double c) { return hcsr_of_c(c, s); };

  std::size_t best = 0;
  double best_value = f(0.0);
  for (std::size_t i = 1; i < grid_points; ++i) {
    const double value = f(node(i));
    if (value > best_value) {
      best = i;
      best_value = value;
    }
  }

  const double lo = node(best == 0 ? 0 : best - 1);
  const double hi = node(std::min(best + 1, grid_points - 1));
  const OracleResult refined = golden_maximize(f, lo, hi);
  if (refined.objective > best_value) {
    return refined;
  }
  return {node(best), best_value};
}

Sensitivity comparative_statics(const CsrScenario& s, StaticsParam param, double step) {
  validate(s);
  const auto c_star = [](const CsrScenario& probe) {
    const auto c = stationary_closed_form(probe);
    if (!c) {
      throw std::domain_error("comparative_statics: no stationary point (beta = 1, a = 0 or k = 0)");
    }
    return *c;
  };
  const auto signum = [](double x) { return (x > 0.0) - (x < 0.0); };

  if (param == StaticsParam::Sectors) {
    CsrScenario more = s;
    more.M += 1;
    const double diff = c_star(more) - c_star(s);
    return {diff, signum(diff), 1.0};
  }

  if (s.beta == 1.0) {
    throw std::domain_error("comparative_statics: undefined at beta = 1");
  }
  const auto in_domain = [&](double h) {
    if (!(h > 0.0)) return false;
    if (param == StaticsParam::Delta) {
      return s.delta - h > 0.0 && s.delta + h < 1.0;
    }
    const bool above = s.beta > 1.0;
    return s.beta - h > 0.0 && (above ? s.beta - h > 1.0 : s.beta + h < 1.0);
  };

  double h = step;
  if (!in_domain(h)) {
    h /= 10.0;
    if (!in_domain(h)) {
      throw std::domain_error("comparative_statics: step " + std::to_string(step) +
                              " leaves the valid domain of " + std::string(to_string(param)));
    }
  }

  CsrScenario up = s;
  CsrScenario down = s;
  double& up_value = param == StaticsParam::Delta ? up.delta : up.beta;
  double& down_value = param == StaticsParam::Delta ? down.delta : down.beta;
  up_value += h;
  down_value -= h;
  const double derivative = (c_star(up) - c_star(down)) / (2.0 * h);
  return {derivative, signum(derivative), h};
}

}  // namespace moebius
