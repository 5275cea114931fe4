#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace moebius {

/// Constant-contribution firm problem: N workers in each of M sectors, each
/// contributing a, with CSR spend c per unit of contribution and sensitivities
/// t1 = t2 = k (c a)^beta.
struct CsrScenario {
  int N = 1;
  int M = 1;
  double a = 0.5;
  double k = 1.0;
  double beta = 0.5;
  double delta = 0.5;
  double p = 1.0;
  double w = 0.0;
  /// Exponent of `a` in the loyalty summand k c^beta N a^(lambda + beta).
  /// 4 gives the closed-form objective of the constant-case problem; 2 is what
  /// the general cost function yields on constant matrices.
  int lambda = 4;

  bool operator==(const CsrScenario&) const = default;
};

/// Throws std::domain_error naming the first violated range.
void validate(const CsrScenario& s);

enum class StationaryKind { LocalMax, LocalMin, FlatDerivative };
enum class PaperCase { BetaAboveOne, BetaBelowOne, BetaEqualOne };

std::string_view to_string(StationaryKind kind);
std::string_view to_string(PaperCase c);

PaperCase paper_case(const CsrScenario& s);

/// H(c) = linear * c + power * c^beta.
struct ReducedObjective {
  double linear = 0.0;  ///< -2 N M a
  double power = 0.0;   ///< k N a^(2+beta) [2M(1-delta) + 2(M-1)] + k N a^(lambda+beta)
  double exponent = 0.0;
};

ReducedObjective reduced_objective(const CsrScenario& s);

/// 2M(2 - delta) - 2 + a^(lambda - 2). Strictly positive on the valid domain.
double sensitivity_bracket(const CsrScenario& s);

/// N M a (p - w).
double profit_baseline(const CsrScenario& s);

/// Net CSR benefit at spend c >= 0.
double hcsr_of_c(double c, const CsrScenario& s);

/// dH/dc = -2NMa + beta k c^(beta-1) N a^(2+beta) B, for c > 0.
double dhcsr_dc(double c, const CsrScenario& s);

/// Root of dH/dc in closed form:
///   beta > 1:  [2M / (beta k a^(1+beta) B)]^(1/(beta-1))
///   beta < 1:  [beta k a^(1+beta) B / (2M)]^(1/(1-beta))
/// Empty for beta == 1 and for the degenerate a == 0 or k == 0 objective.
std::optional<double> stationary_closed_form(const CsrScenario& s);

/// Sign of d2H/dc2 = beta (beta - 1) G c^(beta - 2).
StationaryKind classify_stationary(const CsrScenario& s);

struct DecisionReport {
  PaperCase paper_case = PaperCase::BetaEqualOne;
  std::optional<double> stationary;  ///< closed form, even when not the optimum
  StationaryKind stationary_kind = StationaryKind::FlatDerivative;
  double budget = 0.0;  ///< p - w
  double constrained_opt = 0.0;
  double objective_at_opt = 0.0;
  bool feasible = true;
};

/// argmax of H over [0, p - w]. Candidates are both ends and an interior local
/// maximum; ties go to the smaller spend. p < w yields an infeasible report
/// pinned at c = 0.
DecisionReport optimize_constrained(const CsrScenario& s);

struct OracleResult {
  double c = 0.0;
  double objective = 0.0;
};

/// Brute-force check of optimize_constrained: uniform grid of `grid_points`
/// spends over [0, p - w], then golden-section refinement around the best
/// node. Throws std::domain_error for grid_points < 3.
OracleResult optimize_oracle(const CsrScenario& s, std::size_t grid_points);

enum class StaticsParam { Delta, Beta, Sectors };

std::string_view to_string(StaticsParam p);

struct Sensitivity {
  double derivative = 0.0;  ///< central difference, or forward difference in M
  int sign = 0;
  double step = 0.0;  ///< step actually used
};

/// Finite-difference response of the closed-form stationary spend. Delta and
/// beta use central differences with `step` (shrunk tenfold once if a probe
/// leaves the domain or crosses beta = 1); M compares M and M + 1.
Sensitivity comparative_statics(const CsrScenario& s, StaticsParam param, double step = 1e-2);

}  // namespace moebius
