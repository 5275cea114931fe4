#pragma once

#include <Eigen/Dense>

namespace moebius {

/// Stakeholder contributions a(n, m) in [0, 1). 2N rows (stakeholders, the
/// lower half being the replicated ones) by M columns (sectors).
class ContributionMatrix {
 public:
  /// Throws std::domain_error on an odd or empty row count, no columns, or an
  /// entry outside [0, 1).
  explicit ContributionMatrix(Eigen::MatrixXd values);

  /// Every entry equal to `value`.
  static ContributionMatrix constant(int half_length, int sectors, double value);

  const Eigen::MatrixXd& values() const { return values_; }
  int half_length() const { return static_cast<int>(values_.rows() / 2); }
  int sectors() const { return static_cast<int>(values_.cols()); }

 private:
  Eigen::MatrixXd values_;
};

/// CSR spend c(n, m) >= 0, same shape as the contributions.
class CostMatrix {
 public:
  explicit CostMatrix(Eigen::MatrixXd values);

  static CostMatrix constant(int half_length, int sectors, double value);

  const Eigen::MatrixXd& values() const { return values_; }

 private:
  Eigen::MatrixXd values_;
};

struct CsrParams {
  double t1 = 1.0;     ///< neighbourhood sensitivity
  double t2 = 1.0;     ///< sector / loyalty sensitivity
  double delta = 0.5;  ///< alienation decay, in (0, 1)
};

/// Throws std::domain_error unless 0 < delta < 1 and t1, t2 >= 0.
void validate(const CsrParams& params);

/// t1 (1 - delta) sum_{n,m} a(n, m) a(n + 1, m), n wrapping mod 2N.
double neighborhood_term(const ContributionMatrix& a, const CsrParams& params);

/// t2 sum_n sum_{m < M} a(n, m + 1) a(n, m).
double sector_term(const ContributionMatrix& a, const CsrParams& params);

/// (t2 / 2) sum_n a(n, M) a(n + N, M): each antipodal pair on the last sector
/// is visited from both ends and the sum halved.
double loyalty_term(const ContributionMatrix& a, const CsrParams& params);

struct CostBreakdown {
  double cost = 0.0;  ///< -sum c, already negated
  double neighborhood = 0.0;
  double sector = 0.0;
  double loyalty = 0.0;
  double total = 0.0;  ///< cost + neighborhood + sector + loyalty
};

/// Net CSR benefit: minus the spend plus the three cooperation terms. No
/// conjugate (reverse-direction) terms are included.
CostBreakdown total_hcsr(const ContributionMatrix& a, const CostMatrix& c, const CsrParams& params);

}  // namespace moebius
