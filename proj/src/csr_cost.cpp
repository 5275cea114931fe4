#include "moebius/csr_cost.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace moebius {

namespace {

void check_shape(const Eigen::MatrixXd& values, const char* what) {
  if (values.rows() < 2 || values.rows() % 2 != 0 || values.cols() < 1) {
    throw std::domain_error(std::string(what) + ": need an even number (>= 2) of rows and at least"
                            " one column, got " + std::to_string(values.rows()) + "x" +
                            std::to_string(values.cols()));
  }
}

}  // namespace

ContributionMatrix::ContributionMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  check_shape(values_, "contributions");
  for (Eigen::Index j = 0; j < values_.cols(); ++j) {
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
      const double v = values_(i, j);
      if (!(v >= 0.0 && v < 1.0)) {
        throw std::domain_error("contributions: entry (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") = " + std::to_string(v) +
                                " outside [0, 1)");
      }
    }
  }
}

ContributionMatrix ContributionMatrix::constant(int half_length, int sectors, double value) {
  return ContributionMatrix(Eigen::MatrixXd::Constant(2 * half_length, sectors, value));
}

CostMatrix::CostMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  check_shape(values_, "costs");
  for (Eigen::Index j = 0; j < values_.cols(); ++j) {
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
      const double v = values_(i, j);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::domain_error("costs: entry (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") must be finite and >= 0");
      }
    }
  }
}

CostMatrix CostMatrix::constant(int half_length, int sectors, double value) {
  return CostMatrix(Eigen::MatrixXd::Constant(2 * half_length, sectors, value));
}

void validate(const CsrParams& params) {
  if (!(params.delta > 0.0 && params.delta < 1.0)) {
    throw std::domain_error("csr params: delta must lie in (0, 1)");
  }
  if (!(params.t1 >= 0.0) || !(params.t2 >= 0.0) || !std::isfinite(params.t1) ||
      !std::isfinite(params.t2)) {
    throw std::domain_error("csr params: t1 and t2 must be finite and >= 0");
  }
}

// Sums run n outer, m inner, accumulated in long double.

double neighborhood_term(const ContributionMatrix& a, const CsrParams& params) {
  validate(params);
  const Eigen::MatrixXd& v = a.values();
  const Eigen::Index rows = v.rows();
  long double sum = 0.0L;
  for (Eigen::Index n = 0; n < rows; ++n) {
    const Eigen::Index next = (n + 1) % rows;
    for (Eigen::Index m = 0; m < v.cols(); ++m) {
      sum += static_cast<long double>(v(n, m)) * v(next, m);
    }
  }
  return static_cast<double>(params.t1 * (1.0 - params.delta) * sum);
}

double sector_term(const ContributionMatrix& a, const CsrParams& params) {
  validate(params);
  const Eigen::MatrixXd& v = a.values();
  long double sum = 0.0L;
  for (Eigen::Index n = 0; n < v.rows(); ++n) {
    for (Eigen::Index m = 0; m + 1 < v.cols(); ++m) {
      sum += static_cast<long double>(v(n, m + 1)) * v(n, m);
    }
  }
  return static_cast<double>(params.t2 * sum);
}

double loyalty_term(const ContributionMatrix& a, const CsrParams& params) {
  validate(params);
  const Eigen::MatrixXd& v = a.values();
  const Eigen::Index rows = v.rows();
  const Eigen::Index half = rows / 2;
  const Eigen::Index last = v.cols() - 1;
  long double sum = 0.0L;
  for (Eigen::Index n = 0; n < rows; ++n) {
    sum += static_cast<long double>(v(n, last)) * v((n + half) % rows, last);
  }
  return static_cast<double>(params.t2 / 2.0 * sum);
}

CostBreakdown total_hcsr(const ContributionMatrix& a, const CostMatrix& c, const CsrParams& params) {
  if (a.values().rows() != c.values().rows() || a.values().cols() != c.values().cols()) {
    throw std::domain_error("total_hcsr: contributions and costs differ in shape");
  }
  long double spend = 0.0L;
  const Eigen::MatrixXd& cv = c.values();
  for (Eigen::Index n = 0; n < cv.rows(); ++n) {
    for (Eigen::Index m = 0; m < cv.cols(); ++m) {
      spend += cv(n, m);
    }
  }

  CostBreakdown out;
  out.cost = -static_cast<double>(spend);
  out.neighborhood = neighborhood_term(a, params);
  out.sector = sector_term(a, params);
  out.loyalty = loyalty_term(a, params);
  out.total = out.cost + out.neighborhood + out.sector + out.loyalty;
  return out;
}

}  // namespace moebius
