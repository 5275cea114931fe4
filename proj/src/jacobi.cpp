#include "moebius/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace moebius {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 1; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(2.0 * sum);
}

}  // namespace

std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, const JacobiOptions& options) {
  if (a.rows() != a.cols()) {
    throw std::domain_error("jacobi: matrix is not square");
  }
  const Eigen::Index n = a.rows();
  a = a.selfadjointView<Eigen::Upper>();

  const double scale = std::max(1.0, a.norm());
  const double target = options.tolerance * scale;

  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (sweep++ == options.max_sweeps) {
      throw std::runtime_error("jacobi: no convergence after " +
                               std::to_string(options.max_sweeps) + " sweeps");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;

        // Rotation angle that zeroes a(p, q); pick the smaller root for stability.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;

        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eigs(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    eigs[static_cast<std::size_t>(i)] = a(i, i);
  }
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

}  // namespace moebius
