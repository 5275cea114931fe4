#pragma once

#include <vector>

#include <Eigen/Dense>

namespace moebius {

struct JacobiOptions {
  double tolerance = 1e-12;  ///< off-diagonal Frobenius norm, relative to max(1, |A|_F)
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigenvalues of a real symmetric matrix, ascending.
/// Only the upper triangle is read. Throws std::runtime_error if the sweep
/// cap is hit before convergence.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, const JacobiOptions& options = {});

}  // namespace moebius
