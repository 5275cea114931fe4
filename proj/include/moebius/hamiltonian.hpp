#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "moebius/lattice.hpp"

namespace moebius {

/// Tight-binding parameters. `epsilon` is the 2N x M site-energy table,
/// row n - 1, column m - 1.
struct HoppingParams {
  double t1 = 1.0;
  double t2 = 1.0;
  double phi = 0.0;  ///< flux in flux quanta
  Eigen::MatrixXd epsilon;

  /// Constant site energy on every site of `lattice`.
  static HoppingParams uniform(const Lattice& lattice, double t1, double t2, double phi,
                               double site_energy = 0.0);
};

/// Dense complex matrix that is Hermitian by construction: every
/// off-diagonal write goes to (i, j) and its conjugate to (j, i).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(values_.rows()); }
  const Eigen::MatrixXcd& dense() const { return values_; }
  std::complex<double> operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  void add_diagonal(std::size_t i, double value);
  /// Adds `amplitude` at (i, j) and its conjugate at (j, i). For i == j the
  /// real part 2 Re(amplitude) lands on the diagonal.
  void add_hop(std::size_t i, std::size_t j, std::complex<double> amplitude);

  double trace() const;

 private:
  Eigen::MatrixXcd values_;
};

/// Single-particle matrix of the strip Hamiltonian:
///   diagonal            epsilon(n, m)
///   longitudinal a->b   -t1 exp(-2 pi i phi / N)   (conjugate on b->a)
///   transverse, twist   -t2
/// Throws std::domain_error when epsilon is not 2N x M or a value is not finite.
HermitianMatrix assemble(const Lattice& lattice, const HoppingParams& params);

/// All eigenvalues in ascending order. The general overload rejects input that
/// is not exactly Hermitian with std::domain_error.
std::vector<double> eigenvalues(const HermitianMatrix& h);
std::vector<double> eigenvalues(const Eigen::MatrixXcd& h);

/// Sum of the lowest `n_electrons` entries of an ascending spectrum.
double total_energy(std::span<const double> sorted_eigs, std::size_t n_electrons);

struct FluxPoint {
  double phi = 0.0;
  double energy = 0.0;
};

/// Filled-state energy at each flux value, in grid order. `params.phi` is
/// ignored. Grid points are evaluated on worker threads.
std::vector<FluxPoint> flux_sweep(const Lattice& lattice, const HoppingParams& params,
                                  std::span<const double> phi_grid, std::size_t n_electrons);

}  // namespace moebius
