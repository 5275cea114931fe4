#include "moebius/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "moebius/jacobi.hpp"

namespace moebius {

HoppingParams HoppingParams::uniform(const Lattice& lattice, double t1, double t2, double phi,
                                     double site_energy) {
  HoppingParams params;
  params.t1 = t1;
  params.t2 = t2;
  params.phi = phi;
  params.epsilon = Eigen::MatrixXd::Constant(lattice.ring_length(), lattice.wires(), site_energy);
  return params;
}

HermitianMatrix::HermitianMatrix(std::size_t dim)
    : values_(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                     static_cast<Eigen::Index>(dim))) {}

void HermitianMatrix::add_diagonal(std::size_t i, double value) {
  const auto k = static_cast<Eigen::Index>(i);
  values_(k, k) += value;
}

void HermitianMatrix::add_hop(std::size_t i, std::size_t j, std::complex<double> amplitude) {
  const auto r = static_cast<Eigen::Index>(i);
  const auto c = static_cast<Eigen::Index>(j);
  values_(r, c) += amplitude;
  values_(c, r) += std::conj(amplitude);
}

double HermitianMatrix::trace() const { return values_.diagonal().real().sum(); }

HermitianMatrix assemble(const Lattice& lattice, const HoppingParams& params) {
  if (params.epsilon.rows() != lattice.ring_length() || params.epsilon.cols() != lattice.wires()) {
    throw std::domain_error("hamiltonian: site energies are " +
                            std::to_string(params.epsilon.rows()) + "x" +
                            std::to_string(params.epsilon.cols()) + ", lattice needs " +
                            std::to_string(lattice.ring_length()) + "x" +
                            std::to_string(lattice.wires()));
  }
  if (!std::isfinite(params.t1) || !std::isfinite(params.t2) || !std::isfinite(params.phi) ||
      !params.epsilon.allFinite()) {
    throw std::domain_error("hamiltonian: non-finite parameter");
  }

  HermitianMatrix h(lattice.site_count());
  for (std::size_t i = 0; i < lattice.site_count(); ++i) {
    const SiteCoord s = lattice.site_at(i);
    h.add_diagonal(i, params.epsilon(s.n - 1, s.m - 1));
  }

  const double angle = -2.0 * std::numbers::pi * params.phi / lattice.half_length();
  const std::complex<double> longitudinal = -params.t1 * std::polar(1.0, angle);
  const std::complex<double> transverse = -params.t2;

  for (const Edge& e : lattice.edges()) {
    const std::size_t i = lattice.site_index(e.a);
    const std::size_t j = lattice.site_index(e.b);
    // The twist sum visits each chord from both ends at t2/2; with the
    // conjugate that totals -t2 on the stored chord, same as a transverse bond.
    h.add_hop(i, j, e.kind == EdgeKind::Longitudinal ? longitudinal : transverse);
  }
  return h;
}

std::vector<double> eigenvalues(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) {
    throw std::domain_error("eigenvalues: matrix is not square");
  }
  const Eigen::Index n = h.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      if (h(i, j) != std::conj(h(j, i))) {
        throw std::domain_error("eigenvalues: matrix is not Hermitian at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
      }
    }
  }

  // H = A + iB acts on x + iy like [[A, -B], [B, A]] acts on [x; y]; that real
  // symmetric matrix carries every eigenvalue of H exactly twice.
  const Eigen::MatrixXd re = h.real();
  const Eigen::MatrixXd im = h.imag();
  Eigen::MatrixXd embedded(2 * n, 2 * n);
  embedded << re, -im, im, re;

  const std::vector<double> doubled = jacobi_eigenvalues(std::move(embedded));
  std::vector<double> eigs(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < eigs.size(); ++k) {
    eigs[k] = 0.5 * (doubled[2 * k] + doubled[2 * k + 1]);
  }
  return eigs;
}

std::vector<double> eigenvalues(const HermitianMatrix& h) { return eigenvalues(h.dense()); }

double total_energy(std::span<const double> sorted_eigs, std::size_t n_electrons) {
  if (n_electrons > sorted_eigs.size()) {
    throw std::domain_error("total_energy: " + std::to_string(n_electrons) +
                            " electrons for " + std::to_string(sorted_eigs.size()) + " levels");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < n_electrons; ++k) {
    sum += sorted_eigs[k];
  }
  return sum;
}

std::vector<FluxPoint> flux_sweep(const Lattice& lattice, const HoppingParams& params,
                                  std::span<const double> phi_grid, std::size_t n_electrons) {
  if (phi_grid.empty()) {
    throw std::domain_error("flux_sweep: empty flux grid");
  }
  if (!std::all_of(phi_grid.begin(), phi_grid.end(), [](double x) { return std::isfinite(x); })) {
    throw std::domain_error("flux_sweep: non-finite flux value");
  }
  if (n_electrons > lattice.site_count()) {
    throw std::domain_error("flux_sweep: more electrons than sites");
  }

  std::vector<FluxPoint> curve(phi_grid.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, phi_grid.size());

  // Strided partition; each slot is written by exactly one worker.
  std::vector<std::future<void>> jobs;
  jobs.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      HoppingParams local = params;
      for (std::size_t k = w; k < phi_grid.size(); k += workers) {
        local.phi = phi_grid[k];
        const std::vector<double> eigs = eigenvalues(assemble(lattice, local));
        curve[k] = {phi_grid[k], total_energy(eigs, n_electrons)};
      }
    }));
  }
  for (auto& job : jobs) {
    job.get();
  }
  return curve;
}

}  // namespace moebius
