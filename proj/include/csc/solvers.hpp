#pragma once

#include <Eigen/Dense>
#include <complex>

#include "csc/model.hpp"

namespace csc {

struct SolverConfig {
  double mu = 0.002;              // l1 regularization weight
  int iterations = 10;            // FISTA steps per solve
  double lipschitz_safety = 1.01; // multiplier on the estimated step bound
  bool warm_start = false;        // start from the supplied iterate
  double zero_tol = 0.0;          // magnitude counted as zero downstream

  void validate() const;
};

// A basis-coefficient vector produced by a solver, with its support size.
struct ControlVector {
  Eigen::VectorXcd coeffs;  // length N, entry offset(m) holds theta_m
  double zero_tol = 0.0;
  int support_count = 0;

  static ControlVector from(Eigen::VectorXcd coeffs, double zero_tol);
};

int count_support(const Eigen::VectorXcd& coeffs, double zero_tol);

// Proximal map of tau |.|: shrinks the magnitude by tau, exactly zero at or
// below it.
std::complex<double> soft_threshold(std::complex<double> v, double tau);

// 2 sigma_max(Phi)^2 by power iteration on Phi^H Phi (relative tolerance
// 1e-6), times safety. Upper-bounds the gradient Lipschitz constant of
// ||Phi theta - alpha||_2^2. Throws on a zero matrix.
double lipschitz_estimate(const Eigen::MatrixXcd& measurement, double safety = 1.0);

// FISTA for J1(theta) = ||Phi theta - alpha||_2^2 + mu sum_m |theta_m|,
// run for exactly cfg.iterations steps. Starts from init when
// cfg.warm_start and init is non-null, else from zero. Shrinkage clips
// entries to exact zeros.
ControlVector fista(const Eigen::MatrixXcd& measurement, const Eigen::VectorXd& target,
                    const SolverConfig& cfg, const Eigen::VectorXcd* init = nullptr);

// Closed-form energy-regularized solution (mu2 I + G^H G) theta = G^H rhs
// via Cholesky with one step of iterative refinement. The class form keeps
// the factorization for repeated right-hand sides (the matrix is constant
// across a closed-loop run); solving through it is arithmetically identical
// to the free function.
class RidgeSolver {
 public:
  RidgeSolver(const Eigen::MatrixXcd& basis_to_output, double mu2);
  ControlVector solve(const Eigen::VectorXd& rhs) const;

 private:
  Eigen::MatrixXcd matrix_;
  Eigen::MatrixXcd normal_;
  Eigen::LLT<Eigen::MatrixXcd> llt_;
};

ControlVector ridge(const Eigen::MatrixXcd& basis_to_output, const Eigen::VectorXd& rhs,
                    double mu2);

// Keeps the s largest-magnitude entries (ties: smaller |m| first, then
// negative m), zeroes the rest.
ControlVector truncate_top(const ControlVector& cv, int keep);

}  // namespace csc
