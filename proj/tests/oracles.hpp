#pragma once

// Independent reference computations used only by tests. Each oracle takes
// a route disjoint from the library path it checks: plain Taylor series vs
// Padé scaling-and-squaring, RK4 time stepping vs the analytic lifting,
// ISTA vs FISTA, dense SVD vs power iteration, stacked least squares vs
// normal equations.

#include <Eigen/Dense>
#include <functional>
#include <random>

#include "csc/model.hpp"

namespace oracle {

// Plain 200-term Taylor series for exp(tA); no scaling, no squaring.
Eigen::MatrixXd taylor_matexp(const Eigen::MatrixXd& A, double t, int terms = 200);

struct Rk4Result {
  Eigen::VectorXd final_state;
  std::vector<double> output;  // y at every step boundary, steps+1 values
};

// Classic RK4 on xdot = A x + b u(t) over [0, T] with u decoded directly
// from the coefficient vector.
Rk4Result rk4_simulate(const csc::PlantModel& plant, const csc::BasisSpec& spec,
                       const Eigen::VectorXcd& coeffs, const Eigen::VectorXd& x0, int steps);

// Plain ISTA (no momentum) on ||Phi theta - alpha||^2 + mu * sum |theta_m|,
// with its own shrinkage and step size.
Eigen::VectorXcd ista(const Eigen::MatrixXcd& measurement, const Eigen::VectorXd& target,
                      double mu, int iterations);

double objective_l1l2(const Eigen::MatrixXcd& measurement, const Eigen::VectorXd& target,
                      double mu, const Eigen::VectorXcd& theta);

double svd_sigma_max(const Eigen::MatrixXcd& m);

// argmin ||G theta - rhs||^2 + mu2 ||theta||^2 via the stacked system
// [G; sqrt(mu2) I] solved by QR.
Eigen::VectorXcd augmented_least_squares(const Eigen::MatrixXcd& G, const Eigen::VectorXd& rhs,
                                         double mu2);

// Composite Simpson of a scalar function on [a, b] with an odd point count.
csc::Complex simpson(const std::function<csc::Complex(double)>& f, double a, double b,
                     int points);

// Random conjugate-symmetric coefficient vector with entries of order scale.
Eigen::VectorXcd random_symmetric_coeffs(std::mt19937_64& rng, int bandwidth, double scale);

Eigen::VectorXd random_vector(std::mt19937_64& rng, int n, double scale);

}  // namespace oracle
