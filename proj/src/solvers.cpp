#include "csc/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace csc {

void SolverConfig::validate() const {
  if (mu < 0.0) throw std::invalid_argument("solver: mu must be nonnegative");
  if (iterations < 1) throw std::invalid_argument("solver: iterations must be at least 1");
  if (lipschitz_safety < 1.0)
    throw std::invalid_argument("solver: lipschitz_safety must be at least 1");
  if (zero_tol < 0.0) throw std::invalid_argument("solver: zero_tol must be nonnegative");
}

int count_support(const Eigen::VectorXcd& coeffs, double zero_tol) {
  int count = 0;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    if (std::abs(coeffs(i)) > zero_tol) ++count;
  return count;
}

ControlVector ControlVector::from(Eigen::VectorXcd coeffs, double zero_tol) {
  ControlVector cv;
  cv.zero_tol = zero_tol;
  cv.support_count = count_support(coeffs, zero_tol);
  cv.coeffs = std::move(coeffs);
  return cv;
}

std::complex<double> soft_threshold(std::complex<double> v, double tau) {
  if (tau < 0.0) throw std::invalid_argument("soft_threshold: tau must be nonnegative");
  const double mag = std::abs(v);
  if (mag <= tau) return {0.0, 0.0};
  return v * (1.0 - tau / mag);
}

double lipschitz_estimate(const Eigen::MatrixXcd& measurement, double safety) {
  if (measurement.size() == 0 || measurement.norm() == 0.0)
    throw std::invalid_argument("lipschitz_estimate: zero matrix has no step size");
  // Deterministic pseudo-random start; an all-ones vector can be orthogonal
  // to the leading singular vector.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  Eigen::VectorXcd v(measurement.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = static_cast<double>(rng()) / 18446744073709551616.0 - 0.5;
    const double im = static_cast<double>(rng()) / 18446744073709551616.0 - 0.5;
    v(i) = Complex(re, im);
  }
  v /= v.norm();

  double lambda = 0.0;
  const int max_iters = 200 * static_cast<int>(measurement.cols()) + 1000;
  for (int i = 0; i < max_iters; ++i) {
    Eigen::VectorXcd w = measurement.adjoint() * (measurement * v);
    const double next = v.dot(w).real();  // Rayleigh quotient, real for Phi^H Phi
    const double wn = w.norm();
    if (wn == 0.0) {
      // Start vector landed in the null space; perturb and continue.
      v(0) += Complex(1.0, 0.0);
      v /= v.norm();
      continue;
    }
    v = w / wn;
    if (std::abs(next - lambda) <= 1e-6 * std::max(next, 1e-300)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return 2.0 * lambda * safety;
}

ControlVector fista(const Eigen::MatrixXcd& measurement, const Eigen::VectorXd& target,
                    const SolverConfig& cfg, const Eigen::VectorXcd* init) {
  cfg.validate();
  if (measurement.rows() != target.size())
    throw std::invalid_argument("fista: measurement rows must match target length");
  if (init && init->size() != measurement.cols())
    throw std::invalid_argument("fista: init length must match measurement columns");
  const Eigen::Index n = measurement.cols();

  // A zero matrix makes the data term constant; the l1 minimizer is zero.
  if (measurement.norm() == 0.0)
    return ControlVector::from(Eigen::VectorXcd::Zero(n), cfg.zero_tol);

  const double L = lipschitz_estimate(measurement, cfg.lipschitz_safety);
  const double shrink = cfg.mu / L;
  const Eigen::VectorXcd target_c = target.cast<Complex>();

  Eigen::VectorXcd theta =
      (cfg.warm_start && init) ? *init : Eigen::VectorXcd::Zero(n);
  Eigen::VectorXcd momentum = theta;
  double s = 1.0;
  for (int it = 0; it < cfg.iterations; ++it) {
    const Eigen::VectorXcd grad_step =
        momentum - (2.0 / L) * (measurement.adjoint() * (measurement * momentum - target_c));
    Eigen::VectorXcd next(n);
    for (Eigen::Index i = 0; i < n; ++i) next(i) = soft_threshold(grad_step(i), shrink);
    const double s_next = (1.0 + std::sqrt(1.0 + 4.0 * s * s)) / 2.0;
    momentum = next + ((s - 1.0) / s_next) * (next - theta);
    theta = std::move(next);
    s = s_next;
  }
  if (!theta.allFinite())
    throw std::runtime_error("fista: non-finite iterate (Lipschitz estimate too small)");
  return ControlVector::from(std::move(theta), cfg.zero_tol);
}

RidgeSolver::RidgeSolver(const Eigen::MatrixXcd& basis_to_output, double mu2)
    : matrix_(basis_to_output) {
  if (mu2 <= 0.0) throw std::invalid_argument("ridge: mu2 must be positive");
  normal_ = matrix_.adjoint() * matrix_;
  normal_.diagonal().array() += mu2;
  llt_.compute(normal_);
  if (llt_.info() != Eigen::Success)
    throw std::runtime_error("ridge: normal-equation factorization failed");
}

ControlVector RidgeSolver::solve(const Eigen::VectorXd& rhs) const {
  if (matrix_.rows() != rhs.size())
    throw std::invalid_argument("ridge: rhs length must match matrix rows");
  const Eigen::VectorXcd b = matrix_.adjoint() * rhs.cast<Complex>();
  Eigen::VectorXcd theta = llt_.solve(b);
  theta += llt_.solve(b - normal_ * theta);  // one refinement step

  const double residual = (normal_ * theta - b).norm();
  if (residual > 1e-10 * (b.norm() + 1.0))
    throw std::runtime_error("ridge: normal-equation residual out of tolerance");
  return ControlVector::from(std::move(theta), 0.0);
}

ControlVector ridge(const Eigen::MatrixXcd& basis_to_output, const Eigen::VectorXd& rhs,
                    double mu2) {
  return RidgeSolver(basis_to_output, mu2).solve(rhs);
}

ControlVector truncate_top(const ControlVector& cv, int keep) {
  const int n = static_cast<int>(cv.coeffs.size());
  if (keep < 0 || keep > n)
    throw std::invalid_argument("truncate_top: keep count must lie in 0..N");
  const int bandwidth = (n - 1) / 2;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ma = std::abs(cv.coeffs(a));
    const double mb = std::abs(cv.coeffs(b));
    if (ma != mb) return ma > mb;
    const int fa = std::abs(a - bandwidth);
    const int fb = std::abs(b - bandwidth);
    if (fa != fb) return fa < fb;
    return a < b;  // negative m first
  });
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (int r = 0; r < keep; ++r) out(order[r]) = cv.coeffs(order[r]);
  return ControlVector::from(std::move(out), cv.zero_tol);
}

}  // namespace csc
