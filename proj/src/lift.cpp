#include "csc/lift.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csc {

namespace {

constexpr double kResolventGuard = 1e-9;  // eigenvalue proximity triggering quadrature
constexpr int kFallbackPoints = 20001;

// Composite Simpson weights for an odd point count over [0, len].
Eigen::VectorXd simpson_weights(int points, double len) {
  Eigen::VectorXd w(points);
  const double step = len / (points - 1);
  w(0) = w(points - 1) = step / 3.0;
  for (int i = 1; i < points - 1; ++i) w(i) = (i % 2 == 1 ? 4.0 : 2.0) * step / 3.0;
  return w;
}

// One Gram row by quadrature: entry offset(m) holds the integral over
// [0, t_n] of phi_n(tau) psi_m(tau) dtau. phi values come from stepping the
// matrix exponential backward across the uniform tau grid.
Eigen::RowVectorXcd quadrature_gram_row(const PlantModel& plant, const BasisSpec& spec, int n,
                                        int points) {
  const int N = spec.size();
  Eigen::RowVectorXcd out = Eigen::RowVectorXcd::Zero(N);
  if (n == 1) return out;
  const double t_n = spec.grid_point(n);
  const double step = t_n / (points - 1);
  const Eigen::VectorXd w = simpson_weights(points, t_n);
  const Eigen::MatrixXd back = matexp(-plant.dynamics, step);
  const double w1 = 2.0 * std::numbers::pi / spec.period;
  const double scale = 1.0 / std::sqrt(spec.period);

  Eigen::MatrixXd F = matexp(plant.dynamics, t_n);  // exp((t_n - tau) A) at tau = 0
  for (int i = 0; i < points; ++i) {
    const double tau = i * step;
    const double phi = plant.output.dot(F * plant.input);
    Complex cur = std::polar(w(i) * phi * scale, -spec.bandwidth * w1 * tau);
    const Complex base = std::polar(1.0, w1 * tau);
    for (int j = 0; j < N; ++j) {
      out(j) += cur;
      cur *= base;
    }
    F = F * back;
  }
  return out;
}

}  // namespace

Eigen::MatrixXd matexp(const Eigen::MatrixXd& A, double t) {
  if (A.rows() != A.cols()) throw std::invalid_argument("matexp: matrix must be square");
  if (!A.allFinite() || !std::isfinite(t))
    throw std::invalid_argument("matexp: entries must be finite");
  if (t < 0.0) throw std::invalid_argument("matexp: t must be nonnegative");
  return (t * A).exp();
}

Eigen::VectorXcd quadrature_state_column(const PlantModel& plant, const BasisSpec& spec,
                                         int m, int points) {
  if (points < 3 || points % 2 == 0)
    throw std::invalid_argument("quadrature_state_column: points must be odd and >= 3");
  const double T = spec.period;
  const double step = T / (points - 1);
  const Eigen::VectorXd w = simpson_weights(points, T);
  const Eigen::MatrixXd back = matexp(-plant.dynamics, step);
  const double omega = spec.frequency(m);
  const double scale = 1.0 / std::sqrt(T);

  Eigen::MatrixXd F = matexp(plant.dynamics, T);  // exp((T - tau) A) at tau = 0
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(plant.order());
  for (int i = 0; i < points; ++i) {
    const double tau = i * step;
    acc += (F * plant.input) * std::polar(w(i) * scale, omega * tau);
    F = F * back;
  }
  return acc;
}

Eigen::MatrixXcd quadrature_gram_oracle(const PlantModel& plant, const BasisSpec& spec,
                                        int points, Exec exec) {
  if (points < 3 || points % 2 == 0)
    throw std::invalid_argument("quadrature_gram_oracle: points must be odd and >= 3");
  PlantModel p = plant;
  p.validate();
  spec.validate();
  const int N = spec.size();
  Eigen::MatrixXcd G(N, N);

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int n = 1; n <= N; ++n) G.row(n - 1) = quadrature_gram_row(p, spec, n, points);
  } else {
    for (int n = 1; n <= N; ++n) G.row(n - 1) = quadrature_gram_row(p, spec, n, points);
  }
  return G;
}

LiftedSystem build_lifted(const PlantModel& plant, const BasisSpec& spec, Exec exec) {
  LiftedSystem sys;
  sys.plant = plant;
  sys.plant.validate();
  spec.validate();
  sys.spec = spec;

  const int N = spec.size();
  const int nu = sys.plant.order();
  const Eigen::MatrixXd& A = sys.plant.dynamics;
  const Eigen::VectorXcd b = sys.plant.input.cast<Complex>();
  const Eigen::VectorXcd c = sys.plant.output.cast<Complex>();
  const double sqrt_T = std::sqrt(spec.period);

  sys.free_response.resize(N, nu);
  sys.basis_to_output.resize(N, N);
  sys.input_to_state.resize(nu, N);
  sys.output_resolvent.resize(N, nu);
  sys.resolvent_gain.resize(N);
  sys.state_transition = matexp(A, spec.period);

  // exp(t_n A) and exp(t_n A) b at every grid point, shared by all columns.
  std::vector<Eigen::VectorXcd> exp_b(N);
  for (int n = 1; n <= N; ++n) {
    const Eigen::MatrixXd E = matexp(A, spec.grid_point(n));
    sys.free_response.row(n - 1) = sys.plant.output.transpose() * E;
    exp_b[n - 1] = (E * sys.plant.input).cast<Complex>();
  }

  const Eigen::VectorXcd eigs = Eigen::EigenSolver<Eigen::MatrixXd>(A).eigenvalues();
  const Eigen::VectorXcd transition_b = sys.state_transition.cast<Complex>() * b;

  std::vector<char> fell_back(N, 0);
  auto build_column = [&](int m) {
    const int col = spec.offset(m);
    const double omega = spec.frequency(m);
    const Complex jw(0.0, omega);
    if ((eigs.array() - jw).abs().minCoeff() < kResolventGuard) {
      for (int n = 1; n <= N; ++n)
        sys.basis_to_output(n - 1, col) =
            quadrature_gram_row(sys.plant, spec, n, kFallbackPoints)(col);
      sys.input_to_state.col(col) =
          quadrature_state_column(sys.plant, spec, m, kFallbackPoints);
      sys.output_resolvent.row(col).setZero();
      sys.resolvent_gain(col) = Complex(0.0, 0.0);
      fell_back[col] = 1;
      return;
    }
    Eigen::MatrixXcd B = -A.cast<Complex>();
    B.diagonal().array() += jw;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(B);
    const Eigen::VectorXcd q = lu.transpose().solve(c);  // q^T = c^T B^{-1}
    const Complex gain = (q.transpose() * b)(0);
    sys.output_resolvent.row(col) = q.transpose();
    sys.resolvent_gain(col) = gain;
    sys.basis_to_output(0, col) = Complex(0.0, 0.0);
    for (int n = 2; n <= N; ++n) {
      const Complex phase = std::polar(1.0, omega * spec.grid_point(n));
      sys.basis_to_output(n - 1, col) =
          (gain * phase - (q.transpose() * exp_b[n - 1])(0)) / sqrt_T;
    }
    sys.input_to_state.col(col) =
        lu.solve(std::polar(1.0, omega * spec.period) * b - transition_b) / sqrt_T;
  };

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int m = -spec.bandwidth; m <= spec.bandwidth; ++m) build_column(m);
  } else {
    for (int m = -spec.bandwidth; m <= spec.bandwidth; ++m) build_column(m);
  }

  for (int m = -spec.bandwidth; m <= spec.bandwidth; ++m)
    if (fell_back[spec.offset(m)]) sys.fallback_columns.push_back(m);
  return sys;
}

}  // namespace csc
