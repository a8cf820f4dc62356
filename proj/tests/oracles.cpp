#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

using csc::Complex;

Eigen::MatrixXd taylor_matexp(const Eigen::MatrixXd& A, double t, int terms) {
  const Eigen::MatrixXd tA = t * A;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(A.rows(), A.cols());
  Eigen::MatrixXd term = sum;
  for (int k = 1; k <= terms; ++k) {
    term = term * tA / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

namespace {

// u(t) = Re sum_m theta_m psi_m(t), evaluated with a phase recurrence.
double decode_input(const Eigen::VectorXcd& coeffs, const csc::BasisSpec& spec, double t) {
  const double w1 = 2.0 * std::numbers::pi / spec.period;
  Complex cur = std::polar(1.0, -spec.bandwidth * w1 * t);
  const Complex base = std::polar(1.0, w1 * t);
  Complex sum(0.0, 0.0);
  for (int i = 0; i < spec.size(); ++i) {
    sum += coeffs(i) * cur;
    cur *= base;
  }
  return sum.real() / std::sqrt(spec.period);
}

}  // namespace

Rk4Result rk4_simulate(const csc::PlantModel& plant, const csc::BasisSpec& spec,
                       const Eigen::VectorXcd& coeffs, const Eigen::VectorXd& x0, int steps) {
  const double h = spec.period / steps;
  // Input samples on the half-step grid shared by the RK4 stages.
  std::vector<double> u(2 * static_cast<std::size_t>(steps) + 1);
  for (std::size_t j = 0; j < u.size(); ++j)
    u[j] = decode_input(coeffs, spec, std::min(j * h / 2.0, spec.period));

  const Eigen::MatrixXd& A = plant.dynamics;
  const Eigen::VectorXd& b = plant.input;
  Rk4Result res;
  res.output.reserve(steps + 1);
  Eigen::VectorXd x = x0;
  res.output.push_back(plant.output.dot(x));
  for (int i = 0; i < steps; ++i) {
    const Eigen::VectorXd k1 = A * x + b * u[2 * i];
    const Eigen::VectorXd k2 = A * (x + 0.5 * h * k1) + b * u[2 * i + 1];
    const Eigen::VectorXd k3 = A * (x + 0.5 * h * k2) + b * u[2 * i + 1];
    const Eigen::VectorXd k4 = A * (x + h * k3) + b * u[2 * i + 2];
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    res.output.push_back(plant.output.dot(x));
  }
  res.final_state = x;
  return res;
}

Eigen::VectorXcd ista(const Eigen::MatrixXcd& measurement, const Eigen::VectorXd& target,
                      double mu, int iterations) {
  const double L = 2.02 * std::pow(svd_sigma_max(measurement), 2);
  const Eigen::VectorXcd target_c = target.cast<Complex>();
  Eigen::VectorXcd theta = Eigen::VectorXcd::Zero(measurement.cols());
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXcd step =
        theta - (2.0 / L) * (measurement.adjoint() * (measurement * theta - target_c));
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      const double mag = std::abs(step(i));
      theta(i) = mag <= mu / L ? Complex(0.0, 0.0) : step(i) * (1.0 - (mu / L) / mag);
    }
  }
  return theta;
}

double objective_l1l2(const Eigen::MatrixXcd& measurement, const Eigen::VectorXd& target,
                      double mu, const Eigen::VectorXcd& theta) {
  const double resid = (measurement * theta - target.cast<Complex>()).norm();
  return resid * resid + mu * theta.cwiseAbs().sum();
}

double svd_sigma_max(const Eigen::MatrixXcd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

Eigen::VectorXcd augmented_least_squares(const Eigen::MatrixXcd& G, const Eigen::VectorXd& rhs,
                                         double mu2) {
  const Eigen::Index n = G.cols();
  Eigen::MatrixXcd stacked(G.rows() + n, n);
  stacked.topRows(G.rows()) = G;
  stacked.bottomRows(n) =
      std::sqrt(mu2) * Eigen::MatrixXcd::Identity(n, n);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(G.rows() + n);
  b.head(G.rows()) = rhs.cast<Complex>();
  return stacked.colPivHouseholderQr().solve(b);
}

Complex simpson(const std::function<Complex(double)>& f, double a, double b, int points) {
  const double h = (b - a) / (points - 1);
  Complex sum = f(a) + f(b);
  for (int i = 1; i < points - 1; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return sum * (h / 3.0);
}

Eigen::VectorXcd random_symmetric_coeffs(std::mt19937_64& rng, int bandwidth, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Eigen::VectorXcd v(2 * bandwidth + 1);
  v(bandwidth) = Complex(dist(rng), 0.0);
  for (int m = 1; m <= bandwidth; ++m) {
    const Complex c(dist(rng), dist(rng));
    v(bandwidth + m) = c;
    v(bandwidth - m) = std::conj(c);
  }
  return v;
}

Eigen::VectorXd random_vector(std::mt19937_64& rng, int n, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

}  // namespace oracle
