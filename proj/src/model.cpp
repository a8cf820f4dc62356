#include "csc/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csc {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void PlantModel::validate() {
  const auto nu = dynamics.rows();
  require(nu >= 1, "plant: state dimension must be at least 1");
  require(dynamics.cols() == nu, "plant: dynamics matrix must be square");
  require(input.size() == nu, "plant: input vector length must match the state dimension");
  require(output.size() == nu, "plant: output vector length must match the state dimension");
  if (initial_state.size() == 0) initial_state = Eigen::VectorXd::Zero(nu);
  require(initial_state.size() == nu,
          "plant: initial state length must match the state dimension");
  require(dynamics.allFinite() && input.allFinite() && output.allFinite() &&
              initial_state.allFinite(),
          "plant: entries must be finite");
}

void BasisSpec::validate() const {
  require(period > 0.0 && std::isfinite(period), "basis: period must be positive");
  require(bandwidth >= 1, "basis: bandwidth index must be at least 1");
}

double BasisSpec::frequency(int m) const {
  require(std::abs(m) <= bandwidth, "basis: frequency index out of range");
  return 2.0 * std::numbers::pi * m / period;
}

double BasisSpec::grid_point(int n) const {
  require(n >= 1 && n <= size(), "basis: grid index out of range");
  return (n - 1) * grid_step();
}

Eigen::VectorXd BasisSpec::grid() const {
  Eigen::VectorXd t(size());
  for (int n = 1; n <= size(); ++n) t(n - 1) = grid_point(n);
  return t;
}

Complex basis_eval(const BasisSpec& spec, int m, double t) {
  spec.validate();
  require(std::abs(m) <= spec.bandwidth, "basis_eval: |m| exceeds the bandwidth index");
  require(t >= 0.0 && t <= spec.period, "basis_eval: t outside [0, T]");
  return std::polar(1.0 / std::sqrt(spec.period), spec.frequency(m) * t);
}

ReferenceSignal reference_from_sinusoids(std::span<const SinusoidTerm> terms,
                                         const BasisSpec& spec) {
  spec.validate();
  const double half = std::sqrt(spec.period) / 2.0;
  ReferenceSignal ref;
  ref.coeffs = Eigen::VectorXcd::Zero(spec.size());
  std::string label;
  for (const auto& term : terms) {
    require(term.freq_index >= 0 && term.freq_index <= spec.bandwidth,
            "reference: frequency index must lie in 0..M");
    const int plus = spec.offset(term.freq_index);
    const int minus = spec.offset(-term.freq_index);
    if (term.kind == SinusoidTerm::Kind::Cos) {
      ref.coeffs(plus) += term.amplitude * half;
      ref.coeffs(minus) += term.amplitude * half;
    } else {
      ref.coeffs(plus) += Complex(0.0, -term.amplitude * half);
      ref.coeffs(minus) += Complex(0.0, term.amplitude * half);
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%g*%s(w%d t)", label.empty() ? "" : " + ",
                  term.amplitude, term.kind == SinusoidTerm::Kind::Cos ? "cos" : "sin",
                  term.freq_index);
    label += buf;
  }
  ref.label = label.empty() ? "zero" : label;
  return ref;
}

ReferenceSignal reference_from_step(double level, const BasisSpec& spec) {
  spec.validate();
  ReferenceSignal ref;
  ref.coeffs = Eigen::VectorXcd::Zero(spec.size());
  ref.coeffs(spec.offset(0)) = level * std::sqrt(spec.period);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "step(%g)", level);
  ref.label = buf;
  return ref;
}

double conjugate_symmetry_residue(const Eigen::VectorXcd& v) {
  const auto n = v.size();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(v(i) - std::conj(v(n - 1 - i))));
  return worst;
}

double signal_eval(const Eigen::VectorXcd& coeffs, const BasisSpec& spec, double t) {
  spec.validate();
  require(coeffs.size() == spec.size(), "signal_eval: coefficient count must equal N");
  require(t >= 0.0 && t <= spec.period, "signal_eval: t outside [0, T]");
  if (conjugate_symmetry_residue(coeffs) > 1e-9)
    throw std::invalid_argument("signal_eval: coefficients are not conjugate-symmetric");
  Complex sum(0.0, 0.0);
  const double w1 = 2.0 * std::numbers::pi / spec.period;
  for (int m = -spec.bandwidth; m <= spec.bandwidth; ++m)
    sum += coeffs(spec.offset(m)) * std::polar(1.0, w1 * m * t);
  sum /= std::sqrt(spec.period);
  if (std::abs(sum.imag()) >= 1e-9)
    throw std::logic_error("signal_eval: imaginary residue exceeds 1e-9");
  return sum.real();
}

Eigen::VectorXd grid_values(const Eigen::VectorXcd& coeffs, const BasisSpec& spec) {
  Eigen::VectorXd values(spec.size());
  for (int n = 1; n <= spec.size(); ++n)
    values(n - 1) = signal_eval(coeffs, spec, spec.grid_point(n));
  return values;
}

}  // namespace csc
