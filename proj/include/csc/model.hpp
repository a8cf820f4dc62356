#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace csc {

using Complex = std::complex<double>;

// Continuous-time SISO LTI plant xdot = A x + b u, y = c^T x.
struct PlantModel {
  Eigen::MatrixXd dynamics;       // A, nu x nu
  Eigen::VectorXd input;          // b
  Eigen::VectorXd output;         // c
  Eigen::VectorXd initial_state;  // x(0); empty means all-zero

  int order() const { return static_cast<int>(dynamics.rows()); }

  // Throws std::invalid_argument on inconsistent dimensions or non-finite
  // entries. Fills initial_state with zeros when empty.
  void validate();
};

// The band-limited signal space: period T and bandwidth index M define the
// N = 2M+1 complex exponentials psi_m(t) = exp(j w_m t)/sqrt(T) with
// w_m = 2 pi m / T, plus the uniform Nyquist grid t_n = (n-1) T/(N-1).
struct BasisSpec {
  double period = 2.0 * 3.14159265358979323846;  // T
  int bandwidth = 1;                             // M

  int size() const { return 2 * bandwidth + 1; }      // N
  double grid_step() const { return period / (size() - 1); }  // h
  double frequency(int m) const;                      // w_m, |m| <= M
  double grid_point(int n) const;                     // t_n, n in 1..N
  Eigen::VectorXd grid() const;                       // all t_n

  // Storage offset of coefficient index m in a length-N vector.
  int offset(int m) const { return m + bandwidth; }

  void validate() const;
};

// A reference signal r in V_M, stored as its coefficient vector in the
// psi_m basis. Real-valued signals have conjugate-symmetric coefficients.
struct ReferenceSignal {
  Eigen::VectorXcd coeffs;  // length N, entry offset(m) holds rho_m
  std::string label;
};

struct SinusoidTerm {
  enum class Kind { Sin, Cos };
  Kind kind;
  int freq_index;    // q: the term frequency is w_q = 2 pi q / T
  double amplitude;
};

// psi_m(t). Throws on |m| > M or t outside [0, T].
Complex basis_eval(const BasisSpec& spec, int m, double t);

// Coefficients of sum_i a_i sin/cos(w_{q_i} t). Each q must lie in 0..M.
ReferenceSignal reference_from_sinusoids(std::span<const SinusoidTerm> terms,
                                         const BasisSpec& spec);

// Constant reference r(t) = level: a single coefficient at m = 0.
ReferenceSignal reference_from_step(double level, const BasisSpec& spec);

// Evaluates sum_m rho_m psi_m(t) and returns the real part. Throws if rho
// is not conjugate-symmetric within 1e-9 (a programming error upstream).
double signal_eval(const Eigen::VectorXcd& coeffs, const BasisSpec& spec, double t);

// Signal values at the Nyquist grid points t_1..t_N.
Eigen::VectorXd grid_values(const Eigen::VectorXcd& coeffs, const BasisSpec& spec);

// Max entrywise deviation from conjugate symmetry, |v[-m] - conj(v[m])|.
double conjugate_symmetry_residue(const Eigen::VectorXcd& v);

}  // namespace csc
