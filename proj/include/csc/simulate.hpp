#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csc/exec.hpp"
#include "csc/lift.hpp"
#include "csc/sampling.hpp"
#include "csc/solvers.hpp"

namespace csc {

enum class ControllerKind { Sparse, Ridge, RidgeTruncated };

struct Controller {
  ControllerKind kind = ControllerKind::Sparse;
  SolverConfig solver;                 // sparse controller
  double mu2 = 0.0005;                 // ridge controllers
  std::vector<int> sparsity_schedule;  // ridge_truncated: s_k per period
};

// How the reference was constructed; echoed into every output file.
struct ReferenceRecipe {
  enum class Kind { Sinusoids, Step };
  Kind kind = Kind::Sinusoids;
  std::vector<SinusoidTerm> terms;
  double level = 0.0;
};

struct RunConfig {
  PlantModel plant;
  BasisSpec spec;
  ReferenceSignal reference;
  std::optional<ReferenceRecipe> recipe;
  int sample_count = 33;   // K measurements per period
  int periods = 101;
  std::uint64_t seed = 1;
  Controller controller;
  int fine_grid = 2001;    // odd; points per period for error quadrature

  // Checks invariants and fills defaulted fields (zero initial state).
  void validate();
};

struct RunResult {
  RunConfig config;                           // resolved configuration echo
  std::vector<double> err_l2;                 // ||e_k||_2 per period
  std::vector<int> sparsity;                  // ||theta[k]||_0
  std::vector<Eigen::VectorXcd> theta_history;
  std::vector<Eigen::VectorXd> state_history; // x[0..completed]
  std::vector<std::int64_t> bytes_per_period;
  double rms = 0.0;
  double avg_sparsity = 0.0;
  bool diverged = false;
  int diverged_period = -1;
  double max_control_imag = 0.0;  // decoded-input residue over all fine grids
  double max_state_imag = 0.0;    // propagate residue over all periods

  int completed_periods() const { return static_cast<int>(err_l2.size()); }
};

// Precomputed per-grid tables shared by every period of a run.
struct TraceTables {
  Eigen::VectorXd grid;                 // evaluation times in [0, T]
  Eigen::VectorXd weights;              // Simpson weights (empty for plain eval)
  Eigen::MatrixXd output_response;      // rows c^T exp(t_i A)
  Eigen::MatrixXd input_response;       // rows (exp(t_i A) b)^T
  std::vector<Complex> basis_phase;     // row-major points x N: e^{j w_m t_i}
  Eigen::MatrixXcd fallback_response;   // points x |fallback|: w_m(t_i)
  std::vector<int> fallback_offsets;    // coefficient offsets of those columns
  Eigen::MatrixXcd output_resolvent;    // copied from the lifted system
  Eigen::VectorXcd resolvent_gain;
  int basis_size = 0;
  double inv_sqrt_period = 0.0;
};

TraceTables make_trace_tables(const LiftedSystem& sys, const Eigen::VectorXd& grid,
                              bool with_simpson_weights);

struct PeriodTrace {
  Eigen::VectorXd output;   // y(t_i)
  double max_output_imag = 0.0;
  double max_control_imag = 0.0;
};

// Output trace y(t_i) = c^T e^{t_i A} x + sum_m theta_m w_m(t_i) on the
// table grid. Serial and parallel paths are bit-identical.
PeriodTrace eval_period(const TraceTables& tables, const Eigen::VectorXd& state,
                        const Eigen::VectorXcd& coeffs, Exec exec);

// One controller invocation: sparse solves the row-subsampled l1-l2
// problem, ridge the full-grid closed form, ridge_truncated additionally
// keeps schedule[period] entries. selector is required by the sparse
// controller only; warm feeds FISTA when the solver config asks for it.
ControlVector control_step(const LiftedSystem& sys, const SampleSelector* selector,
                           const ReferenceSignal& reference, const Eigen::VectorXd& state,
                           const Controller& controller,
                           const Eigen::VectorXcd* warm = nullptr, int period = 0);

// Exact one-period state update Re(A_d x + Z theta). Throws on a
// conjugate-symmetry violation; the imaginary residue (written to
// imag_residue when given) must stay below 1e-9 relative to the data scale.
Eigen::VectorXd propagate(const LiftedSystem& sys, const Eigen::VectorXd& state,
                          const ControlVector& cv, double* imag_residue = nullptr);

// y on an arbitrary grid within [0, T] for the given state and coefficients.
Eigen::VectorXd output_trace(const LiftedSystem& sys, const Eigen::VectorXd& state,
                             const ControlVector& cv, const Eigen::VectorXd& grid,
                             Exec exec = Exec::Parallel);

// The closed loop of the networked control system: per period, sample the
// state, draw a fresh selector (sparse only), solve for theta, apply the
// decoded input, integrate the L2 tracking error on the fine grid, and
// propagate. Stops early and flags divergence when ||x|| exceeds
// 1e6 (1 + ||x0||) or turns non-finite.
RunResult run_closed_loop(const RunConfig& cfg, Exec exec = Exec::Parallel);

// Ridge baseline truncated to a per-period sparsity schedule (length must
// equal cfg.periods), run in closed loop.
RunResult compare_truncated(const RunConfig& cfg, const std::vector<int>& schedule,
                            Exec exec = Exec::Parallel);

}  // namespace csc
