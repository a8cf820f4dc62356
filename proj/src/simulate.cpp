#include "csc/simulate.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "csc/codec.hpp"

namespace csc {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Simpson weights for an odd uniform grid spanning [0, T].
Eigen::VectorXd simpson_weights(int points, double len) {
  Eigen::VectorXd w(points);
  const double step = len / (points - 1);
  w(0) = w(points - 1) = step / 3.0;
  for (int i = 1; i < points - 1; ++i) w(i) = (i % 2 == 1 ? 4.0 : 2.0) * step / 3.0;
  return w;
}

// Advances the forced state integral xi(t) = int_0^t exp((t-tau)A) b psi_m
// across one segment [a, a+delta] with a local 9-point Simpson rule.
class ForcedStateStepper {
 public:
  ForcedStateStepper(const PlantModel& plant, const BasisSpec& spec, int m)
      : plant_(plant), omega_(spec.frequency(m)), scale_(1.0 / std::sqrt(spec.period)) {}

  void advance(double a, double delta, Eigen::VectorXcd& xi) {
    if (delta == 0.0) return;
    prepare(delta);
    xi = hold_ * xi;
    const double sub = delta / (kSub - 1);
    for (int j = 0; j < kSub; ++j) {
      const double tau = a + j * sub;
      xi += kernels_[j] * std::polar(weights_(j) * scale_, omega_ * tau);
    }
  }

 private:
  static constexpr int kSub = 9;

  void prepare(double delta) {
    if (delta == cached_delta_) return;
    hold_ = matexp(plant_.dynamics, delta).cast<Complex>();
    weights_ = simpson_weights(kSub, delta);
    kernels_.resize(kSub);
    const double sub = delta / (kSub - 1);
    for (int j = 0; j < kSub; ++j)
      kernels_[j] =
          (matexp(plant_.dynamics, delta - j * sub) * plant_.input).cast<Complex>();
    cached_delta_ = delta;
  }

  const PlantModel& plant_;
  double omega_;
  double scale_;
  double cached_delta_ = -1.0;
  Eigen::MatrixXcd hold_;
  Eigen::VectorXd weights_;
  std::vector<Eigen::VectorXcd> kernels_;
};

struct PointAccum {
  double output;
  double output_imag;
  double control_imag;
};

PointAccum eval_point(const TraceTables& t, int i, const Eigen::VectorXd& state,
                      const Eigen::VectorXcd& coeffs, const Eigen::VectorXcd& gains,
                      const Eigen::VectorXcd& resolvent_mix) {
  const int N = t.basis_size;
  const Complex* phase = t.basis_phase.data() + static_cast<std::size_t>(i) * N;
  Complex conv(0.0, 0.0);
  Complex input_sum(0.0, 0.0);
  for (int m = 0; m < N; ++m) {
    conv += gains(m) * phase[m];
    input_sum += coeffs(m) * phase[m];
  }
  for (Eigen::Index j = 0; j < resolvent_mix.size(); ++j)
    conv -= resolvent_mix(j) * t.input_response(i, j);
  for (std::size_t f = 0; f < t.fallback_offsets.size(); ++f)
    conv += coeffs(t.fallback_offsets[f]) * t.fallback_response(i, static_cast<Eigen::Index>(f));

  PointAccum out;
  out.output = t.output_response.row(i).dot(state) + t.inv_sqrt_period * conv.real();
  out.output_imag = t.inv_sqrt_period * std::abs(conv.imag());
  out.control_imag = t.inv_sqrt_period * std::abs(input_sum.imag());
  return out;
}

double realness_tolerance(const Eigen::VectorXcd& coeffs) {
  return 1e-9 * std::max(1.0, coeffs.lpNorm<Eigen::Infinity>());
}

}  // namespace

void RunConfig::validate() {
  plant.validate();
  spec.validate();
  require(reference.coeffs.size() == spec.size(),
          "run: reference coefficient count must equal N");
  require(periods >= 1, "run: periods must be at least 1");
  require(sample_count >= 1 && sample_count <= spec.size(), "run: K must lie in 1..N");
  require(fine_grid >= 201 && fine_grid % 2 == 1, "run: fine_grid must be odd and >= 201");
  controller.solver.validate();
  if (controller.kind != ControllerKind::Sparse)
    require(controller.mu2 > 0.0, "run: mu2 must be positive");
  if (controller.kind == ControllerKind::RidgeTruncated) {
    require(static_cast<int>(controller.sparsity_schedule.size()) == periods,
            "run: sparsity schedule length must equal the period count");
    for (int s : controller.sparsity_schedule)
      require(s >= 0 && s <= spec.size(), "run: schedule entries must lie in 0..N");
  }
}

TraceTables make_trace_tables(const LiftedSystem& sys, const Eigen::VectorXd& grid,
                              bool with_simpson_weights) {
  const BasisSpec& spec = sys.spec;
  const int N = spec.size();
  const int P = static_cast<int>(grid.size());
  require(P >= 1, "trace: grid must be nonempty");
  for (int i = 0; i < P; ++i) {
    require(grid(i) >= 0.0 && grid(i) <= spec.period, "trace: grid point outside [0, T]");
    if (i > 0) require(grid(i) > grid(i - 1), "trace: grid must be strictly increasing");
  }
  if (with_simpson_weights)
    require(P >= 3 && P % 2 == 1 && grid(0) == 0.0 && grid(P - 1) == spec.period,
            "trace: Simpson grid must be odd and span [0, T]");

  TraceTables t;
  t.grid = grid;
  if (with_simpson_weights) t.weights = simpson_weights(P, spec.period);
  t.basis_size = N;
  t.inv_sqrt_period = 1.0 / std::sqrt(spec.period);
  t.output_resolvent = sys.output_resolvent;
  t.resolvent_gain = sys.resolvent_gain;

  const int nu = sys.plant.order();
  t.output_response.resize(P, nu);
  t.input_response.resize(P, nu);
  for (int i = 0; i < P; ++i) {
    const Eigen::MatrixXd E = matexp(sys.plant.dynamics, grid(i));
    t.output_response.row(i) = sys.plant.output.transpose() * E;
    t.input_response.row(i) = (E * sys.plant.input).transpose();
  }

  const double w1 = 2.0 * std::numbers::pi / spec.period;
  t.basis_phase.resize(static_cast<std::size_t>(P) * N);
  for (int i = 0; i < P; ++i) {
    Complex cur = std::polar(1.0, -spec.bandwidth * w1 * grid(i));
    const Complex base = std::polar(1.0, w1 * grid(i));
    Complex* row = t.basis_phase.data() + static_cast<std::size_t>(i) * N;
    for (int m = 0; m < N; ++m) {
      row[m] = cur;
      cur *= base;
    }
  }

  for (int m : sys.fallback_columns) t.fallback_offsets.push_back(spec.offset(m));
  t.fallback_response.resize(P, static_cast<Eigen::Index>(t.fallback_offsets.size()));
  for (std::size_t f = 0; f < sys.fallback_columns.size(); ++f) {
    ForcedStateStepper stepper(sys.plant, spec, sys.fallback_columns[f]);
    Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(nu);
    double at = 0.0;
    for (int i = 0; i < P; ++i) {
      stepper.advance(at, grid(i) - at, xi);
      at = grid(i);
      t.fallback_response(i, static_cast<Eigen::Index>(f)) =
          (sys.plant.output.cast<Complex>().transpose() * xi)(0);
    }
  }
  return t;
}

PeriodTrace eval_period(const TraceTables& t, const Eigen::VectorXd& state,
                        const Eigen::VectorXcd& coeffs, Exec exec) {
  require(coeffs.size() == t.basis_size, "trace: coefficient count must equal N");
  require(state.size() == t.output_response.cols(), "trace: state dimension mismatch");
  const int P = static_cast<int>(t.grid.size());
  const Eigen::VectorXcd gains = coeffs.cwiseProduct(t.resolvent_gain);
  const Eigen::VectorXcd resolvent_mix = t.output_resolvent.transpose() * coeffs;

  PeriodTrace trace;
  trace.output.resize(P);
  Eigen::VectorXd imag_y(P), imag_u(P);

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < P; ++i) {
      const PointAccum a = eval_point(t, i, state, coeffs, gains, resolvent_mix);
      trace.output(i) = a.output;
      imag_y(i) = a.output_imag;
      imag_u(i) = a.control_imag;
    }
  } else {
    for (int i = 0; i < P; ++i) {
      const PointAccum a = eval_point(t, i, state, coeffs, gains, resolvent_mix);
      trace.output(i) = a.output;
      imag_y(i) = a.output_imag;
      imag_u(i) = a.control_imag;
    }
  }
  trace.max_output_imag = imag_y.maxCoeff();
  trace.max_control_imag = imag_u.maxCoeff();
  return trace;
}

namespace {

// Shared by control_step and the run loop; `cached` reuses the ridge
// factorization across periods (same arithmetic as a fresh solve).
ControlVector solve_controller(const LiftedSystem& sys, const SampleSelector* selector,
                               const Eigen::VectorXd& rhs, const Controller& controller,
                               const RidgeSolver* cached, const Eigen::VectorXcd* warm,
                               int period) {
  switch (controller.kind) {
    case ControllerKind::Sparse: {
      require(selector != nullptr, "control_step: sparse controller needs a selector");
      const Eigen::MatrixXcd measurement = select_rows(*selector, sys.basis_to_output);
      const Eigen::VectorXd target = select_rows(*selector, rhs);
      return fista(measurement, target, controller.solver, warm);
    }
    case ControllerKind::Ridge:
      return cached ? cached->solve(rhs) : ridge(sys.basis_to_output, rhs, controller.mu2);
    case ControllerKind::RidgeTruncated: {
      require(period >= 0 &&
                  period < static_cast<int>(controller.sparsity_schedule.size()),
              "control_step: period outside the sparsity schedule");
      const ControlVector full =
          cached ? cached->solve(rhs) : ridge(sys.basis_to_output, rhs, controller.mu2);
      return truncate_top(full, controller.sparsity_schedule[period]);
    }
  }
  throw std::logic_error("control_step: unknown controller kind");
}

}  // namespace

ControlVector control_step(const LiftedSystem& sys, const SampleSelector* selector,
                           const ReferenceSignal& reference, const Eigen::VectorXd& state,
                           const Controller& controller, const Eigen::VectorXcd* warm,
                           int period) {
  const Eigen::VectorXd r_vec = grid_values(reference.coeffs, sys.spec);
  const Eigen::VectorXd rhs = r_vec - sys.free_response * state;
  return solve_controller(sys, selector, rhs, controller, nullptr, warm, period);
}

Eigen::VectorXd propagate(const LiftedSystem& sys, const Eigen::VectorXd& state,
                          const ControlVector& cv, double* imag_residue) {
  require(cv.coeffs.size() == sys.spec.size(), "propagate: coefficient count must equal N");
  require(state.size() == sys.plant.order(), "propagate: state dimension mismatch");
  if (conjugate_symmetry_residue(cv.coeffs) > 1e-9)
    throw std::invalid_argument("propagate: coefficients are not conjugate-symmetric");
  const Eigen::VectorXcd next =
      (sys.state_transition * state).cast<Complex>() + sys.input_to_state * cv.coeffs;
  const double residue = next.imag().lpNorm<Eigen::Infinity>();
  if (imag_residue) *imag_residue = residue;
  if (residue > realness_tolerance(cv.coeffs))
    throw std::logic_error("propagate: imaginary residue out of tolerance");
  return next.real();
}

Eigen::VectorXd output_trace(const LiftedSystem& sys, const Eigen::VectorXd& state,
                             const ControlVector& cv, const Eigen::VectorXd& grid,
                             Exec exec) {
  if (conjugate_symmetry_residue(cv.coeffs) > 1e-9)
    throw std::invalid_argument("output_trace: coefficients are not conjugate-symmetric");
  const TraceTables tables = make_trace_tables(sys, grid, false);
  const PeriodTrace trace = eval_period(tables, state, cv.coeffs, exec);
  if (trace.max_output_imag > realness_tolerance(cv.coeffs))
    throw std::logic_error("output_trace: imaginary residue out of tolerance");
  return trace.output;
}

RunResult run_closed_loop(const RunConfig& cfg_in, Exec exec) {
  RunConfig cfg = cfg_in;
  cfg.validate();

  RunResult result;
  result.config = cfg;

  const LiftedSystem sys = build_lifted(cfg.plant, cfg.spec, exec);
  const int N = cfg.spec.size();

  Eigen::VectorXd fine(cfg.fine_grid);
  for (int i = 0; i < cfg.fine_grid; ++i)
    fine(i) = cfg.spec.period * i / (cfg.fine_grid - 1);
  fine(cfg.fine_grid - 1) = cfg.spec.period;
  const TraceTables tables = make_trace_tables(sys, fine, true);

  Eigen::VectorXd r_fine(cfg.fine_grid);
  for (int i = 0; i < cfg.fine_grid; ++i)
    r_fine(i) = signal_eval(cfg.reference.coeffs, cfg.spec, fine(i));

  const Eigen::VectorXd r_vec = grid_values(cfg.reference.coeffs, cfg.spec);
  std::unique_ptr<RidgeSolver> cached_ridge;
  if (cfg.controller.kind != ControllerKind::Sparse)
    cached_ridge = std::make_unique<RidgeSolver>(sys.basis_to_output, cfg.controller.mu2);

  std::mt19937_64 rng(cfg.seed);
  Eigen::VectorXd x = cfg.plant.initial_state;
  const double diverge_limit = 1e6 * (1.0 + x.norm());
  Eigen::VectorXcd warm = Eigen::VectorXcd::Zero(N);

  for (int k = 0; k < cfg.periods; ++k) {
    result.state_history.push_back(x);
    const double xn = x.norm();
    if (!std::isfinite(xn) || xn > diverge_limit) {
      result.diverged = true;
      result.diverged_period = k;
      break;
    }

    const Eigen::VectorXd rhs = r_vec - sys.free_response * x;
    ControlVector theta;
    if (cfg.controller.kind == ControllerKind::Sparse) {
      const SampleSelector sel = draw_selector(rng, N, cfg.sample_count);
      theta = solve_controller(sys, &sel, rhs, cfg.controller, nullptr, &warm, k);
    } else {
      theta = solve_controller(sys, nullptr, rhs, cfg.controller, cached_ridge.get(), nullptr, k);
    }

    const PeriodTrace trace = eval_period(tables, x, theta.coeffs, exec);
    double err_sq = 0.0;
    for (int i = 0; i < cfg.fine_grid; ++i) {
      const double d = trace.output(i) - r_fine(i);
      err_sq += tables.weights(i) * d * d;
    }
    result.err_l2.push_back(std::sqrt(err_sq));
    result.sparsity.push_back(theta.support_count);
    result.theta_history.push_back(theta.coeffs);
    result.bytes_per_period.push_back(
        static_cast<std::int64_t>(encode_control(theta, static_cast<std::uint64_t>(k)).size()));
    result.max_control_imag = std::max(result.max_control_imag, trace.max_control_imag);
    result.max_control_imag = std::max(result.max_control_imag, trace.max_output_imag);

    double residue = 0.0;
    x = propagate(sys, x, theta, &residue);
    result.max_state_imag = std::max(result.max_state_imag, residue);
    warm = result.theta_history.back();
  }
  if (!result.diverged) result.state_history.push_back(x);

  const int completed = result.completed_periods();
  if (completed > 0) {
    double total_sq = 0.0;
    for (double e : result.err_l2) total_sq += e * e;
    result.rms = std::sqrt(total_sq / (cfg.spec.period * completed));
    double total_support = 0.0;
    for (int s : result.sparsity) total_support += s;
    result.avg_sparsity = total_support / completed;
  }
  return result;
}

RunResult compare_truncated(const RunConfig& cfg_in, const std::vector<int>& schedule,
                            Exec exec) {
  RunConfig cfg = cfg_in;
  if (static_cast<int>(schedule.size()) != cfg.periods)
    throw std::invalid_argument("compare_truncated: schedule length must equal periods");
  cfg.controller.kind = ControllerKind::RidgeTruncated;
  cfg.controller.sparsity_schedule = schedule;
  return run_closed_loop(cfg, exec);
}

}  // namespace csc
