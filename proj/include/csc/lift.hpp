#pragma once

#include <Eigen/Dense>
#include <vector>

#include "csc/exec.hpp"
#include "csc/model.hpp"

namespace csc {

// exp(t A) by scaling-and-squaring. Throws on non-square A, non-finite
// entries, or t < 0.
Eigen::MatrixXd matexp(const Eigen::MatrixXd& A, double t);

// One control period of the plant, lifted to finite-dimensional maps.
//
//   basis_to_output[n,m] = integral_0^{t_n} phi_n(t) psi_m(t) dt
//   free_response[n,:]   = c^T exp(t_n A)
//   state_transition     = exp(T A)
//   input_to_state[:,m]  = integral_0^T exp((T-tau) A) b psi_m(tau) dtau
//
// where phi_n(t) = c^T exp((t_n - t) A) b on [0, t_n] and 0 after.
// output_resolvent row m holds c^T (j w_m I - A)^{-1} and resolvent_gain
// holds that row applied to b; for columns built by the quadrature
// fallback both are zeroed and the column index is listed in
// fallback_columns.
struct LiftedSystem {
  PlantModel plant;
  BasisSpec spec;
  Eigen::MatrixXcd basis_to_output;   // N x N
  Eigen::MatrixXd free_response;      // N x nu
  Eigen::MatrixXd state_transition;   // nu x nu
  Eigen::MatrixXcd input_to_state;    // nu x N
  Eigen::MatrixXcd output_resolvent;  // N x nu
  Eigen::VectorXcd resolvent_gain;    // N
  std::vector<int> fallback_columns;  // m-indices computed by quadrature
};

// Builds the lifted system with the analytic resolvent formula
//   G[n,m] = c^T (j w_m I - A)^{-1} (e^{j w_m t_n} I - e^{t_n A}) b / sqrt(T).
// Columns whose frequency j w_m lies within 1e-9 of an eigenvalue of A fall
// back to composite-Simpson quadrature and are recorded in fallback_columns.
LiftedSystem build_lifted(const PlantModel& plant, const BasisSpec& spec,
                          Exec exec = Exec::Parallel);

// Independent oracle for basis_to_output: composite Simpson with the given
// odd point count on every row interval [0, t_n]. Order-4 convergence.
Eigen::MatrixXcd quadrature_gram_oracle(const PlantModel& plant, const BasisSpec& spec,
                                        int points, Exec exec = Exec::Parallel);

// Quadrature route for a single input_to_state column (also the fallback).
Eigen::VectorXcd quadrature_state_column(const PlantModel& plant, const BasisSpec& spec,
                                         int m, int points);

}  // namespace csc
