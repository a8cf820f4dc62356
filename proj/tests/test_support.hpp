#pragma once

// Shared fixtures: the second-order benchmark plant (poles at -5 and -10,
// right-half-plane zero at +5) and its standard run configuration.

#include "csc/simulate.hpp"

namespace support {

inline csc::PlantModel benchmark_plant() {
  csc::PlantModel plant;
  plant.dynamics = Eigen::MatrixXd{{0.0, 1.0}, {-50.0, -15.0}};
  plant.input = Eigen::VectorXd{{0.0, 1.0}};
  plant.output = Eigen::VectorXd{{-5.0, 1.0}};
  plant.validate();
  return plant;
}

inline csc::BasisSpec benchmark_spec() {
  return csc::BasisSpec{2.0 * 3.14159265358979323846, 50};
}

inline csc::ReferenceSignal benchmark_reference(const csc::BasisSpec& spec) {
  const csc::SinusoidTerm terms[] = {
      {csc::SinusoidTerm::Kind::Sin, 10, 1.0},
      {csc::SinusoidTerm::Kind::Cos, 5, 1.0},
  };
  return csc::reference_from_sinusoids(terms, spec);
}

// The full benchmark configuration: K=33, mu=0.002, 10 warm-started FISTA
// iterations, 101 periods.
inline csc::RunConfig benchmark_config(std::uint64_t seed = 1) {
  csc::RunConfig cfg;
  cfg.plant = benchmark_plant();
  cfg.spec = benchmark_spec();
  cfg.reference = benchmark_reference(cfg.spec);
  cfg.sample_count = 33;
  cfg.periods = 101;
  cfg.seed = seed;
  cfg.controller.kind = csc::ControllerKind::Sparse;
  cfg.controller.solver.mu = 0.002;
  cfg.controller.solver.iterations = 10;
  cfg.controller.solver.warm_start = true;
  cfg.controller.mu2 = 0.0005;
  cfg.fine_grid = 2001;
  return cfg;
}

}  // namespace support
