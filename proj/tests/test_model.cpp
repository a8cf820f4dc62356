#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "csc/model.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace csc;
using std::numbers::pi;

namespace {
const double inv_sqrt_2pi = 0.3989422804014327;
const double sqrt_2pi = 2.5066282746310002;

int count_nonzeros(const Eigen::VectorXcd& v) {
  int count = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > 0.0) ++count;
  return count;
}
}  // namespace

TEST_CASE("basis spec grid") {
  const BasisSpec spec{2.0 * pi, 50};
  CHECK(spec.size() == 101);
  CHECK(spec.size() % 2 == 1);
  CHECK(spec.grid_point(1) == 0.0);
  CHECK(spec.grid_point(spec.size()) == doctest::Approx(spec.period).epsilon(1e-15));
  const Eigen::VectorXd grid = spec.grid();
  for (int n = 1; n < spec.size(); ++n)
    CHECK(grid(n) - grid(n - 1) == doctest::Approx(spec.grid_step()).epsilon(1e-12));
  CHECK_THROWS_AS(BasisSpec{-1.0, 3}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(BasisSpec{1.0, 0}.validate(), std::invalid_argument);
}

TEST_CASE("basis_eval known values") {
  const BasisSpec spec{2.0 * pi, 50};
  const Complex v0 = basis_eval(spec, 0, 1.3);
  CHECK(v0.real() == doctest::Approx(inv_sqrt_2pi).epsilon(1e-14));
  CHECK(v0.imag() == 0.0);

  const Complex v1 = basis_eval(spec, 1, 0.0);
  CHECK(v1.real() == doctest::Approx(inv_sqrt_2pi).epsilon(1e-14));
  CHECK(v1.imag() == 0.0);

  // w_5 * (pi/10) = pi/2, so psi_5 lands on the imaginary axis.
  const Complex v5 = basis_eval(spec, 5, pi / 10.0);
  CHECK(v5.real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(v5.imag() == doctest::Approx(inv_sqrt_2pi).epsilon(1e-14));

  CHECK_THROWS_AS(basis_eval(spec, 51, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(basis_eval(spec, 0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(basis_eval(spec, 0, spec.period + 0.1), std::invalid_argument);
}

TEST_CASE("basis functions are orthonormal under Simpson quadrature") {
  const BasisSpec spec{2.0 * pi, 6};
  for (int m = -spec.bandwidth; m <= spec.bandwidth; ++m) {
    for (int l = -spec.bandwidth; l <= spec.bandwidth; ++l) {
      const Complex ip = oracle::simpson(
          [&](double t) { return basis_eval(spec, m, t) * std::conj(basis_eval(spec, l, t)); },
          0.0, spec.period, 4001);
      const double expect = (m == l) ? 1.0 : 0.0;
      CHECK(std::abs(ip - Complex(expect, 0.0)) < 1e-8);
    }
  }
}

TEST_CASE("benchmark reference coefficients") {
  const BasisSpec spec{2.0 * pi, 50};
  const ReferenceSignal ref = support::benchmark_reference(spec);

  CHECK(ref.coeffs(spec.offset(5)) == Complex(sqrt_2pi / 2.0, 0.0));
  CHECK(ref.coeffs(spec.offset(-5)) == Complex(sqrt_2pi / 2.0, 0.0));
  CHECK(ref.coeffs(spec.offset(10)) == Complex(0.0, -sqrt_2pi / 2.0));
  CHECK(ref.coeffs(spec.offset(-10)) == Complex(0.0, sqrt_2pi / 2.0));
  CHECK(count_nonzeros(ref.coeffs) == 4);
  CHECK(conjugate_symmetry_residue(ref.coeffs) == 0.0);
}

TEST_CASE("sinusoid constructor edge cases") {
  const BasisSpec spec{2.0 * pi, 50};

  const ReferenceSignal empty = reference_from_sinusoids({}, spec);
  CHECK(empty.coeffs.norm() == 0.0);

  const SinusoidTerm dc[] = {{SinusoidTerm::Kind::Cos, 0, 2.5}};
  const ReferenceSignal constant = reference_from_sinusoids(dc, spec);
  CHECK(constant.coeffs(spec.offset(0)) == Complex(2.5 * sqrt_2pi, 0.0));
  CHECK(count_nonzeros(constant.coeffs) == 1);

  const SinusoidTerm bad[] = {{SinusoidTerm::Kind::Sin, 51, 1.0}};
  CHECK_THROWS_AS(reference_from_sinusoids(bad, spec), std::invalid_argument);
  const SinusoidTerm neg[] = {{SinusoidTerm::Kind::Sin, -1, 1.0}};
  CHECK_THROWS_AS(reference_from_sinusoids(neg, spec), std::invalid_argument);
}

TEST_CASE("step reference") {
  const BasisSpec spec{2.0 * pi, 50};
  const ReferenceSignal one = reference_from_step(1.0, spec);
  CHECK(one.coeffs(spec.offset(0)).real() == doctest::Approx(sqrt_2pi).epsilon(1e-15));
  CHECK(count_nonzeros(one.coeffs) == 1);

  CHECK(reference_from_step(0.0, spec).coeffs.norm() == 0.0);
  CHECK(reference_from_step(-2.0, spec).coeffs(spec.offset(0)).real() ==
        doctest::Approx(-2.0 * sqrt_2pi).epsilon(1e-15));

  for (double t : {0.0, 1.7, 4.0, spec.period})
    CHECK(signal_eval(reference_from_step(3.0, spec).coeffs, spec, t) ==
          doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("signal_eval matches the analytic trigonometric sum") {
  const BasisSpec spec{2.0 * pi, 50};
  const ReferenceSignal ref = support::benchmark_reference(spec);
  CHECK(signal_eval(ref.coeffs, spec, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(0.0, spec.period);
  for (int i = 0; i < 100; ++i) {
    const double t = dist(rng);
    const double expect = std::sin(10.0 * t) + std::cos(5.0 * t);
    CHECK(signal_eval(ref.coeffs, spec, t) == doctest::Approx(expect).epsilon(1e-12));
  }

  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(spec.size());
  CHECK(signal_eval(zero, spec, 1.0) == 0.0);
}

TEST_CASE("signal_eval rejects asymmetric coefficients") {
  const BasisSpec spec{2.0 * pi, 2};
  Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(spec.size());
  bad(spec.offset(1)) = Complex(1.0, 0.0);  // missing the conjugate partner
  CHECK_THROWS_AS(signal_eval(bad, spec, 0.5), std::invalid_argument);
}

TEST_CASE("constructed references are real on a dense grid") {
  std::mt19937_64 rng(7);
  const BasisSpec spec{2.0 * pi, 20};
  std::uniform_int_distribution<int> qdist(0, spec.bandwidth);
  std::uniform_real_distribution<double> adist(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SinusoidTerm> terms;
    for (int j = 0; j < 5; ++j)
      terms.push_back({j % 2 ? SinusoidTerm::Kind::Sin : SinusoidTerm::Kind::Cos, qdist(rng),
                       adist(rng)});
    const ReferenceSignal ref = reference_from_sinusoids(terms, spec);
    double max_imag = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = spec.period * i / 999.0;
      Complex sum(0.0, 0.0);
      for (int m = -spec.bandwidth; m <= spec.bandwidth; ++m)
        sum += ref.coeffs(spec.offset(m)) * basis_eval(spec, m, t);
      max_imag = std::max(max_imag, std::abs(sum.imag()));
    }
    CHECK(max_imag < 1e-9);
  }
}

TEST_CASE("plant validation") {
  PlantModel plant = support::benchmark_plant();
  CHECK(plant.order() == 2);
  CHECK(plant.initial_state.isZero());

  PlantModel bad = plant;
  bad.input = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  PlantModel nonfinite = plant;
  nonfinite.dynamics(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(nonfinite.validate(), std::invalid_argument);
}
