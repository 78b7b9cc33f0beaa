// Copyright 2026 The gibbsmaj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "gibbsmaj/matrix_majorization.hpp"
#include "gibbsmaj/random.hpp"
#include "gibbsmaj/thermodynamics.hpp"
#include "oracles.hpp"

using namespace gibbsmaj;
namespace oracle = gibbsmaj::testing;

namespace {

HermitianMatrix diag(std::vector<double> v) { return HermitianMatrix::diagonal(v); }

ComplexMatrix hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return ComplexMatrix(2, 2, {r, r, r, -r});
}

// Energies spaced unevenly enough that every Bohr frequency is distinct.
HermitianMatrix random_spectrum_hamiltonian(std::size_t n, Rng& rng) {
  const auto u = random_unitary(n, rng);
  std::vector<double> e(n);
  double level = 0.0;
  for (double& x : e) x = (level += std::uniform_real_distribution<double>(0.3, 1.5)(rng));
  return conjugate_by(u, diag(e));
}

}  // namespace

TEST_CASE("temperatures must be positive") {
  CHECK_THROWS_AS(Temperature::finite(0.0), InvalidTemperature);
  CHECK_THROWS_AS(Temperature::finite(-1.0), InvalidTemperature);
  CHECK_THROWS_AS(Temperature::finite(std::nan("")), InvalidTemperature);
  CHECK(Temperature::infinite().is_infinite());
  CHECK_FALSE(Temperature::finite(2.0).is_infinite());
}

TEST_CASE("qubit Gibbs state matches the two-level formula") {
  for (double e : {0.1, 1.0, 3.0}) {
    for (double t : {0.2, 1.0, 5.0}) {
      const auto g = gibbs_state(diag({0.0, e}), Temperature::finite(t));
      const double p_excited = 1.0 / (1.0 + std::exp(e / t));
      CHECK(g(1, 1).real() == doctest::Approx(p_excited).epsilon(1e-12));
      CHECK(g(0, 0).real() == doctest::Approx(1.0 - p_excited).epsilon(1e-12));
      CHECK(std::abs(g(0, 1)) <= 1e-15);
    }
  }
}

TEST_CASE("Gibbs states are normalized, positive and commute with H") {
  Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto h = random_hermitian(n, rng);
    const auto g = gibbs_state(h, Temperature::finite(0.2 + 0.1 * trial));
    CHECK(g.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(min_eigenvalue(g) > 0.0);
    CHECK(commutator(g, h).frobenius_norm() <= 1e-10);
  }
}

TEST_CASE("large energy gaps do not overflow the Gibbs weights") {
  const auto g = gibbs_state(diag({0.0, 800.0}), Temperature::finite(1.0));
  CHECK(g(0, 0).real() == doctest::Approx(1.0));
  CHECK(std::isfinite(g(1, 1).real()));
}

TEST_CASE("infinite temperature gives the maximally mixed state") {
  Rng rng(62);
  const auto g = gibbs_state(random_hermitian(4, rng), Temperature::infinite());
  CHECK((g.matrix() - (0.25 * HermitianMatrix::identity(4)).matrix()).max_abs() == 0.0);
}

TEST_CASE("qubit ladder coefficients square to one in total") {
  for (double e : {0.3, 1.0, 2.5}) {
    const GibbsContext ctx(diag({0.0, e}), Temperature::finite(0.7));
    const auto l = ladder_operators(ctx);
    const double plus = std::norm(l.sigma_plus(0, 1));
    const double minus = std::norm(l.sigma_minus(1, 0));
    CHECK(plus + minus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(minus / plus == doctest::Approx(std::exp(-e / 0.7)).epsilon(1e-12));
  }
}

TEST_CASE("ladder operators only couple neighbouring levels") {
  Rng rng(63);
  const auto h = random_spectrum_hamiltonian(4, rng);
  const GibbsContext ctx(h, Temperature::finite(1.3));
  const auto l = ladder_operators(ctx);
  const auto& v = ctx.eigenbasis();
  const auto plus = v.adjoint() * l.sigma_plus * v;
  const auto minus = v.adjoint() * l.sigma_minus * v;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (j != i + 1) CHECK(std::abs(plus(i, j)) <= 1e-12);
      if (i != j + 1) CHECK(std::abs(minus(i, j)) <= 1e-12);
    }
}

TEST_CASE("ladder rates balance the Boltzmann populations") {
  Rng rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const GibbsContext ctx(random_spectrum_hamiltonian(n, rng), Temperature::finite(0.5 + 0.2 * trial));
    const auto l = ladder_operators(ctx);
    const auto& v = ctx.eigenbasis();
    const auto plus = v.adjoint() * l.sigma_plus * v;
    const auto minus = v.adjoint() * l.sigma_minus * v;
    const auto& w = ctx.boltzmann_weights();
    for (std::size_t j = 0; j + 1 < n; ++j) {
      // Upward flow from j+1 populated as w_{j+1} meets downward flow from j.
      CHECK(w[j] * std::norm(minus(j + 1, j)) == doctest::Approx(w[j + 1] * std::norm(plus(j, j + 1))).epsilon(1e-12));
    }
    const auto sys = thermal_system(ctx);
    CHECK(gksl_rhs(sys, ctx.state(), 0.0).frobenius_norm() <= 1e-10);
  }
}

TEST_CASE("piecewise constant functions are right continuous") {
  const PiecewiseConstant f({1.0, 2.0}, {0.5, -0.25, 0.0});
  CHECK(f(0.0) == 0.5);
  CHECK(f(0.999) == 0.5);
  CHECK(f(1.0) == -0.25);
  CHECK(f(2.0) == 0.0);
  CHECK(f(10.0) == 0.0);
  CHECK(f.max_abs() == 0.5);
  CHECK_THROWS_AS(PiecewiseConstant({1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseConstant({2.0, 1.0}, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("Gibbs start stays put under the uncontrolled evolution") {
  const GibbsContext ctx(diag({0.0, 0.4, 1.1}), Temperature::finite(0.8));
  const auto traj = integrate_gksl(thermal_system(ctx), ctx.state(), 2.0);
  for (const auto& s : traj.samples) CHECK((s.rho - ctx.state()).frobenius_norm() <= 1e-8);
  CHECK(traj.max_trace_drift <= 1e-8);
  CHECK(traj.halving_deviation <= 1e-8);
}

TEST_CASE("excited qubit relaxes to the Gibbs state and stays positive") {
  const GibbsContext ctx(diag({0.0, 1.0}), Temperature::finite(0.5));
  const auto traj = integrate_gksl(thermal_system(ctx), diag({0.0, 1.0}), 12.0);
  CHECK(traj.min_eigenvalue >= -1e-10);
  CHECK(traj.max_trace_drift <= 1e-8);
  CHECK((traj.samples.back().rho - ctx.state()).frobenius_norm() <= 1e-4);
}

TEST_CASE("RK4 matches the exact propagator") {
  Rng rng(65);
  const GibbsContext ctx(random_spectrum_hamiltonian(3, rng), Temperature::finite(0.9));
  auto sys = thermal_system(ctx, 0.7);
  sys.controls.push_back({random_hermitian(3, rng), PiecewiseConstant({0.4, 1.1}, {0.3, -0.6, 0.2})});
  const auto rho0 = random_density_matrix(3, rng);
  const auto traj = integrate_gksl(sys, rho0, 1.5);
  const auto exact = apply_choi(propagator(sys, 1.5), rho0);
  CHECK((traj.samples.back().rho - exact).frobenius_norm() <= 1e-10);
}

TEST_CASE("integration rejects bad initial states and huge steps") {
  const GibbsContext ctx(diag({0.0, 1.0}), Temperature::finite(1.0));
  const auto sys = thermal_system(ctx);
  CHECK_THROWS_AS(integrate_gksl(sys, diag({0.5, 0.4}), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate_gksl(sys, diag({1.5, -0.5}), 1.0), std::invalid_argument);
  IntegrationOptions coarse;
  coarse.step = 0.5;
  CHECK_THROWS_AS(integrate_gksl(thermal_system(ctx, 8.0), diag({0.0, 1.0}), 4.0, coarse), std::runtime_error);
}

TEST_CASE("default step follows the generator scale") {
  const GibbsContext ctx(diag({0.0, 1.0}), Temperature::finite(1.0));
  const auto sys = thermal_system(ctx);
  CHECK(default_step(sys, 1.0) == doctest::Approx(1e-3));
  CHECK(default_step(sys, 1000.0) == doctest::Approx(0.02 / (1.0 + sys.rate_scale())));
}

TEST_CASE("thermal propagators are covariant on qubits and equally spaced ladders") {
  const GibbsContext qubit(diag({0.0, 1.3}), Temperature::finite(0.6));
  const GibbsContext ladder(diag({0.0, 0.7, 1.4}), Temperature::finite(0.6));
  for (double t : {0.1, 1.0, 3.0}) {
    const auto pq = propagator(thermal_system(qubit), t);
    const auto pl = propagator(thermal_system(ladder), t);
    CHECK(covariance_residual(pq, qubit.hamiltonian()) <= 1e-8);
    CHECK(covariance_residual(pl, ladder.hamiltonian()) <= 1e-8);
    CHECK(gibbs_fixed_point_residual(pq, qubit.hamiltonian(), qubit.temperature()) <= 1e-10);
    CHECK(gibbs_fixed_point_residual(pl, ladder.hamiltonian(), ladder.temperature()) <= 1e-10);
  }
}

TEST_CASE("thermal propagators are Gibbs preserving for unequal spacings") {
  const GibbsContext ctx(diag({0.0, 0.5, 1.7}), Temperature::finite(1.0));
  const auto p = propagator(thermal_system(ctx), 1.0);
  CHECK(p.cptp_residual() <= 1e-10);
  CHECK(gibbs_fixed_point_residual(p, ctx.hamiltonian(), ctx.temperature()) <= 1e-10);
}

TEST_CASE("Hadamard conjugation is not covariant") {
  const auto h = diag({0.0, 1.0});
  const auto had = hadamard();
  const auto phi = unitary_channel(had);
  const double residual = covariance_residual(phi, h);
  CHECK(residual > 0.1);
  CHECK(residual == doctest::Approx(oracle::unitary_covariance_residual_superop(had, h)).epsilon(1e-10));
}

TEST_CASE("covariance residual of a diagonal unitary vanishes") {
  const std::vector<Complex> phases{1.0, std::polar(1.0, 0.3), std::polar(1.0, -1.1)};
  const auto u = ComplexMatrix::diagonal(phases);
  const auto h = diag({0.0, 0.4, 1.9});
  CHECK(covariance_residual(unitary_channel(u), h) <= 1e-14);
  CHECK(oracle::unitary_covariance_residual_superop(u, h) <= 1e-14);
}

TEST_CASE("monotone trajectory: later states are majorized by earlier ones") {
  const GibbsContext ctx(diag({0.0, 1.0}), Temperature::finite(0.5));
  const auto sys = thermal_system(ctx);
  const GibbsReference d(ctx.state());
  const auto early = apply_choi(propagator(sys, 0.2), diag({0.0, 1.0}));
  const auto late = apply_choi(propagator(sys, 1.0), diag({0.0, 1.0}));
  CHECK(cptp_feasibility(late, early, d).feasible());
  CHECK(cptp_feasibility(early, late, d).status == FeasibilityStatus::kInfeasible);
}

TEST_CASE("thermal operations from swap and identity") {
  const auto h = diag({0.0, 1.0});
  const auto t = Temperature::finite(0.8);
  const ThermalOperation swap(h, h, swap_operator(2), t);
  CHECK(energy_conservation_check(swap) <= 1e-14);
  const auto sw = build_thermal_operation(swap);
  CHECK(sw.cptp_residual() <= 1e-12);
  // Swapping with a thermal bath replaces the state by the bath state.
  const auto g = gibbs_state(h, t);
  CHECK((apply_choi(sw, diag({0.0, 1.0})) - g).frobenius_norm() <= 1e-12);

  const ThermalOperation id(h, diag({0.0, 1.7}), ComplexMatrix::identity(4), t);
  const auto idc = build_thermal_operation(id);
  CHECK((idc.matrix() - identity_channel(2).matrix()).frobenius_norm() <= 1e-12);
}

TEST_CASE("entangling unitaries violate energy conservation") {
  ComplexMatrix cnot(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const ThermalOperation op(diag({0.0, 1.0}), diag({0.0, 1.7}), cnot, Temperature::finite(1.0));
  CHECK(energy_conservation_check(op) > 0.1);
  CHECK_THROWS_AS(build_thermal_operation(op), EnergyConservationViolated);
  CHECK_THROWS_AS(ThermalOperation(diag({0.0, 1.0}), diag({0.0, 1.0}), 2.0 * ComplexMatrix::identity(4),
                                   Temperature::finite(1.0)),
                  NotUnitary);
}

TEST_CASE("thermal operations from commuting unitaries are Gibbs preserving and covariant") {
  Rng rng(66);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h_s = diag({0.0, 0.6, 1.0});
    const auto h_r = diag({0.0, 0.4, 0.6, 1.0});
    const ThermalOperation probe(h_s, h_r, ComplexMatrix::identity(12), Temperature::finite(0.9));
    const auto u = random_commuting_unitary(probe.total_hamiltonian(), rng);
    const ThermalOperation op(h_s, h_r, u, Temperature::finite(0.9));
    CHECK(energy_conservation_check(op) <= 1e-10);
    const auto phi = build_thermal_operation(op);
    CHECK(phi.cptp_residual() <= 1e-10);
    CHECK(gibbs_fixed_point_residual(phi, h_s, op.temperature()) <= 1e-8);
    CHECK(covariance_residual(phi, h_s) <= 1e-8);
  }
}

TEST_CASE("thermal operations compose and mix into covariant Gibbs-fixing channels") {
  Rng rng(67);
  const auto h_s = diag({0.0, 0.5, 1.3});
  const auto h_r = diag({0.0, 0.5, 0.8, 1.3});
  const auto temp = Temperature::finite(0.7);
  const ThermalOperation probe(h_s, h_r, ComplexMatrix::identity(12), temp);
  std::vector<ChoiMatrix> ops;
  for (int k = 0; k < 3; ++k)
    ops.push_back(build_thermal_operation(
        ThermalOperation(h_s, h_r, random_commuting_unitary(probe.total_hamiltonian(), rng), temp)));
  const auto composed = compose(ops[0], ops[1]);
  CHECK(gibbs_fixed_point_residual(composed, h_s, temp) <= 1e-8);
  CHECK(covariance_residual(composed, h_s) <= 1e-8);
  const std::vector<double> w{0.2, 0.5, 0.3};
  const auto mixed = mix(w, ops);
  CHECK(gibbs_fixed_point_residual(mixed, h_s, temp) <= 1e-8);
  CHECK(covariance_residual(mixed, h_s) <= 1e-8);
}

TEST_CASE("covariant channels keep diagonal states diagonal") {
  Rng rng(68);
  const auto h_s = diag({0.0, 0.45, 1.2});
  const auto h_r = diag({0.0, 0.45, 0.75, 1.2});
  const auto temp = Temperature::finite(1.1);
  const ThermalOperation probe(h_s, h_r, ComplexMatrix::identity(12), temp);
  for (int trial = 0; trial < 10; ++trial) {
    const auto phi = build_thermal_operation(
        ThermalOperation(h_s, h_r, random_commuting_unitary(probe.total_hamiltonian(), rng), temp));
    REQUIRE(covariance_residual(phi, h_s) <= 1e-8);
    const auto p = random_probability_vector(3, rng);
    const auto out = apply_choi(phi, diag(p));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j) CHECK(std::abs(out(i, j)) <= 1e-8);
  }
}

TEST_CASE("swap operator exchanges tensor factors") {
  Rng rng(69);
  const auto a = random_hermitian(3, rng).matrix();
  const auto b = random_hermitian(3, rng).matrix();
  const auto s = swap_operator(3);
  CHECK((s * kron(a, b) * s - kron(b, a)).max_abs() <= 1e-12);
}
