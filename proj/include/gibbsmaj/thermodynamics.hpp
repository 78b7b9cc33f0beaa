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

#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "gibbsmaj/channel.hpp"
#include "gibbsmaj/linalg.hpp"
#include "gibbsmaj/random.hpp"

namespace gibbsmaj {

class InvalidTemperature : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Temperature in energy units: finite and strictly positive, or infinite.
class Temperature {
 public:
  static Temperature finite(double t);
  static Temperature infinite() { return Temperature(std::numeric_limits<double>::infinity()); }

  bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
  double value() const { return value_; }

 private:
  explicit Temperature(double t) : value_(t) {}
  double value_;
};

/// exp(-H/T) / tr exp(-H/T); exactly I/n at infinite temperature.
HermitianMatrix gibbs_state(const HermitianMatrix& h, Temperature t);

/// A Hamiltonian at a temperature, with its spectral data and Gibbs state.
class GibbsContext {
 public:
  GibbsContext(HermitianMatrix h, Temperature t);

  std::size_t dim() const { return h_.dim(); }
  const HermitianMatrix& hamiltonian() const { return h_; }
  Temperature temperature() const { return t_; }
  const HermitianMatrix& state() const { return state_; }
  /// Ascending.
  const std::vector<double>& energies() const { return eig_.eigenvalues; }
  /// Eigenvectors |g_j> as columns, matching energies().
  const ComplexMatrix& eigenbasis() const { return eig_.eigenvectors; }
  /// exp(-(E_j - E_1)/T); all ones at infinite temperature.
  const std::vector<double>& boltzmann_weights() const { return weights_; }

 private:
  HermitianMatrix h_;
  Temperature t_;
  Eigendecomposition eig_;
  std::vector<double> weights_;
  HermitianMatrix state_;
};

/// Modified ladder operators: with w_j the Boltzmann weights,
///   sigma_plus  = sum_j sqrt(j(n-j) w_j     / (w_j + w_{j+1})) |g_j><g_{j+1}|
///   sigma_minus = sum_j sqrt(j(n-j) w_{j+1} / (w_j + w_{j+1})) |g_{j+1}><g_j|
/// for j = 1..n-1, in the computational basis.
struct LadderPair {
  ComplexMatrix sigma_plus;
  ComplexMatrix sigma_minus;
};

LadderPair ladder_operators(const GibbsContext& ctx);

/// Right-continuous step function: values[k] on [breakpoints[k-1], breakpoints[k]).
class PiecewiseConstant {
 public:
  PiecewiseConstant(double value = 0.0);  // NOLINT
  PiecewiseConstant(std::vector<double> breakpoints, std::vector<double> values);

  double operator()(double t) const;
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  double max_abs() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

struct Control {
  HermitianMatrix h;
  PiecewiseConstant u;
};

/// rho' = -i[H0 + sum_j u_j(t) H_j, rho] - gamma(t) Gamma(rho),
/// Gamma(rho) = sum_j (V_j^* V_j rho + rho V_j^* V_j) / 2 - V_j rho V_j^*.
struct GKSLSystem {
  HermitianMatrix h0;
  std::vector<Control> controls;
  PiecewiseConstant gamma{1.0};
  std::vector<ComplexMatrix> dissipators;

  std::size_t dim() const { return h0.dim(); }
  /// Throws DimensionError or std::invalid_argument.
  void validate() const;
  HermitianMatrix hamiltonian(double t) const;
  /// Sorted union of all switching times.
  std::vector<double> breakpoints() const;
  /// Bound on the generator norm over all times; sets the default step.
  double rate_scale() const;
};

/// Uncontrolled system with H0 = H_S and the ladder pair as dissipators.
GKSLSystem thermal_system(const GibbsContext& ctx, double gamma = 1.0);

HermitianMatrix gksl_rhs(const GKSLSystem& sys, const HermitianMatrix& rho, double t);

class PositivityLoss : public std::runtime_error {
 public:
  PositivityLoss(const std::string& what, double t, double min_eigenvalue)
      : std::runtime_error(what), t(t), min_eigenvalue(min_eigenvalue) {}
  double t;
  double min_eigenvalue;
};

class AccuracyNotReached : public std::runtime_error {
 public:
  AccuracyNotReached(const std::string& what, double deviation)
      : std::runtime_error(what), deviation(deviation) {}
  double deviation;
};

struct TrajectorySample {
  double t;
  HermitianMatrix rho;
};

struct IntegrationOptions {
  /// 0 selects default_step().
  double step = 0.0;
  /// Keep every k-th step; the final time is always kept.
  int record_every = 1;
  bool verify_step_halving = true;
  double halving_tol = 1e-8;
  double positivity_tol = 1e-6;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double step = 0.0;
  double max_trace_drift = 0.0;
  double max_hermiticity_residual = 0.0;
  double min_eigenvalue = 0.0;
  /// Largest Frobenius distance to the same samples recomputed at step / 2.
  double halving_deviation = 0.0;
};

/// min(1e-3 * horizon, 0.02 / (1 + rate_scale)).
double default_step(const GKSLSystem& sys, double horizon);

/// Classic fixed-step RK4 from t = 0 to `horizon`. Throws PositivityLoss when
/// lambda_min drops below -positivity_tol and AccuracyNotReached when the
/// step-halving rerun moves a sample by more than halving_tol.
Trajectory integrate_gksl(const GKSLSystem& sys, const HermitianMatrix& rho0, double horizon,
                          const IntegrationOptions& options = {});

/// Generator as a superoperator on column-stacked vec(rho) at time t.
ComplexMatrix gksl_superoperator(const GKSLSystem& sys, double t);

/// Exact solution map from 0 to t, multiplying matrix exponentials over the
/// constant segments.
ChoiMatrix propagator(const GKSLSystem& sys, double t);

/// max_k |Phi([H, X_k]) - [H, Phi(X_k)]|_F over the hermitian matrix-unit basis.
double covariance_residual(const ChoiMatrix& phi, const HermitianMatrix& h);

/// |Phi(G) - G|_F with G the Gibbs state of (h, t).
double gibbs_fixed_point_residual(const ChoiMatrix& phi, const HermitianMatrix& h, Temperature t);

class NotUnitary : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EnergyConservationViolated : public std::runtime_error {
 public:
  EnergyConservationViolated(const std::string& what, double commutator_norm)
      : std::runtime_error(what), commutator_norm(commutator_norm) {}
  double commutator_norm;
};

/// System Hamiltonian H_S (n), bath Hamiltonian H_R (m), joint unitary U (nm)
/// and bath temperature.
class ThermalOperation {
 public:
  static constexpr double kUnitaryTol = 1e-10;
  static constexpr double kEnergyTol = 1e-10;

  ThermalOperation(HermitianMatrix h_s, HermitianMatrix h_r, ComplexMatrix u, Temperature t);

  const HermitianMatrix& system_hamiltonian() const { return h_s_; }
  const HermitianMatrix& bath_hamiltonian() const { return h_r_; }
  const ComplexMatrix& unitary() const { return u_; }
  Temperature temperature() const { return t_; }
  /// H_S (x) I + I (x) H_R.
  HermitianMatrix total_hamiltonian() const;

 private:
  HermitianMatrix h_s_;
  HermitianMatrix h_r_;
  ComplexMatrix u_;
  Temperature t_;
};

/// |[U, H_S (x) I + I (x) H_R]|_F.
double energy_conservation_check(const ThermalOperation& op);

/// rho -> tr_R(U (rho (x) G_R) U^*). Throws EnergyConservationViolated when the
/// commutator norm exceeds kEnergyTol.
ChoiMatrix build_thermal_operation(const ThermalOperation& op);

/// exp(iK) with K a random hermitian matrix, block diagonal in the
/// eigenspaces of h; commutes with h.
ComplexMatrix random_commuting_unitary(const HermitianMatrix& h, Rng& rng);

/// Exchanges the two factors of C^n (x) C^n.
ComplexMatrix swap_operator(std::size_t n);

}  // namespace gibbsmaj
