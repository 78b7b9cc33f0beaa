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

#include "gibbsmaj/thermodynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gibbsmaj {

Temperature Temperature::finite(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << "temperature must be finite and positive, got " << t;
    throw InvalidTemperature(msg.str());
  }
  return Temperature(t);
}

namespace {

std::vector<double> boltzmann(const std::vector<double>& energies, Temperature t) {
  std::vector<double> w(energies.size(), 1.0);
  if (t.is_infinite()) return w;
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = std::exp(-(energies[j] - energies.front()) / t.value());
  return w;
}

HermitianMatrix state_from(const Eigendecomposition& e, const std::vector<double>& w, Temperature t) {
  const std::size_t n = w.size();
  if (t.is_infinite()) return (1.0 / static_cast<double>(n)) * HermitianMatrix::identity(n);
  double z = 0.0;
  for (double x : w) z += x;
  std::size_t k = 0;
  return spectral_apply(e, [&](double) { return w[k++] / z; });
}

}  // namespace

HermitianMatrix gibbs_state(const HermitianMatrix& h, Temperature t) {
  if (t.is_infinite()) return (1.0 / static_cast<double>(h.dim())) * HermitianMatrix::identity(h.dim());
  const auto e = eig_hermitian(h);
  return state_from(e, boltzmann(e.eigenvalues, t), t);
}

GibbsContext::GibbsContext(HermitianMatrix h, Temperature t)
    : h_(std::move(h)), t_(t), eig_(eig_hermitian(h_)), weights_(boltzmann(eig_.eigenvalues, t)) {
  state_ = state_from(eig_, weights_, t_);
}

LadderPair ladder_operators(const GibbsContext& ctx) {
  const std::size_t n = ctx.dim();
  const auto& w = ctx.boltzmann_weights();
  ComplexMatrix plus(n, n), minus(n, n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double level = static_cast<double>((j + 1) * (n - j - 1));
    const double denom = w[j] + w[j + 1];
    plus(j, j + 1) = std::sqrt(level * w[j] / denom);
    minus(j + 1, j) = std::sqrt(level * w[j + 1] / denom);
  }
  const ComplexMatrix& v = ctx.eigenbasis();
  const ComplexMatrix v_adj = v.adjoint();
  return LadderPair{v * plus * v_adj, v * minus * v_adj};
}

PiecewiseConstant::PiecewiseConstant(double value) : values_{value} {
  if (!std::isfinite(value)) throw std::invalid_argument("PiecewiseConstant: value must be finite");
}

PiecewiseConstant::PiecewiseConstant(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.size() != breakpoints_.size() + 1) {
    throw std::invalid_argument("PiecewiseConstant: need one more value than breakpoints");
  }
  if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end()) ||
      std::adjacent_find(breakpoints_.begin(), breakpoints_.end()) != breakpoints_.end()) {
    throw std::invalid_argument("PiecewiseConstant: breakpoints must be strictly increasing");
  }
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("PiecewiseConstant: values must be finite");
}

double PiecewiseConstant::operator()(double t) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double PiecewiseConstant::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void GKSLSystem::validate() const {
  const std::size_t n = dim();
  if (n == 0) throw DimensionError("GKSLSystem: empty Hamiltonian");
  for (const auto& c : controls)
    if (c.h.dim() != n) throw DimensionError("GKSLSystem: control Hamiltonian dimension mismatch");
  for (const auto& v : dissipators)
    if (v.rows() != n || v.cols() != n) throw DimensionError("GKSLSystem: dissipator dimension mismatch");
  for (double g : gamma.values())
    if (g < 0.0) throw std::invalid_argument("GKSLSystem: gamma must be nonnegative");
}

HermitianMatrix GKSLSystem::hamiltonian(double t) const {
  HermitianMatrix h = h0;
  for (const auto& c : controls) {
    const double u = c.u(t);
    if (u != 0.0) h += u * c.h;
  }
  return h;
}

std::vector<double> GKSLSystem::breakpoints() const {
  std::vector<double> all = gamma.breakpoints();
  for (const auto& c : controls) all.insert(all.end(), c.u.breakpoints().begin(), c.u.breakpoints().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

double GKSLSystem::rate_scale() const {
  double s = spectral_norm(h0);
  for (const auto& c : controls) s += c.u.max_abs() * spectral_norm(c.h);
  double diss = 0.0;
  for (const auto& v : dissipators) {
    const double f = v.frobenius_norm();
    diss += f * f;
  }
  return s + gamma.max_abs() * diss;
}

GKSLSystem thermal_system(const GibbsContext& ctx, double gamma) {
  const LadderPair ladder = ladder_operators(ctx);
  GKSLSystem sys;
  sys.h0 = ctx.hamiltonian();
  sys.gamma = PiecewiseConstant(gamma);
  sys.dissipators = {ladder.sigma_plus, ladder.sigma_minus};
  return sys;
}

namespace {

ComplexMatrix rhs_raw(const GKSLSystem& sys, const ComplexMatrix& rho, double t) {
  const Complex minus_i(0.0, -1.0);
  ComplexMatrix out = minus_i * commutator(sys.hamiltonian(t), rho);
  const double g = sys.gamma(t);
  if (g == 0.0) return out;
  for (const auto& v : sys.dissipators) {
    const ComplexMatrix v_adj = v.adjoint();
    const ComplexMatrix vv = v_adj * v;
    ComplexMatrix gamma_term = 0.5 * (vv * rho + rho * vv) - v * rho * v_adj;
    out -= g * gamma_term;
  }
  return out;
}

struct RawRun {
  std::vector<ComplexMatrix> states;  // at steps 0, 1, ..., count
  double first_negative_t = -1.0;
  double first_negative_eig = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
};

// One RK4 step over [t0, t1]; the generator is frozen at the midpoint of each
// piece between switching times.
ComplexMatrix advance(const GKSLSystem& sys, const std::vector<double>& switches, ComplexMatrix rho, double t0,
                      double t1) {
  std::vector<double> cuts{t0};
  for (double b : switches)
    if (b > t0 && b < t1) cuts.push_back(b);
  cuts.push_back(t1);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double h = cuts[k + 1] - cuts[k];
    const double frozen = 0.5 * (cuts[k] + cuts[k + 1]);
    const ComplexMatrix k1 = rhs_raw(sys, rho, frozen);
    const ComplexMatrix k2 = rhs_raw(sys, rho + (0.5 * h) * k1, frozen);
    const ComplexMatrix k3 = rhs_raw(sys, rho + (0.5 * h) * k2, frozen);
    const ComplexMatrix k4 = rhs_raw(sys, rho + h * k3, frozen);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

RawRun rk4(const GKSLSystem& sys, const ComplexMatrix& rho0, std::size_t count, double horizon,
           double positivity_tol) {
  const std::vector<double> switches = sys.breakpoints();
  RawRun run;
  run.states.reserve(count + 1);
  run.states.push_back(rho0);
  ComplexMatrix rho = rho0;
  for (std::size_t k = 0; k < count; ++k) {
    const double t0 = horizon * static_cast<double>(k) / static_cast<double>(count);
    const double t1 = horizon * static_cast<double>(k + 1) / static_cast<double>(count);
    rho = advance(sys, switches, std::move(rho), t0, t1);
    const double lowest = min_eigenvalue(HermitianMatrix::symmetrized(rho));
    run.min_eig = std::min(run.min_eig, lowest);
    run.states.push_back(rho);
    if (lowest < -positivity_tol) {
      run.first_negative_t = t1;
      run.first_negative_eig = lowest;
      return run;
    }
  }
  return run;
}

}  // namespace

HermitianMatrix gksl_rhs(const GKSLSystem& sys, const HermitianMatrix& rho, double t) {
  if (rho.dim() != sys.dim()) throw DimensionError("gksl_rhs: state dimension mismatch");
  return HermitianMatrix::symmetrized(rhs_raw(sys, rho, t));
}

double default_step(const GKSLSystem& sys, double horizon) {
  return std::min(1e-3 * horizon, 0.02 / (1.0 + sys.rate_scale()));
}

Trajectory integrate_gksl(const GKSLSystem& sys, const HermitianMatrix& rho0, double horizon,
                          const IntegrationOptions& options) {
  sys.validate();
  if (rho0.dim() != sys.dim()) throw DimensionError("integrate_gksl: state dimension mismatch");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("integrate_gksl: horizon must be positive");
  if (std::abs(rho0.trace() - 1.0) > 1e-8 || min_eigenvalue(rho0) < -1e-8) {
    throw std::invalid_argument("integrate_gksl: initial state must be PSD with unit trace");
  }
  if (options.record_every < 1) throw std::invalid_argument("integrate_gksl: record_every must be at least 1");
  const double requested = options.step > 0.0 ? options.step : default_step(sys, horizon);
  if (requested > horizon) throw std::invalid_argument("integrate_gksl: step exceeds horizon");
  const auto count = static_cast<std::size_t>(std::ceil(horizon / requested - 1e-9));
  const double h = horizon / static_cast<double>(count);

  const RawRun run = rk4(sys, rho0, count, horizon, options.positivity_tol);
  if (run.first_negative_t >= 0.0) {
    std::ostringstream msg;
    msg << "integrate_gksl: lambda_min = " << run.first_negative_eig << " at t = " << run.first_negative_t
        << "; reduce the step";
    throw PositivityLoss(msg.str(), run.first_negative_t, run.first_negative_eig);
  }

  Trajectory traj;
  traj.step = h;
  traj.min_eigenvalue = std::min(min_eigenvalue(rho0), run.min_eig);
  const double trace0 = rho0.trace();
  for (const auto& s : run.states) {
    traj.max_trace_drift = std::max(traj.max_trace_drift, std::abs(s.trace().real() - trace0));
    traj.max_hermiticity_residual = std::max(traj.max_hermiticity_residual, hermiticity_residual(s));
  }

  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k <= count; ++k)
    if (k % static_cast<std::size_t>(options.record_every) == 0 || k == count) kept.push_back(k);

  if (options.verify_step_halving) {
    const RawRun fine = rk4(sys, rho0, 2 * count, horizon, std::numeric_limits<double>::infinity());
    for (std::size_t k : kept)
      traj.halving_deviation = std::max(traj.halving_deviation, (run.states[k] - fine.states[2 * k]).frobenius_norm());
    if (traj.halving_deviation > options.halving_tol) {
      std::ostringstream msg;
      msg << "integrate_gksl: halving the step moved a sample by " << traj.halving_deviation << " > "
          << options.halving_tol;
      throw AccuracyNotReached(msg.str(), traj.halving_deviation);
    }
  }

  traj.samples.reserve(kept.size());
  for (std::size_t k : kept)
    traj.samples.push_back(
        {horizon * static_cast<double>(k) / static_cast<double>(count), HermitianMatrix::symmetrized(run.states[k])});
  return traj;
}

ComplexMatrix gksl_superoperator(const GKSLSystem& sys, double t) {
  const std::size_t n = sys.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const HermitianMatrix hamiltonian = sys.hamiltonian(t);
  const ComplexMatrix& h = hamiltonian.matrix();
  const Complex minus_i(0.0, -1.0);
  ComplexMatrix l = minus_i * (kron(id, h) - kron(h.transpose(), id));
  const double g = sys.gamma(t);
  if (g == 0.0) return l;
  for (const auto& v : sys.dissipators) {
    const ComplexMatrix vv = v.adjoint() * v;
    const ComplexMatrix gamma_term = 0.5 * (kron(id, vv) + kron(vv.transpose(), id)) - kron(v.conjugate(), v);
    l -= g * gamma_term;
  }
  return l;
}

ChoiMatrix propagator(const GKSLSystem& sys, double t) {
  sys.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("propagator: time must be nonnegative");
  const std::size_t n = sys.dim();
  std::vector<double> cuts{0.0};
  for (double b : sys.breakpoints())
    if (b > 0.0 && b < t) cuts.push_back(b);
  cuts.push_back(t);
  ComplexMatrix s = ComplexMatrix::identity(n * n);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double span = cuts[k + 1] - cuts[k];
    if (span <= 0.0) continue;
    const ComplexMatrix l = gksl_superoperator(sys, cuts[k]);
    s = matrix_exp(Complex(span) * l) * s;
  }
  return choi_from_superoperator(s, n);
}

double covariance_residual(const ChoiMatrix& phi, const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  if (phi.input_dim() != n) throw DimensionError("covariance_residual: dimension mismatch");
  const double r = 1.0 / std::sqrt(2.0);
  double worst = 0.0;
  auto probe = [&](const ComplexMatrix& x) {
    const ComplexMatrix lhs = apply_choi(phi, commutator(h, x));
    const ComplexMatrix rhs = commutator(h, apply_choi(phi, x));
    worst = std::max(worst, (lhs - rhs).frobenius_norm());
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      ComplexMatrix x(n, n);
      if (i == j) {
        x(i, i) = 1.0;
        probe(x);
        continue;
      }
      x(i, j) = r;
      x(j, i) = r;
      probe(x);
      x(i, j) = Complex(0.0, r);
      x(j, i) = Complex(0.0, -r);
      probe(x);
    }
  return worst;
}

double gibbs_fixed_point_residual(const ChoiMatrix& phi, const HermitianMatrix& h, Temperature t) {
  if (phi.input_dim() != h.dim()) throw DimensionError("gibbs_fixed_point_residual: dimension mismatch");
  const HermitianMatrix g = gibbs_state(h, t);
  return (apply_choi(phi, g.matrix()) - g.matrix()).frobenius_norm();
}

ThermalOperation::ThermalOperation(HermitianMatrix h_s, HermitianMatrix h_r, ComplexMatrix u, Temperature t)
    : h_s_(std::move(h_s)), h_r_(std::move(h_r)), u_(std::move(u)), t_(t) {
  const std::size_t nm = h_s_.dim() * h_r_.dim();
  if (u_.rows() != nm || u_.cols() != nm) throw DimensionError("ThermalOperation: U must act on system (x) bath");
  const double residual = (u_.adjoint() * u_ - ComplexMatrix::identity(nm)).max_abs();
  if (residual > kUnitaryTol) {
    std::ostringstream msg;
    msg << "ThermalOperation: U is not unitary (|U^*U - I|_max = " << residual << ")";
    throw NotUnitary(msg.str());
  }
}

HermitianMatrix ThermalOperation::total_hamiltonian() const {
  return HermitianMatrix::symmetrized(kron(h_s_, ComplexMatrix::identity(h_r_.dim())) +
                                      kron(ComplexMatrix::identity(h_s_.dim()), h_r_));
}

double energy_conservation_check(const ThermalOperation& op) {
  return commutator(op.unitary(), op.total_hamiltonian()).frobenius_norm();
}

ChoiMatrix build_thermal_operation(const ThermalOperation& op) {
  const double norm = energy_conservation_check(op);
  if (norm > ThermalOperation::kEnergyTol) {
    std::ostringstream msg;
    msg << "build_thermal_operation: U does not conserve total energy (|[U, H]|_F = " << norm << ")";
    throw EnergyConservationViolated(msg.str(), norm);
  }
  const std::size_t n = op.system_hamiltonian().dim();
  const std::size_t m = op.bath_hamiltonian().dim();
  const ComplexMatrix bath = gibbs_state(op.bath_hamiltonian(), op.temperature()).matrix();
  const ComplexMatrix& u = op.unitary();
  const ComplexMatrix u_adj = u.adjoint();
  return choi_from_map(n, [&](const ComplexMatrix& x) {
    return partial_trace(u * kron(x, bath) * u_adj, n, m, Subsystem::kSecond);
  });
}

ComplexMatrix random_commuting_unitary(const HermitianMatrix& h, Rng& rng) {
  const std::size_t n = h.dim();
  const auto e = eig_hermitian(h);
  const double scale = 1.0 + std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
  ComplexMatrix k(n, n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && e.eigenvalues[end] - e.eigenvalues[end - 1] <= 1e-9 * scale) ++end;
    const HermitianMatrix block = random_hermitian(end - start, rng);
    for (std::size_t i = start; i < end; ++i)
      for (std::size_t j = start; j < end; ++j) k(i, j) = block(i - start, j - start);
    start = end;
  }
  const ComplexMatrix& v = e.eigenvectors;
  const ComplexMatrix generator = v * k * v.adjoint();
  return matrix_exp(Complex(0.0, 1.0) * generator);
}

ComplexMatrix swap_operator(std::size_t n) {
  ComplexMatrix s(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i * n + j, j * n + i) = 1.0;
  return s;
}

}  // namespace gibbsmaj
