#include "attractor/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "attractor/error.hpp"

namespace attractor {

namespace {

// Taylor series of phi_p(z) = sum_k z^k / (k + p)! for small |z|; the closed
// forms lose digits to cancellation there.
cplx phi_series(cplx z, int p) {
  cplx term = 1.0;
  for (int k = 1; k <= p; ++k) term /= static_cast<double>(k);
  cplx sum = term;
  for (int k = 1; k < 30; ++k) {
    term *= z / static_cast<double>(k + p);
    sum += term;
  }
  return sum;
}

cplx phi1(cplx z) {
  if (std::abs(z) < 0.5) return phi_series(z, 1);
  return (std::exp(z) - 1.0) / z;
}

cplx phi2(cplx z) {
  if (std::abs(z) < 0.5) return phi_series(z, 2);
  return (std::exp(z) - 1.0 - z) / (z * z);
}

double real_dot(std::span<const cplx> a, std::span<const cplx> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    s += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
  }
  return s;
}

bool after_burn_in(double t, double burn_in) {
  return t >= burn_in - 1e-9 * std::max(1.0, burn_in);
}

SimConfig validated(SimConfig cfg) {
  cfg.validate();
  return cfg;
}

}  // namespace

InitialCondition InitialCondition::single(std::vector<int> k, double amplitude) {
  InitialCondition ic;
  ic.kind = Kind::single_mode;
  ic.mode = std::move(k);
  ic.amplitude = amplitude;
  return ic;
}

InitialCondition InitialCondition::random(std::uint64_t seed, double decay_rate, double amplitude) {
  InitialCondition ic;
  ic.kind = Kind::random_smooth;
  ic.seed = seed;
  ic.decay_rate = decay_rate;
  ic.amplitude = amplitude;
  return ic;
}

void SimConfig::validate() const {
  if (!domain.is_box()) throw ConfigError("simulation domain must be a box");
  const int n = domain.dimension();
  if (n != 1 && n != 2) throw ConfigError("simulation supports n = 1 or n = 2 only");
  for (int N : modes_per_axis) {
    if (N < 4) throw ConfigError("modes_per_axis must be >= 4");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (!(burn_in >= 0.0 && burn_in < t_end)) throw ConfigError("burn_in must lie in [0, t_end)");
  if (reorth_interval < 1) throw ConfigError("reorth_interval must be >= 1");
  if (!(overflow_guard > 0.0)) throw ConfigError("overflow_guard must be positive");
  if (initial.kind == InitialCondition::Kind::random_smooth && !(initial.decay_rate > 0.0)) {
    throw ConfigError("random_smooth decay_rate must be positive");
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    total *= static_cast<std::size_t>(modes_per_axis[std::min(i, modes_per_axis.size() - 1)]);
  }
  if (tangent_count > total) {
    throw ConfigError("tangent_count exceeds the number of retained modes");
  }
}

CGLSimulator::CGLSimulator(SimConfig cfg, CGLParams params)
    : CGLSimulator(std::move(cfg), params, Options{}) {}

CGLSimulator::CGLSimulator(SimConfig cfg, CGLParams params, Options opts)
    : cfg_(validated(std::move(cfg))), params_(params), grid_(cfg_.domain, cfg_.modes_per_axis) {
  params_.validate(opts.allow_zero_kappa);
  const std::size_t nm = grid_.mode_count();
  linear_.resize(nm);
  expo_.resize(nm);
  phi1_dt_.resize(nm);
  phi2_dt_.resize(nm);
  const cplx diffusion(params_.lambda, params_.alpha);
  for (std::size_t k = 0; k < nm; ++k) {
    linear_[k] = params_.gamma - diffusion * grid_.eigenvalue(k);
    const cplx z = linear_[k] * cfg_.dt;
    expo_[k] = std::exp(z);
    phi1_dt_[k] = cfg_.dt * phi1(z);
    phi2_dt_[k] = cfg_.dt * phi2(z);
  }
  frame_order_.resize(nm);
  std::iota(frame_order_.begin(), frame_order_.end(), std::size_t{0});
  std::stable_sort(frame_order_.begin(), frame_order_.end(), [&](std::size_t a, std::size_t b) {
    return grid_.eigenvalue(a) < grid_.eigenvalue(b);
  });
  lambda1_ = grid_.eigenvalue(frame_order_.front());
  scratch_grid_.resize(grid_.grid_count());
}

State CGLSimulator::initial_state() const {
  const std::size_t nm = grid_.mode_count();
  State s;
  s.u.assign(nm, cplx{});
  const auto& ic = cfg_.initial;
  switch (ic.kind) {
    case InitialCondition::Kind::zero:
      break;
    case InitialCondition::Kind::single_mode: {
      double scale = ic.amplitude;
      for (double L : cfg_.domain.sides()) scale *= std::sqrt(0.5 * L);
      s.u[grid_.index_of(ic.mode)] = scale;
      break;
    }
    case InitialCondition::Kind::random_smooth: {
      std::mt19937_64 rng(ic.seed);
      std::normal_distribution<double> normal(0.0, 1.0);
      for (std::size_t k = 0; k < nm; ++k) {
        const auto mode = grid_.mode(k);
        double k2 = 0.0;
        for (int ki : mode) k2 += static_cast<double>(ki) * ki;
        const double re = normal(rng);
        const double im = normal(rng);
        s.u[k] = ic.amplitude * std::exp(-ic.decay_rate * k2) * cplx(re, im);
      }
      break;
    }
  }
  s.frames.reserve(cfg_.tangent_count);
  for (std::size_t j = 0; j < cfg_.tangent_count; ++j) {
    Coeffs f(nm, cplx{});
    f[frame_order_[j / 2]] = (j % 2 == 0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
    s.frames.push_back(std::move(f));
  }
  return s;
}

void CGLSimulator::grid_values(std::span<const cplx> coeffs, std::vector<cplx>& out) const {
  out.resize(grid_.grid_count());
  grid_.to_grid(coeffs, out);
}

Coeffs CGLSimulator::apply_linear(std::span<const cplx> v) const {
  Coeffs out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = linear_[k] * v[k];
  return out;
}

Coeffs CGLSimulator::nonlinearity(std::span<const cplx> u) const {
  const cplx coef(-params_.kappa, -params_.beta);
  grid_values(u, scratch_grid_);
  for (auto& z : scratch_grid_) z = coef * std::norm(z) * z;
  Coeffs out(grid_.mode_count());
  grid_.to_coeffs(scratch_grid_, out);
  return out;
}

Coeffs CGLSimulator::jacobian_nonlinear(const std::vector<cplx>& u_grid,
                                        std::span<const cplx> v) const {
  const cplx coef(-params_.kappa, -params_.beta);
  grid_values(v, scratch_grid_);
  for (std::size_t g = 0; g < scratch_grid_.size(); ++g) {
    const cplx u = u_grid[g];
    const cplx w = scratch_grid_[g];
    scratch_grid_[g] = coef * (std::norm(u) * w + 2.0 * u * (std::conj(u) * w).real());
  }
  Coeffs out(grid_.mode_count());
  grid_.to_coeffs(scratch_grid_, out);
  return out;
}

Coeffs CGLSimulator::apply_jacobian(std::span<const cplx> u, std::span<const cplx> v) const {
  std::vector<cplx> u_grid;
  grid_values(u, u_grid);
  Coeffs out = jacobian_nonlinear(u_grid, v);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += linear_[k] * v[k];
  return out;
}

void CGLSimulator::check_finite(const State& s, double last_t) const {
  for (const cplx& a : s.u) {
    const double mag = std::abs(a);
    if (!std::isfinite(mag) || mag > cfg_.overflow_guard) {
      std::ostringstream msg;
      msg << "numerical blow-up at t = " << s.t << " (coefficient magnitude " << mag
          << " exceeds guard " << cfg_.overflow_guard << "); last stable t = " << last_t;
      throw BlowUpError(msg.str(), last_t);
    }
  }
  for (const auto& f : s.frames) {
    for (const cplx& a : f) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        std::ostringstream msg;
        msg << "tangent frame overflow at t = " << s.t << "; last stable t = " << last_t;
        throw BlowUpError(msg.str(), last_t);
      }
    }
  }
}

void CGLSimulator::step(State& s) const {
  const double last_t = s.t;
  const std::size_t nm = grid_.mode_count();
  const Coeffs n0 = nonlinearity(s.u);
  Coeffs a(nm);
  for (std::size_t k = 0; k < nm; ++k) a[k] = expo_[k] * s.u[k] + phi1_dt_[k] * n0[k];
  const Coeffs na = nonlinearity(a);
  for (std::size_t k = 0; k < nm; ++k) s.u[k] = a[k] + phi2_dt_[k] * (na[k] - n0[k]);
  ++s.step;
  s.t = static_cast<double>(s.step) * cfg_.dt;
  check_finite(s, last_t);
}

bool CGLSimulator::tangent_step(State& s) const {
  const double last_t = s.t;
  const std::size_t nm = grid_.mode_count();

  std::vector<cplx> u_grid;
  grid_values(s.u, u_grid);
  const Coeffs n0 = nonlinearity(s.u);
  Coeffs a(nm);
  for (std::size_t k = 0; k < nm; ++k) a[k] = expo_[k] * s.u[k] + phi1_dt_[k] * n0[k];
  std::vector<cplx> a_grid;
  grid_values(a, a_grid);
  const Coeffs na = nonlinearity(a);

  // Exact derivative of the ETDRK2 map with respect to u.
  for (auto& frame : s.frames) {
    const Coeffs du = jacobian_nonlinear(u_grid, frame);
    Coeffs stage(nm);
    for (std::size_t k = 0; k < nm; ++k) stage[k] = expo_[k] * frame[k] + phi1_dt_[k] * du[k];
    const Coeffs da = jacobian_nonlinear(a_grid, stage);
    for (std::size_t k = 0; k < nm; ++k) frame[k] = stage[k] + phi2_dt_[k] * (da[k] - du[k]);
  }
  for (std::size_t k = 0; k < nm; ++k) s.u[k] = a[k] + phi2_dt_[k] * (na[k] - n0[k]);
  ++s.step;
  s.t = static_cast<double>(s.step) * cfg_.dt;
  check_finite(s, last_t);

  if (!s.frames.empty() && s.step % static_cast<std::uint64_t>(cfg_.reorth_interval) == 0) {
    s.log_volume += orthonormalize(s.frames);
    return true;
  }
  return false;
}

double CGLSimulator::orthonormalize(std::vector<Coeffs>& frames) const {
  double log_vol = 0.0;
  for (std::size_t j = 0; j < frames.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double proj = real_dot(frames[i], frames[j]);
      for (std::size_t k = 0; k < frames[j].size(); ++k) frames[j][k] -= proj * frames[i][k];
    }
    const double norm = std::sqrt(real_dot(frames[j], frames[j]));
    if (!(norm > 0.0)) throw std::runtime_error("tangent frames became linearly dependent");
    log_vol += std::log(norm);
    for (auto& c : frames[j]) c /= norm;
  }
  return log_vol;
}

std::vector<double> CGLSimulator::trace_prefixes(std::span<const cplx> u,
                                                 std::span<const Coeffs> frames) const {
  std::vector<cplx> u_grid;
  grid_values(u, u_grid);
  std::vector<double> out;
  out.reserve(frames.size());
  double running = 0.0;
  for (const auto& phi : frames) {
    Coeffs j_phi = jacobian_nonlinear(u_grid, phi);
    for (std::size_t k = 0; k < j_phi.size(); ++k) j_phi[k] += linear_[k] * phi[k];
    running += real_dot(j_phi, phi);
    out.push_back(running);
  }
  return out;
}

double CGLSimulator::trace_estimate(std::span<const cplx> u, std::span<const Coeffs> frames) const {
  if (frames.empty()) return 0.0;
  return trace_prefixes(u, frames).back();
}

double CGLSimulator::h1_sum(std::span<const Coeffs> frames) const {
  double s = 0.0;
  for (const auto& phi : frames) {
    for (std::size_t k = 0; k < phi.size(); ++k) s += grid_.eigenvalue(k) * std::norm(phi[k]);
  }
  return s;
}

double CGLSimulator::trace_bound(std::span<const cplx> u, std::span<const Coeffs> frames) const {
  std::vector<cplx> u_grid;
  grid_values(u, u_grid);
  std::vector<double> rho(grid_.grid_count(), 0.0);
  std::vector<cplx> phi_grid;
  for (const auto& phi : frames) {
    grid_values(phi, phi_grid);
    for (std::size_t g = 0; g < rho.size(); ++g) rho[g] += std::norm(phi_grid[g]);
  }
  double coupling = 0.0;
  for (std::size_t g = 0; g < rho.size(); ++g) coupling += std::norm(u_grid[g]) * rho[g];
  coupling *= grid_.quadrature_weight();
  return -params_.lambda * h1_sum(frames) + 2.0 * std::abs(params_.beta) * coupling +
         params_.gamma * static_cast<double>(frames.size());
}

double CGLSimulator::lieb_thirring_ratio(std::span<const Coeffs> frames) const {
  const int n = dimension();
  const double power = (n + 2.0) / n;
  std::vector<double> rho(grid_.grid_count(), 0.0);
  std::vector<cplx> phi_grid;
  double h1 = 0.0;
  double best = 0.0;
  for (const auto& phi : frames) {
    grid_values(phi, phi_grid);
    for (std::size_t g = 0; g < rho.size(); ++g) rho[g] += std::norm(phi_grid[g]);
    for (std::size_t k = 0; k < phi.size(); ++k) h1 += grid_.eigenvalue(k) * std::norm(phi[k]);
    double integral = 0.0;
    for (double r : rho) integral += std::pow(r, power);
    integral *= grid_.quadrature_weight();
    if (h1 > 0.0) best = std::max(best, integral / h1);
  }
  return best;
}

double CGLSimulator::l2_norm_sq(std::span<const cplx> u) const {
  double s = 0.0;
  for (const cplx& a : u) s += std::norm(a);
  return s;
}

double CGLSimulator::lp_norm_pow(std::span<const cplx> u) const {
  const double p = dimension() + 2.0;
  std::vector<cplx> u_grid;
  grid_values(u, u_grid);
  double s = 0.0;
  for (const cplx& z : u_grid) s += std::pow(std::abs(z), p);
  return s * grid_.quadrature_weight();
}

Sample CGLSimulator::make_sample(const State& s) const {
  Sample smp;
  smp.t = s.t;
  smp.l2_norm_sq = l2_norm_sq(s.u);
  smp.lp_norm_pow = lp_norm_pow(s.u);
  if (!s.frames.empty()) {
    smp.trace_prefix = trace_prefixes(s.u, s.frames);
    smp.trace_rhs = trace_bound(s.u, s.frames);
    smp.h1_sum = h1_sum(s.frames);
    smp.lieb_thirring_ratio = lieb_thirring_ratio(s.frames);
    for (std::size_t j = 0; j < s.frames.size(); ++j) {
      smp.doubled_spectrum_sum += grid_.eigenvalue(frame_order_[j / 2]);
    }
  }
  return smp;
}

RunResult CGLSimulator::run() const { return run(initial_state()); }

RunResult CGLSimulator::run(const State& start) const {
  RunResult result;
  State s = start;
  auto& sum = result.summary;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double growth = std::exp(2.0 * (params_.gamma - params_.lambda * lambda1_) * cfg_.dt);

  const std::size_t m = s.frames.size();
  std::vector<double> qm_acc(m, 0.0);
  double delta_acc = 0.0;
  std::size_t used = 0;

  auto record = [&](const State& st) {
    Sample smp = make_sample(st);
    if (after_burn_in(smp.t, cfg_.burn_in)) {
      ++used;
      delta_acc += smp.lp_norm_pow;
      for (std::size_t j = 0; j < m; ++j) qm_acc[j] += smp.trace_prefix[j];
      smp.running_qm = m > 0 ? qm_acc[m - 1] / static_cast<double>(used) : 0.0;
      smp.running_delta = delta_acc / static_cast<double>(used);
    } else {
      smp.running_qm = nan;
      smp.running_delta = nan;
    }
    if (m > 0) {
      const double scale = std::max({1.0, std::abs(smp.trace_m()), std::abs(smp.trace_rhs)});
      if (smp.trace_m() > smp.trace_rhs + kTraceTolerance * scale) sum.trace_inequality_holds = false;
      if (smp.h1_sum < smp.doubled_spectrum_sum * (1.0 - 1e-12) - kTraceTolerance) {
        sum.frame_inequality_holds = false;
      }
      sum.lieb_thirring_witness = std::max(sum.lieb_thirring_witness, smp.lieb_thirring_ratio);
    }
    result.samples.push_back(std::move(smp));
  };

  record(s);
  sum.l2_initial = result.samples.front().l2_norm_sq;

  const auto total_steps = static_cast<std::uint64_t>(std::llround(cfg_.t_end / cfg_.dt));
  const auto every = static_cast<std::uint64_t>(cfg_.reorth_interval);
  double norm_before = sum.l2_initial;
  while (s.step < total_steps) {
    if (m > 0) {
      tangent_step(s);
    } else {
      step(s);
    }
    const double norm_after = l2_norm_sq(s.u);
    if (norm_before > 0.0) {
      sum.max_step_energy_ratio = std::max(sum.max_step_energy_ratio, norm_after / (norm_before * growth));
    }
    norm_before = norm_after;
    if (s.step % every == 0 || s.step == total_steps) {
      // Frames must be orthonormal when they serve as the phi_j of the trace.
      if (m > 0 && s.step % every != 0) s.log_volume += orthonormalize(s.frames);
      record(s);
    }
  }

  sum.samples_used = used;
  sum.delta = used > 0 ? delta_acc / static_cast<double>(used) : 0.0;
  sum.qm.resize(m);
  for (std::size_t j = 0; j < m; ++j) sum.qm[j] = used > 0 ? qm_acc[j] / static_cast<double>(used) : 0.0;
  const double horizon = cfg_.t_end - cfg_.burn_in;
  for (double frac : {0.25, 0.5, 1.0}) {
    const double stop = cfg_.burn_in + frac * horizon + 1e-9 * std::max(1.0, cfg_.t_end);
    double acc = 0.0;
    std::size_t cnt = 0;
    for (const auto& smp : result.samples) {
      if (after_burn_in(smp.t, cfg_.burn_in) && smp.t <= stop) {
        acc += smp.lp_norm_pow;
        ++cnt;
      }
    }
    sum.delta_trend.push_back(cnt > 0 ? acc / static_cast<double>(cnt) : 0.0);
  }
  sum.log_volume = s.log_volume;
  sum.l2_final = result.samples.back().l2_norm_sq;
  sum.energy_envelope_final =
      sum.l2_initial * std::exp(2.0 * (params_.gamma - params_.lambda * lambda1_) * s.t);
  result.final_state = std::move(s);
  return result;
}

double empirical_qm(std::span<const Sample> samples, std::size_t j, double burn_in) {
  if (j == 0) return 0.0;
  double acc = 0.0;
  std::size_t cnt = 0;
  for (const auto& s : samples) {
    if (after_burn_in(s.t, burn_in) && j <= s.trace_prefix.size()) {
      acc += s.trace_prefix[j - 1];
      ++cnt;
    }
  }
  if (cnt == 0) throw ConfigError("no diagnostic samples after burn-in");
  return acc / static_cast<double>(cnt);
}

double delta_estimate(std::span<const Sample> samples, double burn_in) {
  double acc = 0.0;
  std::size_t cnt = 0;
  for (const auto& s : samples) {
    if (after_burn_in(s.t, burn_in)) {
      acc += s.lp_norm_pow;
      ++cnt;
    }
  }
  if (cnt == 0) throw ConfigError("no diagnostic samples after burn-in");
  return acc / static_cast<double>(cnt);
}

void write_diagnostics_csv(std::ostream& os, std::span<const Sample> samples) {
  os << "t,l2_norm_sq,lp_norm_pow,trace_m,running_qm,running_delta\n";
  os << std::setprecision(17);
  for (const auto& s : samples) {
    os << s.t << ',' << s.l2_norm_sq << ',' << s.lp_norm_pow << ',' << s.trace_m() << ','
       << s.running_qm << ',' << s.running_delta << '\n';
  }
}

}  // namespace attractor
