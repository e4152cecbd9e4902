#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "attractor/bounds.hpp"
#include "attractor/geometry.hpp"
#include "attractor/sine_grid.hpp"

namespace attractor {

using Coeffs = std::vector<cplx>;

struct InitialCondition {
  enum class Kind { single_mode, random_smooth, zero };

  Kind kind = Kind::single_mode;
  std::vector<int> mode{1};  // single_mode
  double amplitude = 1.0;    // peak of prod sin(k_i pi x_i / L_i), or scale of random data
  std::uint64_t seed = 0;    // random_smooth
  double decay_rate = 0.5;   // random_smooth: coefficient envelope exp(-decay_rate |k|^2)

  static InitialCondition single(std::vector<int> k, double amplitude);
  static InitialCondition random(std::uint64_t seed, double decay_rate, double amplitude = 1.0);
};

struct SimConfig {
  Domain domain = Domain::box({1.0});
  std::vector<int> modes_per_axis{32};
  double dt = 1e-3;
  double t_end = 1.0;
  double burn_in = 0.0;
  InitialCondition initial;
  std::size_t tangent_count = 0;
  int reorth_interval = 10;
  double overflow_guard = 1e12;

  void validate() const;
};

/// Solution coefficients plus m tangent frames, all in the orthonormal sine basis.
struct State {
  double t = 0.0;
  std::uint64_t step = 0;
  Coeffs u;
  std::vector<Coeffs> frames;
  /// Accumulated log of the m-volume growth removed by orthonormalization.
  double log_volume = 0.0;
};

/// One diagnostic instant, recorded right after an orthonormalization.
struct Sample {
  double t = 0.0;
  double l2_norm_sq = 0.0;
  double lp_norm_pow = 0.0;            // integral of |u|^{n+2}
  std::vector<double> trace_prefix;    // Re Tr restricted to frames 1..j, j = 1..m
  double trace_rhs = 0.0;              // -lambda sum|phi|_H1^2 + 2|beta| int |u|^2 rho + gamma m
  double h1_sum = 0.0;                 // sum_j |phi_j|_H1^2 over all m frames
  double doubled_spectrum_sum = 0.0;   // sum of the first m doubled eigenvalues
  double lieb_thirring_ratio = 0.0;    // max over prefixes of int rho^{(n+2)/n} / h1 sum
  double running_qm = 0.0;             // NaN before burn-in ends
  double running_delta = 0.0;          // NaN before burn-in ends

  double trace_m() const { return trace_prefix.empty() ? 0.0 : trace_prefix.back(); }
};

struct RunSummary {
  double delta = 0.0;
  std::vector<double> qm;        // empirical q_j for j = 1..m
  std::vector<double> delta_trend;  // delta over nested horizons H/4, H/2, H after burn-in
  double lieb_thirring_witness = 0.0;
  double log_volume = 0.0;
  double l2_initial = 0.0;
  double l2_final = 0.0;
  double energy_envelope_final = 0.0;   // |u0|^2 exp(2 (gamma - lambda Lambda1) t_end)
  double max_step_energy_ratio = 0.0;   // max |u_{k+1}|^2 / (|u_k|^2 e^{2(gamma-lambda Lambda1)dt})
  bool trace_inequality_holds = true;
  bool frame_inequality_holds = true;
  std::size_t samples_used = 0;
};

struct RunResult {
  std::vector<Sample> samples;
  RunSummary summary;
  State final_state;
};

/// Tolerances used for the per-instant inequality flags.
inline constexpr double kTraceTolerance = 1e-8;
inline constexpr double kEnergyTolerance = 1e-6;

/// Sine-pseudospectral Dirichlet CGL solver with tangent propagation.
///
/// Time stepping is second-order exponential time differencing (ETDRK2) with
/// the per-mode linear factor exp((gamma - (lambda + i alpha) Lambda_k) dt)
/// applied exactly. Tangent frames are advanced by the derivative of the same
/// discrete map, so a finite-difference of two trajectories converges to them
/// at rate O(eps). Frames are orthonormal in the real inner product
/// Re <U, V>, because the linearization is only R-linear.
///
/// A simulator owns FFTW scratch buffers; give each thread its own instance.
class CGLSimulator {
 public:
  struct Options {
    bool allow_zero_kappa = false;  // linear test problems only
  };

  CGLSimulator(SimConfig cfg, CGLParams params);
  CGLSimulator(SimConfig cfg, CGLParams params, Options opts);

  const SimConfig& config() const noexcept { return cfg_; }
  const CGLParams& params() const noexcept { return params_; }
  const SineGrid& grid() const noexcept { return grid_; }
  int dimension() const noexcept { return grid_.dimension(); }
  /// Smallest retained eigenvalue; equals Lambda1 of the domain.
  double lambda1() const noexcept { return lambda1_; }

  /// u(0) from the configured generator, frames from the lowest modes in the
  /// order e_1, i e_1, e_2, i e_2, ... (already orthonormal).
  State initial_state() const;

  /// Advances u by one step; frames are left untouched.
  void step(State& s) const;
  /// Advances u and all frames by one step and orthonormalizes the frames
  /// every reorth_interval steps. Returns true when it orthonormalized.
  bool tangent_step(State& s) const;

  /// Modified Gram-Schmidt in Re <., .>; returns the log m-volume removed.
  double orthonormalize(std::vector<Coeffs>& frames) const;

  /// Linear part of the vector field, (gamma - (lambda + i alpha) Lambda_k) v_k.
  Coeffs apply_linear(std::span<const cplx> v) const;
  /// -(kappa + i beta) |u|^2 u projected onto the retained modes.
  Coeffs nonlinearity(std::span<const cplx> u) const;
  /// Full Jacobian F'(u) v.
  Coeffs apply_jacobian(std::span<const cplx> u, std::span<const cplx> v) const;

  /// Re (F'(u) phi_j, phi_j) summed over j < count, as running prefix sums.
  std::vector<double> trace_prefixes(std::span<const cplx> u,
                                     std::span<const Coeffs> frames) const;
  double trace_estimate(std::span<const cplx> u, std::span<const Coeffs> frames) const;
  /// Right-hand side of the trace inequality for the given frames.
  double trace_bound(std::span<const cplx> u, std::span<const Coeffs> frames) const;
  double h1_sum(std::span<const Coeffs> frames) const;
  /// max over prefixes j of int rho_j^{(n+2)/n} / sum_{i<=j} |phi_i|_H1^2.
  double lieb_thirring_ratio(std::span<const Coeffs> frames) const;

  double l2_norm_sq(std::span<const cplx> u) const;
  /// Grid quadrature of |u|^{n+2}.
  double lp_norm_pow(std::span<const cplx> u) const;

  /// Full run: samples at t = 0 and after every orthonormalization.
  RunResult run() const;
  RunResult run(const State& start) const;

 private:
  void check_finite(const State& s, double last_t) const;
  void grid_values(std::span<const cplx> coeffs, std::vector<cplx>& out) const;
  Coeffs jacobian_nonlinear(const std::vector<cplx>& u_grid, std::span<const cplx> v) const;
  Sample make_sample(const State& s) const;

  SimConfig cfg_;
  CGLParams params_;
  SineGrid grid_;
  double lambda1_ = 0.0;
  std::vector<cplx> linear_;   // per-mode linear rate
  std::vector<cplx> expo_;     // exp(L dt)
  std::vector<cplx> phi1_dt_;  // dt phi1(L dt)
  std::vector<cplx> phi2_dt_;  // dt phi2(L dt)
  std::vector<std::size_t> frame_order_;  // modes sorted by eigenvalue
  mutable std::vector<cplx> scratch_grid_;
};

/// Mean of the trace prefix j over samples with t >= burn_in.
double empirical_qm(std::span<const Sample> samples, std::size_t j, double burn_in);

/// Mean of lp_norm_pow over samples with t >= burn_in.
double delta_estimate(std::span<const Sample> samples, double burn_in);

/// CSV `t,l2_norm_sq,lp_norm_pow,trace_m,running_qm,running_delta`.
void write_diagnostics_csv(std::ostream& os, std::span<const Sample> samples);

}  // namespace attractor
