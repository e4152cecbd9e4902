#include "attractor/bounds.hpp"

#include <cmath>
#include <sstream>

#include "attractor/error.hpp"

namespace attractor {

namespace {

void check_common(int n, double vol, double delta, const CGLParams& p,
                  const MethodConstants& consts) {
  p.validate();
  if (consts.n != n) throw ConfigError("constants were built for a different dimension");
  if (!(vol > 0.0)) throw ConfigError("volume must be positive");
  if (!(delta >= 0.0)) throw ConfigError("delta must be nonnegative");
}

// log of 2^{n+2} V / ((n+2) (lambda C_n)^{n/2})
double log_gain_prefactor(int n, double vol, double lambda, double C_n) {
  return (n + 2) * std::log(2.0) + std::log(vol) - std::log(n + 2.0) -
         0.5 * n * std::log(lambda * C_n);
}

double beta_term(int n, const CGLParams& p, double delta, const MethodConstants& consts) {
  const double c2 = constant_c2(n, consts);
  if (p.beta == 0.0 || delta == 0.0) return 0.0;
  return c2 * delta * std::exp(0.5 * (n + 2) * std::log(std::abs(p.beta)) - 0.5 * n * std::log(p.lambda));
}

double gain_term(int n, double vol, double lambda, double C_n, double bracket) {
  return std::exp(log_gain_prefactor(n, vol, lambda, C_n) + 0.5 * (n + 2) * std::log(bracket));
}

}  // namespace

void CGLParams::validate(bool allow_zero_kappa) const {
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive (dissipativity)");
  if (allow_zero_kappa ? !(kappa >= 0.0) : !(kappa > 0.0)) {
    throw ConfigError("kappa must be positive (dissipativity)");
  }
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw ConfigError("alpha and beta must be finite");
}

std::string_view to_string(Regime r) noexcept {
  return r == Regime::trivial ? "trivial" : "nontrivial";
}

Regime classify_regime(const CGLParams& p, double Lambda1) {
  if (!(Lambda1 > 0.0)) throw ConfigError("Lambda1 must be positive");
  return p.gamma <= p.lambda * Lambda1 ? Regime::trivial : Regime::nontrivial;
}

double melas_gamma_threshold(const CGLParams& p, double vol, double inertia,
                             const MethodConstants& consts) {
  if (!(vol > 0.0) || !(inertia > 0.0)) throw ConfigError("volume and inertia must be positive");
  return 0.5 * p.lambda * consts.M_n * vol / inertia;
}

double melas_gamma_threshold(const CGLParams& p, const Domain& d, const MethodConstants& consts) {
  return melas_gamma_threshold(p, volume(d), moment_of_inertia(d), consts);
}

double constant_c1(int n, const MethodConstants& consts) {
  return std::pow(consts.lieb_thirring(), static_cast<double>(n) / (n + 2));
}

double constant_c2(int n, const MethodConstants& consts) {
  const double cs = consts.lieb_thirring();
  return 2.0 * std::exp(0.5 * (n + 2) * std::log(2.0 / (n + 2)) + 0.5 * n * std::log(n * cs));
}

double constant_A(int n, double vol, double lambda, const MethodConstants& consts) {
  if (!(vol > 0.0)) throw ConfigError("volume must be positive");
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  return 0.25 * lambda * n * consts.C_n / (std::pow(2.0 * vol, 2.0 / n) * (n + 2));
}

double constant_B(int n, double vol, double inertia, const CGLParams& p, double delta,
                  const MethodConstants& consts) {
  check_common(n, vol, delta, p, consts);
  const double threshold = melas_gamma_threshold(p, vol, inertia, consts);
  const double bracket = p.gamma - threshold;
  if (!(bracket > 0.0)) {
    std::ostringstream msg;
    msg << "trivial regime, attractor is {0}: gamma = " << p.gamma
        << " does not exceed lambda M_n V / (2 I) = " << threshold;
    throw TrivialRegimeError(msg.str());
  }
  return gain_term(n, vol, p.lambda, consts.C_n, bracket) + beta_term(n, p, delta, consts);
}

double baseline_constant_B(int n, double vol, const CGLParams& p, double delta,
                           const MethodConstants& consts) {
  check_common(n, vol, delta, p, consts);
  return gain_term(n, vol, p.lambda, consts.C_n, p.gamma) + beta_term(n, p, delta, consts);
}

double dimension_bound(double A, double B, int n) {
  if (!(A > 0.0) || !(B > 0.0)) throw ConfigError("dimension_bound needs A > 0 and B > 0");
  return std::exp(static_cast<double>(n) / (n + 2) * (std::log(B) - std::log(A)));
}

double trace_majorant(double A, double B, int n, double x) {
  return -A * std::pow(x, (n + 2.0) / n) + B;
}

double baseline_dimension_bound(int n, double vol, double, const CGLParams& p, double delta,
                                const MethodConstants& consts) {
  const double A = constant_A(n, vol, p.lambda, consts);
  return dimension_bound(A, baseline_constant_B(n, vol, p, delta, consts), n);
}

DimensionReport build_report(const Domain& d, const CGLParams& p, double delta,
                             const MethodConstants& consts, std::optional<double> Lambda1) {
  p.validate();
  if (!(delta >= 0.0)) throw ConfigError("delta must be nonnegative");
  const int n = d.dimension();
  const double vol = volume(d);
  const double inertia = moment_of_inertia(d);

  DimensionReport r;
  if (Lambda1) {
    r.Lambda1 = *Lambda1;
  } else {
    if (!d.is_box()) throw ConfigError("Lambda1 must be supplied for non-box domains");
    r.Lambda1 = enumerate_eigenvalues(d, 1).values.front();
  }
  r.regime = classify_regime(p, r.Lambda1);
  r.delta = delta;
  r.A = constant_A(n, vol, p.lambda, consts);
  if (r.regime == Regime::trivial) return r;

  r.B = constant_B(n, vol, inertia, p, delta, consts);
  r.d_star = dimension_bound(r.A, r.B, n);
  r.d_star_baseline = baseline_dimension_bound(n, vol, inertia, p, delta, consts);
  return r;
}

}  // namespace attractor
