#pragma once

#include <optional>
#include <string_view>

#include "attractor/geometry.hpp"
#include "attractor/spectrum.hpp"

namespace attractor {

/// Coefficients of  u_t = (lambda + i alpha) Delta u - (kappa + i beta)|u|^2 u + gamma u.
struct CGLParams {
  double lambda = 1.0;
  double alpha = 0.0;
  double kappa = 1.0;
  double beta = 0.0;
  double gamma = 1.0;

  /// Enforces lambda > 0, kappa > 0, gamma > 0. With allow_zero_kappa the
  /// kappa check relaxes to kappa >= 0 (linear test problems only).
  void validate(bool allow_zero_kappa = false) const;
};

enum class Regime { trivial, nontrivial };

std::string_view to_string(Regime r) noexcept;

struct DimensionReport {
  double Lambda1 = 0.0;
  Regime regime = Regime::trivial;
  double delta = 0.0;
  double A = 0.0;
  double B = 0.0;
  double d_star = 0.0;
  double d_star_baseline = 0.0;
};

/// Trivial iff gamma <= lambda * Lambda1 (boundary included).
Regime classify_regime(const CGLParams& p, double Lambda1);

/// lambda M_n V / (2 I). Gains at or below this value force the trivial regime.
double melas_gamma_threshold(const CGLParams& p, double volume, double inertia,
                             const MethodConstants& consts);
double melas_gamma_threshold(const CGLParams& p, const Domain& d, const MethodConstants& consts);

/// C_*^{n/(n+2)}
double constant_c1(int n, const MethodConstants& consts);
/// 2 (2/(n+2))^{(n+2)/2} (n C_*)^{n/2}
double constant_c2(int n, const MethodConstants& consts);

/// (1/4) lambda n C_n / ((2V)^{2/n} (n + 2))
double constant_A(int n, double volume, double lambda, const MethodConstants& consts);

/// Throws TrivialRegimeError when gamma does not exceed melas_gamma_threshold.
double constant_B(int n, double volume, double inertia, const CGLParams& p, double delta,
                  const MethodConstants& consts);

/// Same as constant_B with the Melas correction dropped from the bracket.
double baseline_constant_B(int n, double volume, const CGLParams& p, double delta,
                           const MethodConstants& consts);

/// Positive root (B/A)^{n/(n+2)} of f(x) = -A x^{(n+2)/n} + B.
/// Bounds both the Hausdorff and the fractal dimension of the attractor.
double dimension_bound(double A, double B, int n);

/// The concave majorant f(x) = -A x^{(n+2)/n} + B.
double trace_majorant(double A, double B, int n, double x);

double baseline_dimension_bound(int n, double volume, double inertia, const CGLParams& p,
                                double delta, const MethodConstants& consts);

/// Assembles the full report. Lambda1 comes from the box spectrum unless it is
/// supplied (required for balls). In the trivial regime B and both dimension
/// fields are 0.
DimensionReport build_report(const Domain& d, const CGLParams& p, double delta,
                             const MethodConstants& consts,
                             std::optional<double> Lambda1 = std::nullopt);

}  // namespace attractor
