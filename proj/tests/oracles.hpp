#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical paths; each routine is the naive/brute-force version of what the
// library computes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// All Dirichlet eigenvalues pi^2 sum (k_i/L_i)^2 with 1 <= k_i <= K, sorted.
inline std::vector<double> brute_force_box_spectrum(const std::vector<double>& sides, int K) {
  std::vector<double> out;
  const std::size_t n = sides.size();
  std::vector<int> k(n, 1);
  while (true) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += (k[i] / sides[i]) * (k[i] / sides[i]);
    out.push_back(kPi * kPi * s);
    std::size_t i = 0;
    while (i < n && ++k[i] > K) k[i++] = 1;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Midpoint-rule integral of |x - center|^2 over [origin, origin + sides] in 2-D.
inline double box_inertia_quadrature(double ox, double oy, double a, double b, double cx, double cy,
                                     int cells) {
  const double hx = a / cells;
  const double hy = b / cells;
  double sum = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double x = ox + (i + 0.5) * hx - cx;
    for (int j = 0; j < cells; ++j) {
      const double y = oy + (j + 0.5) * hy - cy;
      sum += x * x + y * y;
    }
  }
  return sum * hx * hy;
}

/// Direct sine-series evaluation of sum_k c_k e_k(x) on an interval.
inline std::complex<double> sine_series_1d(const std::vector<std::complex<double>>& c, double L,
                                           double x) {
  std::complex<double> s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    s += c[k] * std::sqrt(2.0 / L) * std::sin((k + 1) * kPi * x / L);
  }
  return s;
}

/// Same on a rectangle, coefficients row-major with N2 per row.
inline std::complex<double> sine_series_2d(const std::vector<std::complex<double>>& c, int N1,
                                           int N2, double L1, double L2, double x, double y) {
  std::complex<double> s = 0.0;
  for (int a = 0; a < N1; ++a) {
    const double sx = std::sqrt(2.0 / L1) * std::sin((a + 1) * kPi * x / L1);
    for (int b = 0; b < N2; ++b) {
      s += c[static_cast<std::size_t>(a * N2 + b)] * sx * std::sqrt(2.0 / L2) *
           std::sin((b + 1) * kPi * y / L2);
    }
  }
  return s;
}

/// Independent integrator for the 1-D Dirichlet CGL in the sine basis:
/// integrating-factor RK4 with a direct O(N M) sine transform on a fine
/// uniform grid. Slow but shares no code with the library.
struct ReferenceCGL1D {
  double L, lambda, alpha, kappa, beta, gamma;
  int N;
  int M;  // interior quadrature points

  std::vector<std::complex<double>> rhs_nonlinear(const std::vector<std::complex<double>>& c) const {
    const double h = L / (M + 1);
    std::vector<std::complex<double>> g(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) {
      const auto u = sine_series_1d(c, L, (j + 1) * h);
      g[static_cast<std::size_t>(j)] = -std::complex<double>(kappa, beta) * std::norm(u) * u;
    }
    std::vector<std::complex<double>> out(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      std::complex<double> s = 0.0;
      for (int j = 0; j < M; ++j) {
        s += g[static_cast<std::size_t>(j)] * std::sqrt(2.0 / L) * std::sin((k + 1) * kPi * (j + 1) * h / L);
      }
      out[k] = s * h;
    }
    return out;
  }

  std::complex<double> rate(std::size_t k) const {
    const double lam = std::pow((k + 1) * kPi / L, 2);
    return gamma - std::complex<double>(lambda, alpha) * lam;
  }

  /// Advances with step h for `steps` steps; records |u|^2 after each step.
  std::vector<double> integrate(std::vector<std::complex<double>> c, double h, int steps) const {
    std::vector<double> norms;
    const std::size_t n = c.size();
    std::vector<std::complex<double>> half(n), full(n);
    for (std::size_t k = 0; k < n; ++k) {
      half[k] = std::exp(rate(k) * (0.5 * h));
      full[k] = std::exp(rate(k) * h);
    }
    for (int s = 0; s < steps; ++s) {
      // RK4 for v' = e^{-Lt} N(e^{Lt} v) written in the original variable.
      auto k1 = rhs_nonlinear(c);
      std::vector<std::complex<double>> tmp(n);
      for (std::size_t k = 0; k < n; ++k) tmp[k] = half[k] * (c[k] + 0.5 * h * k1[k]);
      auto k2 = rhs_nonlinear(tmp);
      for (std::size_t k = 0; k < n; ++k) tmp[k] = half[k] * c[k] + 0.5 * h * k2[k];
      auto k3 = rhs_nonlinear(tmp);
      for (std::size_t k = 0; k < n; ++k) tmp[k] = full[k] * c[k] + h * half[k] * k3[k];
      auto k4 = rhs_nonlinear(tmp);
      for (std::size_t k = 0; k < n; ++k) {
        c[k] = full[k] * c[k] + h / 6.0 * (full[k] * k1[k] + 2.0 * half[k] * (k2[k] + k3[k]) + k4[k]);
      }
      double norm = 0.0;
      for (const auto& a : c) norm += std::norm(a);
      norms.push_back(norm);
    }
    return norms;
  }
};

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Fresh empty directory under the system temp path.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  auto dir = std::filesystem::temp_directory_path() /
             ("attractor_" + tag + "_" + std::to_string(rng()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace oracle
