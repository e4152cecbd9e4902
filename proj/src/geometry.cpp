#include "attractor/geometry.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "attractor/error.hpp"

namespace attractor {

namespace {

// Gamma(n/2 + 1) by the half-integer recurrence Gamma(x + 1) = x Gamma(x),
// seeded with Gamma(1) = 1 or Gamma(1/2) = sqrt(pi).
double gamma_half_plus_one(int n) {
  double g = (n % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);
  for (int twice_x = (n % 2 == 0) ? 2 : 1; twice_x <= n; twice_x += 2) {
    g *= 0.5 * twice_x;
  }
  return g;
}

}  // namespace

Domain Domain::box(std::vector<double> sides) {
  if (sides.empty()) throw ConfigError("box domain needs at least one side");
  for (double s : sides) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw ConfigError("box side lengths must be finite and positive, got " + std::to_string(s));
    }
  }
  const int n = static_cast<int>(sides.size());
  return Domain(DomainKind::box, n, std::move(sides), 0.0);
}

Domain Domain::ball(int n, double radius) {
  if (n < 1) throw ConfigError("ball dimension must be >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigError("ball radius must be finite and positive");
  }
  return Domain(DomainKind::ball, n, {}, radius);
}

Domain Domain::scaled(double s) const {
  if (!(s > 0.0)) throw ConfigError("scale factor must be positive");
  if (is_box()) {
    std::vector<double> out(sides_);
    for (double& l : out) l *= s;
    return box(std::move(out));
  }
  return ball(n_, radius_ * s);
}

double unit_ball_volume(int n) {
  if (n < 1) throw ConfigError("unit_ball_volume: dimension must be >= 1");
  return std::pow(std::numbers::pi, 0.5 * n) / gamma_half_plus_one(n);
}

double volume(const Domain& d) {
  if (d.is_box()) {
    return std::accumulate(d.sides().begin(), d.sides().end(), 1.0, std::multiplies<>());
  }
  return unit_ball_volume(d.dimension()) * std::pow(d.radius(), d.dimension());
}

double moment_of_inertia(const Domain& d) {
  const int n = d.dimension();
  if (d.is_box()) {
    double sum_sq = 0.0;
    for (double l : d.sides()) sum_sq += l * l;
    return volume(d) * sum_sq / 12.0;
  }
  return n * unit_ball_volume(n) * std::pow(d.radius(), n + 2) / (n + 2);
}

double inertia_ball_lower_bound(int n, double vol) {
  if (!(vol > 0.0)) throw ConfigError("inertia_ball_lower_bound: volume must be positive");
  const double omega = unit_ball_volume(n);
  const double radius = std::pow(vol / omega, 1.0 / n);
  return n * omega * std::pow(radius, n + 2) / (n + 2);
}

}  // namespace attractor
