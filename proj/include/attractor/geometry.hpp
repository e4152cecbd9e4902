#pragma once

#include <span>
#include <vector>

namespace attractor {

enum class DomainKind { box, ball };

/// A bounded open set in R^n with closed-form volume and moment of inertia.
///
/// Only axis-aligned boxes and balls are representable; both are validated
/// on construction so every Domain in the program has positive volume.
class Domain {
 public:
  static Domain box(std::vector<double> sides);
  static Domain ball(int n, double radius);

  DomainKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return n_; }
  bool is_box() const noexcept { return kind_ == DomainKind::box; }

  /// Side lengths; empty for a ball.
  std::span<const double> sides() const noexcept { return sides_; }
  /// Radius; zero for a box.
  double radius() const noexcept { return radius_; }

  /// Copy with every length multiplied by s > 0.
  Domain scaled(double s) const;

 private:
  Domain(DomainKind kind, int n, std::vector<double> sides, double radius)
      : kind_(kind), n_(n), sides_(std::move(sides)), radius_(radius) {}

  DomainKind kind_;
  int n_;
  std::vector<double> sides_;
  double radius_;
};

/// Volume of the unit ball in R^n, pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n);

double volume(const Domain& d);

/// min over centers a of the integral of |x - a|^2; attained at the centroid.
double moment_of_inertia(const Domain& d);

/// Inertia of the ball with volume V. Every domain of volume V has at least
/// this moment of inertia.
double inertia_ball_lower_bound(int n, double volume);

}  // namespace attractor
