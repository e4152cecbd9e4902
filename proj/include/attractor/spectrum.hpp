#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "attractor/geometry.hpp"

namespace attractor {

/// Constants shared by the eigenvalue-sum bounds and the dimension estimate.
///
/// `c` is the numerator of the Melas coefficient M_n = c / (n + 2) and must
/// lie in (0, (2 pi)^2 omega_n^{-4/n}). `C_star` is the Lieb-Thirring constant;
/// it is only needed by the dimension-bound calculus, so it may be absent for
/// pure spectrum work.
struct MethodConstants {
  int n = 0;
  double omega_n = 0.0;
  double C_n = 0.0;
  double c = 0.0;
  double M_n = 0.0;
  std::optional<double> C_star;

  /// Validates c against the window and C_star > 0 (when given).
  static MethodConstants make(int n, double c, std::optional<double> C_star = std::nullopt);

  /// Upper end of the admissible window for c, (2 pi)^2 omega_n^{-4/n}.
  static double c_upper_bound(int n);

  /// C_star, or ConfigError if it was not configured.
  double lieb_thirring() const;
};

/// Weyl constant (2 pi)^2 omega_n^{-2/n}.
double weyl_constant(int n);

/// Sorted prefix of the Dirichlet Laplacian spectrum of a box, with
/// multiplicity; modes[j] holds the positive multi-index of values[j].
struct Spectrum {
  std::vector<double> values;
  std::vector<std::vector<int>> modes;

  std::size_t size() const noexcept { return values.size(); }
  /// Sum of the first m values.
  double partial_sum(std::size_t m) const;
};

/// pi^2 sum_i (k_i / L_i)^2.
double box_eigenvalue(const Domain& box, const std::vector<int>& mode);

/// The m smallest Dirichlet eigenvalues of a box; ties ordered lexicographically
/// by mode. Rejects balls and m == 0.
Spectrum enumerate_eigenvalues(const Domain& box, std::size_t m);

/// Each eigenvalue repeated twice: the spectrum of -Delta acting on pairs
/// (Re u, Im u).
Spectrum doubled_spectrum(const Spectrum& s);

/// (n C_n / (n + 2)) V^{-2/n} m^{(n+2)/n}
double li_yau_lower_bound(int n, double volume, std::size_t m, const MethodConstants& consts);

/// Li-Yau plus the linear correction M_n (V / I) m.
double melas_lower_bound(int n, double volume, double inertia, std::size_t m,
                         const MethodConstants& consts);

/// Lower bound on the sum of the first m entries of the doubled spectrum:
/// 2^{-2/n} times the Li-Yau term plus M_n (V / I) m.
double doubled_sum_lower_bound(int n, double volume, double inertia, std::size_t m,
                               const MethodConstants& consts);

struct VerificationRow {
  std::size_t m = 0;
  double sum_enumerated = 0.0;
  double li_yau = 0.0;
  double melas = 0.0;
  double doubled_sum = 0.0;  // sum of the first m doubled eigenvalues
  double doubled_sum_bound = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<VerificationRow> rows;
  bool all_pass = false;
};

/// Relative slack granted to the certified side of every comparison.
inline constexpr double kBoundSlack = 1e-12;

/// Checks sum >= Melas > Li-Yau and the doubled-sum bound for m = 1..m_max.
VerificationReport verify_bounds(const Domain& box, std::size_t m_max,
                                 const MethodConstants& consts);

/// CSV with header `m,sum_enumerated,li_yau,melas,doubled_sum_bound,pass`.
void write_verification_csv(std::ostream& os, const VerificationReport& report);

}  // namespace attractor
