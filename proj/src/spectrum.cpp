#include "attractor/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>

#include "attractor/error.hpp"

namespace attractor {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// Visits every positive multi-index whose eigenvalue is <= ceiling.
// tail_min[i] is the smallest contribution dimensions i..n-1 can make.
template <typename Visit>
void visit_modes_below(const Domain& box, double ceiling, Visit&& visit) {
  const auto sides = box.sides();
  const std::size_t n = sides.size();
  std::vector<double> tail_min(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    tail_min[i] = tail_min[i + 1] + kPi2 / (sides[i] * sides[i]);
  }
  std::vector<int> mode(n, 1);
  auto recurse = [&](auto& self, std::size_t dim, double partial) -> void {
    if (dim == n) {
      visit(mode, partial);
      return;
    }
    const double inv = 1.0 / sides[dim];
    for (int k = 1;; ++k) {
      const double term = kPi2 * (k * inv) * (k * inv);
      if (partial + term + tail_min[dim + 1] > ceiling) break;
      mode[dim] = k;
      self(self, dim + 1, partial + term);
    }
  };
  recurse(recurse, 0, 0.0);
}

std::size_t count_modes_below(const Domain& box, double ceiling, std::size_t cap) {
  std::size_t count = 0;
  visit_modes_below(box, ceiling, [&](const std::vector<int>&, double) { ++count; });
  return std::min(count, cap);
}

}  // namespace

double weyl_constant(int n) {
  return 4.0 * kPi2 * std::pow(unit_ball_volume(n), -2.0 / n);
}

double MethodConstants::c_upper_bound(int n) {
  return 4.0 * kPi2 * std::pow(unit_ball_volume(n), -4.0 / n);
}

MethodConstants MethodConstants::make(int n, double c, std::optional<double> C_star) {
  if (n < 1) throw ConfigError("dimension must be >= 1");
  const double upper = c_upper_bound(n);
  if (!(c > 0.0 && c < upper)) {
    std::ostringstream msg;
    msg << std::setprecision(10) << "Melas numerator c = " << c
        << " lies outside the validity window (0, (2π)² ω_n^{−4/n}) = (0, " << upper
        << ") for n = " << n;
    throw ConfigError(msg.str());
  }
  if (C_star && !(*C_star > 0.0)) {
    throw ConfigError("Lieb-Thirring constant C_star must be positive");
  }
  MethodConstants k;
  k.n = n;
  k.omega_n = unit_ball_volume(n);
  k.C_n = weyl_constant(n);
  k.c = c;
  k.M_n = c / (n + 2);
  k.C_star = C_star;
  return k;
}

double MethodConstants::lieb_thirring() const {
  if (!C_star) throw ConfigError("Lieb-Thirring constant C_star is required but not configured");
  return *C_star;
}

double Spectrum::partial_sum(std::size_t m) const {
  m = std::min(m, values.size());
  return std::accumulate(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
}

double box_eigenvalue(const Domain& box, const std::vector<int>& mode) {
  const auto sides = box.sides();
  double s = 0.0;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    const double r = mode[i] / sides[i];
    s += r * r;
  }
  return kPi2 * s;
}

Spectrum enumerate_eigenvalues(const Domain& box, std::size_t m) {
  if (!box.is_box()) throw ConfigError("closed-form Dirichlet spectrum is only available for boxes");
  if (m == 0) throw ConfigError("eigenvalue count m must be >= 1");

  const int n = box.dimension();
  const double vol = volume(box);
  double first = 0.0;
  for (double l : box.sides()) first += kPi2 / (l * l);

  // Grow the ceiling until at least m modes fall below it. Every mode below
  // the ceiling is then collected, so the sorted prefix cannot skip one.
  double ceiling = first + weyl_constant(n) * std::pow(static_cast<double>(m) / vol, 2.0 / n);
  while (count_modes_below(box, ceiling, m) < m) ceiling *= 2.0;

  struct Entry {
    double value;
    std::vector<int> mode;
  };
  std::vector<Entry> entries;
  visit_modes_below(box, ceiling, [&](const std::vector<int>& mode, double) {
    entries.push_back({box_eigenvalue(box, mode), mode});
  });
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.mode < b.mode;
  });

  Spectrum s;
  s.values.reserve(m);
  s.modes.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    s.values.push_back(entries[j].value);
    s.modes.push_back(std::move(entries[j].mode));
  }
  return s;
}

Spectrum doubled_spectrum(const Spectrum& s) {
  if (s.size() == 0) throw ConfigError("cannot double an empty spectrum");
  Spectrum d;
  d.values.reserve(2 * s.size());
  d.modes.reserve(2 * s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    for (int copy = 0; copy < 2; ++copy) {
      d.values.push_back(s.values[j]);
      d.modes.push_back(s.modes[j]);
    }
  }
  return d;
}

double li_yau_lower_bound(int n, double vol, std::size_t m, const MethodConstants& consts) {
  if (!(vol > 0.0)) throw ConfigError("volume must be positive");
  if (m == 0) throw ConfigError("m must be >= 1");
  const double md = static_cast<double>(m);
  return n * consts.C_n / (n + 2) * std::pow(vol, -2.0 / n) * std::pow(md, (n + 2.0) / n);
}

double melas_lower_bound(int n, double vol, double inertia, std::size_t m,
                         const MethodConstants& consts) {
  if (!(inertia > 0.0)) throw ConfigError("moment of inertia must be positive");
  return li_yau_lower_bound(n, vol, m, consts) + consts.M_n * (vol / inertia) * static_cast<double>(m);
}

double doubled_sum_lower_bound(int n, double vol, double inertia, std::size_t m,
                               const MethodConstants& consts) {
  if (!(inertia > 0.0)) throw ConfigError("moment of inertia must be positive");
  return std::pow(2.0, -2.0 / n) * li_yau_lower_bound(n, vol, m, consts) +
         consts.M_n * (vol / inertia) * static_cast<double>(m);
}

VerificationReport verify_bounds(const Domain& box, std::size_t m_max,
                                 const MethodConstants& consts) {
  if (m_max == 0) throw ConfigError("m_max must be >= 1");
  const int n = box.dimension();
  if (consts.n != n) throw ConfigError("constants were built for a different dimension");
  const double vol = volume(box);
  const double inertia = moment_of_inertia(box);

  const Spectrum spec = enumerate_eigenvalues(box, m_max);
  const Spectrum doubled = doubled_spectrum(spec);

  VerificationReport report;
  report.rows.reserve(m_max);
  report.all_pass = true;
  double sum = 0.0;
  double doubled_sum = 0.0;
  for (std::size_t m = 1; m <= m_max; ++m) {
    sum += spec.values[m - 1];
    doubled_sum += doubled.values[m - 1];
    VerificationRow row;
    row.m = m;
    row.sum_enumerated = sum;
    row.li_yau = li_yau_lower_bound(n, vol, m, consts);
    row.melas = melas_lower_bound(n, vol, inertia, m, consts);
    row.doubled_sum = doubled_sum;
    row.doubled_sum_bound = doubled_sum_lower_bound(n, vol, inertia, m, consts);
    row.pass = row.sum_enumerated >= row.melas * (1.0 - kBoundSlack) && row.melas > row.li_yau &&
               row.doubled_sum >= row.doubled_sum_bound * (1.0 - kBoundSlack);
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

void write_verification_csv(std::ostream& os, const VerificationReport& report) {
  os << "m,sum_enumerated,li_yau,melas,doubled_sum_bound,pass\n";
  os << std::setprecision(17);
  for (const auto& r : report.rows) {
    os << r.m << ',' << r.sum_enumerated << ',' << r.li_yau << ',' << r.melas << ','
       << r.doubled_sum_bound << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

}  // namespace attractor
