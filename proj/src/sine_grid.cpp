#include "attractor/sine_grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "attractor/error.hpp"

namespace attractor {

namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct SineGrid::Plan {
  double* buffer = nullptr;
  fftw_plan plan = nullptr;

  ~Plan() {
    std::lock_guard lock(planner_mutex());
    if (plan) fftw_destroy_plan(plan);
    if (buffer) fftw_free(buffer);
  }
};

SineGrid::SineGrid(const Domain& box, std::vector<int> modes_per_axis)
    : modes_(std::move(modes_per_axis)) {
  if (!box.is_box()) throw ConfigError("spectral grid requires a box domain");
  const int n = box.dimension();
  if (n != 1 && n != 2) throw ConfigError("spectral grid supports n = 1 or n = 2 only");
  if (modes_.size() == 1 && n == 2) modes_.push_back(modes_.front());
  if (static_cast<int>(modes_.size()) != n) {
    throw ConfigError("modes_per_axis must have one entry per dimension");
  }
  sides_.assign(box.sides().begin(), box.sides().end());

  mode_count_ = 1;
  grid_count_ = 1;
  weight_ = 1.0;
  synth_scale_ = 1.0;
  analysis_scale_ = 1.0;
  for (int i = 0; i < n; ++i) {
    const int N = modes_[i];
    if (N < 4) throw ConfigError("modes_per_axis must be >= 4, got " + std::to_string(N));
    const int M = (3 * (N + 1) + 1) / 2 - 1;
    points_.push_back(M);
    mode_count_ *= static_cast<std::size_t>(N);
    grid_count_ *= static_cast<std::size_t>(M);
    const double L = sides_[i];
    const double h = L / (M + 1);
    weight_ *= h;
    // RODFT00 computes 2 sum x_k sin(...); undo the factor and apply the
    // basis normalization sqrt(2/L).
    synth_scale_ *= 0.5 * std::sqrt(2.0 / L);
    analysis_scale_ *= 0.5 * std::sqrt(2.0 / L) * h;
  }

  eigenvalues_.resize(mode_count_);
  for (std::size_t idx = 0; idx < mode_count_; ++idx) {
    const auto k = mode(idx);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = k[i] / sides_[i];
      s += r * r;
    }
    eigenvalues_[idx] = std::numbers::pi * std::numbers::pi * s;
  }

  plan_ = std::make_unique<Plan>();
  std::lock_guard lock(planner_mutex());
  plan_->buffer = static_cast<double*>(fftw_malloc(sizeof(double) * grid_count_));
  if (n == 1) {
    plan_->plan = fftw_plan_r2r_1d(points_[0], plan_->buffer, plan_->buffer, FFTW_RODFT00,
                                   FFTW_ESTIMATE);
  } else {
    plan_->plan = fftw_plan_r2r_2d(points_[0], points_[1], plan_->buffer, plan_->buffer,
                                   FFTW_RODFT00, FFTW_RODFT00, FFTW_ESTIMATE);
  }
  if (!plan_->plan) throw std::runtime_error("FFTW failed to create a DST-I plan");
}

SineGrid::~SineGrid() = default;
SineGrid::SineGrid(SineGrid&&) noexcept = default;
SineGrid& SineGrid::operator=(SineGrid&&) noexcept = default;

std::vector<int> SineGrid::mode(std::size_t idx) const {
  std::vector<int> k(modes_.size());
  for (std::size_t i = modes_.size(); i-- > 0;) {
    k[i] = static_cast<int>(idx % static_cast<std::size_t>(modes_[i])) + 1;
    idx /= static_cast<std::size_t>(modes_[i]);
  }
  return k;
}

std::size_t SineGrid::index_of(std::span<const int> k) const {
  if (k.size() != modes_.size()) throw ConfigError("mode has the wrong number of indices");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (k[i] < 1 || k[i] > modes_[i]) {
      throw ConfigError("mode index " + std::to_string(k[i]) + " is not retained by the grid");
    }
    idx = idx * static_cast<std::size_t>(modes_[i]) + static_cast<std::size_t>(k[i] - 1);
  }
  return idx;
}

std::size_t SineGrid::padded_offset(std::size_t idx) const {
  if (modes_.size() == 1) return idx;
  const auto N2 = static_cast<std::size_t>(modes_[1]);
  return (idx / N2) * static_cast<std::size_t>(points_[1]) + idx % N2;
}

std::vector<double> SineGrid::grid_point(std::size_t g) const {
  std::vector<double> x(points_.size());
  for (std::size_t i = points_.size(); i-- > 0;) {
    const auto M = static_cast<std::size_t>(points_[i]);
    x[i] = static_cast<double>(g % M + 1) * sides_[i] / (points_[i] + 1);
    g /= M;
  }
  return x;
}

void SineGrid::to_grid(std::span<const cplx> coeffs, std::span<cplx> grid) const {
  double* buf = plan_->buffer;
  for (int part = 0; part < 2; ++part) {
    std::fill(buf, buf + grid_count_, 0.0);
    for (std::size_t idx = 0; idx < mode_count_; ++idx) {
      buf[padded_offset(idx)] = part == 0 ? coeffs[idx].real() : coeffs[idx].imag();
    }
    fftw_execute(plan_->plan);
    for (std::size_t g = 0; g < grid_count_; ++g) {
      const double v = synth_scale_ * buf[g];
      if (part == 0) {
        grid[g] = cplx(v, 0.0);
      } else {
        grid[g].imag(v);
      }
    }
  }
}

void SineGrid::to_coeffs(std::span<const cplx> grid, std::span<cplx> coeffs) const {
  double* buf = plan_->buffer;
  for (int part = 0; part < 2; ++part) {
    for (std::size_t g = 0; g < grid_count_; ++g) {
      buf[g] = part == 0 ? grid[g].real() : grid[g].imag();
    }
    fftw_execute(plan_->plan);
    for (std::size_t idx = 0; idx < mode_count_; ++idx) {
      const double v = analysis_scale_ * buf[padded_offset(idx)];
      if (part == 0) {
        coeffs[idx] = cplx(v, 0.0);
      } else {
        coeffs[idx].imag(v);
      }
    }
  }
}

}  // namespace attractor
