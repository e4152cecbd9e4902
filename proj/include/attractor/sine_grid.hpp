#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "attractor/geometry.hpp"

namespace attractor {

using cplx = std::complex<double>;

/// Dirichlet sine basis on an interval or rectangle together with a
/// collocation grid for pointwise products.
///
/// Coefficients refer to the L^2-orthonormal functions
///   e_k(x) = prod_i sqrt(2/L_i) sin(k_i pi x_i / L_i),  1 <= k_i <= N_i,
/// flattened row-major (last axis fastest). The grid has M_i interior points
/// per axis with M_i + 1 = ceil(3 (N_i + 1) / 2) (the 3/2 padding rule), so
/// products are formed on a finer grid and projected back. Grid sums weighted
/// by quadrature_weight() reproduce the L^2 inner product of band-limited
/// functions exactly.
class SineGrid {
 public:
  SineGrid(const Domain& box, std::vector<int> modes_per_axis);
  ~SineGrid();
  SineGrid(SineGrid&&) noexcept;
  SineGrid& operator=(SineGrid&&) noexcept;
  SineGrid(const SineGrid&) = delete;
  SineGrid& operator=(const SineGrid&) = delete;

  int dimension() const noexcept { return static_cast<int>(modes_.size()); }
  std::size_t mode_count() const noexcept { return mode_count_; }
  std::size_t grid_count() const noexcept { return grid_count_; }
  std::span<const int> modes_per_axis() const noexcept { return modes_; }
  std::span<const int> grid_per_axis() const noexcept { return points_; }

  /// Dirichlet eigenvalue of basis function idx.
  double eigenvalue(std::size_t idx) const { return eigenvalues_[idx]; }
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  /// Multi-index (1-based) of basis function idx.
  std::vector<int> mode(std::size_t idx) const;
  /// Flat index of a multi-index; throws if it is not retained.
  std::size_t index_of(std::span<const int> mode) const;

  /// Coordinates of grid point g.
  std::vector<double> grid_point(std::size_t g) const;
  /// Cell volume prod_i L_i / (M_i + 1).
  double quadrature_weight() const noexcept { return weight_; }

  /// Synthesizes grid values from mode_count() coefficients.
  void to_grid(std::span<const cplx> coeffs, std::span<cplx> grid) const;
  /// Projects grid values onto the retained modes.
  void to_coeffs(std::span<const cplx> grid, std::span<cplx> coeffs) const;

 private:
  struct Plan;

  std::size_t padded_offset(std::size_t idx) const;

  std::vector<int> modes_;
  std::vector<int> points_;
  std::vector<double> sides_;
  std::size_t mode_count_ = 0;
  std::size_t grid_count_ = 0;
  double weight_ = 0.0;
  double synth_scale_ = 0.0;
  double analysis_scale_ = 0.0;
  std::vector<double> eigenvalues_;
  std::unique_ptr<Plan> plan_;
};

}  // namespace attractor
