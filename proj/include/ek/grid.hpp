#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace ek {

/// Periodic uniform grid on a d-dimensional box, d in {1,2,3}.
///
/// Wavenumbers on axis a are xi_k = 2*pi*k/box_length[a] for integer modes
/// k in [-n/2, n/2). Points per axis must be a power of two >= 8.
class Grid {
 public:
  Grid(std::vector<int> points_per_axis, std::vector<double> box_length);
  static Grid cube(int dim, int n, double box_length);

  int dim() const { return static_cast<int>(n_.size()); }
  const std::vector<int>& points() const { return n_; }
  const std::vector<double>& box() const { return box_; }
  std::int64_t size() const { return size_; }

  double spacing(int axis) const { return box_[axis] / n_[axis]; }
  double volume() const;
  double cell_volume() const { return volume() / static_cast<double>(size_); }
  double min_box_length() const;

  /// Signed integer mode for flat array index along one axis.
  int mode_index(int axis, int idx) const {
    return idx <= n_[axis] / 2 - 1 ? idx : idx - n_[axis];
  }
  double wavenumber(int axis, int idx) const;

  /// Smallest nonzero |xi| on the lattice and the per-axis / corner maxima.
  double xi_min_nonzero() const;
  double xi_max_axis() const;
  double xi_max_corner() const;

  /// Shared per-grid tables (|xi|^2, per-axis wavenumbers, dealias mask).
  const std::vector<double>& xi2_table() const;
  const std::vector<double>& axis_wavenumbers(int axis) const;
  /// Two-thirds-rule mask: 1 where every |mode| <= floor(n/3).
  const std::vector<std::uint8_t>& dealias_mask() const;

  /// Decompose a flat row-major index into per-axis indices.
  void unravel(std::int64_t flat, int* idx) const;

  bool operator==(const Grid& o) const { return n_ == o.n_ && box_ == o.box_; }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  struct Tables;
  std::vector<int> n_;
  std::vector<double> box_;
  std::int64_t size_ = 0;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace ek
