#include "ek/grid.hpp"

#include <cmath>
#include <numbers>

#include "ek/errors.hpp"

namespace ek {

struct Grid::Tables {
  std::vector<double> xi2;
  std::vector<std::vector<double>> axis_xi;
  std::vector<std::uint8_t> dealias;
};

namespace {
// even and {2,3,5}-smooth: transform-friendly sizes with a true Nyquist mode
bool fft_friendly(int n) {
  if (n < 8 || n % 2 != 0) return false;
  for (int f : {2, 3, 5})
    while (n % f == 0) n /= f;
  return n == 1;
}
}  // namespace

Grid::Grid(std::vector<int> points_per_axis, std::vector<double> box_length)
    : n_(std::move(points_per_axis)), box_(std::move(box_length)) {
  if (n_.empty() || n_.size() > 3 || n_.size() != box_.size())
    throw Error(ErrorCategory::degenerate_input, "grid needs 1..3 matching axes");
  size_ = 1;
  for (size_t a = 0; a < n_.size(); ++a) {
    if (!fft_friendly(n_[a]))
      throw Error(ErrorCategory::degenerate_input,
                  "points per axis must be even, {2,3,5}-smooth and >= 8");
    if (!(box_[a] > 0.0))
      throw Error(ErrorCategory::degenerate_input, "box length must be positive");
    size_ *= n_[a];
  }

  auto t = std::make_shared<Tables>();
  t->axis_xi.resize(n_.size());
  for (size_t a = 0; a < n_.size(); ++a) {
    t->axis_xi[a].resize(n_[a]);
    for (int i = 0; i < n_[a]; ++i)
      t->axis_xi[a][i] = 2.0 * std::numbers::pi * mode_index(static_cast<int>(a), i) / box_[a];
  }
  t->xi2.resize(size_);
  t->dealias.resize(size_);
  const int d = dim();
  int idx[3] = {0, 0, 0};
  for (std::int64_t f = 0; f < size_; ++f) {
    double s = 0.0;
    bool keep = true;
    for (int a = 0; a < d; ++a) {
      const double xi = t->axis_xi[a][idx[a]];
      s += xi * xi;
      if (std::abs(mode_index(a, idx[a])) > n_[a] / 3) keep = false;
    }
    t->xi2[f] = s;
    t->dealias[f] = keep ? 1 : 0;
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < n_[a]) break;
      idx[a] = 0;
    }
  }
  tables_ = std::move(t);
}

Grid Grid::cube(int dim, int n, double box_length) {
  return Grid(std::vector<int>(dim, n), std::vector<double>(dim, box_length));
}

double Grid::volume() const {
  double v = 1.0;
  for (double b : box_) v *= b;
  return v;
}

double Grid::min_box_length() const {
  double m = box_[0];
  for (double b : box_) m = std::min(m, b);
  return m;
}

double Grid::wavenumber(int axis, int idx) const {
  return tables_->axis_xi[axis][idx];
}

double Grid::xi_min_nonzero() const {
  double m = 0.0;
  for (size_t a = 0; a < n_.size(); ++a) {
    const double xi1 = 2.0 * std::numbers::pi / box_[a];
    m = (m == 0.0) ? xi1 : std::min(m, xi1);
  }
  return m;
}

double Grid::xi_max_axis() const {
  double m = 0.0;
  for (size_t a = 0; a < n_.size(); ++a)
    m = std::max(m, std::numbers::pi * n_[a] / box_[a]);
  return m;
}

double Grid::xi_max_corner() const {
  double s = 0.0;
  for (size_t a = 0; a < n_.size(); ++a) {
    const double xi = std::numbers::pi * n_[a] / box_[a];
    s += xi * xi;
  }
  return std::sqrt(s);
}

const std::vector<double>& Grid::xi2_table() const { return tables_->xi2; }
const std::vector<double>& Grid::axis_wavenumbers(int axis) const { return tables_->axis_xi[axis]; }
const std::vector<std::uint8_t>& Grid::dealias_mask() const { return tables_->dealias; }

void Grid::unravel(std::int64_t flat, int* idx) const {
  for (int a = dim() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % n_[a]);
    flat /= n_[a];
  }
}

}  // namespace ek
