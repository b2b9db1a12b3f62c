#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ek/grid.hpp"

namespace ek {

using cplx = std::complex<double>;

enum class Rep { physical, fourier };

/// A complex scalar field on a periodic grid, in physical or Fourier
/// representation. The transform pair is unitary, so Parseval holds as an
/// identity of the discrete norms.
class SpectralField {
 public:
  SpectralField(Grid grid, Rep rep)
      : grid_(std::move(grid)), rep_(rep), data_(grid_.size(), cplx{0.0, 0.0}) {}
  SpectralField(Grid grid, Rep rep, std::vector<cplx> data);

  const Grid& grid() const { return grid_; }
  Rep rep() const { return rep_; }
  std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }
  cplx& operator[](std::int64_t i) { return data_[i]; }
  const cplx& operator[](std::int64_t i) const { return data_[i]; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(cplx a);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, cplx s) { return a *= s; }
  friend SpectralField operator*(cplx s, SpectralField a) { return a *= s; }

 private:
  Grid grid_;
  Rep rep_;
  std::vector<cplx> data_;
};

}  // namespace ek
