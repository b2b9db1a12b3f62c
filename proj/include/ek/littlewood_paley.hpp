#pragma once

#include <vector>

#include "ek/field.hpp"

namespace ek {

/// Homogeneous dyadic cutoffs on a fixed grid.
///
/// chi is a smooth radial bump with chi = 1 on |xi| <= 3/4 and chi = 0 on
/// |xi| >= 4/3; the ring bump is chi(xi/2) - chi(xi), supported in the shell
/// 3/4 <= |xi| <= 8/3. The dyadic index range is clipped to the lattice so
/// that every nonzero mode is covered by the partition of unity.
class DyadicCutoffs {
 public:
  explicit DyadicCutoffs(const Grid& grid);

  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }

  static double chi(double r);
  static double ring_bump(double r) { return chi(r / 2.0) - chi(r); }

  /// Max partition-of-unity residual over nonzero lattice modes.
  double partition_residual() const { return partition_residual_; }

 private:
  int j_min_, j_max_;
  double partition_residual_;
};

struct BesovIndex {
  double s;
  double p;  // integrability, may be inf
  double r;  // summability, may be inf
};

/// Homogeneous dyadic block (ring multiplier at scale 2^j) and low-pass
/// cut-off (chi multiplier at scale 2^j; keeps the zero mode).
SpectralField dyadic_block(const SpectralField& f, int j);
SpectralField low_pass(const SpectralField& f, int j);

/// Homogeneous Besov norm (sum over the grid-clipped dyadic range).
/// s < 0 requires a vanishing zero mode.
double besov_norm(const SpectralField& f, const BesovIndex& idx);

/// Inhomogeneous B^1_{1,1} used by the profile-norm report:
/// ||low_pass(f, j0)||_L1 + sum_{j >= j0} 2^j ||block_j f||_L1 with j0 the
/// smallest usable index.
double besov_b111(const SpectralField& f);

struct BonyParts {
  SpectralField para_fg;    // T_f g
  SpectralField remainder;  // R(f, g), width-1 block neighborhood
  SpectralField para_gf;    // T_g f
};

/// Bony decomposition. The three parts sum to fg - mean(f)*mean(g).
BonyParts bony_decompose(const SpectralField& f, const SpectralField& g);

struct BernsteinReport {
  double embedding_ratio;   // ||block||_q / (2^{jd(1/p-1/q)} ||block||_p)
  double derivative_ratio;  // ||grad block||_p / (2^j ||block||_p)
};

/// Ratios for a field already localized at shell j.
BernsteinReport bernstein_check(const SpectralField& block_j, int j, double p, double q);

}  // namespace ek
