#include "ek/littlewood_paley.hpp"

#include <cmath>

#include "ek/errors.hpp"
#include "ek/spectral.hpp"

namespace ek {

namespace {

double smooth_step(double t) {
  // 0 for t<=0, 1 for t>=1, C-infinity transition exp-type in between
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

constexpr double kChiLo = 0.75;       // chi == 1 inside
constexpr double kChiHi = 4.0 / 3.0;  // chi == 0 outside

int range_lo(const Grid& g) {
  // lowest j whose ring can touch the smallest nonzero |xi|
  return static_cast<int>(std::floor(std::log2(g.xi_min_nonzero() * 3.0 / 8.0))) - 1;
}
int range_hi(const Grid& g) {
  return static_cast<int>(std::ceil(std::log2(g.xi_max_corner() * 4.0 / 3.0))) + 1;
}

SpectralField radial_multiplier(const SpectralField& f, double (*m)(double), double scale) {
  SpectralField out = to_fourier(f);
  const auto& xi2 = f.grid().xi2_table();
  for (std::int64_t i = 0; i < out.size(); ++i)
    out[i] *= m(std::sqrt(xi2[i]) * scale);
  return f.rep() == Rep::physical ? to_physical(out) : out;
}

}  // namespace

double DyadicCutoffs::chi(double r) {
  return 1.0 - smooth_step((r - kChiLo) / (kChiHi - kChiLo));
}

DyadicCutoffs::DyadicCutoffs(const Grid& grid)
    : j_min_(range_lo(grid)), j_max_(range_hi(grid)) {
  const auto& xi2 = grid.xi2_table();
  double worst = 0.0;
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(xi2.size()); ++i) {
    if (xi2[i] == 0.0) continue;
    const double r = std::sqrt(xi2[i]);
    double sum = 0.0;
    for (int j = j_min_; j <= j_max_; ++j) sum += ring_bump(std::ldexp(r, -j));
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  partition_residual_ = worst;
}

SpectralField dyadic_block(const SpectralField& f, int j) {
  return radial_multiplier(f, &DyadicCutoffs::ring_bump, std::ldexp(1.0, -j));
}

SpectralField low_pass(const SpectralField& f, int j) {
  return radial_multiplier(f, &DyadicCutoffs::chi, std::ldexp(1.0, -j));
}

double besov_norm(const SpectralField& f, const BesovIndex& idx) {
  if (idx.p < 1.0 || idx.r < 1.0)
    throw Error(ErrorCategory::degenerate_input, "Besov indices require p, r >= 1");
  if (idx.s < 0.0 && std::abs(mean(f)) > 1e-13)
    throw Error(ErrorCategory::degenerate_input,
                "Besov norm with s < 0 requires a vanishing zero mode");
  DyadicCutoffs cut(f.grid());
  const bool rinf = std::isinf(idx.r);
  double acc = 0.0;
  for (int j = cut.j_min(); j <= cut.j_max(); ++j) {
    const double term = std::ldexp(1.0, 0) * std::pow(2.0, j * idx.s) *
                        lebesgue_norm(dyadic_block(f, j), idx.p);
    if (rinf)
      acc = std::max(acc, term);
    else
      acc += std::pow(term, idx.r);
  }
  return rinf ? acc : std::pow(acc, 1.0 / idx.r);
}

double besov_b111(const SpectralField& f) {
  DyadicCutoffs cut(f.grid());
  const int j0 = cut.j_min();
  double acc = lebesgue_norm(low_pass(f, j0), 1.0);
  for (int j = j0; j <= cut.j_max(); ++j)
    acc += std::pow(2.0, j) * lebesgue_norm(dyadic_block(f, j), 1.0);
  return acc;
}

BonyParts bony_decompose(const SpectralField& f, const SpectralField& g) {
  if (f.grid() != g.grid())
    throw Error(ErrorCategory::degenerate_input, "Bony decomposition needs a shared grid");
  DyadicCutoffs cut(f.grid());
  const Grid& grid = f.grid();

  std::vector<SpectralField> bf, bg;
  bf.reserve(cut.j_max() - cut.j_min() + 1);
  bg.reserve(cut.j_max() - cut.j_min() + 1);
  for (int j = cut.j_min(); j <= cut.j_max(); ++j) {
    bf.push_back(to_physical(dyadic_block(f, j)));
    bg.push_back(to_physical(dyadic_block(g, j)));
  }
  auto block = [&](const std::vector<SpectralField>& v, int j) -> const SpectralField* {
    const int k = j - cut.j_min();
    return (k >= 0 && k < static_cast<int>(v.size())) ? &v[k] : nullptr;
  };

  BonyParts out{SpectralField(grid, Rep::physical), SpectralField(grid, Rep::physical),
                SpectralField(grid, Rep::physical)};
  for (int j = cut.j_min(); j <= cut.j_max(); ++j) {
    SpectralField sf = to_physical(low_pass(f, j - 1));  // chi at scale j-1 = blocks <= j-2
    SpectralField sg = to_physical(low_pass(g, j - 1));
    const SpectralField* dg = block(bg, j);
    const SpectralField* df = block(bf, j);
    SpectralField nf(grid, Rep::physical);  // width-1 neighborhood of f at j
    for (int k = j - 1; k <= j + 1; ++k)
      if (const SpectralField* b = block(bf, k)) nf += *b;
    for (std::int64_t i = 0; i < grid.size(); ++i) {
      out.para_fg[i] += sf[i] * (*dg)[i];
      out.para_gf[i] += sg[i] * (*df)[i];
      out.remainder[i] += nf[i] * (*dg)[i];
    }
  }
  return out;
}

BernsteinReport bernstein_check(const SpectralField& block_j, int j, double p, double q) {
  if (q < p) throw Error(ErrorCategory::degenerate_input, "Bernstein check requires q >= p");
  const Grid& g = block_j.grid();
  const double np = lebesgue_norm(block_j, p);
  const double nq = lebesgue_norm(block_j, q);
  double grad2 = 0.0;
  {
    SpectralField gp(g, Rep::physical);
    for (int a = 0; a < g.dim(); ++a) {
      SpectralField da = to_physical(partial(block_j, a));
      for (std::int64_t i = 0; i < gp.size(); ++i)
        gp[i] += cplx{std::norm(da[i]), 0.0};
    }
    for (auto& v : gp.data()) v = std::sqrt(v.real());
    grad2 = lebesgue_norm(gp, p);
  }
  BernsteinReport r;
  const double invp = std::isinf(p) ? 0.0 : 1.0 / p;
  const double invq = std::isinf(q) ? 0.0 : 1.0 / q;
  const double scale = std::pow(2.0, j * g.dim() * (invp - invq));
  r.embedding_ratio = np > 0 ? nq / (scale * np) : 0.0;
  r.derivative_ratio = np > 0 ? grad2 / (std::pow(2.0, j) * np) : 0.0;
  return r;
}

}  // namespace ek
