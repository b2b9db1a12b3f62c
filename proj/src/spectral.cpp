#include "ek/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "ek/errors.hpp"

namespace ek {

SpectralField::SpectralField(Grid grid, Rep rep, std::vector<cplx> data)
    : grid_(std::move(grid)), rep_(rep), data_(std::move(data)) {
  if (static_cast<std::int64_t>(data_.size()) != grid_.size())
    throw Error(ErrorCategory::degenerate_input, "field data size does not match grid");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (grid_ != o.grid_ || rep_ != o.rep_)
    throw Error(ErrorCategory::degenerate_input, "field mismatch in +=");
  for (std::int64_t i = 0; i < size(); ++i) data_[i] += o.data_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (grid_ != o.grid_ || rep_ != o.rep_)
    throw Error(ErrorCategory::degenerate_input, "field mismatch in -=");
  for (std::int64_t i = 0; i < size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(cplx a) {
  for (auto& v : data_) v *= a;
  return *this;
}

namespace {

// Per-geometry FFTW plans. FFTW_ESTIMATE keeps planning deterministic and
// FFTW_UNALIGNED lets the plans run on any caller buffer via execute_dft.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }

  struct Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
  };

  const Plans& get(const std::vector<int>& dims) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(dims);
    if (it != cache_.end()) return it->second;
    std::int64_t n = 1;
    for (int d : dims) n *= d;
    std::vector<cplx> a(n), b(n);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    Plans p;
    p.fwd = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), pa, pb,
                          FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), pa, pb,
                          FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.fwd || !p.bwd) throw Error(ErrorCategory::internal, "fftw planning failed");
    return cache_.emplace(dims, p).first->second;
  }

 private:
  std::mutex mu_;
  std::map<std::vector<int>, Plans> cache_;
};

SpectralField transform(const SpectralField& f, bool forward) {
  const auto& plans = PlanCache::instance().get(f.grid().points());
  SpectralField out(f.grid(), forward ? Rep::fourier : Rep::physical);
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(f.data().data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data().data());
  fftw_execute_dft(forward ? plans.fwd : plans.bwd, src, dst);
  const double scale = 1.0 / std::sqrt(static_cast<double>(f.size()));
  for (auto& v : out.data()) v *= scale;
  return out;
}

}  // namespace

SpectralField to_fourier(const SpectralField& f) {
  if (f.rep() == Rep::fourier) return f;
  return transform(f, true);
}

SpectralField to_physical(const SpectralField& f) {
  if (f.rep() == Rep::physical) return f;
  return transform(f, false);
}

SpectralField derivative(const SpectralField& f, std::span<const int> alpha) {
  const Grid& g = f.grid();
  const int d = g.dim();
  if (static_cast<int>(alpha.size()) != d)
    throw Error(ErrorCategory::degenerate_input, "multi-index rank mismatch");
  SpectralField out = to_fourier(f);
  int idx[3] = {0, 0, 0};
  const auto& n = g.points();
  for (std::int64_t i = 0; i < out.size(); ++i) {
    cplx m{1.0, 0.0};
    for (int a = 0; a < d; ++a) {
      const int ord = alpha[a];
      if (ord == 0) continue;
      const int k = g.mode_index(a, idx[a]);
      if ((ord & 1) && k == -n[a] / 2) {
        m = 0.0;  // odd derivative: drop the Nyquist mode to keep real fields real
        break;
      }
      const cplx ixi{0.0, g.wavenumber(a, idx[a])};
      cplx p{1.0, 0.0};
      for (int q = 0; q < ord; ++q) p *= ixi;
      m *= p;
    }
    out[i] *= m;
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < n[a]) break;
      idx[a] = 0;
    }
  }
  if (f.rep() == Rep::physical) return to_physical(out);
  return out;
}

SpectralField partial(const SpectralField& f, int axis) {
  std::vector<int> alpha(f.grid().dim(), 0);
  alpha[axis] = 1;
  return derivative(f, alpha);
}

SpectralField laplacian(const SpectralField& f) {
  SpectralField out = to_fourier(f);
  const auto& xi2 = f.grid().xi2_table();
  for (std::int64_t i = 0; i < out.size(); ++i) out[i] *= -xi2[i];
  return f.rep() == Rep::physical ? to_physical(out) : out;
}

SpectralField free_propagate(const SpectralField& f, double t) {
  SpectralField out = to_fourier(f);
  const auto& xi2 = f.grid().xi2_table();
  for (std::int64_t i = 0; i < out.size(); ++i) {
    const double ph = -t * xi2[i];
    out[i] *= cplx{std::cos(ph), std::sin(ph)};
  }
  return f.rep() == Rep::physical ? to_physical(out) : out;
}

SpectralField inverse_laplacian_zero_mean(const SpectralField& f) {
  SpectralField out = to_fourier(f);
  const auto& xi2 = f.grid().xi2_table();
  for (std::int64_t i = 0; i < out.size(); ++i)
    out[i] = xi2[i] > 0.0 ? out[i] / (-xi2[i]) : cplx{0.0, 0.0};
  return f.rep() == Rep::physical ? to_physical(out) : out;
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = to_fourier(f);
  const auto& mask = f.grid().dealias_mask();
  for (std::int64_t i = 0; i < out.size(); ++i)
    if (!mask[i]) out[i] = 0.0;
  return f.rep() == Rep::physical ? to_physical(out) : out;
}

double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const auto& v : f.data()) s += std::norm(v);
  return std::sqrt(s * f.grid().cell_volume());
}

double lebesgue_norm(const SpectralField& f, double p) {
  if (p < 1.0) throw Error(ErrorCategory::degenerate_input, "Lebesgue exponent must be >= 1");
  const SpectralField ph = to_physical(f);
  if (std::isinf(p)) return sup_norm(ph);
  if (p == 2.0) return l2_norm(ph);
  double s = 0.0;
  for (const auto& v : ph.data()) s += std::pow(std::abs(v), p);
  return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

double sup_norm(const SpectralField& f) {
  const SpectralField ph = to_physical(f);
  double m = 0.0;
  for (const auto& v : ph.data()) m = std::max(m, std::abs(v));
  return m;
}

double sobolev_norm(const SpectralField& f, double s, bool homogeneous) {
  const SpectralField fh = to_fourier(f);
  const auto& xi2 = f.grid().xi2_table();
  double acc = 0.0;
  for (std::int64_t i = 0; i < fh.size(); ++i) {
    double w;
    if (homogeneous) {
      if (xi2[i] == 0.0) {
        if (s < 0.0 && std::abs(fh[i]) > 1e-13 * std::sqrt(static_cast<double>(fh.size())))
          throw Error(ErrorCategory::degenerate_input,
                      "homogeneous norm with s < 0 requires a vanishing zero mode");
        continue;
      }
      w = std::pow(xi2[i], s);
    } else {
      w = std::pow(1.0 + xi2[i], s);
    }
    acc += w * std::norm(fh[i]);
  }
  return std::sqrt(acc * f.grid().cell_volume());
}

cplx mean(const SpectralField& f) {
  const SpectralField ph = to_physical(f);
  cplx s{0.0, 0.0};
  for (const auto& v : ph.data()) s += v;
  return s / static_cast<double>(ph.size());
}

SpectralField pointwise_multiply(const SpectralField& a, const SpectralField& b) {
  const SpectralField pa = to_physical(a);
  const SpectralField pb = to_physical(b);
  SpectralField out = pa;
  for (std::int64_t i = 0; i < out.size(); ++i) out[i] *= pb[i];
  return out;
}

SpectralField real_part(const SpectralField& f) {
  SpectralField out = to_physical(f);
  for (auto& v : out.data()) v = cplx{v.real(), 0.0};
  return out;
}

SpectralField imag_part(const SpectralField& f) {
  SpectralField out = to_physical(f);
  for (auto& v : out.data()) v = cplx{v.imag(), 0.0};
  return out;
}

SpectralField conj_field(const SpectralField& f) {
  SpectralField out = to_physical(f);
  for (auto& v : out.data()) v = std::conj(v);
  return out;
}

double bandwidth(const SpectralField& f, double tail) {
  const SpectralField fh = to_fourier(f);
  const auto& xi2 = f.grid().xi2_table();
  std::vector<std::pair<double, double>> by_r(fh.size());
  double total = 0.0;
  for (std::int64_t i = 0; i < fh.size(); ++i) {
    by_r[i] = {xi2[i], std::norm(fh[i])};
    total += by_r[i].second;
  }
  if (total == 0.0) return 0.0;
  std::sort(by_r.begin(), by_r.end());
  double cum = 0.0;
  for (const auto& [r2, m] : by_r) {
    cum += m;
    if (total - cum <= tail * total) return std::sqrt(r2);
  }
  return f.grid().xi_max_corner();
}

double wrap_horizon(const SpectralField& f, double tail) {
  const double b = bandwidth(f, tail);
  if (b == 0.0) return std::numeric_limits<double>::infinity();
  return f.grid().min_box_length() / (2.0 * b);
}

}  // namespace ek
