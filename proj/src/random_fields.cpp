#include "ek/random_fields.hpp"

#include <cmath>

#include "ek/spectral.hpp"

namespace ek {

SpectralField FieldRng::complex_field(const Grid& g, double band, double damp, bool keep_mean) {
  SpectralField f(g, Rep::fourier);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto& xi2 = g.xi2_table();
  for (std::int64_t i = 0; i < f.size(); ++i) {
    if (band > 0.0 && xi2[i] > band * band) continue;
    if (!keep_mean && xi2[i] == 0.0) continue;
    const double w = damp > 0.0 ? std::exp(-damp * xi2[i]) : 1.0;
    f[i] = cplx{gauss(eng_), gauss(eng_)} * w;
  }
  return f;
}

SpectralField FieldRng::real_field(const Grid& g, double band, double damp, bool keep_mean) {
  SpectralField f = complex_field(g, band, damp, keep_mean);
  SpectralField ph = to_physical(f);
  for (auto& v : ph.data()) v = cplx{v.real(), 0.0};
  return ph;
}

}  // namespace ek
