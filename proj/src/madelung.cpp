#include "ek/madelung.hpp"

#include <cmath>

#include "ek/errors.hpp"
#include "ek/spectral.hpp"

namespace ek {

FluidState FluidState::equilibrium(const Grid& g) {
  FluidState s{SpectralField(g, Rep::physical), {}};
  for (auto& v : s.rho.data()) v = 1.0;
  for (int a = 0; a < g.dim(); ++a) s.u.emplace_back(g, Rep::physical);
  return s;
}

SpectralField MadelungState::ell() const { return real_part(z); }
SpectralField MadelungState::psi() const { return imag_part(z); }

double curl_diagnostic(const std::vector<SpectralField>& u) {
  const int d = static_cast<int>(u.size());
  if (d <= 1) return 0.0;
  double curl2 = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      SpectralField c = partial(u[j], i) - partial(u[i], j);
      const double n = l2_norm(c);
      curl2 += n * n;
    }
  double grad2 = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double n = l2_norm(partial(u[i], j));
      grad2 += n * n;
    }
  return std::sqrt(curl2) / std::max(std::sqrt(grad2), 1e-300);
}

MadelungState to_complex(const CapillarityModel& model, const FluidState& state,
                         double curl_tol) {
  if (!model.z_normalized())
    throw Error(ErrorCategory::degenerate_input,
                "complex-form change of variables requires kappa(1) = 1");
  const Grid& g = state.grid();
  const double c = curl_diagnostic(state.u);
  if (c > curl_tol)
    throw Error(ErrorCategory::non_irrotational, "curl diagnostic above tolerance");

  SpectralField ell(g, Rep::physical);
  {
    const SpectralField rho = to_physical(state.rho);
    for (std::int64_t i = 0; i < ell.size(); ++i)
      ell[i] = model.ell_of_rho(rho[i].real());
  }

  // psi = Lap^{-1} div u, zero mean by construction
  SpectralField divu(g, Rep::fourier);
  for (int a = 0; a < g.dim(); ++a) divu += to_fourier(partial(state.u[a], a));
  SpectralField psi = to_physical(inverse_laplacian_zero_mean(divu));

  MadelungState out{SpectralField(g, Rep::physical)};
  for (std::int64_t i = 0; i < out.z.size(); ++i)
    out.z[i] = cplx{ell[i].real(), psi[i].real()};
  return out;
}

FluidState from_complex(const CapillarityModel& model, const MadelungState& mstate) {
  if (!model.z_normalized())
    throw Error(ErrorCategory::degenerate_input,
                "complex-form change of variables requires kappa(1) = 1");
  const Grid& g = mstate.grid();
  SpectralField psi = mstate.psi();
  FluidState out{SpectralField(g, Rep::physical), {}};
  const SpectralField ell = mstate.ell();
  for (std::int64_t i = 0; i < out.rho.size(); ++i)
    out.rho[i] = model.rho_of_ell(ell[i].real());
  for (int a = 0; a < g.dim(); ++a) out.u.push_back(real_part(partial(psi, a)));
  return out;
}

}  // namespace ek
