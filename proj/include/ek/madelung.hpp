#pragma once

#include <vector>

#include "ek/field.hpp"
#include "ek/fluid_model.hpp"

namespace ek {

/// Primitive variables (rho, u) in physical representation.
struct FluidState {
  SpectralField rho;
  std::vector<SpectralField> u;  // one component per axis

  static FluidState equilibrium(const Grid& g);
  const Grid& grid() const { return rho.grid(); }
};

/// The complex field z = ell + i psi for irrotational flow.
struct MadelungState {
  SpectralField z;

  SpectralField ell() const;
  SpectralField psi() const;
  const Grid& grid() const { return z.grid(); }
};

/// ||curl u||_L2 / max(||grad u||_L2, tiny); identically zero for gradients
/// (and for d = 1, where there is no curl).
double curl_diagnostic(const std::vector<SpectralField>& u);

/// (rho, u) -> z = L(rho) + i psi with grad psi = u, psi mean-zero.
/// Throws non-irrotational when the curl diagnostic exceeds `curl_tol`,
/// density-range when rho leaves J.
MadelungState to_complex(const CapillarityModel& model, const FluidState& state,
                         double curl_tol = 1e-8);

/// z -> (L^{-1}(Re z), grad Im z); output is exactly irrotational.
FluidState from_complex(const CapillarityModel& model, const MadelungState& mstate);

}  // namespace ek
