#pragma once

#include <span>
#include <string>

#include "ek/field.hpp"

namespace ek {

// Transforms. Unitary normalization: forward and inverse both carry 1/sqrt(N).
SpectralField to_fourier(const SpectralField& f);
SpectralField to_physical(const SpectralField& f);

/// Fourier-multiplier derivative (i*xi)^alpha, one exponent per axis.
/// The Nyquist plane is zeroed on axes with odd order, so real fields stay
/// real under differentiation.
SpectralField derivative(const SpectralField& f, std::span<const int> alpha);
SpectralField partial(const SpectralField& f, int axis);
SpectralField laplacian(const SpectralField& f);

/// Free Schroedinger propagator e^{it*Lap}: multiplier e^{-i t |xi|^2}.
SpectralField free_propagate(const SpectralField& f, double t);

/// Inverse Laplacian with the zero mode excluded (output has zero mean).
SpectralField inverse_laplacian_zero_mean(const SpectralField& f);

/// Apply the two-thirds-rule dealias mask (returns field in the input rep).
SpectralField dealias(const SpectralField& f);

double l2_norm(const SpectralField& f);
double lebesgue_norm(const SpectralField& f, double p);
double sup_norm(const SpectralField& f);
/// H^s (inhomogeneous) or homogeneous-dot H^s norm. Homogeneous with s < 0
/// requires a vanishing zero mode and throws degenerate-input otherwise.
double sobolev_norm(const SpectralField& f, double s, bool homogeneous = false);

cplx mean(const SpectralField& f);
SpectralField pointwise_multiply(const SpectralField& a, const SpectralField& b);

/// In-place physical-space map over the field values.
template <class F>
void map_physical(SpectralField& f, F&& fn) {
  for (auto& v : f.data()) v = fn(v);
}

SpectralField real_part(const SpectralField& f);
SpectralField imag_part(const SpectralField& f);
SpectralField conj_field(const SpectralField& f);

/// Spectral bandwidth: smallest radius B with relative L2 mass beyond B at
/// most `tail`. Wrap-around horizon t* = L_min / (2 B): the time the fastest
/// significant group velocity 2B needs to cross one period.
double bandwidth(const SpectralField& f, double tail = 1e-8);
double wrap_horizon(const SpectralField& f, double tail = 1e-8);

}  // namespace ek
