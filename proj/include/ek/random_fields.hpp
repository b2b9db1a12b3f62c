#pragma once

#include <cstdint>
#include <random>

#include "ek/field.hpp"

namespace ek {

/// Seeded band-limited random fields, shared by property tests and the CLI
/// self-test suites.
class FieldRng {
 public:
  explicit FieldRng(std::uint64_t seed) : eng_(seed) {}

  /// Complex Gaussian coefficients on modes with |xi| <= band (0 = no cut),
  /// damped by exp(-damp*|xi|^2). Mean-zero unless keep_mean.
  SpectralField complex_field(const Grid& g, double band = 0.0, double damp = 0.0,
                              bool keep_mean = false);
  /// Real-valued variant (Hermitian-symmetrized spectrum).
  SpectralField real_field(const Grid& g, double band = 0.0, double damp = 0.0,
                           bool keep_mean = false);

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ek
