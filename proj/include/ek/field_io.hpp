#pragma once

#include <string>

#include "ek/field.hpp"

namespace ek {

/// Snapshot format: `<path>` holds raw little-endian complex64 (float32
/// re/im pairs) in row-major axis order; `<path>.meta` is a text sidecar
/// with dim, points_per_axis, box_length, representation and a time stamp.
/// Round trip load(save(f)) is bit-exact on the stored 32-bit payload.
void save_field(const SpectralField& f, const std::string& path, double time_stamp = 0.0);
SpectralField load_field(const std::string& path);
double load_field_time(const std::string& path);

}  // namespace ek
