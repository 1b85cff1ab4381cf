#pragma once

#include <string>

#include "qext/modes.hpp"

// Binary grid file for Cauchy data, little-endian:
//   bytes 0..7   magic "QEXTGRD1"
//   u32 nx, ny, nz
//   f64 spacing
//   nx*ny*nz records of 4 doubles: value_re, value_im, deriv_re, deriv_im
// with index = (ix*ny + iy)*nz + iz.

namespace qext {

void write_grid(const std::string& path, const CauchyData& data);
CauchyData read_grid(const std::string& path);

}  // namespace qext
