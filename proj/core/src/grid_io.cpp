#include "qext/grid_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qext {

namespace {
constexpr char kMagic[8] = {'Q', 'E', 'X', 'T', 'G', 'R', 'D', '1'};
}

void write_grid(const std::string& path, const CauchyData& data) {
  if (data.value.size() != data.size() || data.deriv.size() != data.size())
    throw std::invalid_argument("write_grid: field sizes inconsistent with dims");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_grid: cannot open " + path);
  out.write(kMagic, 8);
  for (int i = 0; i < 3; ++i) {
    std::uint32_t n = static_cast<std::uint32_t>(data.dims[i]);
    out.write(reinterpret_cast<const char*>(&n), 4);
  }
  out.write(reinterpret_cast<const char*>(&data.spacing), 8);
  for (std::size_t i = 0; i < data.size(); ++i) {
    double rec[4] = {data.value[i].real(), data.value[i].imag(), data.deriv[i].real(),
                     data.deriv[i].imag()};
    out.write(reinterpret_cast<const char*>(rec), 32);
  }
  if (!out) throw std::runtime_error("write_grid: write failed for " + path);
}

CauchyData read_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_grid: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("read_grid: bad magic in " + path);
  CauchyData data;
  for (int i = 0; i < 3; ++i) {
    std::uint32_t n = 0;
    in.read(reinterpret_cast<char*>(&n), 4);
    data.dims[i] = n;
  }
  in.read(reinterpret_cast<char*>(&data.spacing), 8);
  if (!in || data.spacing <= 0.0) throw std::runtime_error("read_grid: bad header in " + path);
  std::size_t n = data.size();
  data.value.resize(n);
  data.deriv.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double rec[4];
    in.read(reinterpret_cast<char*>(rec), 32);
    data.value[i] = {rec[0], rec[1]};
    data.deriv[i] = {rec[2], rec[3]};
  }
  if (!in) throw std::runtime_error("read_grid: truncated file " + path);
  return data;
}

}  // namespace qext
