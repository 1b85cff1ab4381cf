#include "qext/modes.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace qext {

namespace {

constexpr double kPi = std::numbers::pi;
const complexd I{0.0, 1.0};

Eigen::Matrix2cd pauli_dot(const Vec3& p) {
  Eigen::Matrix2cd m;
  m << p[2], complexd(p[0], -p[1]), complexd(p[0], p[1]), -p[2];
  return m;
}

std::mutex fftw_mutex;  // FFTW planning is not thread-safe

}  // namespace

DiracSpinor dirac_u(const Vec3& p, double m, FrequencySign sign, int twice_spin) {
  if (m <= 0.0) throw std::domain_error("dirac_u: m must be > 0");
  if (twice_spin != 1 && twice_spin != -1)
    throw std::invalid_argument("dirac_u: spin must be +-1 (for s = +-1/2)");
  double E = on_shell_energy(p, m);
  double norm = std::sqrt((E + m) / (2.0 * E));
  Eigen::Vector2cd chi = Eigen::Vector2cd::Zero();
  chi[twice_spin > 0 ? 0 : 1] = 1.0;
  Eigen::Vector2cd lower = (pauli_dot(p) * chi) / (E + m);
  Eigen::Vector4cd u;
  if (sign == FrequencySign::Positive) {
    u << chi, lower;
  } else {
    double s = twice_spin > 0 ? 1.0 : -1.0;
    u << -s * lower, s * chi;
  }
  u *= norm;
  return {u, OnShellMomentum::make(p, m), sign, twice_spin};
}

PolarizationVector polarization_vector(const Vec3& k, double m, Polarization sigma) {
  if (k.norm() == 0.0) throw std::domain_error("polarization_vector: k must be nonzero");
  if (m < 0.0) throw std::domain_error("polarization_vector: m must be >= 0");
  if ((sigma == Polarization::Zero || sigma == Polarization::Scalar) && m == 0.0)
    throw std::invalid_argument("polarization_vector: longitudinal/scalar modes need m > 0");
  OnShellMomentum mom = OnShellMomentum::make(k, m);
  double kn = k.norm();
  Vec3 khat = k / kn;

  PolarizationVector out;
  out.momentum = mom;
  out.sigma = sigma;
  out.metric_sign = sigma == Polarization::Scalar ? -1.0 : 1.0;

  if (sigma == Polarization::Zero) {
    // u(k,0) = (|k|/m, eps k / (m |k|))
    out.components = {complexd(kn / m), complexd(mom.energy * k[0] / (m * kn)),
                      complexd(mom.energy * k[1] / (m * kn)),
                      complexd(mom.energy * k[2] / (m * kn))};
    return out;
  }
  if (sigma == Polarization::Scalar) {
    out.components = {complexd(mom.energy / m), complexd(k[0] / m), complexd(k[1] / m),
                      complexd(k[2] / m)};
    return out;
  }
  // transversal frame: axis with smallest |k component|, Gram-Schmidt, e2 = khat x e1.
  // labels fixed by the eigenrelation k x e(sigma) = sigma i |k| e(sigma),
  // which gives e(sigma) = (e1 - i sigma e2)/sqrt(2)
  int axis = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(k[i]) < std::abs(k[axis])) axis = i;
  Vec3 a = Vec3::Unit(axis);
  Vec3 e1 = (a - a.dot(khat) * khat).normalized();
  Vec3 e2 = khat.cross(e1);
  double hel = sigma == Polarization::PlusOne ? 1.0 : -1.0;
  Vec3 re = e1 / std::sqrt(2.0), im = -hel * e2 / std::sqrt(2.0);
  out.components = {complexd(0.0), complexd(re[0], im[0]), complexd(re[1], im[1]),
                    complexd(re[2], im[2])};
  return out;
}

complexd spin_sum_boson(const CVec4& M, const CVec4& N, const OnShellMomentum& k, bool massless,
                        double transversality_tol) {
  if (massless != (k.mass == 0.0))
    throw std::invalid_argument("spin_sum_boson: massless flag inconsistent with momentum");
  CVec4 kc = to_cvec4(k.four());
  double scaleM = 0.0, scaleN = 0.0;
  for (int i = 0; i < 4; ++i) {
    scaleM = std::max(scaleM, std::abs(M[i]));
    scaleN = std::max(scaleN, std::abs(N[i]));
  }
  double kscale = std::max(1.0, k.energy);
  if (std::abs(minkowski_dot(kc, M)) > transversality_tol * kscale * std::max(1.0, scaleM) ||
      std::abs(minkowski_dot(kc, N)) > transversality_tol * kscale * std::max(1.0, scaleN))
    throw std::invalid_argument("spin_sum_boson: inputs must be transversal to k");
  return minkowski_dot(conj(M), N);
}

double casimir_spin_sum(const SpinorMatrix& B, int sign_plus, int sign_minus,
                        const OnShellMomentum& p_plus, const OnShellMomentum& p_minus) {
  if (p_plus.mass != p_minus.mass || p_plus.mass <= 0.0)
    throw std::invalid_argument("casimir_spin_sum: equal positive masses required");
  const auto rep = GammaRepresentation::Dirac;
  SpinorMatrix beta = gamma_matrix(rep, GammaElement::beta());
  SpinorMatrix Bt = beta * B.adjoint() * beta;
  double m = p_plus.mass;
  SpinorMatrix plus = -slash(p_plus.four(), rep) + sign_plus * m * SpinorMatrix::Identity();
  SpinorMatrix minus = -slash(p_minus.four(), rep) + sign_minus * m * SpinorMatrix::Identity();
  complexd tr = (Bt * plus * B * minus).trace();
  return tr.real() / (4.0 * p_plus.energy * p_minus.energy);
}

namespace {

struct Fft3 {
  std::array<std::size_t, 3> dims;
  std::vector<complexd> work;

  explicit Fft3(const std::array<std::size_t, 3>& d) : dims(d), work(d[0] * d[1] * d[2]) {}

  void run(const std::vector<complexd>& in, std::vector<complexd>& out, int direction) {
    out.resize(in.size());
    std::copy(in.begin(), in.end(), out.begin());
    std::lock_guard<std::mutex> lock(fftw_mutex);
    fftw_plan plan = fftw_plan_dft_3d(
        static_cast<int>(dims[0]), static_cast<int>(dims[1]), static_cast<int>(dims[2]),
        reinterpret_cast<fftw_complex*>(out.data()), reinterpret_cast<fftw_complex*>(out.data()),
        direction, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
};

double mode_frequency(std::size_t i, std::size_t n, double spacing) {
  // FFT index -> signed wavenumber 2 pi j / (n dx)
  long j = static_cast<long>(i);
  if (j > static_cast<long>(n) / 2) j -= static_cast<long>(n);
  return 2.0 * kPi * static_cast<double>(j) / (static_cast<double>(n) * spacing);
}

void check_boundary_decay(const CauchyData& d, double tol) {
  double peak = 0.0;
  for (const auto& v : d.value) peak = std::max(peak, std::abs(v));
  for (const auto& v : d.deriv) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return;
  double boundary = 0.0;
  auto [nx, ny, nz] = d.dims;
  auto at = [&](std::size_t ix, std::size_t iy, std::size_t iz) {
    std::size_t idx = (ix * ny + iy) * nz + iz;
    return std::max(std::abs(d.value[idx]), std::abs(d.deriv[idx]));
  };
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < ny; ++b) {
      boundary = std::max({boundary, at(a, b, 0), at(a, b, nz - 1)});
    }
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t c = 0; c < nz; ++c)
      boundary = std::max({boundary, at(a, 0, c), at(a, ny - 1, c)});
  for (std::size_t b = 0; b < ny; ++b)
    for (std::size_t c = 0; c < nz; ++c)
      boundary = std::max({boundary, at(0, b, c), at(nx - 1, b, c)});
  if (boundary > tol * peak)
    throw std::runtime_error("evolve_kg_cauchy: fields do not decay at the grid boundary");
}

}  // namespace

CauchyData evolve_kg_cauchy(const CauchyData& data, double t, double m, double boundary_tol) {
  if (data.spacing <= 0.0) throw std::invalid_argument("evolve_kg_cauchy: spacing must be > 0");
  if (data.value.size() != data.size() || data.deriv.size() != data.size())
    throw std::invalid_argument("evolve_kg_cauchy: field sizes inconsistent with dims");
  check_boundary_decay(data, boundary_tol);
  if (t == 0.0) return data;

  Fft3 fft(data.dims);
  std::vector<complexd> vhat, dhat;
  fft.run(data.value, vhat, FFTW_FORWARD);
  fft.run(data.deriv, dhat, FFTW_FORWARD);

  auto [nx, ny, nz] = data.dims;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    double kx = mode_frequency(ix, nx, data.spacing);
    for (std::size_t iy = 0; iy < ny; ++iy) {
      double ky = mode_frequency(iy, ny, data.spacing);
      for (std::size_t iz = 0; iz < nz; ++iz) {
        double kz = mode_frequency(iz, nz, data.spacing);
        double eps = std::sqrt(kx * kx + ky * ky + kz * kz + m * m);
        std::size_t idx = (ix * ny + iy) * nz + iz;
        double c = std::cos(t * eps);
        double s = eps > 0 ? std::sin(t * eps) / eps : t;
        complexd v = vhat[idx], d = dhat[idx];
        vhat[idx] = c * v + s * d;
        dhat[idx] = -eps * std::sin(t * eps) * v + c * d;
      }
    }
  }

  CauchyData out;
  out.dims = data.dims;
  out.spacing = data.spacing;
  fft.run(vhat, out.value, FFTW_BACKWARD);
  fft.run(dhat, out.deriv, FFTW_BACKWARD);
  double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : out.value) v *= scale;
  for (auto& v : out.deriv) v *= scale;
  return out;
}

double field_energy(const CauchyData& data, double m) {
  Fft3 fft(data.dims);
  std::vector<complexd> vhat, dhat;
  fft.run(data.value, vhat, FFTW_FORWARD);
  fft.run(data.deriv, dhat, FFTW_FORWARD);
  auto [nx, ny, nz] = data.dims;
  double sum = 0.0;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    double kx = mode_frequency(ix, nx, data.spacing);
    for (std::size_t iy = 0; iy < ny; ++iy) {
      double ky = mode_frequency(iy, ny, data.spacing);
      for (std::size_t iz = 0; iz < nz; ++iz) {
        double kz = mode_frequency(iz, nz, data.spacing);
        double w2 = kx * kx + ky * ky + kz * kz + m * m;
        std::size_t idx = (ix * ny + iy) * nz + iz;
        sum += std::norm(dhat[idx]) + w2 * std::norm(vhat[idx]);
      }
    }
  }
  double cell = std::pow(data.spacing, 3);
  return 0.5 * sum * cell / static_cast<double>(data.size());
}

complexd symplectic_form(const CauchyData& a, const CauchyData& b) {
  if (a.dims != b.dims) throw std::invalid_argument("symplectic_form: grid mismatch");
  complexd sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    sum += -a.deriv[i] * b.value[i] + a.value[i] * b.deriv[i];
  return sum * std::pow(a.spacing, 3);
}

}  // namespace qext
