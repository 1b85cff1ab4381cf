#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

// Kinematics in natural units (c = hbar = 1), metric signature (-+++).
// Fourier conventions: e^{+i eps t} in time, e^{-i k.x} in space, so the 4D
// transform of f(x) is f(k) = int e^{-i k.x} f(x) dx with k.x the Minkowski
// product.

namespace qext {

using complexd = std::complex<double>;
using Vec3 = Eigen::Vector3d;

// Complex 4-vector, contravariant components (a^0, a^1, a^2, a^3).
using CVec4 = std::array<complexd, 4>;

struct FourVector {
  double t = 0.0;     // x^0
  Vec3 r = Vec3::Zero();

  double operator[](int mu) const { return mu == 0 ? t : r[mu - 1]; }
};

inline FourVector operator+(const FourVector& a, const FourVector& b) {
  return {a.t + b.t, a.r + b.r};
}
inline FourVector operator-(const FourVector& a, const FourVector& b) {
  return {a.t - b.t, a.r - b.r};
}
inline FourVector operator*(double s, const FourVector& a) { return {s * a.t, s * a.r}; }

// g_{mu nu} a^mu b^nu = -a^0 b^0 + a.b
inline double minkowski_dot(const FourVector& a, const FourVector& b) {
  return -a.t * b.t + a.r.dot(b.r);
}

inline double minkowski_square(const FourVector& a) { return minkowski_dot(a, a); }

inline complexd minkowski_dot(const CVec4& a, const CVec4& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline CVec4 conj(const CVec4& a) {
  return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2]), std::conj(a[3])};
}

inline CVec4 to_cvec4(const FourVector& a) {
  return {complexd(a.t), complexd(a.r[0]), complexd(a.r[1]), complexd(a.r[2])};
}

// eps(k) = sqrt(k^2 + m^2); rejects m < 0.
inline double on_shell_energy(const Vec3& k, double m) {
  if (m < 0.0) throw std::domain_error("on_shell_energy: mass must be nonnegative");
  return std::sqrt(k.squaredNorm() + m * m);
}

// On-shell 4-momentum (eps(p), p) with the energy cached.
struct OnShellMomentum {
  double mass = 0.0;
  Vec3 p = Vec3::Zero();
  double energy = 0.0;

  static OnShellMomentum make(const Vec3& p, double m) {
    return {m, p, on_shell_energy(p, m)};
  }
  FourVector four() const { return {energy, p}; }
};

// Coupling constant and per-species masses for the charged sectors.
struct ChargeAssignments {
  double e = 1.0;
  double boson_mass = 1.0;
  double fermion_mass = 1.0;

  ChargeAssignments() = default;
  ChargeAssignments(double coupling, double mb, double mf)
      : e(coupling), boson_mass(mb), fermion_mass(mf) {
    if (mb < 0 || mf < 0) throw std::domain_error("ChargeAssignments: masses must be >= 0");
  }
};

}  // namespace qext
