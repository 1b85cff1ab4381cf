#include "qext/scattering.hpp"

#include <cmath>
#include <numbers>

namespace qext {

namespace {

constexpr double kPi = std::numbers::pi;
const complexd I{0.0, 1.0};

double fourier_extent(const GaussianSum4& g, double n_sigma = 14.0) {
  // |j(k)|^2 decays like exp(-kappa^T A^{-1} kappa / 2); bound via the largest
  // width eigenvalue over terms.
  double kmax = 0.0;
  for (const auto& t : g.terms) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(t.width);
    kmax = std::max(kmax, n_sigma * std::sqrt(es.eigenvalues().maxCoeff()));
  }
  return kmax;
}

double fourier_extent3(const GaussianSum3& g, double n_sigma = 14.0) {
  double kmax = 0.0;
  for (const auto& t : g.terms) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.width);
    kmax = std::max(kmax, n_sigma * std::sqrt(es.eigenvalues().maxCoeff()));
  }
  return kmax;
}

void require_real_gaussian4(const GaussianSum4& g) {
  for (const auto& t : g.terms)
    if (std::abs(t.weight.imag()) > 1e-14 * std::abs(t.weight))
      throw std::invalid_argument("source must be real (real Gaussian weights)");
}

// radial x angular reduction of a 3D integral of a smooth decaying function
double radial_angular_integral(const std::function<double(const Vec3&)>& f, double kmin,
                               double kmax, const quad::Options& opt, int nang = 20) {
  const auto& [xg, wg] = quad::gauss_legendre(nang);
  quad::Options orad = opt;
  quad::Fn radial = [&](double k) -> complexd {
    double ang = 0.0;
    for (int i = 0; i < nang; ++i) {
      double ct = xg[i];
      double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int j = 0; j < nang; ++j) {
        double phi = kPi * (xg[j] + 1.0);
        Vec3 kv(k * st * std::cos(phi), k * st * std::sin(phi), k * ct);
        ang += wg[i] * wg[j] * f(kv);
      }
    }
    return ang * kPi * k * k;
  };
  return quad::integrate(radial, kmin, kmax, orad).value.real();
}

}  // namespace

double leg_density(const SourceProfile& j, double m, const Vec3& k) {
  double eps = on_shell_energy(k, m);
  complexd jk = profile_fourier(j, FourVector{eps, k});
  return std::norm(jk) / (std::pow(2.0 * kPi, 3) * 2.0 * eps);
}

double on_shell_strength(const SourceProfile& j, double m, double kmin, double kmax,
                         const quad::Options& opt) {
  if (!j.is_gaussian_sum()) throw std::invalid_argument("on_shell_strength: GaussianSum expected");
  double cut = fourier_extent(j.gaussian4());
  double hi = std::min(kmax, cut);
  if (hi <= kmin) return 0.0;
  auto f = [&](const Vec3& kv) {
    double eps = on_shell_energy(kv, m);
    return std::norm(profile_fourier(j, FourVector{eps, kv})) / (2.0 * eps);
  };
  return radial_angular_integral(f, kmin, hi, opt) / std::pow(2.0 * kPi, 3);
}

complexd vacuum_persistence_exponent(const SourceProfile& j, double m, const quad::Options& opt) {
  if (!j.is_gaussian_sum())
    throw std::invalid_argument("vacuum_persistence_exponent: GaussianSum expected");
  require_real_gaussian4(j.gaussian4());
  if (m == 0.0) {
    complexd j0 = profile_fourier(j, FourVector{});
    double scale = std::abs(profile_fourier(j, FourVector{}));
    for (const auto& t : j.gaussian4().terms)
      scale = std::max(scale, std::abs(t.weight) * kPi * kPi / std::sqrt(t.width.determinant()));
    if (std::abs(j0) > 1e-10 * std::max(1.0, scale))
      throw ir_divergence_error(
          "vacuum_persistence_exponent: m = 0 with j(0) != 0 is infrared divergent");
  }
  // Im part: on-shell strength / 2
  double im = 0.5 * on_shell_strength(j, m, 0.0, std::numeric_limits<double>::infinity(), opt);

  // Re part: (1/2) PV int |j|^2/(k^2+m^2) d4k/(2pi)^4; inner k0 PV via
  // partial fractions 1/(eps^2 - k0^2) = (1/2eps)(1/(eps-k0) + 1/(eps+k0)).
  double cut = fourier_extent(j.gaussian4());
  quad::Options inner = opt;
  inner.tol = std::max(opt.tol, 1e-9);
  inner.throw_on_failure = false;
  auto pv_k0 = [&](const Vec3& kv) {
    double eps = on_shell_energy(kv, m);
    double window = std::max(cut, 2.0 * eps + 5.0);
    auto f = [&](double k0) -> complexd {
      return std::norm(profile_fourier(j, FourVector{k0, kv}));
    };
    double pv_plus = quad::principal_value(f, eps, -window, window, inner).value.real();
    double pv_minus = quad::principal_value(f, -eps, -window, window, inner).value.real();
    return (-pv_plus + pv_minus) / (2.0 * eps);
  };
  quad::Options outer = opt;
  outer.tol = std::max(opt.tol, 1e-8);
  double re = radial_angular_integral(pv_k0, 0.0, cut, outer, 12);
  re *= 0.5 / (std::pow(2.0 * kPi, 3) * 2.0 * kPi);
  return complexd(re, im);
}

complexd scattering_amplitude(const SourceProfile& j, double m, const std::vector<Vec3>& out,
                              const std::vector<Vec3>& in, std::optional<complexd> vac,
                              const quad::Options& opt) {
  complexd W = vac ? *vac : vacuum_persistence_exponent(j, m, opt);
  complexd amp = std::exp(I * W);
  for (const auto& k : out) {
    double eps = on_shell_energy(k, m);
    amp *= -I * profile_fourier(j, FourVector{eps, k}) /
           std::sqrt(std::pow(2.0 * kPi, 3) * 2.0 * eps);
  }
  for (const auto& k : in) {
    double eps = on_shell_energy(k, m);
    amp *= -I * std::conj(profile_fourier(j, FourVector{eps, k})) /
           std::sqrt(std::pow(2.0 * kPi, 3) * 2.0 * eps);
  }
  return amp;
}

double cross_section(const SourceProfile& j, double m, const std::vector<Vec3>& out,
                     const std::vector<Vec3>& in, const quad::Options& opt) {
  double sigma = std::exp(-on_shell_strength(j, m, 0.0,
                                             std::numeric_limits<double>::infinity(), opt));
  for (const auto& k : out) sigma *= leg_density(j, m, k);
  for (const auto& k : in) sigma *= leg_density(j, m, k);
  return sigma;
}

SoftHardSplit soft_hard_split(const SourceProfile& j, double m, double delta,
                              const quad::Options& opt) {
  if (delta <= 0) throw std::domain_error("soft_hard_split: delta must be > 0");
  SoftHardSplit s;
  s.soft_strength = on_shell_strength(j, m, 0.0, delta, opt);
  s.hard_strength =
      on_shell_strength(j, m, delta, std::numeric_limits<double>::infinity(), opt);
  s.soft_vacuum = std::exp(-s.soft_strength);
  s.hard_vacuum = std::exp(-s.hard_strength);
  return s;
}

double stationary_energy_shift(const SourceProfile& j_static, double m, EnergyShiftRoute route,
                               const quad::Options& opt) {
  if (!j_static.is_static())
    throw std::invalid_argument("stationary_energy_shift: static profile expected");
  if (m <= 0) throw std::domain_error("stationary_energy_shift: m must be > 0");
  const auto& rho = j_static.gaussian3();
  double pair = route == EnergyShiftRoute::Momentum
                    ? quad::yukawa_pair_energy(rho, rho, m, opt)
                    : quad::yukawa_pair_energy_position(rho, rho, m, opt);
  return -0.5 * pair;
}

std::pair<CoherentScatteringData, IRClassification> two_epoch_gl_scattering(
    const GaussianSum3& q_plus, const Vec3& v_plus, const GaussianSum3& q_minus,
    const Vec3& v_minus, double m, const std::vector<Vec3>& sample_momenta,
    const quad::Options& opt) {
  if (v_plus.norm() >= 1.0 || v_minus.norm() >= 1.0)
    throw std::invalid_argument("two_epoch_gl_scattering: |v| < 1 required");

  auto bracket = [&](const Vec3& k) {
    double eps = on_shell_energy(k, m);
    complexd ap = static_fourier(q_plus, k) / (eps - v_plus.dot(k));
    complexd am = static_fourier(q_minus, k) / (eps - v_minus.dot(k));
    return std::make_pair(ap, am);
  };

  CoherentScatteringData data;
  data.model = m > 0 ? CoherentModel::ScalarSource : CoherentModel::ScalarSource;
  for (const auto& k : sample_momenta) {
    auto [ap, am] = bracket(k);
    double eps = on_shell_energy(k, m);
    complexd amp = (ap - am) / std::sqrt(2.0 * eps * std::pow(2.0 * kPi, 3));
    data.displacements.push_back({k, 0, amp});
  }

  IRClassification cls = IRClassification::Finite;
  if (m == 0.0) {
    complexd cp = static_fourier(q_plus, Vec3::Zero());
    complexd cm = static_fourier(q_minus, Vec3::Zero());
    double scale = std::max({1.0, std::abs(cp), std::abs(cm)});
    if (std::abs(cp - cm) > 1e-12 * scale) {
      cls = IRClassification::DivergentChargeMismatch;
    } else if (std::abs(cp) > 1e-12 * scale && (v_plus - v_minus).norm() > 1e-14) {
      cls = IRClassification::DivergentVelocityChange;
    }
  }
  if (cls != IRClassification::Finite) return {data, cls};

  double cut = std::max(fourier_extent3(q_plus), fourier_extent3(q_minus));
  double strength = 0.0;
  complexd cross = 0.0;
  if (cut > 0.0) {
    auto norm2 = [&](const Vec3& k) {
      auto [ap, am] = bracket(k);
      return std::norm(ap - am) / (2.0 * on_shell_energy(k, m));
    };
    strength = radial_angular_integral(norm2, 0.0, cut, opt) / std::pow(2.0 * kPi, 3);
    auto crossf = [&](const Vec3& k) {
      auto [ap, am] = bracket(k);
      return std::imag(std::conj(ap) * am) / (2.0 * on_shell_energy(k, m));
    };
    double cr = radial_angular_integral(crossf, 0.0, cut, opt) / std::pow(2.0 * kPi, 3);
    cross = complexd(0.0, cr);
  }
  data.total_on_shell_strength = strength;
  // log<O|S O> = -strength/2 in the phase-renormalized convention
  data.vacuum_exponent = I * complexd(-0.5 * strength, 0.0);
  data.gl_phase_offset = cross;
  return {data, cls};
}

namespace {

struct ContractionParts {
  double pole_numerator;  // P in  P/(k^2+m^2-i0) + Q
  double regular;         // Q
};

ContractionParts gauge_contraction(const PhotonGauge& gauge, const FourVector& k, double m,
                                   const CVec4& J) {
  using Kind = PhotonGauge::Kind;
  double k2 = minkowski_square(k);
  CVec4 Jc = conj(J);
  double JJ = std::real(minkowski_dot(Jc, J));
  // |k.J|^2 vanishes for a conserved current up to the roundoff of the
  // componentwise contraction; below the conservation tolerance it is an
  // exact zero of the integrand (the mass shell has k^2 = 0 when m = 0, so
  // the raw ratio would be 0/0 there)
  double kJ2 = std::norm(minkowski_dot(to_cvec4(k), J));
  double jn = 0.0;
  for (const auto& c : J) jn = std::max(jn, std::abs(c));
  double kn = std::abs(k.t) + k.r.norm();
  double floor2 = std::pow(1e-8 * kn * std::max(1.0, jn), 2);
  auto ratio = [&](double denom) { return kJ2 <= floor2 ? 0.0 : kJ2 / denom; };
  double J0 = std::norm(J[0]);
  double Jv = std::norm(J[1]) + std::norm(J[2]) + std::norm(J[3]);
  complexd kvJ = k.r[0] * J[1] + k.r[1] * J[2] + k.r[2] * J[3];
  switch (gauge.kind) {
    case Kind::Feynman:
      return {JJ, 0.0};
    case Kind::DZero:
      return {JJ + ratio(m * m), 0.0};
    case Kind::AlphaFamily:
      return {JJ + (1.0 - gauge.alpha) * ratio(gauge.alpha * k2 + m * m), 0.0};
    case Kind::Landau:
      return {JJ - ratio(k2), 0.0};
    case Kind::FriedYennie:
      return {JJ + 2.0 * ratio(k2), 0.0};
    case Kind::Yukawa: {
      double w = m * m + k.r.squaredNorm();
      return {Jv - std::norm(kvJ) / w, -J0 / w};
    }
    case Kind::Coulomb: {
      double w = k.r.squaredNorm();
      return {Jv - std::norm(kvJ) / w, -J0 / w};
    }
    case Kind::Temporal:
      // k.J = 0 gives k.Jvec = k0 J0; the substituted form avoids the k0 -> 0
      // cancellation of the literal k_i k_j / k0^2 contraction
      return {Jv - J0, 0.0};
  }
  throw std::logic_error("unreachable");
}

void require_axisymmetric(const AntisymmetricPairCurrent& ap) {
  auto planar = [](const FourVector& v) {
    return std::abs(v.r[0]) < 1e-14 && std::abs(v.r[1]) < 1e-14;
  };
  if (!planar(ap.a) || !planar(ap.b))
    throw std::invalid_argument("photon exponent: current axes must lie in the t-z plane");
  for (const auto& t : ap.envelope.terms) {
    const auto& w = t.width;
    bool iso = std::abs(w(1, 1) - w(2, 2)) < 1e-14 && std::abs(w(1, 2)) < 1e-14 &&
               std::abs(w(0, 1)) < 1e-14 && std::abs(w(0, 2)) < 1e-14 &&
               std::abs(w(1, 3)) < 1e-14 && std::abs(w(2, 3)) < 1e-14;
    bool centered = t.center.r.norm() == 0.0 && t.center.t == 0.0;
    bool real = std::abs(t.weight.imag()) < 1e-14 * std::abs(t.weight);
    if (!iso || !centered || !real)
      throw std::invalid_argument(
          "photon exponent: envelope must be real, centered, axisymmetric about z");
  }
}

void require_axisymmetric(const TwoEpochCurrent& te) {
  auto axial = [](const Vec3& v) { return std::abs(v[0]) < 1e-14 && std::abs(v[1]) < 1e-14; };
  if (!axial(te.v_plus) || !axial(te.v_minus))
    throw std::invalid_argument("photon exponent: velocities must be along z");
  auto check = [](const GaussianSum3& g) {
    for (const auto& t : g.terms) {
      const auto& w = t.width;
      bool iso = std::abs(w(0, 0) - w(1, 1)) < 1e-14 && std::abs(w(0, 1)) < 1e-14 &&
                 std::abs(w(0, 2)) < 1e-14 && std::abs(w(1, 2)) < 1e-14;
      if (!iso || t.center.norm() != 0.0 || std::abs(t.weight.imag()) > 1e-14 * std::abs(t.weight))
        throw std::invalid_argument(
            "photon exponent: profiles must be real, centered, axisymmetric about z");
    }
  };
  check(te.plus);
  check(te.minus);
}

}  // namespace

complexd photon_scattering_exponent(const CurrentProfile& J, double m, const PhotonGauge& gauge,
                                    double conservation_tol, const quad::Options& opt) {
  const auto* te = std::get_if<TwoEpochCurrent>(&J.data());
  double kcut;
  if (auto* ap = std::get_if<AntisymmetricPairCurrent>(&J.data())) {
    require_axisymmetric(*ap);
    kcut = fourier_extent(ap->envelope) + 2.0;
  } else {
    require_axisymmetric(*te);
    kcut = std::max(fourier_extent3(te->plus), fourier_extent3(te->minus)) + 2.0;
  }

  // On-shell two-epoch currents are evaluated in the eta -> 0 limit (the pole
  // denominators eps - v.k never vanish on the shell for |v| < 1).
  auto on_shell_current = [&](const FourVector& k) -> CVec4 {
    if (!te) return J.fourier(k, 1e-9);
    complexd qp = static_fourier(te->plus, k.r);
    complexd qm = static_fourier(te->minus, k.r);
    double dp = k.r.dot(te->v_plus) - k.t;
    double dm = k.r.dot(te->v_minus) - k.t;
    CVec4 out;
    out[0] = -I * qp / dp + I * qm / dm;
    for (int j = 0; j < 3; ++j)
      out[j + 1] = -I * te->v_plus[j] * qp / dp + I * te->v_minus[j] * qm / dm;
    return out;
  };

  auto current = [&](double k0, double kr, double ct, bool on_shell) {
    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    FourVector k{k0, Vec3(kr * st, 0.0, kr * ct)};
    CVec4 Jk = on_shell ? on_shell_current(k) : J.fourier(k, 1e-9);
    complexd kJ = minkowski_dot(to_cvec4(k), Jk);
    double jn = 0.0;
    for (const auto& c : Jk) jn = std::max(jn, std::abs(c));
    double kn = std::max(1.0, std::abs(k0) + kr);
    if (std::abs(kJ) > conservation_tol * kn * std::max(1.0, jn))
      throw std::invalid_argument("photon exponent: current conservation violated");
    return std::make_pair(k, Jk);
  };

  // Re part: -(1/2) int P(eps,k)/(2 eps) d3k/(2pi)^3  (both shell sheets for
  // a real current); azimuthal symmetry gives the 2 pi.
  const int nang = 24;
  const auto& [xg, wg] = quad::gauss_legendre(nang);
  quad::Options orad = opt;
  orad.tol = std::max(opt.tol, 1e-10);
  quad::Fn shell = [&](double kr) -> complexd {
    double acc = 0.0;
    for (int i = 0; i < nang; ++i) {
      double eps = on_shell_energy(Vec3(0, 0, kr), m);
      auto [k, Jk] = current(eps, kr, xg[i], true);
      acc += wg[i] * gauge_contraction(gauge, k, m, Jk).pole_numerator / (2.0 * eps);
    }
    return acc * kr * kr;
  };
  double re = quad::integrate(shell, 0.0, kcut, orad).value.real();
  re *= -0.5 * 2.0 * kPi / std::pow(2.0 * kPi, 3);

  if (te) {
    // Gell-Mann--Low convention: the (possibly infinite) phase is removed and
    // only the damping part is reported; pole offsets never enter.
    return complexd(re, 0.0);
  }

  // Im part: (1/2) [ PV int P/(k^2+m^2) + int Q ] d4k/(2pi)^4
  quad::Options inner = opt;
  inner.tol = std::max(opt.tol * 0.01, 1e-11);
  inner.throw_on_failure = false;
  quad::Fn radial = [&](double kr) -> complexd {
    double eps = on_shell_energy(Vec3(0, 0, kr), m);
    double window = std::max(kcut, 2.0 * eps + 5.0);
    double acc = 0.0;
    for (int i = 0; i < nang; ++i) {
      double ct = xg[i];
      auto P = [&](double k0) -> complexd {
        auto [k, Jk] = current(k0, kr, ct, false);
        return gauge_contraction(gauge, k, m, Jk).pole_numerator;
      };
      double pv_plus = quad::principal_value(P, eps, -window, window, inner).value.real();
      double pv_minus = quad::principal_value(P, -eps, -window, window, inner).value.real();
      double pv = (-pv_plus + pv_minus) / (2.0 * eps);
      auto Q = [&](double k0) -> complexd {
        auto [k, Jk] = current(k0, kr, ct, false);
        return gauge_contraction(gauge, k, m, Jk).regular;
      };
      double qint = quad::integrate(Q, -window, window, inner).value.real();
      acc += wg[i] * (pv + qint);
    }
    return acc * kr * kr;
  };
  quad::Options outer = opt;
  outer.tol = std::max(opt.tol, 1e-9);
  double im = quad::integrate(radial, 0.0, kcut, outer).value.real();
  im *= 0.5 * 2.0 * kPi / std::pow(2.0 * kPi, 4);
  return complexd(re, im);
}

namespace {

// correlation of two Gaussian sums and its derivative combinations, for the
// position-kernel route of the current energy shift
struct GaussCorrTerm {
  complexd weight;
  Vec3 center;
  Eigen::Matrix3d width;  // C(r) = sum w exp(-(r-c)^T W (r-c))
};

std::vector<GaussCorrTerm> correlation(const GaussianSum3& g1, const GaussianSum3& g2) {
  std::vector<GaussCorrTerm> corr;
  for (const auto& t1 : g1.terms)
    for (const auto& t2 : g2.terms) {
      Eigen::Matrix3d s = t1.width.inverse() + t2.width.inverse();
      double norm = std::pow(kPi, 1.5) /
                    std::sqrt(s.determinant() * t1.width.determinant() * t2.width.determinant());
      corr.push_back({t1.weight * std::conj(t2.weight) * norm, t1.center - t2.center, s.inverse()});
    }
  return corr;
}

}  // namespace

double static_current_energy_shift(const StaticCurrent& J, double m, EnergyShiftRoute route,
                                   const quad::Options& opt) {
  double charge_part = 0.0;
  if (!J.charge.terms.empty()) {
    charge_part = route == EnergyShiftRoute::Momentum
                      ? quad::yukawa_pair_energy(J.charge, J.charge, m, opt)
                      : quad::yukawa_pair_energy_position(J.charge, J.charge, m, opt);
  }
  double current_part = 0.0;
  if (!J.curl_potential.terms.empty()) {
    Vec3 n = J.axis.normalized();
    if (route == EnergyShiftRoute::Momentum) {
      // |J(k)|^2 = |k x n|^2 |g(k)|^2 = (k^2 - (k.n)^2)|g(k)|^2
      double cut = fourier_extent3(J.curl_potential);
      auto f = [&](const Vec3& k) {
        double kx2 = k.squaredNorm() - std::pow(k.dot(n), 2);
        return kx2 * std::norm(static_fourier(J.curl_potential, k)) / (k.squaredNorm() + m * m);
      };
      current_part = radial_angular_integral(f, 0.0, cut, opt) / std::pow(2.0 * kPi, 3);
    } else {
      // C_J(r) = (-Lap + (n.grad)^2) G(r) with G the potential pair correlation
      auto corr = correlation(J.curl_potential, J.curl_potential);
      auto CJ = [&](const Vec3& r) {
        double v = 0.0;
        for (const auto& c : corr) {
          Vec3 d = r - c.center;
          Vec3 grad_q = 2.0 * (c.width * d);
          double q2 = grad_q.squaredNorm();
          double nWd = n.dot(grad_q);
          double lap = q2 - 2.0 * c.width.trace();
          double axial = nWd * nWd - 2.0 * n.dot(c.width * n);
          v += std::real(c.weight) * std::exp(-d.dot(c.width * d)) * (-(lap) + axial);
        }
        return v;
      };
      double rmax = 0.0;
      for (const auto& c : corr) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(c.width);
        rmax = std::max(rmax, c.center.norm() + 10.0 / std::sqrt(es.eigenvalues().minCoeff()));
      }
      auto f = [&](const Vec3& r) {
        double rn = r.norm();
        return CJ(r) * std::exp(-m * rn) / (4.0 * kPi * rn);
      };
      current_part = radial_angular_integral(f, 0.0, rmax, opt);
    }
  }
  return -0.5 * current_part + 0.5 * charge_part;
}

}  // namespace qext
