#include "qext/propagators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qext {

namespace {

constexpr double kPi = std::numbers::pi;
const complexd I{0.0, 1.0};

double sgn(double t) { return t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0); }

// H_n^{+-}(z) = J_n(z) +- i Y_n(z)
complexd hankel(int n, int pm, double z) {
  return complexd(std::cyl_bessel_j(n, z), pm * std::cyl_neumann(n, z));
}

struct RadialPart {
  complexd f;       // F(tau)
  complexd fprime;  // F'(tau)
};

// Timelike branch F(s) with s = sqrt(-x^2); kind-dependent.
// PauliJordan:  -sgn(x0) m J1(ms)/(4 pi s)
// Wightman+-:   -sgn(x0) m H1^{-+sgn x0}(ms)/(8 pi s)
// Causal:       -m H1^-(ms)/(8 pi s)
// Ret/Adv:      theta(+-x0) times the PauliJordan branch
RadialPart timelike_part(PropagatorKind kind, double sign_t, double s, double m) {
  auto cyl = [&](int pm) -> RadialPart {
    double z = m * s;
    complexd h1 = hankel(1, pm, z);
    complexd h0 = hankel(0, pm, z);
    // d/ds [H1(ms)/s] = m H1'(ms)/s - H1(ms)/s^2,  H1'(z) = H0(z) - H1(z)/z
    complexd f = h1 / s;
    complexd fp = m * (h0 - h1 / z) / s - h1 / (s * s);
    return {f, fp};
  };
  auto bessel = [&]() -> RadialPart {
    double z = m * s;
    double j1 = std::cyl_bessel_j(1, z);
    double j0 = std::cyl_bessel_j(0, z);
    complexd f = j1 / s;
    complexd fp = m * (j0 - j1 / z) / s - j1 / (s * s);
    return {f, fp};
  };
  double c;
  RadialPart p{};
  switch (kind) {
    case PropagatorKind::PauliJordan:
      p = bessel();
      c = -sign_t * m / (4.0 * kPi);
      break;
    case PropagatorKind::Retarded:
      if (sign_t < 0) return {0.0, 0.0};
      p = bessel();
      c = -m / (4.0 * kPi);
      break;
    case PropagatorKind::Advanced:
      if (sign_t > 0) return {0.0, 0.0};
      p = bessel();
      c = -m / (4.0 * kPi);
      break;
    case PropagatorKind::WightmanPlus:
      p = cyl(sign_t > 0 ? -1 : +1);
      c = -sign_t * m / (8.0 * kPi);
      break;
    case PropagatorKind::WightmanMinus:
      p = cyl(sign_t > 0 ? +1 : -1);
      c = -sign_t * m / (8.0 * kPi);
      break;
    case PropagatorKind::Causal:
      p = cyl(-1);
      c = -m / (8.0 * kPi);
      break;
    default:
      throw std::logic_error("unreachable");
  }
  return {c * p.f, c * p.fprime};
}

// Spacelike branch G(sigma) with sigma = sqrt(x^2): zero except
// Wightman+-: +-i m K1(m sigma)/(4 pi^2 sigma), Causal: +i m K1/(4 pi^2 sigma)
RadialPart spacelike_part(PropagatorKind kind, double sigma, double m) {
  complexd c;
  switch (kind) {
    case PropagatorKind::WightmanPlus: c = I; break;
    case PropagatorKind::WightmanMinus: c = -I; break;
    case PropagatorKind::Causal: c = I; break;
    default: return {0.0, 0.0};
  }
  c *= m / (4.0 * kPi * kPi);
  double z = m * sigma;
  double k1 = std::cyl_bessel_k(1, z);
  double k0 = std::cyl_bessel_k(0, z);
  complexd f = k1 / sigma;
  // K1'(z) = -K0(z) - K1(z)/z
  complexd fp = m * (-k0 - k1 / z) / sigma - k1 / (sigma * sigma);
  return {c * f, c * fp};
}

double delta_coefficient(PropagatorKind kind, double sign_t) {
  switch (kind) {
    case PropagatorKind::PauliJordan: return sign_t / (2.0 * kPi);
    case PropagatorKind::Retarded: return sign_t > 0 ? 1.0 / (2.0 * kPi) : 0.0;
    case PropagatorKind::Advanced: return sign_t < 0 ? 1.0 / (2.0 * kPi) : 0.0;
    case PropagatorKind::WightmanPlus:
    case PropagatorKind::WightmanMinus: return sign_t / (4.0 * kPi);
    case PropagatorKind::Causal: return 1.0 / (4.0 * kPi);
  }
  return 0.0;
}

void check_cone(const FourVector& x, double cone_tol) {
  double x2 = minkowski_square(x);
  double scale = x.t * x.t + x.r.squaredNorm();
  if (std::abs(x2) <= cone_tol * scale || scale == 0.0)
    throw std::domain_error("kg_position: point within light-cone exclusion tolerance");
}

}  // namespace

complexd kg_momentum(PropagatorKind kind, const FourVector& p, double m, double pole_offset,
                     double shell_tol) {
  if (pole_offset <= 0.0) throw std::domain_error("kg_momentum: pole_offset must be > 0");
  double p2 = minkowski_square(p);
  switch (kind) {
    case PropagatorKind::Causal:
      return 1.0 / complexd(p2 + m * m, -pole_offset);
    case PropagatorKind::Retarded:
      return 1.0 / complexd(p2 + m * m, -pole_offset * sgn(p.t));
    case PropagatorKind::Advanced:
      return 1.0 / complexd(p2 + m * m, pole_offset * sgn(p.t));
    default: {
      double eps = on_shell_energy(p.r, m);
      if (eps == 0.0) return 0.0;
      bool on_shell = std::abs(std::abs(p.t) - eps) <= shell_tol * std::max(1.0, eps);
      if (!on_shell) return 0.0;
      double w = kPi / eps;
      if (kind == PropagatorKind::WightmanPlus) return p.t > 0 ? w : 0.0;
      if (kind == PropagatorKind::WightmanMinus) return p.t < 0 ? -w : 0.0;
      return sgn(p.t) * w;  // PauliJordan
    }
  }
}

SmoothPartValue kg_position(PropagatorKind kind, const FourVector& x, double m, double cone_tol) {
  check_cone(x, cone_tol);
  double x2 = minkowski_square(x);
  double st = sgn(x.t);
  SmoothPartValue out;
  out.delta_coefficient = delta_coefficient(kind, st);
  if (m == 0.0) {
    // massless smooth parts: only the Wightman/causal 1/x^2 tails survive
    switch (kind) {
      case PropagatorKind::WightmanPlus:
      case PropagatorKind::WightmanMinus:
      case PropagatorKind::Causal: {
        // m->0 limit of the K1/H1 branches: +-i/(4 pi^2 x^2), even in x
        complexd c = I / (4.0 * kPi * kPi * x2);
        out.value = (kind == PropagatorKind::WightmanMinus) ? -c : c;
        return out;
      }
      default:
        out.value = 0.0;
        return out;
    }
  }
  if (x2 < 0) {
    double s = std::sqrt(-x2);
    out.value = timelike_part(kind, st, s, m).f;
  } else {
    out.value = spacelike_part(kind, std::sqrt(x2), m).f;
  }
  return out;
}

SpinorMatrix dirac_momentum(PropagatorKind kind, const FourVector& p, double m,
                            GammaRepresentation rep, double pole_offset) {
  complexd d = kg_momentum(kind, p, m, pole_offset);
  return (-slash(p, rep) + m * SpinorMatrix::Identity()) * d;
}

DiracPositionValue dirac_position(PropagatorKind kind, const FourVector& x, double m,
                                  GammaRepresentation rep, double cone_tol) {
  if (m <= 0.0) throw std::domain_error("dirac_position: m must be > 0");
  check_cone(x, cone_tol);
  double x2 = minkowski_square(x);
  double st = sgn(x.t);
  RadialPart part{};
  SpinorMatrix grad_slash;  // gamma^mu d_mu tau
  double tau;
  if (x2 < 0) {
    tau = std::sqrt(-x2);
    part = timelike_part(kind, st, tau, m);
    // d_mu s = -x_mu / s  ->  gamma^mu d_mu s = -slash(x)/s
    grad_slash = -slash(x, rep) / tau;
  } else {
    tau = std::sqrt(x2);
    part = spacelike_part(kind, tau, m);
    grad_slash = slash(x, rep) / tau;
  }
  DiracPositionValue out;
  out.value = I * part.fprime * grad_slash + m * part.f * SpinorMatrix::Identity();
  out.delta_coefficient = delta_coefficient(kind, st);
  return out;
}

Eigen::Matrix4cd photon_momentum(const PhotonGauge& gauge, const FourVector& k, double m,
                                 double pole_offset) {
  using Kind = PhotonGauge::Kind;
  if (pole_offset <= 0.0) throw std::domain_error("photon_momentum: pole_offset must be > 0");
  if ((gauge.kind == Kind::DZero || gauge.kind == Kind::Yukawa) && m <= 0.0)
    throw std::invalid_argument("photon_momentum: DZero/Yukawa require m > 0");
  if ((gauge.kind == Kind::Coulomb || gauge.kind == Kind::FriedYennie) && m != 0.0)
    throw std::invalid_argument("photon_momentum: Coulomb/FriedYennie require m = 0");

  double k2 = minkowski_square(k);
  complexd den(k2 + m * m, -pole_offset);
  Eigen::Vector4d klow;  // k_mu
  klow << -k.t, k.r;
  Eigen::Matrix4d g = Eigen::Matrix4d::Identity();
  g(0, 0) = -1.0;

  Eigen::Matrix4cd D = Eigen::Matrix4cd::Zero();
  auto kk_over = [&](complexd denom) {
    Eigen::Matrix4cd out;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) out(mu, nu) = klow[mu] * klow[nu] / denom;
    return out;
  };

  switch (gauge.kind) {
    case Kind::DZero:
      D = (g.cast<complexd>() + kk_over(complexd(m * m, 0.0))) / den;
      break;
    case Kind::AlphaFamily:
      D = (g.cast<complexd>() +
           (1.0 - gauge.alpha) * kk_over(complexd(gauge.alpha * k2 + m * m, 0.0))) /
          den;
      break;
    case Kind::Feynman:
      D = g.cast<complexd>() / den;
      break;
    case Kind::Landau:
      D = (g.cast<complexd>() - kk_over(complexd(k2, 0.0))) / den;
      break;
    case Kind::FriedYennie:
      D = (g.cast<complexd>() + 2.0 * kk_over(complexd(k2, 0.0))) / den;
      break;
    case Kind::Yukawa: {
      double w = m * m + k.r.squaredNorm();
      D(0, 0) = -1.0 / w;
      for (int i = 1; i < 4; ++i)
        for (int j = 1; j < 4; ++j)
          D(i, j) = ((i == j ? 1.0 : 0.0) - k.r[i - 1] * k.r[j - 1] / w) / den;
      break;
    }
    case Kind::Coulomb: {
      double w = k.r.squaredNorm();
      if (w == 0.0) throw std::domain_error("photon_momentum: Coulomb gauge singular at k = 0");
      D(0, 0) = -1.0 / w;
      for (int i = 1; i < 4; ++i)
        for (int j = 1; j < 4; ++j)
          D(i, j) = ((i == j ? 1.0 : 0.0) - k.r[i - 1] * k.r[j - 1] / w) / den;
      break;
    }
    case Kind::Temporal: {
      double k02 = k.t * k.t;
      for (int i = 1; i < 4; ++i)
        for (int j = 1; j < 4; ++j)
          D(i, j) = ((i == j ? 1.0 : 0.0) - k.r[i - 1] * k.r[j - 1] / k02) / den;
      break;
    }
  }
  return D;
}

}  // namespace qext
