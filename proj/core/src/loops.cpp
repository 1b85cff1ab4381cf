#include "qext/loops.hpp"

#include <cmath>
#include <numbers>

namespace qext {

namespace {

constexpr double kPi = std::numbers::pi;
const complexd I{0.0, 1.0};
const double kLoopNorm = 1.0 / std::pow(4.0 * kPi, 2);  // 1/(4 pi)^2

// Primitives I0(r) = int_0^1 log(1 + r(1-v^2) - i0) dv and
// I2(r) = int_0^1 v^2 log(...) dv with r = k2/(4 m^2). Three branches plus a
// series for small |r|; the analytic continuations pick up the -i pi on the
// log cut for r < -1.
struct Primitives {
  complexd i0, i2;
};

Primitives primitives_series(double r) {
  // log(1+y) expansion with y = r(1-v^2): J_n = int (1-v^2)^n = J_{n-1} 2n/(2n+1)
  complexd i0 = 0.0, i2 = 0.0;
  double jn = 1.0, rn = 1.0;
  for (int n = 1; n <= 30; ++n) {
    jn *= 2.0 * n / (2.0 * n + 1.0);
    rn *= -r;
    double c = -rn / n;  // (-1)^{n+1} r^n / n
    i0 += c * jn;
    i2 += c * jn / (2.0 * n + 3.0);
    if (std::abs(rn) < 1e-18) break;
  }
  return {i0, i2};
}

Primitives primitives_closed(double r) {
  if (std::abs(r) < 1e-3) return primitives_series(r);
  if (r > 0) {
    double A = std::sqrt((r + 1.0) / r);
    double L = std::log((std::sqrt(r + 1.0) + std::sqrt(r)) / (std::sqrt(r + 1.0) - std::sqrt(r)));
    complexd i0 = A * L - 2.0;
    complexd i2 = (A * A * A * L - 2.0 / 3.0 - 2.0 * A * A) / 3.0;
    return {i0, i2};
  }
  if (r > -1.0) {
    double At = std::sqrt((1.0 + r) / (-r));
    double T = 2.0 * std::atan(std::sqrt(-r) / std::sqrt(1.0 + r));
    complexd i0 = At * T - 2.0;
    complexd i2 = (-At * At * At * T - 2.0 / 3.0 + 2.0 * At * At) / 3.0;
    return {i0, i2};
  }
  double B = std::sqrt((-r - 1.0) / (-r));
  double L = std::log((std::sqrt(-r) + std::sqrt(-r - 1.0)) / (std::sqrt(-r) - std::sqrt(-r - 1.0)));
  complexd lg = complexd(L, -kPi);
  complexd i0 = B * lg - 2.0;
  complexd i2 = (B * B * B * lg - 2.0 / 3.0 - 2.0 * B * B) / 3.0;
  return {i0, i2};
}

complexd clog_i0(double t) {
  // log(t - i0)
  return t > 0 ? complexd(std::log(t), 0.0) : complexd(std::log(-t), -kPi);
}

Primitives primitives_feynman(double r, const quad::Options& opt) {
  quad::Options o = opt;
  o.tol = std::min(opt.tol, 1e-12);
  std::vector<double> kinks;
  if (r < -1.0) kinks.push_back(std::sqrt(1.0 + 1.0 / r));
  quad::Integrand f0{[r](double v) { return clog_i0(1.0 + r * (1.0 - v * v)); }, kinks};
  quad::Integrand f2{[r](double v) { return v * v * clog_i0(1.0 + r * (1.0 - v * v)); }, kinks};
  return {quad::integrate(f0, 0.0, 1.0, o).value, quad::integrate(f2, 0.0, 1.0, o).value};
}

Primitives primitives_euclidean(double r, const quad::Options& opt) {
  if (r <= 0) throw std::domain_error("EuclideanBranch requires k2 > 0");
  quad::Options o = opt;
  o.tol = std::min(opt.tol, 1e-12);
  auto f0 = [r](double v) -> complexd { return std::log(1.0 + r * (1.0 - v * v)); };
  auto f2 = [r](double v) -> complexd { return v * v * std::log(1.0 + r * (1.0 - v * v)); };
  return {quad::integrate(f0, 0.0, 1.0, o).value, quad::integrate(f2, 0.0, 1.0, o).value};
}

double im_i0(double s, double m) {  // Im I0 as a function of k2 = s
  if (s >= -4.0 * m * m) return 0.0;
  double B = std::sqrt((-s - 4.0 * m * m) / (-s));
  return -kPi * B;
}

double im_i2(double s, double m) {
  if (s >= -4.0 * m * m) return 0.0;
  double B = std::sqrt((-s - 4.0 * m * m) / (-s));
  return -kPi * B * B * B / 3.0;
}

Primitives primitives_dispersion(double k2, double m, const quad::Options& opt) {
  double thr = -4.0 * m * m;
  quad::Options o = opt;
  o.tol = std::min(opt.tol, 1e-9);
  double re0 = quad::once_subtracted_dispersion([m](double s) { return im_i0(s, m); }, thr, k2, o);
  double re2 = quad::once_subtracted_dispersion([m](double s) { return im_i2(s, m); }, thr, k2, o);
  return {complexd(re0, im_i0(k2, m)), complexd(re2, im_i2(k2, m))};
}

complexd assemble(LoopSpecies species, const Primitives& p, double k2, double m, double e) {
  switch (species) {
    case LoopSpecies::NeutralScalar:
      return p.i0 * kLoopNorm / 4.0;
    case LoopSpecies::ChargedBoson:
      return e * e * p.i2 * kLoopNorm / 2.0;
    case LoopSpecies::DiracFermion:
      return e * e * (p.i0 - p.i2) * kLoopNorm;
    case LoopSpecies::Majorana:
      return -m * m * kLoopNorm * (0.5 * p.i0 + (k2 / (8.0 * m * m)) * (p.i0 - p.i2));
  }
  throw std::logic_error("unreachable");
}

// Independent per-species closed forms, written out branch by branch exactly
// as the printed displays (with the continuation signs fixed); used by the
// consistency check so that it does not reduce to shared-primitive algebra.
complexd scalar_closed(double k2, double m) {
  double m2 = m * m;
  double r = k2 / (4.0 * m2);
  if (std::abs(r) < 1e-3) return primitives_series(r).i0 * kLoopNorm / 4.0;
  double c = kLoopNorm / 4.0;
  if (k2 > 0) {
    double num = std::sqrt(k2 + 4.0 * m2);
    double L = std::log((num + std::sqrt(k2)) / (num - std::sqrt(k2)));
    return c * (num / std::sqrt(k2) * L - 2.0);
  }
  if (k2 > -4.0 * m2) {
    double num = std::sqrt(k2 + 4.0 * m2);
    double T = 2.0 * std::atan(std::sqrt(-k2) / num);
    return c * (num / std::sqrt(-k2) * T - 2.0);
  }
  double num = std::sqrt(-k2 - 4.0 * m2);
  double L = std::log((std::sqrt(-k2) + num) / (std::sqrt(-k2) - num));
  return c * (num / std::sqrt(-k2) * complexd(L, -kPi) - 2.0);
}

complexd boson_closed(double k2, double m, double e) {
  double m2 = m * m;
  double r = k2 / (4.0 * m2);
  if (std::abs(r) < 1e-3) return e * e * primitives_series(r).i2 * kLoopNorm / 2.0;
  double c = e * e * kLoopNorm / 6.0;
  if (k2 > 0) {
    double A2 = (k2 + 4.0 * m2) / k2;
    double A3 = A2 * std::sqrt(A2);
    double L = std::log((std::sqrt(k2 + 4.0 * m2) + std::sqrt(k2)) /
                        (std::sqrt(k2 + 4.0 * m2) - std::sqrt(k2)));
    return c * (A3 * L - 2.0 / 3.0 - 2.0 * A2);
  }
  if (k2 > -4.0 * m2) {
    double A2 = (k2 + 4.0 * m2) / (-k2);
    double A3 = A2 * std::sqrt(A2);
    double T = 2.0 * std::atan(std::sqrt(-k2) / std::sqrt(k2 + 4.0 * m2));
    return c * (-A3 * T - 2.0 / 3.0 + 2.0 * A2);
  }
  double B2 = (-k2 - 4.0 * m2) / (-k2);
  double B3 = B2 * std::sqrt(B2);
  double L = std::log((std::sqrt(-k2) + std::sqrt(-k2 - 4.0 * m2)) /
                      (std::sqrt(-k2) - std::sqrt(-k2 - 4.0 * m2)));
  return c * (B3 * complexd(L, -kPi) - 2.0 / 3.0 - 2.0 * B2);
}

complexd fermion_closed(double k2, double m, double e) {
  double m2 = m * m;
  double r = k2 / (4.0 * m2);
  if (std::abs(r) < 1e-3) {
    auto p = primitives_series(r);
    return e * e * (p.i0 - p.i2) * kLoopNorm;
  }
  double c = e * e * kLoopNorm;
  if (k2 > 0) {
    double A = std::sqrt((k2 + 4.0 * m2) / k2);
    double L = std::log((std::sqrt(k2 + 4.0 * m2) + std::sqrt(k2)) /
                        (std::sqrt(k2 + 4.0 * m2) - std::sqrt(k2)));
    return c * (A * (1.0 - A * A / 3.0) * L - 16.0 / 9.0 + 2.0 * A * A / 3.0);
  }
  if (k2 > -4.0 * m2) {
    double At = std::sqrt((k2 + 4.0 * m2) / (-k2));
    double T = 2.0 * std::atan(std::sqrt(-k2) / std::sqrt(k2 + 4.0 * m2));
    return c * (At * (1.0 + At * At / 3.0) * T - 16.0 / 9.0 - 2.0 * At * At / 3.0);
  }
  double B = std::sqrt((-k2 - 4.0 * m2) / (-k2));
  double L = std::log((std::sqrt(-k2) + std::sqrt(-k2 - 4.0 * m2)) /
                      (std::sqrt(-k2) - std::sqrt(-k2 - 4.0 * m2)));
  return c * (B * (1.0 - B * B / 3.0) * complexd(L, -kPi) - 16.0 / 9.0 + 2.0 * B * B / 3.0);
}

}  // namespace

complexd loop_function(LoopSpecies species, LoopMethod method, double k2, double m, double e,
                       const quad::Options& opt) {
  if (m <= 0) throw std::domain_error("loop_function: m must be > 0");
  double r = k2 / (4.0 * m * m);
  switch (method) {
    case LoopMethod::ClosedForm:
      return assemble(species, primitives_closed(r), k2, m, e);
    case LoopMethod::FeynmanParameter:
      return assemble(species, primitives_feynman(r, opt), k2, m, e);
    case LoopMethod::EuclideanBranch:
      return assemble(species, primitives_euclidean(r, opt), k2, m, e);
    case LoopMethod::Dispersion:
      return assemble(species, primitives_dispersion(k2, m, opt), k2, m, e);
  }
  throw std::logic_error("unreachable");
}

double loop_imaginary_part(LoopSpecies species, double k2, double m, double e) {
  if (m <= 0) throw std::domain_error("loop_imaginary_part: m must be > 0");
  double i0 = im_i0(k2, m), i2 = im_i2(k2, m);
  switch (species) {
    case LoopSpecies::NeutralScalar:
      return i0 * kLoopNorm / 4.0;
    case LoopSpecies::ChargedBoson:
      return e * e * i2 * kLoopNorm / 2.0;
    case LoopSpecies::DiracFermion:
      return e * e * (i0 - i2) * kLoopNorm;
    case LoopSpecies::Majorana:
      return -m * m * kLoopNorm * (0.5 * i0 + (k2 / (8.0 * m * m)) * (i0 - i2));
  }
  throw std::logic_error("unreachable");
}

double boson_fermion_consistency(double k2, double m, double e) {
  complexd lhs = 2.0 * boson_closed(k2, m, e) + fermion_closed(k2, m, e);
  complexd rhs = 4.0 * e * e * scalar_closed(k2, m);
  return std::abs(lhs - rhs);
}

namespace {

// int d4k/(2pi)^4 loop(k^2) W(k): the loop depends on (k0, |k|) only, so run
// an adaptive 2D rule over (k0, r) with a fixed angular rule on the smooth
// Gaussian weight W inside, one loop evaluation per (k0, r) node.
complexd loop_weighted_4d(LoopSpecies species, double m, double e, double kcut,
                          const std::function<double(const FourVector&)>& weight,
                          const quad::Options& opt) {
  const int nang = 14;
  const auto& [xg, wg] = quad::gauss_legendre(nang);
  auto angular = [&](double k0, double r) {
    double acc = 0.0;
    for (int i = 0; i < nang; ++i) {
      double ct = xg[i];
      double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int j = 0; j < nang; ++j) {
        double phi = kPi * (xg[j] + 1.0);
        FourVector k{k0, Vec3(r * st * std::cos(phi), r * st * std::sin(phi), r * ct)};
        acc += wg[i] * wg[j] * weight(k);
      }
    }
    return acc * kPi;
  };
  quad::Options o = opt;
  o.tol = std::max(opt.tol, 1e-8);
  o.throw_on_failure = false;
  quad::Fn2 f = [&](double k0, double r) -> complexd {
    double k2 = r * r - k0 * k0;
    return loop_function(species, LoopMethod::ClosedForm, k2, m, e) * angular(k0, r) * r * r;
  };
  quad::Result res = quad::integrate2(f, -kcut, kcut, 0.0, kcut, o);
  if (res.error_estimate > 100.0 * o.tol)
    throw quad::quadrature_error("second_order_vacuum_energy did not converge", res.value,
                                 res.error_estimate);
  return res.value / std::pow(2.0 * kPi, 4);
}

}  // namespace

complexd second_order_vacuum_energy(const SourceProfile& kappa, LoopSpecies species, double m,
                                    double e, const quad::Options& opt) {
  if (species != LoopSpecies::NeutralScalar && species != LoopSpecies::Majorana)
    throw std::invalid_argument("mass-like perturbation applies to scalar/Majorana loops");
  if (!kappa.is_gaussian_sum())
    throw std::invalid_argument("second_order_vacuum_energy: GaussianSum expected");
  double kcut = 0.0;
  for (const auto& t : kappa.gaussian4().terms) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(t.width);
    kcut = std::max(kcut, 14.0 * std::sqrt(es.eigenvalues().maxCoeff()));
  }
  if (kcut == 0.0) return 0.0;
  auto weight = [&](const FourVector& k) { return std::norm(profile_fourier(kappa, k)); };
  return loop_weighted_4d(species, m, e, kcut, weight, opt);
}

complexd second_order_vacuum_energy(const std::array<SourceProfile, 4>& potential,
                                    LoopSpecies species, double m, double e,
                                    const quad::Options& opt) {
  if (species != LoopSpecies::ChargedBoson && species != LoopSpecies::DiracFermion)
    throw std::invalid_argument("4-potential perturbation applies to the charged loops");
  double kcut = 0.0;
  for (const auto& comp : potential) {
    if (!comp.is_gaussian_sum()) throw std::invalid_argument("potential components: GaussianSum");
    for (const auto& t : comp.gaussian4().terms) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(t.width);
      kcut = std::max(kcut, 14.0 * std::sqrt(es.eigenvalues().maxCoeff()));
    }
  }
  if (kcut == 0.0) return 0.0;
  auto weight = [&](const FourVector& k) {
    CVec4 A;
    for (int mu = 0; mu < 4; ++mu) A[mu] = profile_fourier(potential[mu], k);
    std::array<double, 4> klow{-k.t, k.r[0], k.r[1], k.r[2]};
    std::array<double, 4> metric{-1.0, 1.0, 1.0, 1.0};
    complexd out = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        complexd F = klow[mu] * metric[nu] * A[nu] - klow[nu] * metric[mu] * A[mu];
        out += std::conj(F) * metric[mu] * metric[nu] * F;
      }
    return -out.real();  // -conj(F)F weight
  };
  return loop_weighted_4d(species, m, e, kcut, weight, opt);
}

double static_fsquared(const StaticPotential& potential, const Vec3& p) {
  CVec4 A;
  for (int mu = 0; mu < 4; ++mu) A[mu] = static_fourier(potential.components[mu], p);
  std::array<double, 4> klow{0.0, p[0], p[1], p[2]};
  std::array<double, 4> metric{-1.0, 1.0, 1.0, 1.0};
  complexd out = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      complexd F = klow[mu] * metric[nu] * A[nu] - klow[nu] * metric[mu] * A[mu];
      out += std::conj(F) * metric[mu] * metric[nu] * F;
    }
  return out.real();
}

double static_second_order_energy_shift(const StaticPotential& potential, LoopSpecies species,
                                        double m, double e, const quad::Options& opt) {
  if (species != LoopSpecies::ChargedBoson && species != LoopSpecies::DiracFermion)
    throw std::invalid_argument("static energy shift defined for the charged loops");
  double sign = species == LoopSpecies::ChargedBoson ? -1.0 : 1.0;
  double kcut = 0.0;
  for (const auto& comp : potential.components)
    for (const auto& t : comp.terms) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.width);
      kcut = std::max(kcut, 14.0 * std::sqrt(es.eigenvalues().maxCoeff()));
    }
  if (kcut == 0.0) return 0.0;
  const int nang = 20;
  const auto& [xg, wg] = quad::gauss_legendre(nang);
  quad::Fn radial = [&](double k) -> complexd {
    double acc = 0.0;
    for (int i = 0; i < nang; ++i) {
      double ct = xg[i];
      double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int j = 0; j < nang; ++j) {
        double phi = kPi * (xg[j] + 1.0);
        Vec3 kv(k * st * std::cos(phi), k * st * std::sin(phi), k * ct);
        acc += wg[i] * wg[j] * static_fsquared(potential, kv);
      }
    }
    double loop =
        loop_function(species, LoopMethod::ClosedForm, k * k, m, e, opt).real();
    return acc * kPi * k * k * loop;
  };
  quad::Result res = quad::integrate(radial, 0.0, kcut, opt);
  return sign * res.value.real() / std::pow(2.0 * kPi, 3);
}

}  // namespace qext
