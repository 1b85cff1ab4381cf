#include "qext/sources.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>

namespace qext {

namespace {

constexpr double kPi = std::numbers::pi;

void check_pd4(const Eigen::Matrix4d& a) {
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("width matrix must be symmetric");
  Eigen::LLT<Eigen::Matrix4d> llt(a);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("width matrix must be positive definite");
}

void check_pd3(const Eigen::Matrix3d& a) {
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("width matrix must be symmetric");
  Eigen::LLT<Eigen::Matrix3d> llt(a);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("width matrix must be positive definite");
}

void check_subluminal(const Vec3& v) {
  if (v.norm() >= 1.0) throw std::invalid_argument("velocity must satisfy |v| < 1");
}

}  // namespace

SourceProfile::SourceProfile(Storage s) : data_(std::move(s)) { validate(); }

void SourceProfile::validate() const {
  if (auto* g4 = std::get_if<GaussianSum4>(&data_)) {
    for (const auto& t : g4->terms) check_pd4(t.width);
  } else if (auto* g3 = std::get_if<GaussianSum3>(&data_)) {
    for (const auto& t : g3->terms) check_pd3(t.width);
  } else if (auto* tr = std::get_if<TravellingProfile>(&data_)) {
    for (const auto& t : tr->profile.terms) check_pd3(t.width);
    check_subluminal(tr->velocity);
  } else if (auto* te = std::get_if<TwoEpochCurrent>(&data_)) {
    for (const auto& t : te->plus.terms) check_pd3(t.width);
    for (const auto& t : te->minus.terms) check_pd3(t.width);
    check_subluminal(te->v_plus);
    check_subluminal(te->v_minus);
  }
}

SourceProfile SourceProfile::gaussian_sum(std::vector<GaussianTerm4> terms) {
  return SourceProfile(GaussianSum4{std::move(terms)});
}
SourceProfile SourceProfile::static_profile(std::vector<GaussianTerm3> terms) {
  return SourceProfile(GaussianSum3{std::move(terms)});
}
SourceProfile SourceProfile::travelling(GaussianSum3 q, const Vec3& v) {
  return SourceProfile(TravellingProfile{std::move(q), v});
}
SourceProfile SourceProfile::two_epoch(GaussianSum3 qp, const Vec3& vp, GaussianSum3 qm,
                                       const Vec3& vm) {
  return SourceProfile(TwoEpochCurrent{std::move(qp), vp, std::move(qm), vm});
}

complexd SourceProfile::value(const FourVector& x) const {
  complexd out = 0.0;
  if (auto* g4 = std::get_if<GaussianSum4>(&data_)) {
    Eigen::Vector4d d;
    for (const auto& t : g4->terms) {
      d << x.t - t.center.t, x.r - t.center.r;
      out += t.weight * std::exp(-d.dot(t.width * d));
    }
  } else if (auto* g3 = std::get_if<GaussianSum3>(&data_)) {
    for (const auto& t : g3->terms) {
      Vec3 d = x.r - t.center;
      out += t.weight * std::exp(-d.dot(t.width * d));
    }
  } else if (auto* tr = std::get_if<TravellingProfile>(&data_)) {
    for (const auto& t : tr->profile.terms) {
      Vec3 d = x.r - x.t * tr->velocity - t.center;
      out += t.weight * std::exp(-d.dot(t.width * d));
    }
  } else if (auto* te = std::get_if<TwoEpochCurrent>(&data_)) {
    const GaussianSum3& q = x.t > 0 ? te->plus : te->minus;
    const Vec3& v = x.t > 0 ? te->v_plus : te->v_minus;
    for (const auto& t : q.terms) {
      Vec3 d = x.r - x.t * v - t.center;
      out += t.weight * std::exp(-d.dot(t.width * d));
    }
  }
  return out;
}

double SourceProfile::spatial_extent(double n_sigma) const {
  double ext = 0.0;
  auto acc3 = [&](const GaussianSum3& g) {
    for (const auto& t : g.terms) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.width);
      ext = std::max(ext, t.center.norm() + n_sigma / std::sqrt(es.eigenvalues().minCoeff()));
    }
  };
  if (auto* g4 = std::get_if<GaussianSum4>(&data_)) {
    for (const auto& t : g4->terms) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(t.width);
      ext = std::max(ext, t.center.r.norm() + n_sigma / std::sqrt(es.eigenvalues().minCoeff()));
    }
  } else if (auto* g3 = std::get_if<GaussianSum3>(&data_)) {
    acc3(*g3);
  } else if (auto* tr = std::get_if<TravellingProfile>(&data_)) {
    acc3(tr->profile);
  } else if (auto* te = std::get_if<TwoEpochCurrent>(&data_)) {
    acc3(te->plus);
    acc3(te->minus);
  }
  return ext;
}

complexd static_fourier(const GaussianSum3& p, const Vec3& k) {
  complexd out = 0.0;
  for (const auto& t : p.terms) {
    Eigen::LLT<Eigen::Matrix3d> llt(t.width);
    Vec3 half = llt.solve(k);  // A^{-1} k
    double quad = 0.25 * k.dot(half);
    double det = t.width.determinant();
    complexd phase = std::exp(complexd(0.0, -k.dot(t.center)));
    out += t.weight * std::pow(kPi, 1.5) / std::sqrt(det) * std::exp(-quad) * phase;
  }
  return out;
}

complexd profile_fourier(const SourceProfile& p, const FourVector& k) {
  if (p.is_gaussian_sum()) {
    // phase e^{i(k0 t - k.x)} = e^{i <kappa, x>} with kappa = (k0, -k).
    Eigen::Vector4d kappa;
    kappa << k.t, -k.r;
    complexd out = 0.0;
    for (const auto& t : p.gaussian4().terms) {
      Eigen::LLT<Eigen::Matrix4d> llt(t.width);
      Eigen::Vector4d half = llt.solve(kappa);
      double quad = 0.25 * kappa.dot(half);
      double det = t.width.determinant();
      Eigen::Vector4d c;
      c << t.center.t, t.center.r;
      complexd phase = std::exp(complexd(0.0, kappa.dot(c)));
      out += t.weight * kPi * kPi / std::sqrt(det) * std::exp(-quad) * phase;
    }
    return out;
  }
  if (p.is_static()) return static_fourier(p.gaussian3(), k.r);
  throw std::invalid_argument(
      "profile_fourier: travelling/two-epoch profiles are distribution-valued; "
      "use travelling_current_fourier");
}

CVec4 travelling_current_fourier(const TwoEpochCurrent& p, const FourVector& k,
                                 double pole_offset) {
  if (pole_offset <= 0.0) throw std::domain_error("pole_offset must be > 0");
  complexd qp = static_fourier(p.plus, k.r);
  complexd qm = static_fourier(p.minus, k.r);
  complexd dp = complexd(k.r.dot(p.v_plus) - k.t, -pole_offset);
  complexd dm = complexd(k.r.dot(p.v_minus) - k.t, pole_offset);
  const complexd i(0.0, 1.0);
  CVec4 out;
  out[0] = -i * qp / dp + i * qm / dm;
  for (int j = 0; j < 3; ++j)
    out[j + 1] = -i * p.v_plus[j] * qp / dp + i * p.v_minus[j] * qm / dm;
  return out;
}

CurrentProfile CurrentProfile::antisymmetric_pair(const FourVector& a, const FourVector& b,
                                                  GaussianSum4 envelope) {
  return CurrentProfile(AntisymmetricPairCurrent{a, b, std::move(envelope)});
}

CurrentProfile CurrentProfile::two_epoch(GaussianSum3 q, const Vec3& vp, const Vec3& vm) {
  TwoEpochCurrent te{q, vp, std::move(q), vm};
  return CurrentProfile(std::move(te));
}

CVec4 CurrentProfile::fourier(const FourVector& k, double pole_offset) const {
  if (auto* ap = std::get_if<AntisymmetricPairCurrent>(&data_)) {
    complexd g = profile_fourier(SourceProfile(ap->envelope), k);
    double ka = minkowski_dot(k, ap->a);
    double kb = minkowski_dot(k, ap->b);
    const complexd i(0.0, 1.0);
    CVec4 out;
    out[0] = i * (ka * ap->b.t - kb * ap->a.t) * g;
    for (int j = 0; j < 3; ++j) out[j + 1] = i * (ka * ap->b.r[j] - kb * ap->a.r[j]) * g;
    return out;
  }
  return travelling_current_fourier(std::get<TwoEpochCurrent>(data_), k, pole_offset);
}

}  // namespace qext
