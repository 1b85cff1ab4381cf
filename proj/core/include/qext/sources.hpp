#pragma once

#include <variant>
#include <vector>

#include "qext/fourvector.hpp"

// Analytic spacetime perturbations. All profiles are Gaussian superpositions
// so that every Fourier transform and on-shell restriction is closed-form. A
// term is w * exp(-(x-c)^T A (x-c)) with A positive definite; with A = I the
// 4D profile integrates to pi^2 and the 3D one to pi^(3/2).

namespace qext {

struct GaussianTerm4 {
  complexd weight{1.0, 0.0};
  FourVector center{};
  Eigen::Matrix4d width = Eigen::Matrix4d::Identity();  // A, real symmetric pd
};

struct GaussianTerm3 {
  complexd weight{1.0, 0.0};
  Vec3 center = Vec3::Zero();
  Eigen::Matrix3d width = Eigen::Matrix3d::Identity();
};

struct GaussianSum4 {
  std::vector<GaussianTerm4> terms;
};

struct GaussianSum3 {
  std::vector<GaussianTerm3> terms;
};

// q(x - t v), |v| < 1.
struct TravellingProfile {
  GaussianSum3 profile;
  Vec3 velocity = Vec3::Zero();
};

// q_-(x - t v_-) for t < 0, q_+(x - t v_+) for t > 0.
struct TwoEpochCurrent {
  GaussianSum3 plus;
  Vec3 v_plus = Vec3::Zero();
  GaussianSum3 minus;
  Vec3 v_minus = Vec3::Zero();
};

class SourceProfile {
 public:
  using Storage = std::variant<GaussianSum4, GaussianSum3, TravellingProfile, TwoEpochCurrent>;

  SourceProfile() : data_(GaussianSum4{}) {}
  explicit SourceProfile(Storage s);

  static SourceProfile gaussian_sum(std::vector<GaussianTerm4> terms);
  static SourceProfile static_profile(std::vector<GaussianTerm3> terms);
  static SourceProfile travelling(GaussianSum3 q, const Vec3& v);
  static SourceProfile two_epoch(GaussianSum3 qp, const Vec3& vp, GaussianSum3 qm, const Vec3& vm);

  const Storage& data() const { return data_; }
  bool is_gaussian_sum() const { return std::holds_alternative<GaussianSum4>(data_); }
  bool is_static() const { return std::holds_alternative<GaussianSum3>(data_); }
  bool is_travelling() const { return std::holds_alternative<TravellingProfile>(data_); }
  bool is_two_epoch() const { return std::holds_alternative<TwoEpochCurrent>(data_); }

  const GaussianSum4& gaussian4() const { return std::get<GaussianSum4>(data_); }
  const GaussianSum3& gaussian3() const { return std::get<GaussianSum3>(data_); }
  const TravellingProfile& travelling_data() const { return std::get<TravellingProfile>(data_); }
  const TwoEpochCurrent& two_epoch_data() const { return std::get<TwoEpochCurrent>(data_); }

  // Position-space evaluation (4D profiles at x, static ones at x.r).
  complexd value(const FourVector& x) const;

  // Largest spatial extent over terms: |center| + n_sigma / sqrt(lambda_min(A)).
  double spatial_extent(double n_sigma = 8.0) const;

 private:
  Storage data_;
  void validate() const;
};

// 3D transform of a static Gaussian sum at spatial momentum k (convention
// e^{-i k.x}).
complexd static_fourier(const GaussianSum3& p, const Vec3& k);

// Closed-form transform of a GaussianSum/Static profile. Static profiles are
// time independent; by convention this returns their spatial transform at
// k.r (the 4D object would carry 2 pi delta(k^0)). Travelling/TwoEpoch
// variants are distribution-valued and are rejected; use
// travelling_current_fourier.
complexd profile_fourier(const SourceProfile& p, const FourVector& k);

// 4-current of a charge profile that travels with velocity v_- before t=0 and
// v_+ after,
//   J^mu(k) = (-i (1,v+)^mu / (k.v+ - k0 - i eta) + i (1,v-)^mu / (k.v- - k0 + i eta)) q(k),
// with the i0 realized by the supplied pole_offset eta > 0. Charge
// conservation k_mu J^mu = O(eta) requires q_+ = q_-.
CVec4 travelling_current_fourier(const TwoEpochCurrent& p, const FourVector& k, double pole_offset);

// Time-dependent conserved 4-currents with closed-form transforms, used by the
// photon scattering operators. AntisymmetricPair is
//   J^mu(k) = i ((k.a) b^mu - (k.b) a^mu) g(k)
// with g a scalar GaussianSum4 transform; k_mu J^mu = 0 identically, and J is
// real in position space when g is real and even.
struct AntisymmetricPairCurrent {
  FourVector a{1.0, Vec3::UnitX()};
  FourVector b{0.0, Vec3::UnitY()};
  GaussianSum4 envelope;
};

class CurrentProfile {
 public:
  using Storage = std::variant<AntisymmetricPairCurrent, TwoEpochCurrent>;
  explicit CurrentProfile(Storage s) : data_(std::move(s)) {}

  static CurrentProfile antisymmetric_pair(const FourVector& a, const FourVector& b,
                                           GaussianSum4 envelope);
  static CurrentProfile two_epoch(GaussianSum3 q, const Vec3& vp, const Vec3& vm);

  bool exactly_conserved() const {
    return std::holds_alternative<AntisymmetricPairCurrent>(data_);
  }
  const Storage& data() const { return data_; }

  // J^mu(k); pole_offset is only consulted for the two-epoch variant.
  CVec4 fourier(const FourVector& k, double pole_offset = 1e-8) const;

 private:
  Storage data_;
};

}  // namespace qext
