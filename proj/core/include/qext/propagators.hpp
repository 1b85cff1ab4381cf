#pragma once

#include "qext/fourvector.hpp"
#include "qext/gamma.hpp"

// Special solutions and Green's functions of the Klein-Gordon and Dirac
// equations, and the momentum-space photon propagator family. Position-space
// values are smooth-part evaluations off the light cone; the delta shell on
// the cone is reported as a separate coefficient, never pointwise.

namespace qext {

enum class PropagatorKind { WightmanPlus, WightmanMinus, PauliJordan, Retarded, Advanced, Causal };

struct PhotonGauge {
  enum class Kind { DZero, AlphaFamily, Feynman, Landau, Yukawa, Temporal, Coulomb, FriedYennie };
  Kind kind = Kind::Feynman;
  double alpha = 1.0;  // AlphaFamily only; alpha = 1 reproduces Feynman

  static PhotonGauge dzero() { return {Kind::DZero, 0.0}; }
  static PhotonGauge alpha_family(double a) { return {Kind::AlphaFamily, a}; }
  static PhotonGauge feynman() { return {Kind::Feynman, 1.0}; }
  static PhotonGauge landau() { return {Kind::Landau, 0.0}; }
  static PhotonGauge yukawa() { return {Kind::Yukawa, 0.0}; }
  static PhotonGauge temporal() { return {Kind::Temporal, 0.0}; }
  static PhotonGauge coulomb() { return {Kind::Coulomb, 0.0}; }
  static PhotonGauge fried_yennie() { return {Kind::FriedYennie, 0.0}; }
};

struct SmoothPartValue {
  complexd value{0.0, 0.0};
  // coefficient of delta(x^2) on the light cone (e.g. sgn(x^0)/(4 pi) for the
  // Wightman functions); reported separately because the shell has no
  // pointwise value
  double delta_coefficient = 0.0;
};

// Momentum-space Klein-Gordon propagator. Rational kinds evaluate with the
// i0 prescription realized by pole_offset > 0. The on-shell kinds
// (WightmanPlus/Minus, PauliJordan) are delta distributions on the mass
// shell; they return the real shell weight +-pi/eps when |p^0| matches
// eps(p) within shell_tol and 0 elsewhere (per the dk/(2pi)^4 normalization,
// with the overall factor i dropped; the caller integrates over the shell).
complexd kg_momentum(PropagatorKind kind, const FourVector& p, double m, double pole_offset,
                     double shell_tol = 1e-9);

// Position-space closed forms (J1/Y1/K1 Bessel evaluations). The light cone
// |x^2| <= cone_tol * (t^2 + r^2) is excluded.
SmoothPartValue kg_position(PropagatorKind kind, const FourVector& x, double m,
                            double cone_tol = 1e-8);

// Dirac propagators S = (i gamma d + m) D. The momentum-space causal kind is
// (-slash(p) + m)/(p^2 + m^2 - i eta); position space differentiates the
// Klein-Gordon closed forms analytically through the Bessel recurrences.
SpinorMatrix dirac_momentum(PropagatorKind kind, const FourVector& p, double m,
                            GammaRepresentation rep, double pole_offset);
struct DiracPositionValue {
  SpinorMatrix value;
  double delta_coefficient;  // coefficient of the scalar delta shell carried along
};
DiracPositionValue dirac_position(PropagatorKind kind, const FourVector& x, double m,
                                  GammaRepresentation rep, double cone_tol = 1e-8);

// Momentum-space photon propagator D_{mu nu}(k) (lower indices) for the
// requested gauge. DZero/Yukawa require m > 0, Coulomb/FriedYennie m = 0.
// Coulomb is singular at k = 0 spatially.
Eigen::Matrix4cd photon_momentum(const PhotonGauge& gauge, const FourVector& k, double m,
                                 double pole_offset);

}  // namespace qext
