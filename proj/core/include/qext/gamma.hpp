#pragma once

#include <Eigen/Dense>

#include "qext/fourvector.hpp"

// Dirac matrices with [gamma^mu, gamma^nu]_+ = -2 g^{mu nu}, gamma^0* =
// gamma^0, gamma^i* = -gamma^i, and gamma^5 = -i gamma^0 gamma^1 gamma^2
// gamma^3, in the Dirac, Majorana and spinor representations.

namespace qext {

using SpinorMatrix = Eigen::Matrix4cd;

enum class GammaRepresentation { Dirac, Majorana, Spinor };

struct GammaElement {
  enum class Kind { Gamma, Gamma5, Beta, Alpha, Sigma } kind;
  int mu = 0;  // Gamma: 0..3, Alpha: 1..3, Sigma: first index
  int nu = 0;  // Sigma: second index

  static GammaElement gamma(int mu) { return {Kind::Gamma, mu, 0}; }
  static GammaElement gamma5() { return {Kind::Gamma5, 0, 0}; }
  static GammaElement beta() { return {Kind::Beta, 0, 0}; }
  static GammaElement alpha(int i) { return {Kind::Alpha, i, 0}; }
  static GammaElement sigma(int mu, int nu) { return {Kind::Sigma, mu, nu}; }
};

// The matrix of the requested element in the requested representation.
// alpha_i = gamma^0 gamma^i, beta = gamma^0, sigma^{mu nu} = (i/2)[g^mu,g^nu].
SpinorMatrix gamma_matrix(GammaRepresentation rep, const GammaElement& which);

// a_mu gamma^mu with the index lowered by the metric; overloads for real and
// complex 4-vectors (contravariant components in).
SpinorMatrix slash(const FourVector& a, GammaRepresentation rep);
SpinorMatrix slash(const CVec4& a, GammaRepresentation rep);

// Tr of a product of slashed vectors. Lengths 0, 2, 4 give the closed-form
// identities Tr 1 = 4, Tr (ag)(bg) = -4 ab,
// Tr (ag)(bg)(cg)(dg) = 4[(ab)(cd) - (ac)(bd) + (ad)(bc)]; odd lengths vanish.
complexd trace_slash_product(const std::vector<CVec4>& vectors, GammaRepresentation rep);

// Same trace by direct matrix multiplication; exposed so tests can compare
// the two routes.
complexd trace_slash_product_matrix(const std::vector<CVec4>& vectors, GammaRepresentation rep);

// Charge conjugation matrix: unitary, kappa conj(kappa) = 1 and
// kappa gamma^mu kappa^{-1} = -conj(gamma^mu). Identity in the Majorana
// representation, i gamma^2 in the Dirac and spinor ones.
SpinorMatrix charge_conjugation_kappa(GammaRepresentation rep);

}  // namespace qext
