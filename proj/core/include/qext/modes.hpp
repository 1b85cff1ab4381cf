#pragma once

#include <vector>

#include "qext/fourvector.hpp"
#include "qext/gamma.hpp"

// Plane-wave spinors (Dirac representation), Proca/Maxwell polarization
// vectors, spin-sum identities, and mode-space Cauchy evolution of the
// Klein-Gordon field.

namespace qext {

enum class FrequencySign { Positive, Negative };

struct DiracSpinor {
  Eigen::Vector4cd components;
  OnShellMomentum momentum;
  FrequencySign frequency;
  int twice_spin;  // +1 or -1 for s = +-1/2
};

// u((+-E, p), s) of the plane-wave basis, Dirac representation, unit norm.
// The Negative sign gives the spinor at 4-momentum (-E(p), p).
DiracSpinor dirac_u(const Vec3& p, double m, FrequencySign sign, int twice_spin);

// Polarization labels: helicities +-1, the longitudinal mode 0 (massive
// only), and the scalar mode k/m of the Lorentz-condition formalism. The
// scalar mode carries metric weight -1: conj(u).u = mode_metric_sign, and
// completeness holds as sum_sigma sign(sigma) conj(u_mu) u_nu = g_{mu nu}.
enum class Polarization { MinusOne, Zero, PlusOne, Scalar };

struct PolarizationVector {
  CVec4 components;
  OnShellMomentum momentum;
  Polarization sigma;
  double metric_sign;  // +1 physical modes, -1 scalar mode
};

// Transversal basis e1(k), e2(k) chosen deterministically: Gram-Schmidt of
// the coordinate axis with the smallest |k_i| component against k-hat, then
// e2 = k-hat x e1. Only frame-independent sums are part of the contract.
PolarizationVector polarization_vector(const Vec3& k, double m, Polarization sigma);

// sum_sigma conj(M.u(k,sigma)) (u(k,sigma).N) over the physical modes for
// transversal M, N (M.k = N.k = 0 enforced to transversality_tol); equals
// conj(M).N by the completeness relations, both massive and massless.
complexd spin_sum_boson(const CVec4& M, const CVec4& N, const OnShellMomentum& k, bool massless,
                        double transversality_tol = 1e-10);

// Casimir trace formula for sum_{s+,s-} |u~(sp p+, sp s+) B u(sm p-, sm s-)|^2
// with u~ = conj^T beta:
//   Tr[ B~ (-p+ gamma + sp m) B (-p- gamma + sm m) ] / (4 E+ E-),  B~ = beta B* beta.
double casimir_spin_sum(const SpinorMatrix& B, int sign_plus, int sign_minus,
                        const OnShellMomentum& p_plus, const OnShellMomentum& p_minus);

// Uniform cubic spatial grid holding the Cauchy data (value, normal
// derivative); index = (ix*ny + iy)*nz + iz.
struct CauchyData {
  std::array<std::size_t, 3> dims{0, 0, 0};
  double spacing = 1.0;
  std::vector<complexd> value;
  std::vector<complexd> deriv;

  std::size_t size() const { return dims[0] * dims[1] * dims[2]; }
};

// Exact mode-space evolution: multiplies Fourier modes by cos(t eps(k)) and
// sin(t eps(k))/eps(k). Periodic spectral transforms; fields must decay below
// boundary_tol * peak at the box boundary or the call throws (aliasing risk).
CauchyData evolve_kg_cauchy(const CauchyData& data, double t, double m,
                            double boundary_tol = 1e-10);

// Conserved diagnostics.
double field_energy(const CauchyData& data, double m);
// int (-zeta1dot zeta2 + zeta1 zeta2dot) d3x (bilinear, no conjugation)
complexd symplectic_form(const CauchyData& a, const CauchyData& b);

}  // namespace qext
