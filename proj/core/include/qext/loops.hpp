#pragma once

#include "qext/quadrature.hpp"
#include "qext/sources.hpp"

// Renormalized one-loop vacuum-energy functions, each computable four ways:
// closed form, Feynman-parameter quadrature with the complex logarithm
// log(t - i0) = log|t| - i pi theta(-t), once-subtracted dispersion
// reconstruction, and the Euclidean (Wick-rotated) branch for k^2 > 0. The
// four agree wherever defined.
//
// Normalization as printed in the source formulas: the neutral-scalar and
// Majorana functions carry no coupling, the charged ones carry e^2.
//   scalar:   pi(k2)  = 1/(4(4pi)^2)      int_0^1 log(1 + k2(1-v^2)/4m^2 - i0) dv
//   boson:    Pi_b    = e^2/(2(4pi)^2)    int_0^1 v^2 log(...) dv
//   fermion:  Pi_f    = e^2/(4pi)^2       int_0^1 (1-v^2) log(...) dv
//   majorana: pi_M    = -m^2/(4pi)^2      int_0^1 (1/2 + (1-v^2)k2/8m^2) log(...) dv
// All vanish at k2 = 0 (subtraction point).

namespace qext {

enum class LoopSpecies { NeutralScalar, ChargedBoson, DiracFermion, Majorana };
enum class LoopMethod { ClosedForm, FeynmanParameter, Dispersion, EuclideanBranch };

complexd loop_function(LoopSpecies species, LoopMethod method, double k2, double m, double e,
                       const quad::Options& opt = {});

// Analytic imaginary part; zero for k2 > -4m^2. Below threshold, with
// B = sqrt((-k2-4m^2)/(-k2)):
//   scalar:   -pi B / (4(4pi)^2)
//   boson:    -e^2 pi B^3 / (6(4pi)^2)
//   fermion:  -e^2 pi (B - B^3/3) / (4pi)^2
//   majorana:  m^2 pi (B/2 + (k2/8m^2) B(3-B^2)/3) / (4pi)^2
double loop_imaginary_part(LoopSpecies species, double k2, double m, double e);

// |2 Pi_b + Pi_f - 4 e^2 pi| with each function evaluated through its own
// closed-form branch expressions.
double boson_fermion_consistency(double k2, double m, double e);

// Second-order vacuum energy. NeutralScalar/Majorana take a mass-like
// GaussianSum perturbation kappa:
//   E2 = int loop(k^2) |kappa(k)|^2 d4k/(2pi)^4.
// ChargedBoson/DiracFermion take a 4-potential (four GaussianSum4 components)
// and integrate -loop(k^2) conj(F_{mu nu}) F^{mu nu} with
// F_{mu nu}(k) = k_mu A_nu(k) - k_nu A_mu(k).
complexd second_order_vacuum_energy(const SourceProfile& kappa, LoopSpecies species, double m,
                                    double e, const quad::Options& opt = {});

struct StaticPotential {
  std::array<GaussianSum3, 4> components;  // A_mu(x), mu = 0..3
};

complexd second_order_vacuum_energy(const std::array<SourceProfile, 4>& potential,
                                    LoopSpecies species, double m, double e,
                                    const quad::Options& opt = {});

// Static renormalized energy shift, sign per species as printed:
//   boson:   E = -e^2 int Pi(p^2) conj(F)F d3p/(2pi)^3
//   fermion: E = +e^2 int Pi(p^2) conj(F)F d3p/(2pi)^3
// with F assembled from the spatial transform of the static 4-potential. The
// loop functions already carry e^2, so the prefactor here is the sign only.
double static_second_order_energy_shift(const StaticPotential& potential, LoopSpecies species,
                                        double m, double e, const quad::Options& opt = {});

// conj(F_{mu nu}(p)) F^{mu nu}(p) for a static potential at p = (0, pvec).
double static_fsquared(const StaticPotential& potential, const Vec3& p);

}  // namespace qext
