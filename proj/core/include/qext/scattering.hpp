#pragma once

#include <optional>
#include <vector>

#include "qext/propagators.hpp"
#include "qext/quadrature.hpp"
#include "qext/sources.hpp"

// Exact S-matrix content of the linear-source and external-current models.
// The scattering operator of a quadratic model is fully described by its
// coherent data: one displacement amplitude per mode plus a complex vacuum
// exponent. We store the exponent as i log<O|S O>, so a negative imaginary
// part is damping and |<O|S O>| = exp(-strength/2) with strength the
// integrated |displacement|^2.

namespace qext {

struct ir_divergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class IRClassification { Finite, DivergentChargeMismatch, DivergentVelocityChange };

enum class CoherentModel { ScalarSource, MassivePhoton, MasslessPhoton };

struct ModeSample {
  Vec3 k;
  int polarization;  // 0 for scalar models
  complexd amplitude;
};

struct CoherentScatteringData {
  CoherentModel model = CoherentModel::ScalarSource;
  std::vector<ModeSample> displacements;
  complexd vacuum_exponent{0.0, 0.0};    // i log<O|S O>
  double total_on_shell_strength = 0.0;  // int |displacement|^2 d3k (summed over modes)
  complexd gl_phase_offset{0.0, 0.0};    // extra phase of the Moller-quotient convention
};

// W = (1/2) int |j(k)|^2 / (k^2 + m^2 - i0) d4k/(2pi)^4 for a real
// GaussianSum source. Packaging: Re W is the principal-value part, Im W the
// on-shell part (1/2) int |j(eps,k)|^2/(2 eps) d3k/(2pi)^3 >= 0. The vacuum
// persistence amplitude is <O|S O> = exp(i W).
complexd vacuum_persistence_exponent(const SourceProfile& j, double m,
                                     const quad::Options& opt = {});

// Per-leg emission density s(k) = |j(eps(k),k)|^2 / ((2pi)^3 2 eps(k)).
double leg_density(const SourceProfile& j, double m, const Vec3& k);

// int_{kmin<|k|<kmax} |j(eps,k)|^2/(2 eps) d3k/(2pi)^3; [0, inf) by default.
double on_shell_strength(const SourceProfile& j, double m, double kmin = 0.0,
                         double kmax = std::numeric_limits<double>::infinity(),
                         const quad::Options& opt = {});

// Product formula: vacuum factor x prod_out (-i j(eps,k)/sqrt((2pi)^3 2eps))
// x prod_in (-i conj(j)/sqrt(...)). Pass the vacuum exponent if already
// computed; it is expensive.
complexd scattering_amplitude(const SourceProfile& j, double m, const std::vector<Vec3>& out,
                              const std::vector<Vec3>& in,
                              std::optional<complexd> vacuum_exponent = std::nullopt,
                              const quad::Options& opt = {});

// sigma(out; in) = |amplitude|^2 = exp(-total strength) x prod legs s(k).
double cross_section(const SourceProfile& j, double m, const std::vector<Vec3>& out,
                     const std::vector<Vec3>& in, const quad::Options& opt = {});

struct SoftHardSplit {
  double soft_strength;  // int_{|k|<delta} |j|^2/(2eps) d3k/(2pi)^3
  double hard_strength;  // complement
  double soft_vacuum;    // exp(-soft_strength): sigma_<delta with no soft legs
  // sigma_>delta for a hard configuration = exp(-hard_strength) x hard legs
  double hard_vacuum;
};
SoftHardSplit soft_hard_split(const SourceProfile& j, double m, double delta,
                              const quad::Options& opt = {});

enum class EnergyShiftRoute { Momentum, PositionKernel };

// E = -(1/2) int int j K_m j for a static source, K_m the Yukawa kernel.
double stationary_energy_shift(const SourceProfile& j_static, double m,
                               EnergyShiftRoute route = EnergyShiftRoute::Momentum,
                               const quad::Options& opt = {});

// Gell-Mann-Low scattering data for a source with different travelling
// asymptotics in the past and future. Displacement amplitude per mode:
//   (q+(k)/(eps - v+.k) - q-(k)/(eps - v-.k)) / sqrt(2 eps (2pi)^3).
// The vacuum exponent follows the phase-renormalized convention (pure
// damping); the alternative Moller-quotient phase is reported separately as
// gl_phase_offset. IR divergence at m = 0 is detected analytically from the
// total charges and velocities and returned as a classification, never as a
// quadrature failure.
std::pair<CoherentScatteringData, IRClassification> two_epoch_gl_scattering(
    const GaussianSum3& q_plus, const Vec3& v_plus, const GaussianSum3& q_minus,
    const Vec3& v_minus, double m, const std::vector<Vec3>& sample_momenta = {},
    const quad::Options& opt = {});

// (i/2) int conj(J)^mu D_{mu nu}(k) J^nu(k) d4k/(2pi)^4 = log<O|S O> for a
// conserved 4-current (real part damping, imaginary part phase). The current
// must be conserved to conservation_tol pointwise and axisymmetric about the
// z axis (the evaluation reduces the 4D integral to (k0, |k|, cos theta)).
// For conserved currents the value is gauge independent.
complexd photon_scattering_exponent(const CurrentProfile& J, double m, const PhotonGauge& gauge,
                                    double conservation_tol = 1e-8,
                                    const quad::Options& opt = {});

// Static 4-current: charge density J0 (Gaussian sum) plus a transversal
// spatial current built as curl of a Gaussian potential along `axis`.
struct StaticCurrent {
  GaussianSum3 charge;          // J^0
  GaussianSum3 curl_potential;  // J = rot(g axis)
  Vec3 axis = Vec3::UnitZ();
};

// E = -(1/2) <J,K_m J> + (1/2) <J0,K_m J0> (Coulomb kernel at m = 0).
double static_current_energy_shift(const StaticCurrent& J, double m,
                                   EnergyShiftRoute route = EnergyShiftRoute::Momentum,
                                   const quad::Options& opt = {});

}  // namespace qext
