#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qext/quadrature.hpp"

// Brute-force truncated-Fock verification: ladder matrices, van Hove and
// Bogoliubov infimum formulas, the time-ordered coherent identity, and
// Shale/Shale-Stinespring Hilbert-Schmidt diagnostics for the Born kernels.

namespace qext {

struct instability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Statistics { Bose, Fermi };

struct TruncatedFock {
  Statistics statistics = Statistics::Bose;
  int modes = 1;
  int cutoff = 1;  // per-mode occupation cutoff N; Fermi forces 1
  std::size_t dimension = 2;

  static TruncatedFock make(Statistics s, int modes, int cutoff, std::size_t cap = 4096);
};

// Annihilation matrices per mode. Bose truncation satisfies
// [a, a*] = 1 - (N+1)|N><N| (defect confined to the top rung); Fermi uses
// Jordan-Wigner strings so the anticommutation relations are exact.
std::vector<Eigen::MatrixXcd> ladder_matrices(const TruncatedFock& space);

struct VanHoveResult {
  double numeric;  // smallest eigenvalue on the truncation
  double formula;  // -sum |v|^2 / eps
};
VanHoveResult van_hove_ground_energy(const std::vector<double>& eps,
                                     const std::vector<complexd>& v, const TruncatedFock& space);

struct QuadraticHamiltonianSpec {
  Statistics statistics = Statistics::Bose;
  Eigen::MatrixXcd h;  // self-adjoint
  Eigen::MatrixXcd g;  // g^T = +g (Bose), -g (Fermi)
  bool wick_ordered = false;
};

struct BogoliubovResult {
  double formula;
  double numeric;
  int bose_cutoff_used = 0;
};

// Infimum of the Bogoliubov Hamiltonian
//   H = sum h_ij (a_i* a_j +- a_i a_j*) + sum (g_ij a_i* a_j* +- conj(g)_ij a_i a_j)
// (upper signs Bose, lower Fermi), or of its Wick-ordered version
//   :H: = 2 sum h a* a + (g a*a* +- conj(g) aa).
// formula: +-(1/2) Tr [h^2 -+ g g*, ...]^{1/2} with the diagonal subtraction
// in the Wick-ordered case; numeric: ground eigenvalue of the assembled
// matrix (exact for Fermi, cutoff-doubled until converged for Bose).
// Bosonic specs whose block matrix is not positive semidefinite raise
// instability_error.
BogoliubovResult bogoliubov_infimum(const QuadraticHamiltonianSpec& spec,
                                    double bose_convergence = 1e-9, std::size_t cap = 4096);

struct CoherentOracleResult {
  complexd vacuum_numeric;  // <O|S O> from the stepped time-ordered exponential
  complexd vacuum_closed;   // e^{-C} from the closed coherent identity
  std::vector<complexd> single_numeric;  // <1_j|S O>
  std::vector<complexd> single_closed;   // e^{-C} i G_j
  long steps_used = 0;
};

// Time-ordered exponential of A(t) = sum_j i [ g_j(t) a_j* + conj(g_j(t)) a_j ]
// with g_j(t) = e^{i eps_j t} forcing_j(t), stepped with a 4th-order
// commutator-free Magnus scheme, against the closed identity
//   S = e^{-C} e^{i a*(G)} e^{i a(G)},  G_j = int g_j dt,
//   C = sum_j int int conj(g_j(t1)) g_j(t2) theta(t1 - t2) dt1 dt2.
CoherentOracleResult coherent_scattering_oracle(
    const std::vector<std::function<complexd(double)>>& forcing, const std::vector<double>& eps,
    const TruncatedFock& space, double t0, double t1, int steps);

struct BornKernelSpec {
  enum class Kind {
    MassLikeScattering,   // q_{inf,-inf} of the mass-like perturbation
    MassLikeDynamics,     // q_{t-,t+} (finite window)
    BosonGaugeFixedTime,  // fixed-time gauge transformation, charged bosons
    FermionGaugeFixedTime
  };
  Kind kind = Kind::MassLikeScattering;
  double amplitude = 1.0;
  double time_width = 1.0;   // kappa(t,x) = amp e^{-t^2/tau^2} e^{-|x|^2/sigma^2}
  double space_width = 1.0;  // gauge kernels use chi(x) = amp e^{-|x|^2/sigma^2}
  double mass = 1.0;
  double coupling = 1.0;           // e, gauge kernels
  double t_minus = -2.0, t_plus = 2.0;  // dynamics window
};

// ||q||^2_HS restricted to |k|,|k1| < Lambda; Gaussian separability reduces
// the 6D integral to 2D (the relative-momentum direction is analytic).
double born_kernel_hs_norm(const BornKernelSpec& kernel, double cutoff,
                           const quad::Options& opt = {});

// The generic 6D path (spherical reduction with a numerically integrated
// angular factor); slow oracle for tests.
double born_kernel_hs_norm_3d(const BornKernelSpec& kernel, double cutoff,
                              const quad::Options& opt = {});

enum class ShaleVerdict { Implementable, NotImplementable };

struct ShaleResult {
  std::vector<double> cutoffs;
  std::vector<double> hs_norms;
  double growth_exponent = 0.0;  // log-log slope
  double exponent_stderr = 0.0;
  ShaleVerdict verdict = ShaleVerdict::Implementable;
};

// Needs >= 4 cutoffs spanning at least a decade. Implementable iff the
// sequence is Cauchy: slope consistent with 0 (alpha <= max(0.1, 2 stderr)).
ShaleResult shale_hs_growth(const BornKernelSpec& kernel, const std::vector<double>& cutoffs,
                            const quad::Options& opt = {});

}  // namespace qext
