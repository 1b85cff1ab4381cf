#pragma once

#include <functional>
#include <vector>

#include "qext/fourvector.hpp"
#include "qext/sources.hpp"

// Numerical backbone: adaptive panel integration (embedded 7/15-point
// Gauss-Legendre pair), tanh-sinh panels for endpoint singularities, rational
// compactification for half-lines, Cauchy principal values by symmetric pole
// excision, and once-subtracted dispersion reconstruction.

namespace qext::quad {

struct quadrature_error : std::runtime_error {
  complexd partial;
  double error_estimate;
  quadrature_error(const std::string& what, complexd part, double err)
      : std::runtime_error(what), partial(part), error_estimate(err) {}
};

struct Result {
  complexd value{0.0, 0.0};
  double error_estimate = 0.0;
  long evaluations = 0;

  Result& operator+=(const Result& o) {
    value += o.value;
    error_estimate += o.error_estimate;
    evaluations += o.evaluations;
    return *this;
  }
};

struct Options {
  double tol = 1e-10;          // absolute tolerance target
  int max_intervals = 20000;   // subdivision budget
  bool throw_on_failure = true;
};

using Fn = std::function<complexd(double)>;
using FnR = std::function<double(double)>;

// Integrand with declared interior singular/kink points (panels are split
// there before refinement) and decay class for half-line transforms.
enum class Decay { Generic, Gaussian, Algebraic };

struct Integrand {
  Fn f;
  std::vector<double> singular_points{};
  Decay decay = Decay::Generic;
};

Result integrate(const Fn& f, double a, double b, const Options& opt = {});
Result integrate(const Integrand& f, double a, double b, const Options& opt = {});

// int_a^inf via x = a + t/(1-t); Gaussian-decay integrands are truncated
// instead (panel map would waste points), algebraic tails go through
// tanh-sinh on the compactified panel.
Result integrate_half_line(const Integrand& f, double a, const Options& opt = {});

// Double-exponential rule on [a,b]; integrable endpoint singularities fine.
Result tanh_sinh(const Fn& f, double a, double b, const Options& opt = {});

// PV int_a^b f(x)/(x - pole) dx, symmetric excision around the pole:
//   int_0^r (f(pole+u) - f(pole-u))/u du + regular remainder.
Result principal_value(const Fn& f, double pole, double a, double b, const Options& opt = {});

// Sochocki split: int_a^b f(x)/(x - pole -+ i eta) -> +- i pi f(pole) + PV.
// Provided for diagnostics/tests.
complexd sochocki_limit(const Fn& f, double pole, double a, double b, double eta,
                        const Options& opt = {});

// Once-subtracted reconstruction of the real part from the imaginary part for
// a function analytic in the lower half plane with Im supported on
// (-inf, threshold]:
//   Re f(s) = -(1/pi) PV int_{-inf}^{threshold} Im f(xi) (1/(xi-s) - 1/xi) dxi.
// The PV route is taken automatically when s < threshold.
double once_subtracted_dispersion(const FnR& im_fn, double threshold, double s,
                                  const Options& opt = {});

// Nested adaptive cubature, dimension 2..4. Inner tolerances are divided down
// from opt.tol; use for smooth decaying integrands on finite boxes.
using Fn2 = std::function<complexd(double, double)>;
using Fn3 = std::function<complexd(double, double, double)>;
using Fn4 = std::function<complexd(double, double, double, double)>;
Result integrate2(const Fn2& f, double ax, double bx, double ay, double by,
                  const Options& opt = {});
Result integrate3(const Fn3& f, double ax, double bx, double ay, double by, double az, double bz,
                  const Options& opt = {});
Result integrate4(const Fn4& f, double ax, double bx, double ay, double by, double az, double bz,
                  double aw, double bw, const Options& opt = {});

// Fixed tensor-product Gauss-Legendre rule (order n per axis); the slow,
// assumption-free oracle used by tests against the adaptive paths.
complexd tensor_gauss2(const Fn2& f, double ax, double bx, double ay, double by, int n);
complexd tensor_gauss4(const Fn4& f, double ax, double bx, double ay, double by, double az,
                       double bz, double aw, double bw, int n);

// Gauss-Legendre nodes/weights on [-1,1], cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

// Pair energy int int rho1(x) e^{-m|x-y|}/(4 pi |x-y|) rho2(y) dx dy for
// static Gaussian sums, evaluated in momentum space as
//   int conj(rho1(k)) rho2(k) / (k^2 + m^2) d3k/(2pi)^3.
double yukawa_pair_energy(const GaussianSum3& rho1, const GaussianSum3& rho2, double m,
                          const Options& opt = {});

// Same quantity through the position-space kernel: the inner pair correlation
// C(r) = int rho1(x) rho2(x - r) dx is closed-form for Gaussians, the kernel
// integral int C(r) e^{-m r}/(4 pi r) d3r is done in spherical coordinates.
double yukawa_pair_energy_position(const GaussianSum3& rho1, const GaussianSum3& rho2, double m,
                                   const Options& opt = {});

}  // namespace qext::quad
