#include "qext/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

namespace qext::quad {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> legendre_roots(int n) {
  // Newton iteration from the Chebyshev initial guess.
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    x[i] = t;
  }
  return x;
}

}  // namespace

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto roots = legendre_roots(n);
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    double t = roots[i];
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1.0);
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return cache.emplace(n, std::make_pair(std::move(roots), std::move(w))).first->second;
}

namespace {

struct Panel {
  double a, b;
  complexd value;
  double error;
};

// Embedded pair: 15-point estimate, error from the 7-point difference.
Panel eval_panel(const Fn& f, double a, double b, long& evals) {
  const auto& [x15, w15] = gauss_legendre(15);
  const auto& [x7, w7] = gauss_legendre(7);
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  complexd s15 = 0.0, s7 = 0.0;
  for (int i = 0; i < 15; ++i) s15 += w15[i] * f(c + h * x15[i]);
  for (int i = 0; i < 7; ++i) s7 += w7[i] * f(c + h * x7[i]);
  evals += 22;
  s15 *= h;
  s7 *= h;
  double err = std::abs(s15 - s7);
  // sharpen the estimate the usual way: the true 15-point error is much
  // smaller than the pair difference for smooth panels
  double scaled = err > 0 ? err * std::sqrt(err / std::max(1e-300, std::abs(s15) + err)) : 0.0;
  return {a, b, s15, std::min(err, std::max(scaled, 1e-300))};
}

struct PanelCmp {
  bool operator()(const Panel& p, const Panel& q) const { return p.error < q.error; }
};

Result adapt(const Fn& f, std::vector<double> edges, const Options& opt) {
  std::priority_queue<Panel, std::vector<Panel>, PanelCmp> heap;
  long evals = 0;
  complexd total = 0.0;
  double toterr = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = eval_panel(f, edges[i], edges[i + 1], evals);
    total += p.value;
    toterr += p.error;
    heap.push(p);
  }
  int n = static_cast<int>(edges.size()) - 1;
  while (toterr > opt.tol && n < opt.max_intervals) {
    Panel worst = heap.top();
    heap.pop();
    total -= worst.value;
    toterr -= worst.error;
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval exhausted by rounding
      total += worst.value;
      toterr += worst.error;
      break;
    }
    Panel l = eval_panel(f, worst.a, mid, evals);
    Panel r = eval_panel(f, mid, worst.b, evals);
    total += l.value + r.value;
    toterr += l.error + r.error;
    heap.push(l);
    heap.push(r);
    ++n;
  }
  if (toterr > opt.tol && opt.throw_on_failure)
    throw quadrature_error("adaptive integration did not reach tolerance", total, toterr);
  return {total, toterr, evals};
}

}  // namespace

Result integrate(const Fn& f, double a, double b, const Options& opt) {
  if (a == b) return {};
  return adapt(f, {a, b}, opt);
}

Result integrate(const Integrand& f, double a, double b, const Options& opt) {
  std::vector<double> edges{a};
  for (double s : f.singular_points)
    if (s > a && s < b) edges.push_back(s);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  return adapt(f.f, std::move(edges), opt);
}

namespace {

// exp-sinh rule for [a, inf): x = a + e^{(pi/2) sinh t}. Algebraic tails of
// any integrable power become double-exponentially damped, and the distance
// x - a is formed without cancellation.
Result exp_sinh(const Fn& f, double a, const Options& opt) {
  // e^{(pi/2) sinh 6.75} reaches the top of the double range; slow algebraic
  // tails (power barely above 1) genuinely need that much
  const double tmax = 6.75;
  long evals = 0;
  auto node = [&](double t, double& x, double& w) {
    double u = 0.5 * kPi * std::sinh(t);
    double ex = std::exp(u);
    x = a + ex;
    w = 0.5 * kPi * std::cosh(t) * ex;
  };
  auto accumulate = [&](complexd& sum, double x, double w) {
    complexd v = f(x);
    if (std::isfinite(std::abs(v))) sum += w * v;
    ++evals;
  };
  auto sweep = [&](double step, complexd& sum, bool odd_only) {
    double start = odd_only ? step : 0.0;
    double stride = odd_only ? 2.0 * step : step;
    for (double t = start; t <= tmax; t += stride) {
      double x, w;
      node(t, x, w);
      if (std::isfinite(x) && std::isfinite(w) && w > 1e-290) accumulate(sum, x, w);
      if (t > 0) {
        node(-t, x, w);
        if (x > a && w > 1e-290) accumulate(sum, x, w);
      }
    }
  };
  double step = 1.0;
  complexd sum = 0.0;
  sweep(step, sum, false);
  complexd prev = step * sum;
  for (int level = 1; level <= 11; ++level) {
    step *= 0.5;
    sweep(step, sum, true);
    complexd cur = step * sum;
    double diff = std::abs(cur - prev);
    if (level >= 4 && diff <= opt.tol) return {cur, diff, evals};
    prev = cur;
  }
  double err = std::abs(prev) * 1e-12 + opt.tol;
  if (opt.throw_on_failure && err > 10 * opt.tol)
    throw quadrature_error("exp-sinh did not converge", prev, err);
  return {prev, err, evals};
}

}  // namespace

Result integrate_half_line(const Integrand& f, double a, const Options& opt) {
  if (f.decay == Decay::Gaussian) {
    // truncate where a unit-scale Gaussian tail is negligible; callers with
    // wide profiles pass a shifted/scaled integrand
    double cut = a + 40.0;
    for (double s : f.singular_points) cut = std::max(cut, s + 40.0);
    Integrand g = f;
    return integrate(g, a, cut, opt);
  }
  if (f.decay == Decay::Algebraic) {
    // split off any declared structure, then exp-sinh the tail
    double split = a;
    for (double s : f.singular_points) split = std::max(split, s);
    Result res{};
    if (split > a) res += integrate(f, a, split, opt);
    res += exp_sinh(f.f, split, opt);
    return res;
  }
  // x = a + t/(1-t), dx = dt/(1-t)^2
  Fn mapped = [&](double t) {
    double om = 1.0 - t;
    double x = a + t / om;
    return f.f(x) / (om * om);
  };
  std::vector<double> edges{0.0};
  for (double s : f.singular_points)
    if (s > a) edges.push_back((s - a) / (1.0 + s - a));
  edges.push_back(1.0);
  std::sort(edges.begin(), edges.end());
  Options o = opt;
  o.throw_on_failure = false;
  Result res = adapt(mapped, edges, o);
  if (res.error_estimate > opt.tol && opt.throw_on_failure)
    throw quadrature_error("half-line integration did not converge", res.value,
                           res.error_estimate);
  return res;
}

Result tanh_sinh(const Fn& f, double a, double b, const Options& opt) {
  // x = c + h tanh((pi/2) sinh(t)); trapezoid in t, halving the step per level.
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double tmax = 6.5;
  long evals = 0;
  auto node = [&](double t, double& x, double& w) {
    double sh = std::sinh(t);
    double u = 0.5 * kPi * sh;
    double sech = 1.0 / std::cosh(u);
    x = c + h * std::tanh(u);
    w = h * 0.5 * kPi * std::cosh(t) * sech * sech;
  };
  double step = 1.0;
  complexd sum = 0.0;
  {
    double x, w;
    node(0.0, x, w);
    sum = w * f(x);
    ++evals;
    for (double t = step; t <= tmax; t += step) {
      double xp, wp, xm, wm;
      node(t, xp, wp);
      node(-t, xm, wm);
      if (xp > a && xp < b && wp > 1e-290) sum += wp * f(xp), ++evals;
      if (xm > a && xm < b && wm > 1e-290) sum += wm * f(xm), ++evals;
    }
  }
  complexd prev = step * sum;
  for (int level = 1; level <= 12; ++level) {
    step *= 0.5;
    for (double t = step; t <= tmax; t += 2.0 * step) {
      double xp, wp, xm, wm;
      node(t, xp, wp);
      node(-t, xm, wm);
      if (xp > a && xp < b && wp > 1e-290) sum += wp * f(xp), ++evals;
      if (xm > a && xm < b && wm > 1e-290) sum += wm * f(xm), ++evals;
    }
    complexd cur = step * sum;
    double diff = std::abs(cur - prev);
    if (level >= 3 && diff <= opt.tol) return {cur, diff, evals};
    prev = cur;
  }
  double err = std::abs(prev) * 1e-10 + opt.tol;
  if (opt.throw_on_failure && err > 10 * opt.tol)
    throw quadrature_error("tanh-sinh did not converge", prev, err);
  return {prev, err, evals};
}

Result principal_value(const Fn& f, double pole, double a, double b, const Options& opt) {
  if (pole <= a || pole >= b) throw std::invalid_argument("principal_value: pole outside domain");
  double r = std::min(pole - a, b - pole);
  Options half = opt;
  half.tol = 0.5 * opt.tol;
  // symmetric window: int_0^r (f(pole+u) - f(pole-u))/u du, smooth at u = 0
  Fn sym = [&](double u) { return (f(pole + u) - f(pole - u)) / u; };
  Result res = integrate(sym, 0.0, r, half);
  // leftover one-sided piece
  if (pole - a > r) {
    Fn left = [&](double x) { return f(x) / (x - pole); };
    res += integrate(left, a, pole - r, half);
  } else if (b - pole > r) {
    Fn right = [&](double x) { return f(x) / (x - pole); };
    res += integrate(right, pole + r, b, half);
  }
  return res;
}

complexd sochocki_limit(const Fn& f, double pole, double a, double b, double eta,
                        const Options& opt) {
  if (eta <= 0) throw std::domain_error("sochocki_limit: eta must be > 0");
  Fn g = [&](double x) { return f(x) / complexd(x - pole, -eta); };
  Integrand gi{g, {pole}, Decay::Generic};
  return integrate(gi, a, b, opt).value;
}

double once_subtracted_dispersion(const FnR& im_fn, double threshold, double s,
                                  const Options& opt) {
  // substitute xi = -t, t in [t_min, inf), t_min = -threshold:
  //   Re f(s) = -(1/pi) int im(-t) s/(t (t+s)) dt
  // pole at t0 = -s when s < threshold.
  double tmin = -threshold;
  if (tmin < 0) throw std::invalid_argument("dispersion: threshold must be <= 0");
  if (s == 0.0) return 0.0;
  Options o = opt;
  o.tol = opt.tol * kPi;
  if (s > threshold) {
    Integrand g{[&, s](double t) -> complexd { return im_fn(-t) * s / (t * (t + s)); },
                {},
                Decay::Algebraic};
    return -integrate_half_line(g, tmin, o).value.real() / kPi;
  }
  double t0 = -s;
  // s/(t(t+s)) = -(1/(t-t0) - 1/t)
  // PV part over a finite window around t0, algebraic tail beyond.
  double split = 2 * t0 + 2 * tmin;
  Result pv = principal_value([&](double x) -> complexd { return im_fn(-x); }, t0, tmin, split, o);
  Integrand tail{[&, t0](double t) -> complexd { return im_fn(-t) / (t - t0); },
                 {},
                 Decay::Algebraic};
  Result rest = integrate_half_line(tail, split, o);
  Integrand sub{[&](double t) -> complexd { return im_fn(-t) / t; }, {}, Decay::Algebraic};
  Result reg = integrate_half_line(sub, tmin, o);
  double value = (pv.value + rest.value - reg.value).real();
  return value / kPi;
}

namespace {

Options inner_options(const Options& opt, double shrink) {
  Options o = opt;
  o.tol = opt.tol * shrink;
  o.throw_on_failure = false;
  o.max_intervals = std::max(50, opt.max_intervals / 50);
  return o;
}

}  // namespace

Result integrate2(const Fn2& f, double ax, double bx, double ay, double by, const Options& opt) {
  Options oy = inner_options(opt, 0.1 / std::max(1.0, bx - ax));
  long evals = 0;
  Fn outer = [&](double x) {
    Result r = integrate([&](double y) { return f(x, y); }, ay, by, oy);
    evals += r.evaluations;
    return r.value;
  };
  Result res = integrate(outer, ax, bx, opt);
  res.evaluations += evals;
  return res;
}

Result integrate3(const Fn3& f, double ax, double bx, double ay, double by, double az, double bz,
                  const Options& opt) {
  Options oin = inner_options(opt, 0.1 / std::max(1.0, bx - ax));
  long evals = 0;
  Fn outer = [&](double x) {
    Result r = integrate2([&](double y, double z) { return f(x, y, z); }, ay, by, az, bz, oin);
    evals += r.evaluations;
    return r.value;
  };
  Result res = integrate(outer, ax, bx, opt);
  res.evaluations += evals;
  return res;
}

Result integrate4(const Fn4& f, double ax, double bx, double ay, double by, double az, double bz,
                  double aw, double bw, const Options& opt) {
  Options oin = inner_options(opt, 0.1 / std::max(1.0, bx - ax));
  long evals = 0;
  Fn outer = [&](double x) {
    Result r = integrate3([&](double y, double z, double w) { return f(x, y, z, w); }, ay, by, az,
                          bz, aw, bw, oin);
    evals += r.evaluations;
    return r.value;
  };
  Result res = integrate(outer, ax, bx, opt);
  res.evaluations += evals;
  return res;
}

complexd tensor_gauss2(const Fn2& f, double ax, double bx, double ay, double by, int n) {
  const auto& [x, w] = gauss_legendre(n);
  double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
  double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);
  complexd s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += w[i] * w[j] * f(cx + hx * x[i], cy + hy * x[j]);
  return s * hx * hy;
}

complexd tensor_gauss4(const Fn4& f, double ax, double bx, double ay, double by, double az,
                       double bz, double aw, double bw, int n) {
  const auto& [x, w] = gauss_legendre(n);
  double c0 = 0.5 * (ax + bx), h0 = 0.5 * (bx - ax);
  double c1 = 0.5 * (ay + by), h1 = 0.5 * (by - ay);
  double c2 = 0.5 * (az + bz), h2 = 0.5 * (bz - az);
  double c3 = 0.5 * (aw + bw), h3 = 0.5 * (bw - aw);
  complexd s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        complexd row = 0.0;
        for (int l = 0; l < n; ++l)
          row += w[l] * f(c0 + h0 * x[i], c1 + h1 * x[j], c2 + h2 * x[k], c3 + h3 * x[l]);
        s += w[i] * w[j] * w[k] * row;
      }
  return s * h0 * h1 * h2 * h3;
}

double yukawa_pair_energy(const GaussianSum3& rho1, const GaussianSum3& rho2, double m,
                          const Options& opt) {
  if (rho1.terms.empty() || rho2.terms.empty()) return 0.0;
  // momentum space: int conj(rho1(k)) rho2(k)/(k^2+m^2) d3k/(2pi)^3 in
  // spherical coordinates; the angular part is smooth, the radial part decays
  // as a Gaussian.
  double kscale = 0.0;
  for (const auto& t : rho1.terms)
    kscale = std::max(kscale, std::sqrt(Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(t.width)
                                            .eigenvalues()
                                            .maxCoeff()));
  for (const auto& t : rho2.terms)
    kscale = std::max(kscale, std::sqrt(Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(t.width)
                                            .eigenvalues()
                                            .maxCoeff()));
  double kmax = 14.0 * kscale;  // exp(-k^2/(4 a^2)) < 1e-21 beyond
  int nang = 24;
  const auto& [xg, wg] = gauss_legendre(nang);
  Options orad = opt;
  orad.tol = opt.tol / (4.0 * kPi);
  Fn radial = [&](double k) -> complexd {
    complexd ang = 0.0;
    for (int i = 0; i < nang; ++i) {
      double ct = xg[i];
      double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int j = 0; j < nang; ++j) {
        double phi = kPi * (xg[j] + 1.0);
        Vec3 kv(k * st * std::cos(phi), k * st * std::sin(phi), k * ct);
        ang += wg[i] * wg[j] * std::conj(static_fourier(rho1, kv)) * static_fourier(rho2, kv);
      }
    }
    ang *= kPi;  // phi weight maps [-1,1] -> [0,2pi]
    return ang * k * k / (k * k + m * m);
  };
  Result r = integrate(radial, 0.0, kmax, orad);
  return r.value.real() / std::pow(2.0 * kPi, 3);
}

double yukawa_pair_energy_position(const GaussianSum3& rho1, const GaussianSum3& rho2, double m,
                                   const Options& opt) {
  if (rho1.terms.empty() || rho2.terms.empty()) return 0.0;
  // pair correlation C(r) = int rho1(x) rho2(x-r) dx: product of Gaussians
  // integrates to a Gaussian in r with width (A1^{-1} + A2^{-1})^{-1}.
  struct CTerm {
    complexd weight;
    Vec3 center;
    Eigen::Matrix3d width;
  };
  std::vector<CTerm> corr;
  for (const auto& t1 : rho1.terms)
    for (const auto& t2 : rho2.terms) {
      Eigen::Matrix3d s = t1.width.inverse() + t2.width.inverse();
      Eigen::Matrix3d w = s.inverse();
      double norm = std::pow(kPi, 1.5) / std::sqrt(s.determinant() * t1.width.determinant() *
                                                   t2.width.determinant());
      corr.push_back({t1.weight * t2.weight * norm, t1.center - t2.center, w});
    }
  auto C = [&](const Vec3& r) {
    complexd v = 0.0;
    for (const auto& c : corr) {
      Vec3 d = r - c.center;
      v += c.weight * std::exp(-d.dot(c.width * d));
    }
    return v;
  };
  double rmax = 0.0;
  for (const auto& c : corr) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(c.width);
    rmax = std::max(rmax, c.center.norm() + 10.0 / std::sqrt(es.eigenvalues().minCoeff()));
  }
  int nang = 24;
  const auto& [xg, wg] = gauss_legendre(nang);
  Options orad = opt;
  orad.tol = opt.tol;
  Fn radial = [&](double r) -> complexd {
    complexd ang = 0.0;
    for (int i = 0; i < nang; ++i) {
      double ct = xg[i];
      double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int j = 0; j < nang; ++j) {
        double phi = kPi * (xg[j] + 1.0);
        Vec3 rv(r * st * std::cos(phi), r * st * std::sin(phi), r * ct);
        ang += wg[i] * wg[j] * C(rv);
      }
    }
    ang *= kPi;
    // kernel e^{-m r}/(4 pi r) times r^2 from the measure
    return ang * r * std::exp(-m * r) / (4.0 * kPi);
  };
  Result res = integrate(radial, 0.0, rmax, orad);
  return res.value.real();
}

}  // namespace qext::quad
