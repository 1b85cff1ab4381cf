#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qext/gamma.hpp"

using namespace qext;

namespace {

const std::array<GammaRepresentation, 3> kReps{GammaRepresentation::Dirac,
                                               GammaRepresentation::Majorana,
                                               GammaRepresentation::Spinor};

double metric(int mu, int nu) { return mu != nu ? 0.0 : (mu == 0 ? -1.0 : 1.0); }

std::mt19937 rng(777);
CVec4 random_cvec() {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {complexd(u(rng), u(rng)), complexd(u(rng), u(rng)), complexd(u(rng), u(rng)),
          complexd(u(rng), u(rng))};
}

}  // namespace

TEST_CASE("anticommutation relations, all representations") {
  for (auto rep : kReps) {
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        SpinorMatrix gm = gamma_matrix(rep, GammaElement::gamma(mu));
        SpinorMatrix gn = gamma_matrix(rep, GammaElement::gamma(nu));
        SpinorMatrix anti = gm * gn + gn * gm + 2.0 * metric(mu, nu) * SpinorMatrix::Identity();
        CHECK(anti.cwiseAbs().maxCoeff() < 1e-14);
      }
  }
}

TEST_CASE("hermiticity pattern") {
  for (auto rep : kReps) {
    SpinorMatrix g0 = gamma_matrix(rep, GammaElement::gamma(0));
    CHECK((g0 - g0.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    for (int i = 1; i < 4; ++i) {
      SpinorMatrix gi = gamma_matrix(rep, GammaElement::gamma(i));
      CHECK((gi + gi.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    }
    SpinorMatrix g5 = gamma_matrix(rep, GammaElement::gamma5());
    CHECK((g5 * g5 - SpinorMatrix::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((g5 - g5.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("explicit matrices of the displayed representations") {
  SpinorMatrix g0 = gamma_matrix(GammaRepresentation::Dirac, GammaElement::gamma(0));
  Eigen::Vector4cd diag = g0.diagonal();
  CHECK(diag[0] == complexd(1, 0));
  CHECK(diag[3] == complexd(-1, 0));
  CHECK((g0 - g0.diagonal().asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() < 1e-15);

  SpinorMatrix g2m = gamma_matrix(GammaRepresentation::Majorana, GammaElement::gamma(2));
  SpinorMatrix expect = SpinorMatrix::Zero();
  expect.diagonal() << complexd(0, -1), complexd(0, -1), complexd(0, 1), complexd(0, 1);
  CHECK((g2m - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("alpha and beta algebra") {
  for (auto rep : kReps) {
    SpinorMatrix beta = gamma_matrix(rep, GammaElement::beta());
    std::vector<SpinorMatrix> ops{beta};
    for (int i = 1; i < 4; ++i) ops.push_back(gamma_matrix(rep, GammaElement::alpha(i)));
    for (std::size_t a = 0; a < ops.size(); ++a) {
      CHECK((ops[a] * ops[a] - SpinorMatrix::Identity()).cwiseAbs().maxCoeff() < 1e-14);
      CHECK((ops[a] - ops[a].adjoint()).cwiseAbs().maxCoeff() < 1e-14);
      for (std::size_t b = a + 1; b < ops.size(); ++b)
        CHECK((ops[a] * ops[b] + ops[b] * ops[a]).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("slash basics") {
  for (auto rep : kReps) {
    CHECK(slash(FourVector{}, rep).cwiseAbs().maxCoeff() == 0.0);
    FourVector e0{1.0, Vec3::Zero()};
    SpinorMatrix s0 = slash(e0, rep);
    CHECK((s0 + gamma_matrix(rep, GammaElement::gamma(0))).cwiseAbs().maxCoeff() < 1e-15);
    for (int trial = 0; trial < 20; ++trial) {
      CVec4 a = random_cvec();
      SpinorMatrix s = slash(a, rep);
      complexd a2 = minkowski_dot(a, a);
      CHECK((s * s + a2 * SpinorMatrix::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("trace identities vs direct matrix multiplication") {
  for (auto rep : kReps) {
    CHECK(trace_slash_product({}, rep) == complexd(4.0));
    CVec4 x{0.0, 1.0, 0.0, 0.0};
    CHECK(std::abs(trace_slash_product({x, x}, rep) - complexd(-4.0)) < 1e-14);
    CHECK(std::abs(trace_slash_product_matrix({x, x, x}, rep)) < 1e-14);

    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<CVec4> v2{random_cvec(), random_cvec()};
      complexd c2 = trace_slash_product(v2, rep);
      complexd m2 = trace_slash_product_matrix(v2, rep);
      CHECK(std::abs(c2 - m2) < 1e-10 * std::max(1.0, std::abs(c2)));
      std::vector<CVec4> v4{random_cvec(), random_cvec(), random_cvec(), random_cvec()};
      complexd c4 = trace_slash_product(v4, rep);
      complexd m4 = trace_slash_product_matrix(v4, rep);
      CHECK(std::abs(c4 - m4) < 1e-10 * std::max(1.0, std::abs(c4)));
    }
  }
}

TEST_CASE("spin matrices satisfy the so(1,3) brackets") {
  // [s^{mu nu}, s^{rho si}] = 2i (g^{mu rho} s^{nu si} - g^{nu rho} s^{mu si}
  //                               - g^{mu si} s^{nu rho} + g^{nu si} s^{mu rho})
  struct Probe {
    int mu, nu, rho, si;
  };
  std::vector<Probe> probes{{0, 1, 0, 2}, {0, 1, 1, 2}, {1, 2, 2, 3},
                            {0, 3, 1, 3}, {2, 3, 0, 2}, {0, 2, 1, 3}};
  for (auto rep : kReps) {
    auto sig = [&](int a, int b) { return gamma_matrix(rep, GammaElement::sigma(a, b)); };
    for (const auto& p : probes) {
      SpinorMatrix lhs = sig(p.mu, p.nu) * sig(p.rho, p.si) - sig(p.rho, p.si) * sig(p.mu, p.nu);
      SpinorMatrix rhs =
          complexd(0, 2) * (metric(p.mu, p.rho) * sig(p.nu, p.si) -
                            metric(p.nu, p.rho) * sig(p.mu, p.si) -
                            metric(p.mu, p.si) * sig(p.nu, p.rho) +
                            metric(p.nu, p.si) * sig(p.mu, p.rho));
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("charge conjugation matrix") {
  CHECK((charge_conjugation_kappa(GammaRepresentation::Majorana) - SpinorMatrix::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  SpinorMatrix kd = charge_conjugation_kappa(GammaRepresentation::Dirac);
  SpinorMatrix ig2 =
      complexd(0, 1) * gamma_matrix(GammaRepresentation::Dirac, GammaElement::gamma(2));
  CHECK((kd - ig2).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((kd - kd.conjugate()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((kd - kd.adjoint()).cwiseAbs().maxCoeff() < 1e-15);

  for (auto rep : kReps) {
    SpinorMatrix k = charge_conjugation_kappa(rep);
    CHECK((k * k.adjoint() - SpinorMatrix::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((k * k.conjugate() - SpinorMatrix::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    for (int mu = 0; mu < 4; ++mu) {
      SpinorMatrix g = gamma_matrix(rep, GammaElement::gamma(mu));
      SpinorMatrix rel = k * g * k.inverse() + g.conjugate();
      CHECK(rel.cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}
