#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qext/fock.hpp"

using namespace qext;

namespace {
std::mt19937 rng(2024);
double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
complexd crand(double s = 1.0) { return {uni(-s, s), uni(-s, s)}; }
}  // namespace

TEST_CASE("fermionic ladder algebra is exact") {
  auto space = TruncatedFock::make(Statistics::Fermi, 1, 1);
  auto a = ladder_matrices(space);
  Eigen::MatrixXcd anti = a[0].adjoint() * a[0] + a[0] * a[0].adjoint();
  CHECK((anti - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

  auto multi = TruncatedFock::make(Statistics::Fermi, 4, 1);
  auto b = ladder_matrices(multi);
  Eigen::Index dim = b[0].rows();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Eigen::MatrixXcd car = b[i] * b[j].adjoint() + b[j].adjoint() * b[i];
      Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(dim, dim);
      if (i == j) expect = Eigen::MatrixXcd::Identity(dim, dim);
      CHECK((car - expect).cwiseAbs().maxCoeff() < 1e-14);
      Eigen::MatrixXcd aa = b[i] * b[j] + b[j] * b[i];
      CHECK(aa.cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("bosonic truncation defect is confined to the top rung") {
  int N = 8;
  auto space = TruncatedFock::make(Statistics::Bose, 1, N);
  auto a = ladder_matrices(space);
  Eigen::MatrixXcd comm = a[0] * a[0].adjoint() - a[0].adjoint() * a[0];
  Eigen::MatrixXcd defect = comm - Eigen::MatrixXcd::Identity(N + 1, N + 1);
  // defect = -(N+1) |N><N|
  for (int r = 0; r <= N; ++r)
    for (int c = 0; c <= N; ++c) {
      double expect = (r == N && c == N) ? -(N + 1.0) : 0.0;
      CHECK(std::abs(defect(r, c) - expect) < 1e-13);
    }
  // annihilating the vacuum
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(N + 1);
  vac[0] = 1.0;
  CHECK((a[0] * vac).norm() == 0.0);
  // commutator acts canonically on any state with empty top level
  Eigen::VectorXcd psi = Eigen::VectorXcd::Random(N + 1);
  psi[N] = 0.0;
  CHECK(((comm * psi) - psi).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("van Hove ground energy") {
  auto space1 = TruncatedFock::make(Statistics::Bose, 1, 14);
  auto zero = van_hove_ground_energy({1.0}, {0.0}, space1);
  CHECK(zero.numeric == doctest::Approx(0.0));
  CHECK(zero.formula == 0.0);

  auto r = van_hove_ground_energy({1.0}, {0.5}, space1);
  CHECK(r.formula == doctest::Approx(-0.25));
  CHECK(std::abs(r.numeric - r.formula) < 1e-8);

  // additivity of a separable two-mode problem
  auto space2 = TruncatedFock::make(Statistics::Bose, 2, 10);
  auto r2 = van_hove_ground_energy({1.0, 2.0}, {0.5, complexd(0.1, 0.3)}, space2);
  auto ra = van_hove_ground_energy({1.0}, {0.5}, TruncatedFock::make(Statistics::Bose, 1, 10));
  auto rb = van_hove_ground_energy({2.0}, {complexd(0.1, 0.3)},
                                   TruncatedFock::make(Statistics::Bose, 1, 10));
  CHECK(std::abs(r2.numeric - (ra.numeric + rb.numeric)) < 1e-10);
  CHECK(r2.formula == doctest::Approx(ra.formula + rb.formula));

  // numeric is monotone nonincreasing in the cutoff and bounded below
  double prev = 1e9;
  for (int N : {2, 4, 8, 16}) {
    auto rr = van_hove_ground_energy({1.0}, {0.6},
                                     TruncatedFock::make(Statistics::Bose, 1, N));
    CHECK(rr.numeric <= prev + 1e-14);
    CHECK(rr.numeric >= rr.formula - 1e-12);
    prev = rr.numeric;
  }
}

TEST_CASE("Bogoliubov infimum: worked single-mode values") {
  QuadraticHamiltonianSpec bose;
  bose.statistics = Statistics::Bose;
  bose.h = Eigen::MatrixXcd::Constant(1, 1, 1.0);
  bose.g = Eigen::MatrixXcd::Constant(1, 1, 0.6);
  auto r = bogoliubov_infimum(bose);
  CHECK(r.formula == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(std::abs(r.numeric - 0.8) < 1e-7);

  bose.wick_ordered = true;
  auto rw = bogoliubov_infimum(bose);
  CHECK(rw.formula == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(std::abs(rw.numeric - (-0.2)) < 1e-7);

  QuadraticHamiltonianSpec fermi;
  fermi.statistics = Statistics::Fermi;
  fermi.h = Eigen::MatrixXcd::Constant(1, 1, 1.0);
  fermi.g = Eigen::MatrixXcd::Zero(1, 1);
  auto rf = bogoliubov_infimum(fermi);
  CHECK(rf.formula == doctest::Approx(-1.0));
  CHECK(rf.numeric == doctest::Approx(-1.0));
}

TEST_CASE("Bogoliubov infimum: fermionic random specs vs exact diagonalization") {
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + trial % 6;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n), G = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        A(i, j) = crand();
        G(i, j) = crand();
      }
    QuadraticHamiltonianSpec spec;
    spec.statistics = Statistics::Fermi;
    spec.h = 0.5 * (A + A.adjoint());
    spec.g = 0.5 * (G - G.transpose());
    spec.wick_ordered = trial % 2 == 0;
    auto r = bogoliubov_infimum(spec);
    CHECK(std::abs(r.formula - r.numeric) < 1e-10 * std::max(1.0, std::abs(r.numeric)));
  }
}

TEST_CASE("Bogoliubov infimum: bosonic stability and convergence") {
  QuadraticHamiltonianSpec stable;
  stable.statistics = Statistics::Bose;
  stable.h = Eigen::MatrixXcd::Zero(2, 2);
  stable.h << 2.0, complexd(0.3, 0.1), complexd(0.3, -0.1), 1.5;
  stable.g = Eigen::MatrixXcd::Zero(2, 2);
  stable.g << 0.4, complexd(0.1, 0.2), complexd(0.1, 0.2), 0.3;
  auto r = bogoliubov_infimum(stable);
  CHECK(std::abs(r.formula - r.numeric) < 1e-7 * std::max(1.0, std::abs(r.numeric)));

  QuadraticHamiltonianSpec unstable = stable;
  unstable.h = Eigen::MatrixXcd::Identity(2, 2) * 0.1;
  unstable.g = Eigen::MatrixXcd::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(bogoliubov_infimum(unstable), instability_error);

  QuadraticHamiltonianSpec bad = stable;
  bad.g(0, 1) = 99.0;  // not symmetric
  CHECK_THROWS_AS(bogoliubov_infimum(bad), std::invalid_argument);
}

TEST_CASE("coherent oracle: trivial forcing gives the identity") {
  auto space = TruncatedFock::make(Statistics::Bose, 1, 6);
  auto r = coherent_scattering_oracle({[](double) { return complexd(0.0); }}, {1.0}, space,
                                      -3.0, 3.0, 16);
  CHECK(std::abs(r.vacuum_numeric - 1.0) < 1e-12);
  CHECK(std::abs(r.vacuum_closed - 1.0) < 1e-12);
  CHECK(std::abs(r.single_numeric[0]) < 1e-12);
}

TEST_CASE("coherent oracle: Gaussian forcing matches the closed identity") {
  auto space = TruncatedFock::make(Statistics::Bose, 1, 22);
  auto forcing = [](double t) { return complexd(0.55 * std::exp(-t * t), 0.0); };
  double eps = 1.3;
  auto r = coherent_scattering_oracle({forcing}, {eps}, space, -7.0, 7.0, 420);

  // modulus: |<O|SO>| = exp(-|G|^2/2) with G = int e^{i eps t} f(t) dt
  quad::Options o;
  o.tol = 1e-13;
  complexd G = quad::integrate(
                   [&](double t) -> complexd {
                     return std::exp(complexd(0, eps * t)) * forcing(t);
                   },
                   -7.0, 7.0, o)
                   .value;
  CHECK(std::abs(std::abs(r.vacuum_numeric) - std::exp(-0.5 * std::norm(G))) < 1e-8);
  // modulus and phase against the theta-ordered double integral
  CHECK(std::abs(r.vacuum_numeric - r.vacuum_closed) < 1e-8);
  CHECK(std::abs(r.single_numeric[0] - r.single_closed[0]) < 1e-8);

  // step-halving: the stepper is 4th order
  auto half = coherent_scattering_oracle({forcing}, {eps}, space, -7.0, 7.0, 210);
  double e_fine = std::abs(r.vacuum_numeric - r.vacuum_closed);
  double e_coarse = std::abs(half.vacuum_numeric - half.vacuum_closed);
  CHECK(e_fine < e_coarse / 8.0);
}

TEST_CASE("coherent oracle: two modes") {
  auto space = TruncatedFock::make(Statistics::Bose, 2, 7);
  auto f1 = [](double t) { return complexd(0.3 * std::exp(-t * t), 0.1 * std::exp(-t * t)); };
  auto f2 = [](double t) { return complexd(0.2 * std::exp(-0.5 * t * t), 0.0); };
  auto r = coherent_scattering_oracle({f1, f2}, {0.8, 1.7}, space, -6.0, 6.0, 240);
  CHECK(std::abs(r.vacuum_numeric - r.vacuum_closed) < 1e-7);
  CHECK(std::abs(r.single_numeric[0] - r.single_closed[0]) < 1e-7);
  CHECK(std::abs(r.single_numeric[1] - r.single_closed[1]) < 1e-7);
}

TEST_CASE("Born kernel norms: fast reduction vs 3D oracle") {
  BornKernelSpec boson;
  boson.kind = BornKernelSpec::Kind::BosonGaugeFixedTime;
  quad::Options opt;
  opt.tol = 1e-9;
  double fast = born_kernel_hs_norm(boson, 3.0, opt);
  quad::Options o3;
  o3.tol = 1e-7;
  double slow = born_kernel_hs_norm_3d(boson, 3.0, o3);
  CHECK(std::abs(fast - slow) < 1e-4 * std::max(fast, slow));

  BornKernelSpec fermion;
  fermion.kind = BornKernelSpec::Kind::FermionGaugeFixedTime;
  double ffast = born_kernel_hs_norm(fermion, 3.0, opt);
  double fslow = born_kernel_hs_norm_3d(fermion, 3.0, o3);
  CHECK(std::abs(ffast - fslow) < 1e-4 * std::max(ffast, fslow));

  BornKernelSpec mass;
  mass.kind = BornKernelSpec::Kind::MassLikeScattering;
  double mfast = born_kernel_hs_norm(mass, 3.0, opt);
  double mslow = born_kernel_hs_norm_3d(mass, 3.0, o3);
  CHECK(std::abs(mfast - mslow) < 1e-4 * std::max(mfast, mslow));
}

TEST_CASE("Shale diagnostics") {
  // the asymptotic linear-growth regime needs cutoffs well above the
  // profile and mass scales
  std::vector<double> cutoffs{16.0, 32.0, 64.0, 128.0, 192.0};

  BornKernelSpec mass;
  mass.kind = BornKernelSpec::Kind::MassLikeScattering;
  auto rm = shale_hs_growth(mass, cutoffs);
  CHECK(rm.verdict == ShaleVerdict::Implementable);
  CHECK(std::abs(rm.growth_exponent) < 0.1);

  BornKernelSpec dyn;
  dyn.kind = BornKernelSpec::Kind::MassLikeDynamics;
  auto rd = shale_hs_growth(dyn, cutoffs);
  CHECK(rd.verdict == ShaleVerdict::Implementable);

  BornKernelSpec boson;
  boson.kind = BornKernelSpec::Kind::BosonGaugeFixedTime;
  auto rb = shale_hs_growth(boson, cutoffs);
  CHECK(rb.verdict == ShaleVerdict::NotImplementable);
  CHECK(rb.growth_exponent == doctest::Approx(1.0).epsilon(0.15));

  BornKernelSpec fermion;
  fermion.kind = BornKernelSpec::Kind::FermionGaugeFixedTime;
  auto rf = shale_hs_growth(fermion, cutoffs);
  CHECK(rf.verdict == ShaleVerdict::NotImplementable);
  CHECK(rf.growth_exponent == doctest::Approx(1.0).epsilon(0.15));

  SUBCASE("verdicts are invariant under profile rescaling") {
    BornKernelSpec scaled = boson;
    scaled.amplitude = 2.0;
    auto rs = shale_hs_growth(scaled, cutoffs);
    CHECK(rs.verdict == ShaleVerdict::NotImplementable);
    CHECK(std::abs(rs.growth_exponent - rb.growth_exponent) < 1e-9);
    for (std::size_t i = 0; i < cutoffs.size(); ++i)
      CHECK(rs.hs_norms[i] == doctest::Approx(4.0 * rb.hs_norms[i]).epsilon(1e-10));
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(shale_hs_growth(mass, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(shale_hs_growth(mass, {1.0, 2.0, 3.0, 4.0}), std::invalid_argument);
  }
}
