#include "qext/gamma.hpp"

#include <stdexcept>

namespace qext {

namespace {

using M2 = Eigen::Matrix2cd;
const complexd I{0.0, 1.0};

M2 pauli(int i) {
  M2 s;
  switch (i) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -I, I, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::out_of_range("pauli index");
  }
  return s;
}

SpinorMatrix block(const M2& a, const M2& b, const M2& c, const M2& d) {
  SpinorMatrix m;
  m.block<2, 2>(0, 0) = a;
  m.block<2, 2>(0, 2) = b;
  m.block<2, 2>(2, 0) = c;
  m.block<2, 2>(2, 2) = d;
  return m;
}

SpinorMatrix gamma_mu(GammaRepresentation rep, int mu) {
  if (mu < 0 || mu > 3) throw std::out_of_range("gamma index must be 0..3");
  const M2 one = M2::Identity();
  const M2 zero = M2::Zero();
  switch (rep) {
    case GammaRepresentation::Dirac:
      if (mu == 0) return block(one, zero, zero, -one);
      return block(zero, pauli(mu), -pauli(mu), zero);
    case GammaRepresentation::Majorana:
      switch (mu) {
        case 0: return I * block(zero, -one, one, zero);
        case 1: return I * block(zero, pauli(1), pauli(1), zero);
        case 2: return I * block(-one, zero, zero, one);
        case 3: return I * block(zero, pauli(3), pauli(3), zero);
      }
      break;
    case GammaRepresentation::Spinor:
      if (mu == 0) return block(zero, one, one, zero);
      return block(zero, -pauli(mu), pauli(mu), zero);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

SpinorMatrix gamma_matrix(GammaRepresentation rep, const GammaElement& which) {
  switch (which.kind) {
    case GammaElement::Kind::Gamma:
      return gamma_mu(rep, which.mu);
    case GammaElement::Kind::Gamma5:
      return -I * gamma_mu(rep, 0) * gamma_mu(rep, 1) * gamma_mu(rep, 2) * gamma_mu(rep, 3);
    case GammaElement::Kind::Beta:
      return gamma_mu(rep, 0);
    case GammaElement::Kind::Alpha:
      if (which.mu < 1 || which.mu > 3) throw std::out_of_range("alpha index must be 1..3");
      return gamma_mu(rep, 0) * gamma_mu(rep, which.mu);
    case GammaElement::Kind::Sigma: {
      if (which.mu < 0 || which.mu > 3 || which.nu < 0 || which.nu > 3)
        throw std::out_of_range("sigma indices must be 0..3");
      SpinorMatrix a = gamma_mu(rep, which.mu), b = gamma_mu(rep, which.nu);
      return 0.5 * I * (a * b - b * a);
    }
  }
  throw std::logic_error("unreachable");
}

SpinorMatrix slash(const FourVector& a, GammaRepresentation rep) {
  return slash(to_cvec4(a), rep);
}

SpinorMatrix slash(const CVec4& a, GammaRepresentation rep) {
  // a_mu gamma^mu = -a^0 gamma^0 + a^i gamma^i
  SpinorMatrix m = -a[0] * gamma_mu(rep, 0);
  for (int i = 1; i < 4; ++i) m += a[i] * gamma_mu(rep, i);
  return m;
}

complexd trace_slash_product(const std::vector<CVec4>& v, GammaRepresentation) {
  if (v.size() % 2 == 1) return 0.0;
  switch (v.size()) {
    case 0:
      return 4.0;
    case 2:
      return -4.0 * minkowski_dot(v[0], v[1]);
    case 4: {
      complexd ab = minkowski_dot(v[0], v[1]), cd = minkowski_dot(v[2], v[3]);
      complexd ac = minkowski_dot(v[0], v[2]), bd = minkowski_dot(v[1], v[3]);
      complexd ad = minkowski_dot(v[0], v[3]), bc = minkowski_dot(v[1], v[2]);
      return 4.0 * (ab * cd - ac * bd + ad * bc);
    }
    default:
      throw std::invalid_argument("trace_slash_product: closed form provided for 0, 2, 4 vectors");
  }
}

complexd trace_slash_product_matrix(const std::vector<CVec4>& v, GammaRepresentation rep) {
  if (v.empty()) return 4.0;
  SpinorMatrix m = slash(v[0], rep);
  for (std::size_t i = 1; i < v.size(); ++i) m *= slash(v[i], rep);
  return m.trace();
}

SpinorMatrix charge_conjugation_kappa(GammaRepresentation rep) {
  if (rep == GammaRepresentation::Majorana) return SpinorMatrix::Identity();
  return I * gamma_mu(rep, 2);
}

}  // namespace qext
