#include "phaseless/symops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "phaseless/hilbert.hpp"

namespace phaseless {

namespace {

ComplexVector basis_vector(Index n, Index k) {
  ComplexVector e = ComplexVector::Zero(n);
  e[k] = 1.0;
  return e;
}

// A unit vector orthogonal to the unit vector q.
ComplexVector orthogonal_unit(const ComplexVector& q) {
  const Index n = q.size();
  Index best = 0;
  q.cwiseAbs2().minCoeff(&best);
  ComplexVector e = basis_vector(n, best);
  e -= q * inner(e, q);
  e /= e.norm();
  fix_phase(e);
  return e;
}

double spectral_scale(const RealVector& eig) {
  return eig.size() == 0 ? 0.0 : eig.cwiseAbs().maxCoeff();
}

}  // namespace

SymOperator::SymOperator(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SymOperator: matrix must be square");
  if (!m.allFinite()) throw std::invalid_argument("SymOperator: non-finite entry");
  const double scale = m.norm();
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (m.size() > 0 && asym > tol * scale) {
    throw std::invalid_argument("SymOperator: matrix is not Hermitian");
  }
  m_ = 0.5 * (m + m.adjoint());
}

SymOperator SymOperator::zero(Index n) { return SymOperator(ComplexMatrix::Zero(n, n), Trusted{}); }

SymOperator SymOperator::identity(Index n) {
  return SymOperator(ComplexMatrix::Identity(n, n), Trusted{});
}

RealVector SymOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

SymOperator SymOperator::operator+(const SymOperator& other) const {
  require_same_dim(dim(), other.dim(), "SymOperator::operator+");
  return SymOperator(m_ + other.m_, Trusted{});
}

SymOperator SymOperator::operator-(const SymOperator& other) const {
  require_same_dim(dim(), other.dim(), "SymOperator::operator-");
  return SymOperator(m_ - other.m_, Trusted{});
}

SymOperator SymOperator::operator-() const { return SymOperator(-m_, Trusted{}); }

SymOperator SymOperator::operator*(double s) const { return SymOperator(s * m_, Trusted{}); }

RealSymOperator::RealSymOperator(const RealMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("RealSymOperator: matrix must be square");
  if (!m.allFinite()) throw std::invalid_argument("RealSymOperator: non-finite entry");
  const double scale = m.norm();
  if (m.size() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw std::invalid_argument("RealSymOperator: matrix is not symmetric");
  }
  m_ = 0.5 * (m + m.transpose());
}

RealVector RealSymOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double hs_inner(const SymOperator& t, const SymOperator& s) {
  require_same_dim(t.dim(), s.dim(), "hs_inner");
  // tr(T S*) = sum_ij T_ij conj(S_ij)
  return (t.matrix().array() * s.matrix().conjugate().array()).sum().real();
}

double hs_inner(const RealSymOperator& t, const RealSymOperator& s) {
  require_same_dim(t.dim(), s.dim(), "hs_inner");
  return (t.matrix().array() * s.matrix().array()).sum();
}

namespace {

double schatten_from_spectrum(const RealVector& eig, double p) {
  const RealVector a = eig.cwiseAbs();
  if (a.size() == 0) return 0.0;
  if (std::isinf(p)) return a.maxCoeff();
  if (p < 1.0) throw std::invalid_argument("schatten_norm: p must be >= 1");
  if (p == 1.0) return a.sum();
  if (p == 2.0) return a.norm();
  return std::pow(a.array().pow(p).sum(), 1.0 / p);
}

}  // namespace

double schatten_norm(const SymOperator& t, double p) {
  return schatten_from_spectrum(t.eigenvalues(), p);
}

double schatten_norm(const RealSymOperator& t, double p) {
  return schatten_from_spectrum(t.eigenvalues(), p);
}

double nuclear_norm(const SymOperator& t) { return schatten_norm(t, 1.0); }

SymOperator rank_one(const ComplexVector& x) { return SymOperator(x * x.adjoint()); }

SymOperator sym_outer(const ComplexVector& u, const ComplexVector& v) {
  require_same_dim(u.size(), v.size(), "sym_outer");
  const ComplexMatrix uv = u * v.adjoint();
  return SymOperator(0.5 * (uv + uv.adjoint()));
}

Signature signature(const SymOperator& t, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("signature: tol must be positive");
  const RealVector eig = t.eigenvalues();
  Signature s;
  s.tol = tol;
  for (Index i = 0; i < eig.size(); ++i) {
    if (eig[i] > tol) ++s.p;
    if (eig[i] < -tol) ++s.q;
  }
  return s;
}

S11Decomposition s11_spectral(const SymOperator& t, double rel_tol) {
  const Index n = t.dim();
  if (n == 0) throw std::invalid_argument("s11_spectral: empty operator");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(t.matrix());
  const RealVector& eig = es.eigenvalues();
  const double cut = rel_tol * spectral_scale(eig);

  S11Decomposition d;
  if (n == 1) {
    d.a_plus = std::max(eig[0], 0.0);
    d.a_minus = std::min(eig[0], 0.0);
    d.e1 = basis_vector(1, 0);
    d.e2 = d.e1;
    return d;
  }
  // At most one eigenvalue above cut and at most one below -cut.
  if (eig[n - 2] > cut || eig[1] < -cut) {
    throw std::domain_error("s11_spectral: operator is not in S^{1,1} at tolerance");
  }
  d.a_plus = std::max(eig[n - 1], 0.0);
  d.a_minus = std::min(eig[0], 0.0);
  d.e1 = es.eigenvectors().col(n - 1);
  d.e2 = es.eigenvectors().col(0);
  fix_phase(d.e1);
  fix_phase(d.e2);
  return d;
}

S11Decomposition s11_spectral(const ComplexVector& u, const ComplexVector& v) {
  require_same_dim(u.size(), v.size(), "s11_spectral");
  const Index n = u.size();
  if (n == 0) throw std::invalid_argument("s11_spectral: empty vectors");

  const double nu2 = u.squaredNorm();
  const double nv2 = v.squaredNorm();
  const Complex uv = inner(u, v);
  const double re = uv.real();
  // <iu, v>_R = -Im<u, v>
  const double disc = std::sqrt(std::max(0.0, nu2 * nv2 - uv.imag() * uv.imag()));

  S11Decomposition d;
  d.a_plus = std::max(0.5 * (re + disc), 0.0);
  d.a_minus = std::min(0.5 * (re - disc), 0.0);

  if (n == 1) {
    d.e1 = basis_vector(1, 0);
    d.e2 = d.e1;
    return d;
  }
  if (nu2 == 0.0 || nv2 == 0.0) {
    d.e1 = basis_vector(n, 0);
    d.e2 = basis_vector(n, 1);
    return d;
  }

  const ComplexVector q1 = u / std::sqrt(nu2);
  ComplexVector r = v - q1 * inner(v, q1);
  const double rnorm = r.norm();
  if (rnorm <= 1e-13 * std::sqrt(nv2)) {
    // v = c u: u o v = Re(c) u u*, the other direction is free.
    ComplexVector q = q1;
    fix_phase(q);
    const ComplexVector other = orthogonal_unit(q);
    if (re >= 0.0) {
      d.e1 = q;
      d.e2 = other;
    } else {
      d.e1 = other;
      d.e2 = q;
    }
    return d;
  }
  const ComplexVector q2 = r / rnorm;

  Eigen::Matrix<Complex, Eigen::Dynamic, 2> basis(n, 2);
  basis.col(0) = q1;
  basis.col(1) = q2;
  const Eigen::Vector2cd cu = basis.adjoint() * u;
  const Eigen::Vector2cd cv = basis.adjoint() * v;
  const Eigen::Matrix2cd uvt = cu * cv.adjoint();
  const Eigen::Matrix2cd m = 0.5 * (uvt + uvt.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m);
  d.e1 = basis * es.eigenvectors().col(1);
  d.e2 = basis * es.eigenvectors().col(0);
  fix_phase(d.e1);
  fix_phase(d.e2);
  return d;
}

S11Factors s11_factor(const S11Decomposition& d) {
  const double s1 = std::sqrt(d.a_plus);
  const double s2 = std::sqrt(-d.a_minus);
  return {s1 * d.e1 + s2 * d.e2, s1 * d.e1 - s2 * d.e2};
}

S11Factors s11_factor(const SymOperator& t, double rel_tol) {
  return s11_factor(s11_spectral(t, rel_tol));
}

RealSymOperator tau(const SymOperator& t) {
  const Index n = t.dim();
  const RealMatrix a = t.matrix().real();
  const RealMatrix b = t.matrix().imag();
  RealMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = a;
  out.topRightCorner(n, n) = -b;
  out.bottomLeftCorner(n, n) = b;
  out.bottomRightCorner(n, n) = a;
  return RealSymOperator(out);
}

Eigen::Matrix2cd u11_K() {
  Eigen::Matrix2cd k;
  k << 0.0, 1.0, 1.0, 0.0;
  return k;
}

Eigen::Matrix2cd u11k_element(const U11Params& params) {
  Eigen::Matrix2cd hyper;
  hyper << std::cosh(params.t), std::sinh(params.t), std::sinh(params.t), std::cosh(params.t);
  Eigen::Matrix2cd phases = Eigen::Matrix2cd::Zero();
  phases(0, 0) = std::polar(1.0, params.theta1);
  phases(1, 1) = std::polar(1.0, params.theta2);
  const Eigen::Matrix2cd b = phases * hyper;

  Eigen::Matrix2cd v;
  const double s = 1.0 / std::sqrt(2.0);
  v << s, s, -s, s;
  return v.adjoint() * b * v;
}

U11Params random_u11_params(Rng& rng, double max_hyperbolic_angle) {
  U11Params p;
  p.t = rng.uniform(-max_hyperbolic_angle, max_hyperbolic_angle);
  p.theta1 = rng.uniform(0.0, 2.0 * std::numbers::pi);
  p.theta2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return p;
}

Eigen::Matrix2cd sample_u11k(Rng& rng) { return u11k_element(random_u11_params(rng)); }

double nuclear_norm_pair(const ComplexVector& x, const ComplexVector& y) {
  require_same_dim(x.size(), y.size(), "nuclear_norm_pair");
  const double s = x.squaredNorm() + y.squaredNorm();
  const double c = std::norm(inner(x, y));
  return std::sqrt(std::max(0.0, s * s - 4.0 * c));
}

}  // namespace phaseless
