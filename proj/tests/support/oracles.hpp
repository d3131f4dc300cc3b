#pragma once
// Reference computations used only by tests. Everything here is written from
// the definitions with dense matrices and explicit loops, independently of the
// library's factored code paths.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline RVec realify(const CVec& x) {
  const auto n = x.size();
  RVec r(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    r[j] = x[j].real();
    r[n + j] = x[j].imag();
  }
  return r;
}

inline CVec complexify(const RVec& r) {
  const auto n = r.size() / 2;
  CVec x(n);
  for (Eigen::Index j = 0; j < n; ++j) x[j] = cd(r[j], r[n + j]);
  return x;
}

// Multiplication by i, realified.
inline RMat J(Eigen::Index n) {
  RMat j = RMat::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    j(k, n + k) = -1.0;
    j(n + k, k) = 1.0;
  }
  return j;
}

// <x, y> linear in x.
inline cd ip(const CVec& x, const CVec& y) {
  cd s = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) s += x[j] * std::conj(y[j]);
  return s;
}

// tau(T) through its action: column k is realify(T complexify(e_k)).
inline RMat tau(const CMat& t) {
  const auto n = t.rows();
  RMat r(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < 2 * n; ++k) {
    RVec e = RVec::Zero(2 * n);
    e[k] = 1.0;
    r.col(k) = realify(t * complexify(e));
  }
  return r;
}

// Dense Phi_k = tau(f_k f_k^*).
inline std::vector<RMat> phis(const CMat& f) {
  std::vector<RMat> out;
  for (Eigen::Index k = 0; k < f.cols(); ++k) {
    const CVec fk = f.col(k);
    out.push_back(tau(fk * fk.adjoint()));
  }
  return out;
}

inline RMat R(const CMat& f, const RVec& xi) {
  RMat r = RMat::Zero(xi.size(), xi.size());
  for (const RMat& p : phis(f)) {
    const RVec v = p * xi;
    r += v * v.transpose();
  }
  return r;
}

inline RVec eig_real(const RMat& m) {
  Eigen::SelfAdjointEigenSolver<RMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline RVec eig_herm(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Sum of singular values via SVD.
inline double nuclear(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues().sum();
}

inline double schatten(const CMat& m, double p) {
  Eigen::JacobiSVD<CMat> svd(m);
  const RVec s = svd.singularValues();
  if (std::isinf(p)) return s.maxCoeff();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s[i], p);
  return std::pow(acc, 1.0 / p);
}

inline double schatten(const RMat& m, double p) {
  Eigen::JacobiSVD<RMat> svd(m);
  const RVec s = svd.singularValues();
  if (std::isinf(p)) return s.maxCoeff();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s[i], p);
  return std::pow(acc, 1.0 / p);
}

inline CMat outer_sym(const CVec& u, const CVec& v) {
  return 0.5 * (u * v.adjoint() + v * u.adjoint());
}

// J(u, v, lambda, mu) by explicit loops over the frame.
inline double J_uv(const CMat& f, const RVec& y, const CVec& u, const CVec& v, double lambda,
                   double mu) {
  double fit = 0.0;
  for (Eigen::Index k = 0; k < f.cols(); ++k) {
    const CVec fk = f.col(k);
    const cd a = ip(u, fk) * ip(fk, v);
    const cd b = ip(v, fk) * ip(fk, u);
    const double r = y[k] - 0.5 * (a + b).real();
    fit += r * r;
  }
  return fit + lambda * u.squaredNorm() + mu * (u - v).squaredNorm() + lambda * v.squaredNorm();
}

// |y - A(X)|^2 with A(X)_k = <X f_k, f_k>.
inline double J0(const CMat& f, const RVec& y, const CMat& x) {
  double fit = 0.0;
  for (Eigen::Index k = 0; k < f.cols(); ++k) {
    const CVec fk = f.col(k);
    const double r = y[k] - ip(x * fk, fk).real();
    fit += r * r;
  }
  return fit;
}

// Central-difference gradient.
template <class F>
RVec fd_gradient(F&& fn, const RVec& at, double h) {
  RVec g(at.size());
  for (Eigen::Index i = 0; i < at.size(); ++i) {
    RVec p = at, m = at;
    p[i] += h;
    m[i] -= h;
    g[i] = (fn(p) - fn(m)) / (2.0 * h);
  }
  return g;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace oracle
