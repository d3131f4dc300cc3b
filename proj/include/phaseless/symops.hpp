#pragma once

// Self-adjoint operators on H and on its realification, the rank-<=2 algebra
// of symmetric outer products, and the U(1,1;K) group acting on factorizations.

#include <utility>

#include "phaseless/rng.hpp"
#include "phaseless/types.hpp"

namespace phaseless {

/// Hermitian n x n operator.
class SymOperator {
 public:
  /// Checks max|M - M*| <= tol * ||M|| and stores the symmetrized matrix.
  explicit SymOperator(const ComplexMatrix& m, double tol = 1e-12);

  static SymOperator zero(Index n);
  static SymOperator identity(Index n);

  const ComplexMatrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

  double trace() const { return m_.diagonal().real().sum(); }
  /// Eigenvalues in ascending order.
  RealVector eigenvalues() const;

  SymOperator operator+(const SymOperator& other) const;
  SymOperator operator-(const SymOperator& other) const;
  SymOperator operator-() const;
  SymOperator operator*(double s) const;

 private:
  struct Trusted {};
  SymOperator(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

inline SymOperator operator*(double s, const SymOperator& t) { return t * s; }

/// Real symmetric 2n x 2n operator on H_R.
class RealSymOperator {
 public:
  explicit RealSymOperator(const RealMatrix& m, double tol = 1e-12);

  const RealMatrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }
  double trace() const { return m_.trace(); }
  RealVector eigenvalues() const;

 private:
  RealMatrix m_;
};

/// Hilbert-Schmidt inner product tr(T S*) for Hermitian operators (real).
double hs_inner(const SymOperator& t, const SymOperator& s);
double hs_inner(const RealSymOperator& t, const RealSymOperator& s);

/// Schatten p-norm from the spectrum; p = infinity gives the operator norm.
double schatten_norm(const SymOperator& t, double p);
double schatten_norm(const RealSymOperator& t, double p);
double nuclear_norm(const SymOperator& t);

/// x x*.
SymOperator rank_one(const ComplexVector& x);

/// u o v = (u v* + v u*) / 2.
SymOperator sym_outer(const ComplexVector& u, const ComplexVector& v);

struct Signature {
  int p = 0;
  int q = 0;
  double tol = 0.0;
};

/// Counts eigenvalues above tol and below -tol.
Signature signature(const SymOperator& t, double tol);

/// Spectral data of an operator in S^{1,1}: T = a_plus e1 e1* + a_minus e2 e2*.
///
/// For n = 1 there is a single direction: e1 = e2 = (1) and at most one of
/// a_plus, a_minus is nonzero.
struct S11Decomposition {
  double a_plus = 0.0;
  double a_minus = 0.0;
  ComplexVector e1;
  ComplexVector e2;
};

/// Dense route: Hermitian eigensolver, rejecting T whose third-largest
/// |eigenvalue| exceeds rel_tol * ||T||.
S11Decomposition s11_spectral(const SymOperator& t, double rel_tol = 1e-10);

/// Factored route for T = u o v: closed-form eigenvalues and a 2 x 2
/// eigenproblem on span{u, v}. O(n).
S11Decomposition s11_spectral(const ComplexVector& u, const ComplexVector& v);

struct S11Factors {
  ComplexVector u0;
  ComplexVector v0;
};

/// u0 = sqrt(a1) e1 + sqrt(a2) e2, v0 = sqrt(a1) e1 - sqrt(a2) e2 with
/// a1 = a_plus, a2 = -a_minus; then u0 o v0 = T.
S11Factors s11_factor(const S11Decomposition& d);
S11Factors s11_factor(const SymOperator& t, double rel_tol = 1e-10);

/// tau(T) = iota o T o iota^{-1} as a real 2n x 2n matrix [[A, -B], [B, A]]
/// for T = A + iB.
RealSymOperator tau(const SymOperator& t);

/// B = diag(e^{i theta1}, e^{i theta2}) [[cosh t, sinh t], [sinh t, cosh t]]
/// lies in U(1,1); the returned element of U(1,1;K) is V* B V.
struct U11Params {
  double t = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
};

Eigen::Matrix2cd u11k_element(const U11Params& params);
U11Params random_u11_params(Rng& rng, double max_hyperbolic_angle = 2.0);
Eigen::Matrix2cd sample_u11k(Rng& rng);

/// The K of U(1,1;K) = {A : A* K A = K}.
Eigen::Matrix2cd u11_K();

/// ||x x* - y y*||_1 = sqrt((|x|^2 + |y|^2)^2 - 4 |<x, y>|^2), matrix-free.
double nuclear_norm_pair(const ComplexVector& x, const ComplexVector& y);

}  // namespace phaseless
