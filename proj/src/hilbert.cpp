#include "phaseless/hilbert.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace phaseless {

void require_finite(const ComplexVector& x, const char* what) {
  for (Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i].real()) || !std::isfinite(x[i].imag())) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

void require_finite(const RealVector& x, const char* what) {
  if (!x.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

RealifiedVector iota(const ComplexVector& x) {
  const Index n = x.size();
  RealifiedVector xi(2 * n);
  xi.head(n) = x.real();
  xi.tail(n) = x.imag();
  return xi;
}

ComplexVector iota_inv(const RealifiedVector& xi) {
  if (xi.size() % 2 != 0) throw std::invalid_argument("iota_inv: odd length");
  const Index n = xi.size() / 2;
  ComplexVector x(n);
  x.real() = xi.head(n);
  x.imag() = xi.tail(n);
  return x;
}

RealifiedVector apply_J(const RealifiedVector& xi) {
  if (xi.size() % 2 != 0) throw std::invalid_argument("apply_J: odd length");
  const Index n = xi.size() / 2;
  RealifiedVector out(2 * n);
  out.head(n) = -xi.tail(n);
  out.tail(n) = xi.head(n);
  return out;
}

RealMatrix J_matrix(Index n) {
  RealMatrix J = RealMatrix::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = -RealMatrix::Identity(n, n);
  J.bottomLeftCorner(n, n) = RealMatrix::Identity(n, n);
  return J;
}

Complex inner(const ComplexVector& x, const ComplexVector& y) {
  require_same_dim(x.size(), y.size(), "inner");
  // Eigen's dot conjugates its left operand.
  return y.dot(x);
}

double real_inner(const ComplexVector& x, const ComplexVector& y) {
  require_same_dim(x.size(), y.size(), "real_inner");
  return x.real().dot(y.real()) + x.imag().dot(y.imag());
}

double imag_inner(const ComplexVector& x, const ComplexVector& y) {
  require_same_dim(x.size(), y.size(), "imag_inner");
  return x.imag().dot(y.real()) - x.real().dot(y.imag());
}

void fix_phase(ComplexVector& v) {
  if (v.size() == 0) return;
  Index arg = 0;
  v.cwiseAbs2().maxCoeff(&arg);
  const double mag = std::abs(v[arg]);
  if (mag == 0.0) return;
  v *= std::conj(v[arg]) / mag;
  v[arg] = mag;
}

}  // namespace phaseless
