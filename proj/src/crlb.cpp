#include "phaseless/crlb.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "phaseless/analysis.hpp"
#include "phaseless/hilbert.hpp"

namespace phaseless {

namespace {

void require_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("crlb: sigma must be positive and finite");
  }
}

}  // namespace

RealSymOperator fisher_matrix(const Frame& frame, const ComplexVector& x, double sigma) {
  require_sigma(sigma);
  require_same_dim(x.size(), frame.n(), "fisher_matrix");
  require_finite(x, "fisher_matrix");
  if (!(x.norm() > 0.0)) throw std::invalid_argument("fisher_matrix: x must be nonzero");
  return RealSymOperator(R_matrix(frame, iota(x)).matrix() * (4.0 / (sigma * sigma)));
}

RealMatrix phase_projector(const ComplexVector& z0) {
  const RealifiedVector jpsi = apply_J(iota(z0));
  return RealMatrix::Identity(jpsi.size(), jpsi.size()) - jpsi * jpsi.transpose();
}

RealSymOperator projected_fisher(const Frame& frame, const ComplexVector& x,
                                 const ComplexVector& z0, double sigma) {
  require_same_dim(z0.size(), frame.n(), "projected_fisher");
  require_finite(z0, "projected_fisher");
  if (std::abs(z0.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("projected_fisher: z0 must be a unit vector");
  }
  const Complex c = inner(x, z0);
  if (std::abs(c.imag()) > 1e-10 * x.norm()) {
    throw std::invalid_argument("projected_fisher: <x, z0> is not real; align the phase first");
  }
  if (!(c.real() > 0.0)) throw std::invalid_argument("projected_fisher: <x, z0> must be positive");
  const RealMatrix pi = phase_projector(z0);
  const RealMatrix fisher = fisher_matrix(frame, x, sigma).matrix();
  return RealSymOperator(pi * fisher * pi);
}

CrlbResult crlb_bound(const Frame& frame, const ComplexVector& x, const ComplexVector& z0,
                      double sigma, double tol, std::optional<double> a0) {
  if (!(tol > 0.0)) throw std::invalid_argument("crlb_bound: tol must be positive");
  CrlbResult res;
  res.fisher = projected_fisher(frame, x, z0, sigma);
  res.tol = tol;

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(res.fisher.matrix());
  const RealVector& eig = es.eigenvalues();
  const RealMatrix& vec = es.eigenvectors();
  const double cut = tol * eig.maxCoeff();
  const Index dim = eig.size();
  RealMatrix pinv = RealMatrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    if (eig[i] > cut) {
      pinv.noalias() += vec.col(i) * vec.col(i).transpose() / eig[i];
      ++res.rank_used;
    }
  }
  res.crlb = RealSymOperator(pinv, 1e-8);
  res.mse_lower = res.crlb.trace();
  res.degenerate = res.rank_used < dim - 1;
  if (a0) {
    const double c = inner(x, z0).real();
    res.mse_upper_efficient = static_cast<double>(dim - 1) * sigma * sigma / (4.0 * *a0 * c * c);
  }
  return res;
}

}  // namespace phaseless
