#pragma once

#include <optional>

#include "phaseless/frames.hpp"
#include "phaseless/symops.hpp"
#include "phaseless/types.hpp"

namespace phaseless {

/// I(zeta) = (4 / sigma^2) R(zeta), zeta = iota(x).
RealSymOperator fisher_matrix(const Frame& frame, const ComplexVector& x, double sigma);

/// Pi = 1 - J psi0 (J psi0)^T with psi0 = iota(z0).
RealMatrix phase_projector(const ComplexVector& z0);

/// Pi I(zeta) Pi. Requires <x, z0> real positive and |z0| = 1; the caller
/// aligns the phase.
RealSymOperator projected_fisher(const Frame& frame, const ComplexVector& x,
                                 const ComplexVector& z0, double sigma);

struct CrlbResult {
  RealSymOperator fisher{RealMatrix()};
  RealSymOperator crlb{RealMatrix()};
  double mse_lower = 0.0;
  /// (2n - 1) sigma^2 / (4 a0 |<x, z0>|^2), only when a0 was supplied.
  std::optional<double> mse_upper_efficient;
  int rank_used = 0;
  double tol = 0.0;
  /// Rank below 2n - 1: the frame is not injective at x.
  bool degenerate = false;
};

/// Pseudoinverse of the projected Fisher operator, cutting eigenvalues below
/// tol * lambda_max.
CrlbResult crlb_bound(const Frame& frame, const ComplexVector& x, const ComplexVector& z0,
                      double sigma, double tol = 1e-10,
                      std::optional<double> a0 = std::nullopt);

}  // namespace phaseless
