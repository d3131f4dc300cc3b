#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "phaseless/frames.hpp"
#include "phaseless/rng.hpp"
#include "phaseless/symops.hpp"
#include "phaseless/types.hpp"

namespace phaseless {

/// 2n x m matrix whose columns are v_k = Phi_k xi.
RealMatrix phi_images(const Frame& frame, const RealifiedVector& xi);

/// R(xi) = sum_k v_k v_k^T with v_k = Phi_k xi.
RealSymOperator R_matrix(const Frame& frame, const RealifiedVector& xi);

/// R(xi) eta without forming R.
RealifiedVector apply_R(const Frame& frame, const RealifiedVector& xi, const RealifiedVector& eta);

/// 1 - v v^T / |v|^2.
RealMatrix complement_projector(const RealifiedVector& v);

/// Eigenvalues a_1 >= ... >= a_{2n}; returns a_{2n-1}.
double next_to_smallest_eigenvalue(const RealSymOperator& r);

struct RankTest {
  int rank = 0;
  bool pass = false;
};

/// rank = #eigenvalues of R(xi) above tol * lambda_max; passes iff rank = 2n - 1.
RankTest injectivity_rank_test(const Frame& frame, const RealifiedVector& xi, double tol = 1e-8);

struct A0Options {
  int restarts = 8;
  int iters = 100;
  /// Random sphere points used for the upper bound and as an extra start.
  int samples = 1000;
  std::uint64_t seed = 0;
};

/// Estimates of the bi-Lipschitz constants of x x* -> A(x x*).
///
/// a0_opt is the smallest a_{2n-1}(R(xi)) found over the unit sphere, so it
/// bounds the true optimum from above; B0 is likewise a lower bound. Neither
/// is certified.
struct StabilityReport {
  double a0_opt = 0.0;
  double A0 = 0.0;
  double B0 = 0.0;
  RealifiedVector argmin_xi;
  RealifiedVector argmax_xi;
  bool rank_deficit_found = false;
  int samples = 0;
  int restarts = 0;
  /// Max minus min of the per-restart local minima.
  double restart_spread = 0.0;
  bool is_estimate = true;
};

/// Multi-restart minimization of xi -> a_{2n-1}(R(xi)) over |xi| = 1 by
/// alternating eigenvector steps, plus sampling and alternating ascent for B0.
StabilityReport estimate_a0_opt(const Frame& frame, const A0Options& options);
StabilityReport estimate_a0_opt(const Frame& frame, int restarts, int iters, std::uint64_t seed);

/// One local descent of a_{2n-1}(R(xi)) from a given start.
/// Returns the final unit vector; `value` receives a_{2n-1} there.
RealifiedVector descend_a0(const Frame& frame, RealifiedVector start, int iters, double& value);

/// sqrt-free ratio |A(xx*) - A(yy*)| / |xx* - yy*|_1.
double lipschitz_ratio(const Frame& frame, const ComplexVector& x, const ComplexVector& y);

struct SandwichResult {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  ComplexVector argmin_x, argmin_y;
  int pairs = 0;
  bool upper_ok = false;
  bool lower_ok = false;
};

/// Samples random pairs and reports the extreme ratios against [A0, B0].
SandwichResult lipschitz_sandwich_check(const Frame& frame, int trials, double A0, double B0,
                                        std::uint64_t seed, double rel_slack = 1e-8);

/// Random W in S^{2,1} with |W|_1 = 1: orthonormal directions, random
/// eigenvalue split with signs (+, +, -). Uses min(n, 3) directions.
SymOperator sample_s21_unit(Index n, Rng& rng);

/// min over `samples` draws of |A(W)|^2; an upper estimate of A3.
/// Draw k uses its own stream derived from (seed, k), so runs are nested.
double estimate_A3(const Frame& frame, int samples, std::uint64_t seed);

/// key=value lines, one per field.
void write_key_values(const StabilityReport& report, std::ostream& out,
                      const std::string& prefix = "");

}  // namespace phaseless
