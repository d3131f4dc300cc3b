#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phaseless/frames.hpp"
#include "phaseless/symops.hpp"
#include "phaseless/types.hpp"

namespace phaseless {

enum class StopMode { lambda_floor, residual, either };
enum class InitMode { eigen, random };

StopMode parse_stop_mode(const std::string& s);
std::string to_string(StopMode mode);
InitMode parse_init_mode(const std::string& s);
std::string to_string(InitMode mode);

struct IrlsConfig {
  /// lambda0 = mu0 = rho * a1.
  double rho = 0.5;
  double gamma = 0.8;
  double lambda_min = 0.01;
  double mu_min = 1.0;
  double kappa = 3.0;
  int max_iters = 500;
  StopMode stop = StopMode::either;
  /// Noise level for the residual stop; without it only the lambda floor applies.
  std::optional<double> noise_sigma;
  InitMode init = InitMode::eigen;
  /// Stream for the random start, x0 ~ complex N(0, I).
  std::uint64_t init_seed = 0;

  /// Throws std::invalid_argument on out-of-range fields (rho = 1 included).
  void validate() const;
};

struct IrlsState {
  ComplexVector x;
  ComplexVector x_prev;
  double lambda0 = 0.0;
  double mu0 = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  int iter = 0;
  /// |y - alpha(x)|^2.
  double residual = 0.0;
  /// Smallest eigenvalue of x_prev o x.
  double min_eig_Xt = 0.0;
};

struct IrlsTraceRecord {
  int iter = 0;
  /// Regularization used to produce this iterate.
  double lambda = 0.0;
  double mu = 0.0;
  /// |y - alpha(x_t)|^2.
  double residual = 0.0;
  /// |y - A(X_t)|^2 with X_t = x_{t-1} o x_t.
  double residual_Xt = 0.0;
  double min_eig_Xt = 0.0;
  /// Aligned |x_t - x|^2.
  std::optional<double> err_to_truth;
  /// |X_t - x x*|_F^2.
  std::optional<double> frob_err_rank1;
};

struct IrlsTrace {
  std::vector<IrlsTraceRecord> records;
};

/// Q = sum_k y_k f_k f_k*.
SymOperator build_Q(const Frame& frame, const MeasurementVector& y);

struct InitResult {
  ComplexVector x0;
  double lambda0 = 0.0;
  double mu0 = 0.0;
  double a1 = 0.0;
  /// Eigenvalues of Q within 1e-10 relative of a1.
  int multiplicity = 1;
  /// a1 <= 0: the least-squares optimum is x = 0.
  bool zero_solution = false;
};

/// Top eigenpair of Q with the phase fixed (largest entry real positive),
/// x0 = beta0 e1.
InitResult initialize(const Frame& frame, const MeasurementVector& y, double rho);

/// One regularized least-squares step, rescale, then anneal.
IrlsState irls_step(const Frame& frame, const MeasurementVector& y, const IrlsState& state,
                    const IrlsConfig& cfg);

/// The pre-rescale minimizer of u -> J(u, x, lambda, mu) in realified form.
RealifiedVector solve_subproblem(const Frame& frame, const MeasurementVector& y,
                                 const RealifiedVector& zeta, double lambda, double mu);

enum class SolveStatus { ok, zero_solution };

struct IrlsResult {
  ComplexVector x_hat;
  IrlsTrace trace;
  SolveStatus status = SolveStatus::ok;
  int iters = 0;
  IrlsState final_state;
  InitResult init;
};

/// Runs initialize then irls_step until the stopping rule or max_iters.
IrlsResult solve(const Frame& frame, const MeasurementVector& y, const IrlsConfig& cfg,
                 const std::optional<ComplexVector>& truth = std::nullopt);

/// J(u, v, lambda, mu).
double eval_J(const Frame& frame, const MeasurementVector& y, const ComplexVector& u,
              const ComplexVector& v, double lambda, double mu);

/// J0(X) = |y - A(X)|^2.
double eval_J0(const Frame& frame, const MeasurementVector& y, const SymOperator& X);

struct J123 {
  double j1 = 0.0;
  double j2 = 0.0;
  double j3 = 0.0;
};

J123 eval_J123(const Frame& frame, const MeasurementVector& y, const SymOperator& X, double lambda,
               double mu);

struct RobustnessReport {
  /// J(u, v) <= J(x, x).
  bool applicable = false;
  /// J(u, v) <= J(0, 0), needed for the tighter l2 bound.
  bool applicable_tight = false;
  double nu_norm = 0.0;
  double A3 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double nuclear_err = 0.0;
  double bound_sqrt = 0.0;
  double bound_linear = 0.0;
  double l2_err_sq = 0.0;
  double l2_bound = 0.0;
  double l2_bound_tight = 0.0;
  bool nuclear_ok = false;
  bool l2_ok = false;
  bool l2_tight_ok = false;
};

/// Evaluates both sides of the robustness bounds. A violated bound means the
/// A3 estimate is too large.
RobustnessReport robustness_certificate(const Frame& frame, const MeasurementVector& y,
                                        const ComplexVector& u, const ComplexVector& v,
                                        const ComplexVector& x_true, double lambda, double mu,
                                        double A3_est);

}  // namespace phaseless
