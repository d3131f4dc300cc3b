#include "phaseless/irls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "phaseless/analysis.hpp"
#include "phaseless/hilbert.hpp"
#include "phaseless/measurement.hpp"
#include "phaseless/rng.hpp"

namespace phaseless {

StopMode parse_stop_mode(const std::string& s) {
  if (s == "lambda" || s == "lambda_floor") return StopMode::lambda_floor;
  if (s == "residual") return StopMode::residual;
  if (s == "either") return StopMode::either;
  throw std::invalid_argument("unknown stop mode: " + s);
}

std::string to_string(StopMode mode) {
  switch (mode) {
    case StopMode::lambda_floor: return "lambda";
    case StopMode::residual: return "residual";
    case StopMode::either: return "either";
  }
  return "?";
}

InitMode parse_init_mode(const std::string& s) {
  if (s == "eigen") return InitMode::eigen;
  if (s == "random") return InitMode::random;
  throw std::invalid_argument("unknown init mode: " + s);
}

std::string to_string(InitMode mode) { return mode == InitMode::eigen ? "eigen" : "random"; }

void IrlsConfig::validate() const {
  auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
  if (!(rho > 0.0 && rho <= 1.0)) fail("IrlsConfig: rho must lie in (0, 1]");
  if (rho == 1.0) fail("IrlsConfig: rho = 1 gives a zero initial vector");
  if (!(gamma > 0.0 && gamma < 1.0)) fail("IrlsConfig: gamma must lie in (0, 1)");
  if (!(lambda_min > 0.0) || !std::isfinite(lambda_min)) fail("IrlsConfig: lambda_min must be > 0");
  if (!(mu_min > 0.0) || !std::isfinite(mu_min)) fail("IrlsConfig: mu_min must be > 0");
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) fail("IrlsConfig: kappa must be >= 1");
  if (max_iters < 1) fail("IrlsConfig: max_iters must be >= 1");
  if (noise_sigma && !(*noise_sigma >= 0.0 && std::isfinite(*noise_sigma))) {
    fail("IrlsConfig: noise_sigma must be finite and >= 0");
  }
}

SymOperator build_Q(const Frame& frame, const MeasurementVector& y) {
  require_same_dim(y.size(), frame.m(), "build_Q");
  require_finite(RealVector(y), "build_Q");
  const ComplexMatrix& f = frame.vectors();
  return SymOperator(f * y.asDiagonal() * f.adjoint());
}

InitResult initialize(const Frame& frame, const MeasurementVector& y, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("initialize: rho must lie in (0, 1)");
  const SymOperator q = build_Q(frame, y);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(q.matrix());
  const Index n = frame.n();
  InitResult r;
  r.a1 = es.eigenvalues()(n - 1);
  r.multiplicity = 0;
  const double spread = std::max(std::abs(r.a1), es.eigenvalues().cwiseAbs().maxCoeff());
  for (Index i = 0; i < n; ++i) {
    if (r.a1 - es.eigenvalues()(i) <= 1e-10 * spread) ++r.multiplicity;
  }
  if (!(r.a1 > 0.0)) {
    r.zero_solution = true;
    r.x0 = ComplexVector::Zero(n);
    return r;
  }
  ComplexVector e1 = es.eigenvectors().col(n - 1);
  e1 /= e1.norm();
  fix_phase(e1);
  const double fourth = coefficients(frame, e1).cwiseAbs2().squaredNorm();
  const double beta0 = std::sqrt((1.0 - rho) * r.a1 / fourth);
  r.x0 = beta0 * e1;
  r.lambda0 = r.mu0 = rho * r.a1;
  return r;
}

RealifiedVector solve_subproblem(const Frame& frame, const MeasurementVector& y,
                                 const RealifiedVector& zeta, double lambda, double mu) {
  require_same_dim(y.size(), frame.m(), "solve_subproblem");
  const double shift = lambda + mu;
  if (!(shift > 0.0)) throw std::invalid_argument("solve_subproblem: lambda + mu must be positive");
  const RealMatrix v = phi_images(frame, zeta);
  const Index dim = v.rows();
  RealMatrix a = RealMatrix::Zero(dim, dim);
  a.selfadjointView<Eigen::Lower>().rankUpdate(v);
  a.diagonal().array() += shift;
  const RealVector rhs = v * y + mu * zeta;
  Eigen::LLT<RealMatrix, Eigen::Lower> llt(a);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("solve_subproblem: system is not positive definite");
  }
  return llt.solve(rhs);
}

namespace {

double lambda_at(const IrlsState& s, const IrlsConfig& cfg, int t) {
  return s.lambda0 * std::pow(cfg.gamma, t);
}

double mu_at(const IrlsState& s, const IrlsConfig& cfg, int t) {
  return std::max(s.mu0 * std::pow(cfg.gamma, t), cfg.mu_min);
}

// Smallest eigenvalue of u o v.
double min_eig_outer(const ComplexVector& u, const ComplexVector& v) {
  const Complex c = inner(u, v);
  const double d = u.squaredNorm() * v.squaredNorm() - c.imag() * c.imag();
  return 0.5 * (c.real() - std::sqrt(std::max(d, 0.0)));
}

// |u o v - x x*|_F^2 from inner products.
double frob_err_sq(const ComplexVector& u, const ComplexVector& v, const ComplexVector& x) {
  const Complex uv = inner(u, v);
  const double uv_sq = 0.5 * (u.squaredNorm() * v.squaredNorm() + (uv * uv).real());
  const double cross = (inner(u, x) * inner(x, v)).real();
  const double x4 = x.squaredNorm() * x.squaredNorm();
  return std::max(uv_sq - 2.0 * cross + x4, 0.0);
}

double aligned_err_sq(const ComplexVector& x_hat, const ComplexVector& x) {
  const double c = std::abs(inner(x_hat, x));
  return std::max(x_hat.squaredNorm() + x.squaredNorm() - 2.0 * c, 0.0);
}

// |y - A(u o v)|^2; <(u o v) f, f> = Re(<u, f> conj<v, f>).
double residual_outer(const Frame& frame, const MeasurementVector& y, const ComplexVector& u,
                      const ComplexVector& v) {
  const ComplexVector cu = coefficients(frame, u);
  const ComplexVector cv = coefficients(frame, v);
  const RealVector a = (cu.array() * cv.array().conjugate()).real();
  return (y - a).squaredNorm();
}

}  // namespace

IrlsState irls_step(const Frame& frame, const MeasurementVector& y, const IrlsState& state,
                    const IrlsConfig& cfg) {
  const RealifiedVector zeta = iota(state.x);
  const RealifiedVector next = solve_subproblem(frame, y, zeta, state.lambda, state.mu);
  const double nz = zeta.norm();
  const double nn = next.norm();
  IrlsState out = state;
  out.x_prev = state.x;
  if (nn > 0.0) {
    out.x = std::sqrt(nz / nn) * iota_inv(next);
  } else {
    out.x = ComplexVector::Zero(state.x.size());
  }
  out.iter = state.iter + 1;
  out.lambda = lambda_at(state, cfg, out.iter);
  out.mu = mu_at(state, cfg, out.iter);
  out.residual = (y - alpha(frame, out.x)).squaredNorm();
  out.min_eig_Xt = min_eig_outer(out.x_prev, out.x);
  return out;
}

IrlsResult solve(const Frame& frame, const MeasurementVector& y, const IrlsConfig& cfg,
                 const std::optional<ComplexVector>& truth) {
  cfg.validate();
  require_same_dim(y.size(), frame.m(), "solve");
  if (truth) require_same_dim(truth->size(), frame.n(), "solve");

  IrlsResult res;
  res.init = initialize(frame, y, cfg.rho);
  if (res.init.zero_solution) {
    res.status = SolveStatus::zero_solution;
    res.x_hat = ComplexVector::Zero(frame.n());
    res.final_state.x = res.x_hat;
    return res;
  }

  IrlsState s;
  if (cfg.init == InitMode::random) {
    Rng rng(cfg.init_seed);
    s.x = rng.complex_normal_vector(frame.n());
  } else {
    s.x = res.init.x0;
  }
  s.x_prev = s.x;
  s.lambda0 = s.lambda = res.init.lambda0;
  s.mu0 = res.init.mu0;
  s.mu = mu_at(s, cfg, 0);
  s.residual = (y - alpha(frame, s.x)).squaredNorm();

  const bool have_sigma = cfg.noise_sigma.has_value();
  const bool use_lambda = cfg.stop != StopMode::residual || !have_sigma;
  const bool use_residual = cfg.stop != StopMode::lambda_floor && have_sigma;
  const double residual_target =
      have_sigma ? cfg.kappa * static_cast<double>(frame.m()) * *cfg.noise_sigma * *cfg.noise_sigma
                 : 0.0;

  while (s.iter < cfg.max_iters) {
    const double used_lambda = s.lambda;
    const double used_mu = s.mu;
    s = irls_step(frame, y, s, cfg);

    IrlsTraceRecord rec;
    rec.iter = s.iter;
    rec.lambda = used_lambda;
    rec.mu = used_mu;
    rec.residual = s.residual;
    rec.residual_Xt = residual_outer(frame, y, s.x_prev, s.x);
    rec.min_eig_Xt = s.min_eig_Xt;
    if (truth) {
      rec.err_to_truth = aligned_err_sq(s.x, *truth);
      rec.frob_err_rank1 = frob_err_sq(s.x_prev, s.x, *truth);
    }
    res.trace.records.push_back(rec);

    if (use_lambda && s.lambda <= cfg.lambda_min) break;
    if (use_residual && s.residual <= residual_target) break;
  }
  res.iters = s.iter;
  res.x_hat = s.x;
  res.final_state = std::move(s);
  return res;
}

double eval_J(const Frame& frame, const MeasurementVector& y, const ComplexVector& u,
              const ComplexVector& v, double lambda, double mu) {
  require_same_dim(u.size(), frame.n(), "eval_J");
  require_same_dim(v.size(), frame.n(), "eval_J");
  return residual_outer(frame, y, u, v) + lambda * u.squaredNorm() + mu * (u - v).squaredNorm() +
         lambda * v.squaredNorm();
}

double eval_J0(const Frame& frame, const MeasurementVector& y, const SymOperator& X) {
  return (y - calA(frame, X)).squaredNorm();
}

J123 eval_J123(const Frame& frame, const MeasurementVector& y, const SymOperator& X, double lambda,
               double mu) {
  const double fit = eval_J0(frame, y, X);
  const RealVector eig = X.eigenvalues();
  const double nuc = eig.cwiseAbs().sum();
  const double amin = eig.minCoeff();
  const double amax = eig.maxCoeff();
  J123 j;
  j.j1 = fit + 2.0 * (lambda + mu) * nuc - 2.0 * mu * X.trace();
  j.j2 = fit + 2.0 * lambda * amax - (2.0 * lambda + 4.0 * mu) * amin;
  j.j3 = fit + 2.0 * lambda * nuc - 4.0 * mu * amin;
  return j;
}

RobustnessReport robustness_certificate(const Frame& frame, const MeasurementVector& y,
                                        const ComplexVector& u, const ComplexVector& v,
                                        const ComplexVector& x_true, double lambda, double mu,
                                        double A3_est) {
  if (!(A3_est > 0.0)) throw std::invalid_argument("robustness_certificate: A3 must be positive");
  RobustnessReport r;
  r.A3 = A3_est;
  const ComplexVector zero = ComplexVector::Zero(frame.n());
  const double j_uv = eval_J(frame, y, u, v, lambda, mu);
  r.applicable = j_uv <= eval_J(frame, y, x_true, x_true, lambda, mu);
  r.applicable_tight = r.applicable && j_uv <= eval_J(frame, y, zero, zero, lambda, mu);
  r.nu_norm = (y - alpha(frame, x_true)).norm();

  const S11Decomposition d = s11_spectral(u, v);
  r.a1 = d.a_plus;
  r.a2 = -d.a_minus;
  r.nuclear_err = nuclear_norm(sym_outer(u, v) - rank_one(x_true));

  const double la = lambda / A3_est;
  const double nu2 = r.nu_norm * r.nu_norm;
  r.bound_sqrt = 2.0 * la + 2.0 * std::sqrt(la * la + nu2 / A3_est);
  r.bound_linear = 4.0 * la + 2.0 * r.nu_norm / std::sqrt(A3_est);

  ComplexVector x_hat = std::sqrt(std::max(r.a1, 0.0)) * d.e1;
  const Complex c = inner(x_true, d.e1);
  if (std::abs(c) > 0.0) x_hat *= c / std::abs(c);
  r.l2_err_sq = (x_true - x_hat).squaredNorm();
  const double inf = std::numeric_limits<double>::infinity();
  r.l2_bound = mu > 0.0 ? r.bound_linear + nu2 / (4.0 * mu) + lambda * x_true.squaredNorm() / (2.0 * mu)
                        : inf;
  r.l2_bound_tight = mu > 0.0 ? r.bound_linear + nu2 / (4.0 * mu) : inf;

  r.nuclear_ok = r.nuclear_err <= r.bound_sqrt * (1.0 + 1e-12);
  r.l2_ok = r.l2_err_sq <= r.l2_bound * (1.0 + 1e-12) + 1e-15;
  r.l2_tight_ok = r.l2_err_sq <= r.l2_bound_tight * (1.0 + 1e-12) + 1e-15;
  return r;
}

}  // namespace phaseless
