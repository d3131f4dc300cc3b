#include "phaseless/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "phaseless/hilbert.hpp"
#include "phaseless/measurement.hpp"

namespace phaseless {

RealMatrix phi_images(const Frame& frame, const RealifiedVector& xi) {
  require_same_dim(xi.size(), 2 * frame.n(), "phi_images");
  const RealVector a = frame.phi_columns().transpose() * xi;
  const RealVector b = frame.jphi_columns().transpose() * xi;
  return frame.phi_columns() * a.asDiagonal() + frame.jphi_columns() * b.asDiagonal();
}

namespace {

RealMatrix gram_of(const RealMatrix& v) {
  RealMatrix r = RealMatrix::Zero(v.rows(), v.rows());
  r.selfadjointView<Eigen::Lower>().rankUpdate(v);
  return r.selfadjointView<Eigen::Lower>();
}

struct Spectrum {
  RealVector values;  // ascending
  RealMatrix vectors;
};

Spectrum spectrum_of_R(const Frame& frame, const RealifiedVector& xi) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram_of(phi_images(frame, xi)));
  return {es.eigenvalues(), es.eigenvectors()};
}

RealifiedVector random_unit(Index dim, Rng& rng) {
  RealVector v = rng.normal_vector(dim);
  return v / v.norm();
}

}  // namespace

RealSymOperator R_matrix(const Frame& frame, const RealifiedVector& xi) {
  return RealSymOperator(gram_of(phi_images(frame, xi)));
}

RealifiedVector apply_R(const Frame& frame, const RealifiedVector& xi, const RealifiedVector& eta) {
  require_same_dim(eta.size(), 2 * frame.n(), "apply_R");
  const RealMatrix v = phi_images(frame, xi);
  return v * (v.transpose() * eta);
}

RealMatrix complement_projector(const RealifiedVector& v) {
  const double n2 = v.squaredNorm();
  if (!(n2 > 0.0)) throw std::invalid_argument("complement_projector: zero vector");
  return RealMatrix::Identity(v.size(), v.size()) - v * v.transpose() / n2;
}

double next_to_smallest_eigenvalue(const RealSymOperator& r) {
  if (r.dim() < 2) throw std::invalid_argument("next_to_smallest_eigenvalue: dimension < 2");
  return r.eigenvalues()(1);
}

RankTest injectivity_rank_test(const Frame& frame, const RealifiedVector& xi, double tol) {
  require_same_dim(xi.size(), 2 * frame.n(), "injectivity_rank_test");
  if (!(xi.norm() > 0.0)) throw std::invalid_argument("injectivity_rank_test: xi must be nonzero");
  const RealVector eig = R_matrix(frame, xi).eigenvalues();
  const double cut = tol * eig.maxCoeff();
  RankTest t;
  for (Index i = 0; i < eig.size(); ++i) {
    if (eig[i] > cut) ++t.rank;
  }
  t.pass = t.rank == 2 * frame.n() - 1;
  return t;
}

RealifiedVector descend_a0(const Frame& frame, RealifiedVector start, int iters, double& value) {
  RealifiedVector xi = start / start.norm();
  Spectrum s = spectrum_of_R(frame, xi);
  value = s.values(1);
  for (int it = 0; it < iters; ++it) {
    // eta minimizes <R(xi) eta, eta> over unit eta orthogonal to J xi;
    // <R(xi) eta, eta> = <R(eta) xi, xi>, so swapping roles never increases a_{2n-1}.
    const RealifiedVector eta = s.vectors.col(1);
    const Spectrum t = spectrum_of_R(frame, eta);
    RealifiedVector next = t.vectors.col(1);
    Spectrum s_next = spectrum_of_R(frame, next);
    const double v_next = s_next.values(1);
    if (!(v_next < value)) break;
    const double gain = value - v_next;
    xi = std::move(next);
    s = std::move(s_next);
    value = v_next;
    if (gain <= 1e-14 * std::max(value, std::numeric_limits<double>::min())) break;
  }
  return xi;
}

namespace {

// Alternating ascent of lambda_max(R(xi)); monotone by the same symmetry.
RealifiedVector ascend_b0(const Frame& frame, RealifiedVector xi, int iters, double& value) {
  Spectrum s = spectrum_of_R(frame, xi);
  const Index top = s.values.size() - 1;
  value = s.values(top);
  for (int it = 0; it < iters; ++it) {
    const RealifiedVector eta = s.vectors.col(top);
    const Spectrum t = spectrum_of_R(frame, eta);
    RealifiedVector next = t.vectors.col(top);
    Spectrum s_next = spectrum_of_R(frame, next);
    const double v_next = s_next.values(top);
    if (!(v_next > value)) break;
    const double gain = v_next - value;
    xi = std::move(next);
    s = std::move(s_next);
    value = v_next;
    if (gain <= 1e-14 * value) break;
  }
  return xi;
}

}  // namespace

StabilityReport estimate_a0_opt(const Frame& frame, const A0Options& options) {
  if (options.restarts < 1) throw std::invalid_argument("estimate_a0_opt: restarts must be >= 1");
  const Index dim = 2 * frame.n();
  if (dim < 2) throw std::invalid_argument("estimate_a0_opt: empty frame");

  StabilityReport rep;
  rep.restarts = options.restarts;
  rep.samples = std::max(options.samples, 0);

  double best_min = std::numeric_limits<double>::infinity();
  double best_max = -std::numeric_limits<double>::infinity();
  RealifiedVector best_sample_min, best_sample_max;
  double sample_min = std::numeric_limits<double>::infinity();
  double sample_max = -std::numeric_limits<double>::infinity();

  for (int s = 0; s < rep.samples; ++s) {
    Rng rng(derive_seed(options.seed, {2, static_cast<std::uint64_t>(s)}));
    const RealifiedVector xi = random_unit(dim, rng);
    const RealVector eig = spectrum_of_R(frame, xi).values;
    if (eig(1) < sample_min) {
      sample_min = eig(1);
      best_sample_min = xi;
    }
    if (eig(dim - 1) > sample_max) {
      sample_max = eig(dim - 1);
      best_sample_max = xi;
    }
  }

  double local_lo = std::numeric_limits<double>::infinity();
  double local_hi = -std::numeric_limits<double>::infinity();
  auto consider_min = [&](const RealifiedVector& start) {
    double v = 0.0;
    RealifiedVector xi = descend_a0(frame, start, options.iters, v);
    local_lo = std::min(local_lo, v);
    local_hi = std::max(local_hi, v);
    if (v < best_min) {
      best_min = v;
      rep.argmin_xi = std::move(xi);
    }
  };
  auto consider_max = [&](const RealifiedVector& start) {
    double v = 0.0;
    RealifiedVector xi = ascend_b0(frame, start, options.iters, v);
    if (v > best_max) {
      best_max = v;
      rep.argmax_xi = std::move(xi);
    }
  };

  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(derive_seed(options.seed, {1, static_cast<std::uint64_t>(r)}));
    const RealifiedVector start = random_unit(dim, rng);
    consider_min(start);
    consider_max(start);
  }
  rep.restart_spread = local_hi - local_lo;
  if (rep.samples > 0) {
    consider_min(best_sample_min);
    consider_max(best_sample_max);
  }

  // Report values recomputed at the reported points.
  rep.a0_opt = spectrum_of_R(frame, rep.argmin_xi).values(1);
  const Spectrum top = spectrum_of_R(frame, rep.argmax_xi);
  const double r_norm = top.values(dim - 1);
  rep.A0 = std::sqrt(std::max(rep.a0_opt, 0.0));
  rep.B0 = std::sqrt(r_norm);
  rep.rank_deficit_found = rep.a0_opt <= 1e-8 * r_norm;
  return rep;
}

StabilityReport estimate_a0_opt(const Frame& frame, int restarts, int iters, std::uint64_t seed) {
  A0Options o;
  o.restarts = restarts;
  o.iters = iters;
  o.seed = seed;
  return estimate_a0_opt(frame, o);
}

double lipschitz_ratio(const Frame& frame, const ComplexVector& x, const ComplexVector& y) {
  const double den = nuclear_norm_pair(x, y);
  if (!(den > 0.0)) throw std::invalid_argument("lipschitz_ratio: x and y are phase-equivalent");
  return (alpha(frame, x) - alpha(frame, y)).norm() / den;
}

SandwichResult lipschitz_sandwich_check(const Frame& frame, int trials, double A0, double B0,
                                        std::uint64_t seed, double rel_slack) {
  SandwichResult res;
  res.min_ratio = std::numeric_limits<double>::infinity();
  res.max_ratio = 0.0;
  Rng rng(seed);
  const Index n = frame.n();
  for (int t = 0; t < trials; ++t) {
    const ComplexVector x = rng.complex_normal_vector(n);
    const ComplexVector y = rng.complex_normal_vector(n);
    if (!(nuclear_norm_pair(x, y) > 1e-12 * (x.squaredNorm() + y.squaredNorm()))) continue;
    const double r = lipschitz_ratio(frame, x, y);
    ++res.pairs;
    if (r < res.min_ratio) {
      res.min_ratio = r;
      res.argmin_x = x;
      res.argmin_y = y;
    }
    res.max_ratio = std::max(res.max_ratio, r);
  }
  res.upper_ok = res.max_ratio <= B0 * (1.0 + rel_slack);
  res.lower_ok = res.min_ratio >= A0 * (1.0 - rel_slack);
  return res;
}

SymOperator sample_s21_unit(Index n, Rng& rng) {
  const Index k = std::min<Index>(n, 3);
  ComplexMatrix g(n, k);
  for (Index j = 0; j < k; ++j) g.col(j) = rng.complex_normal_vector(n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, k);

  RealVector w(k);
  for (Index j = 0; j < k; ++j) w[j] = -std::log(1.0 - rng.uniform());
  w /= w.sum();
  static constexpr double kSigns[3] = {1.0, 1.0, -1.0};
  RealVector signs(k);
  if (k == 3) signs << kSigns[0], kSigns[1], kSigns[2];
  else if (k == 2) signs << 1.0, -1.0;
  else signs << 1.0;

  ComplexMatrix wm = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < k; ++j) wm += signs[j] * w[j] * q.col(j) * q.col(j).adjoint();
  return SymOperator(wm);
}

double estimate_A3(const Frame& frame, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("estimate_A3: samples must be >= 1");
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, {3, static_cast<std::uint64_t>(s)}));
    const SymOperator w = sample_s21_unit(frame.n(), rng);
    best = std::min(best, calA(frame, w).squaredNorm());
  }
  return best;
}

void write_key_values(const StabilityReport& report, std::ostream& out, const std::string& prefix) {
  char buf[64];
  auto num = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << prefix << key << '=' << buf << '\n';
  };
  num("a0_opt", report.a0_opt);
  num("A0", report.A0);
  num("B0", report.B0);
  num("restart_spread", report.restart_spread);
  out << prefix << "restarts=" << report.restarts << '\n';
  out << prefix << "samples=" << report.samples << '\n';
  out << prefix << "rank_deficit_found=" << (report.rank_deficit_found ? "true" : "false") << '\n';
  out << prefix << "is_estimate=" << (report.is_estimate ? "true" : "false") << '\n';
}

}  // namespace phaseless
