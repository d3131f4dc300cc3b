#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "phaseless/analysis.hpp"
#include "phaseless/hilbert.hpp"
#include "phaseless/measurement.hpp"
#include "phaseless/rng.hpp"

using namespace phaseless;
using cd = std::complex<double>;

TEST_CASE("R matrix against the dense oracle") {
  const Frame f = random_gaussian_frame(3, 10, 1);
  Rng rng(2);
  CHECK(R_matrix(f, RealVector::Zero(6)).matrix().isZero());
  for (int t = 0; t < 30; ++t) {
    const RealVector xi = rng.normal_vector(6), eta = rng.normal_vector(6);
    const RealMatrix dense = oracle::R(f.vectors(), xi);
    const RealMatrix r = R_matrix(f, xi).matrix();
    CHECK((r - dense).norm() <= 1e-12 * dense.norm());
    CHECK((apply_R(f, xi, eta) - dense * eta).norm() <= 1e-12 * dense.norm() * eta.norm());
    CHECK((r * apply_J(xi)).norm() <= 1e-10 * r.norm() * xi.norm());
    CHECK((R_matrix(f, 2.0 * xi).matrix() - 4.0 * r).norm() <= 1e-12 * 4.0 * r.norm());
    CHECK(oracle::eig_real(r)[0] >= -1e-12 * r.norm());
  }
  CHECK_THROWS_AS(R_matrix(f, RealVector::Zero(4)), std::invalid_argument);
}

TEST_CASE("quadratic form of R equals the squared measurements of u o v") {
  const Frame f = random_gaussian_frame(4, 16, 3);
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const ComplexVector u = rng.complex_normal_vector(4), v = rng.complex_normal_vector(4);
    const RealVector xi = iota(u), eta = iota(v);
    double lhs = 0.0;
    for (Index k = 0; k < f.m(); ++k) {
      const ComplexVector fk = f.vector(k);
      const double c = (oracle::outer_sym(u, v) * fk * fk.adjoint()).trace().real();
      lhs += c * c;
    }
    const double rhs = eta.dot(apply_R(f, xi, eta));
    CHECK(oracle::rel_err(lhs, rhs) <= 1e-10);
    const double nuc = oracle::nuclear(oracle::outer_sym(u, v));
    const double im = imag_inner(u, v);
    CHECK(oracle::rel_err(nuc * nuc, u.squaredNorm() * v.squaredNorm() - im * im) <= 1e-10);
  }
}

TEST_CASE("complement projector") {
  Rng rng(5);
  const RealVector xi = rng.normal_vector(6).normalized();
  const RealVector jxi = apply_J(xi);
  const RealMatrix p = complement_projector(jxi);
  CHECK((p * jxi).norm() <= 1e-14 * 10);
  CHECK((p * xi - xi).norm() <= 1e-14 * 10);
  CHECK((p * p - p).norm() <= 1e-13);
  CHECK_THROWS(complement_projector(RealVector::Zero(3)));
}

TEST_CASE("rank test") {
  ComplexMatrix v(1, 2);
  v << 1.0, cd(1, 1) / std::sqrt(2.0);
  const Frame f(v);
  RealVector xi(2);
  xi << 1, 0;
  // Both images are (1, 0): R = diag(2, 0).
  const RealMatrix want = (RealMatrix(2, 2) << 2, 0, 0, 0).finished();
  CHECK((R_matrix(f, xi).matrix() - want).norm() <= 1e-14 * 10);
  RankTest r = injectivity_rank_test(f, xi);
  CHECK(r.rank == 1);
  CHECK(r.pass);

  Rng rng(6);
  for (Index n : {2, 3, 4}) {
    const Frame basis = standard_basis_frame(n);
    const RealVector g = rng.normal_vector(2 * n);
    const RankTest b = injectivity_rank_test(basis, g);
    CHECK_FALSE(b.pass);
    CHECK(b.rank <= n);
    const Frame gauss = random_gaussian_frame(n, 8 * n, 100 + n);
    const RankTest t = injectivity_rank_test(gauss, g);
    CHECK(t.pass);
    CHECK(t.rank == 2 * n - 1);
  }
  CHECK_THROWS(injectivity_rank_test(f, RealVector::Zero(2)));
}

TEST_CASE("a0 estimate on the one-dimensional frame") {
  const Frame f = standard_basis_frame(1);
  const StabilityReport r = estimate_a0_opt(f, 3, 10, 1);
  CHECK(r.a0_opt == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.A0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.B0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.is_estimate);
}

TEST_CASE("a0 estimate: consistency, scaling, ordering") {
  const Frame f = random_gaussian_frame(3, 12, 7);
  A0Options o;
  o.restarts = 6;
  o.iters = 200;
  o.samples = 200;
  o.seed = 11;
  const StabilityReport r = estimate_a0_opt(f, o);
  CHECK(std::abs(next_to_smallest_eigenvalue(R_matrix(f, r.argmin_xi)) - r.a0_opt) <= 1e-10 * r.a0_opt);
  CHECK(r.argmin_xi.norm() == doctest::Approx(1.0));
  CHECK(r.A0 * r.A0 == doctest::Approx(r.a0_opt));
  CHECK(0.0 <= r.A0);
  CHECK(r.A0 <= r.B0);
  CHECK_FALSE(r.rank_deficit_found);
  CHECK(r.restarts == 6);
  CHECK(r.samples == 200);

  const double c = 1.7;
  const StabilityReport s = estimate_a0_opt(f.scaled(c), o);
  CHECK(oracle::rel_err(s.a0_opt / std::pow(c, 4), r.a0_opt) <= 1e-6);

  // Nothing sampled beats the descent.
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    const RealVector xi = rng.normal_vector(6).normalized();
    const RealVector eig = oracle::eig_real(oracle::R(f.vectors(), xi));
    CHECK(eig[1] >= r.a0_opt * (1 - 1e-9));
    CHECK(eig[5] <= r.B0 * r.B0 * (1 + 1e-9));
  }

  std::ostringstream kv;
  write_key_values(r, kv, "x.");
  CHECK(kv.str().find("x.a0_opt=") != std::string::npos);
  CHECK(kv.str().find("x.is_estimate=true") != std::string::npos);
  CHECK_THROWS(estimate_a0_opt(f, 0, 10, 1));
}

TEST_CASE("a0 estimate detects a non-injective frame") {
  const StabilityReport r = estimate_a0_opt(standard_basis_frame(2, 2), 4, 50, 3);
  CHECK(r.rank_deficit_found);
}

TEST_CASE("lipschitz ratios") {
  const Frame f = random_gaussian_frame(2, 6, 13);
  CHECK(is_full_spark(f));
  Rng rng(14);
  const ComplexVector x = rng.complex_normal_vector(2);
  CHECK_THROWS(lipschitz_ratio(f, x, std::polar(1.0, 1.1) * x));
  const ComplexVector y = rng.complex_normal_vector(2);
  CHECK(oracle::rel_err(lipschitz_ratio(f, 3.0 * x, 3.0 * y), lipschitz_ratio(f, x, y)) <= 1e-12);
  const StabilityReport r = estimate_a0_opt(f, 8, 100, 15);
  const SandwichResult s = lipschitz_sandwich_check(f, 10000, r.A0, r.B0, 16);
  CHECK(s.pairs == 10000);
  CHECK(s.min_ratio > 0.0);
  CHECK(s.upper_ok);
  CHECK(s.max_ratio <= r.B0 * (1 + 1e-8));
}

TEST_CASE("S(2,1) samples and the A3 estimate") {
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    const SymOperator w = sample_s21_unit(5, rng);
    const oracle::RVec eig = oracle::eig_herm(w.matrix());
    CHECK(std::abs(eig.cwiseAbs().sum() - 1.0) <= 1e-12);
    const Signature s = signature(w, 1e-12);
    CHECK(s.p <= 2);
    CHECK(s.q <= 1);
  }
  CHECK(std::abs(nuclear_norm(sample_s21_unit(1, rng)) - 1.0) <= 1e-12);
  CHECK(std::abs(nuclear_norm(sample_s21_unit(2, rng)) - 1.0) <= 1e-12);

  const Frame f = random_gaussian_frame(3, 18, 19);
  double prev = estimate_A3(f, 1, 20);
  CHECK(prev >= 0.0);
  for (int k : {2, 5, 20, 100, 400}) {
    const double a = estimate_A3(f, k, 20);
    CHECK(a >= 0.0);
    CHECK(a <= prev);
    prev = a;
  }
  CHECK_THROWS(estimate_A3(f, 0, 1));
}
