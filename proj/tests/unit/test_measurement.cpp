#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "phaseless/frames.hpp"
#include "phaseless/measurement.hpp"
#include "phaseless/rng.hpp"

using namespace phaseless;

TEST_CASE("alpha basics") {
  const Frame f = random_gaussian_frame(4, 10, 1);
  CHECK(alpha(f, ComplexVector::Zero(4)).isZero());
  const Frame b = standard_basis_frame(3);
  ComplexVector e1 = ComplexVector::Zero(3);
  e1[0] = 1.0;
  RealVector want = RealVector::Zero(3);
  want[0] = 1.0;
  CHECK(alpha(b, e1) == want);
  CHECK_THROWS_AS(alpha(f, ComplexVector::Zero(3)), std::invalid_argument);
}

TEST_CASE("alpha against the oracle, phase invariance and calA consistency") {
  const Frame f = random_gaussian_frame(5, 20, 2);
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const ComplexVector x = rng.complex_normal_vector(5);
    const RealVector a = alpha(f, x);
    for (Index k = 0; k < f.m(); ++k) {
      CHECK(a[k] == doctest::Approx(std::norm(oracle::ip(x, f.vector(k)))).epsilon(1e-13));
      CHECK(a[k] >= 0.0);
    }
    const double phi = rng.uniform(0.0, 6.28);
    CHECK((alpha(f, std::polar(1.0, phi) * x) - a).norm() <= 1e-14 * a.norm() * 10);
    CHECK((calA(f, rank_one(x)) - a).norm() <= 1e-13 * a.norm());
  }
}

TEST_CASE("calA is linear and matches the trace form") {
  const Frame f = random_gaussian_frame(4, 11, 5);
  CHECK((calA(f, SymOperator::identity(4)) - RealVector::Ones(11)).norm() <= 1e-13);
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    ComplexMatrix g(4, 4), h(4, 4);
    for (Index j = 0; j < 4; ++j) {
      g.col(j) = rng.complex_normal_vector(4);
      h.col(j) = rng.complex_normal_vector(4);
    }
    const SymOperator T(g + g.adjoint()), S(h + h.adjoint());
    const double a = rng.normal(), b = rng.normal();
    const RealVector lhs = calA(f, a * T + b * S);
    const RealVector rhs = a * calA(f, T) + b * calA(f, S);
    CHECK((lhs - rhs).norm() <= 1e-12 * (1 + rhs.norm()));
    for (Index k = 0; k < f.m(); ++k) {
      const ComplexVector fk = f.vector(k);
      CHECK(calA(f, T)[k] == doctest::Approx((T.matrix() * fk * fk.adjoint()).trace().real()));
    }
    const ComplexVector u = rng.complex_normal_vector(4), v = rng.complex_normal_vector(4);
    const RealVector uv = calA(f, sym_outer(u, v));
    for (Index k = 0; k < f.m(); ++k) {
      const ComplexVector fk = f.vector(k);
      CHECK(uv[k] == doctest::Approx((oracle::ip(u, fk) * oracle::ip(fk, v)).real()).epsilon(1e-12));
    }
  }
}

TEST_CASE("noise") {
  const RealVector y = RealVector::LinSpaced(10, 0.0, 1.0);
  CHECK(add_noise(y, NoiseSpec{0.0, 1}) == y);
  CHECK(add_noise(y, NoiseSpec{0.3, 7}) == add_noise(y, NoiseSpec{0.3, 7}));
  CHECK_THROWS_AS(add_noise(y, NoiseSpec{-1.0, 1}), std::invalid_argument);
  const RealVector zero = RealVector::Zero(100000);
  const double sigma = 0.7;
  const RealVector n = add_noise(zero, NoiseSpec{sigma, 99});
  const double var = (n.array() - n.mean()).square().sum() / (n.size() - 1);
  CHECK(std::abs(var / (sigma * sigma) - 1.0) < 0.05);
  CHECK(n.minCoeff() < 0.0);
}

TEST_CASE("snr and sigma") {
  const Frame f = random_gaussian_frame(6, 30, 9);
  Rng rng(10);
  const ComplexVector x = rng.complex_normal_vector(6);
  const double p = alpha(f, x).squaredNorm() / 30.0;
  CHECK(sigma_for_snr(f, x, 10.0 * std::log10(p)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sigma_for_snr(f, x, 15.0) / sigma_for_snr(f, x, 5.0) == doctest::Approx(std::pow(10.0, -0.5)));
  for (double s : {-30.0, 0.0, 12.5, 40.0}) {
    CHECK(std::abs(snr_db_for_sigma(f, x, sigma_for_snr(f, x, s)) - s) <= 1e-12 * 40);
  }
  CHECK_THROWS_AS(sigma_for_snr(f, ComplexVector::Zero(6), 10.0), std::invalid_argument);
}
