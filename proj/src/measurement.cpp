#include "phaseless/measurement.hpp"

#include <cmath>
#include <stdexcept>

#include "phaseless/hilbert.hpp"

namespace phaseless {

ComplexVector coefficients(const Frame& frame, const ComplexVector& x) {
  require_same_dim(x.size(), frame.n(), "coefficients");
  return frame.vectors().adjoint() * x;
}

MeasurementVector alpha(const Frame& frame, const ComplexVector& x) {
  return coefficients(frame, x).cwiseAbs2();
}

MeasurementVector calA(const Frame& frame, const SymOperator& t) {
  require_same_dim(t.dim(), frame.n(), "calA");
  const ComplexMatrix tf = t.matrix() * frame.vectors();
  // <T f_k, f_k> = f_k^H (T f_k)
  return (frame.vectors().conjugate().array() * tf.array()).colwise().sum().real().transpose();
}

MeasurementVector add_noise(const MeasurementVector& y, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("add_noise: sigma must be >= 0");
  MeasurementVector out = y;
  if (sigma == 0.0) return out;
  for (Index k = 0; k < out.size(); ++k) out[k] += sigma * rng.normal();
  return out;
}

MeasurementVector add_noise(const MeasurementVector& y, const NoiseSpec& spec) {
  Rng rng(spec.seed);
  return add_noise(y, spec.sigma, rng);
}

namespace {

double fourth_moment(const Frame& frame, const ComplexVector& x) {
  const double s = alpha(frame, x).squaredNorm();
  if (!(s > 0.0)) throw std::invalid_argument("signal must be nonzero");
  return s;
}

}  // namespace

double sigma_for_snr(const Frame& frame, const ComplexVector& x, double snr_db) {
  const double power = fourth_moment(frame, x);
  const double snr = std::pow(10.0, snr_db / 10.0);
  return std::sqrt(power / (static_cast<double>(frame.m()) * snr));
}

double snr_db_for_sigma(const Frame& frame, const ComplexVector& x, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("snr_db_for_sigma: sigma must be positive");
  const double power = fourth_moment(frame, x);
  return 10.0 * std::log10(power / (static_cast<double>(frame.m()) * sigma * sigma));
}

}  // namespace phaseless
