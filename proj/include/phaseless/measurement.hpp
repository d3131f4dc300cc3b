#pragma once

#include <cstdint>

#include "phaseless/frames.hpp"
#include "phaseless/rng.hpp"
#include "phaseless/symops.hpp"
#include "phaseless/types.hpp"

namespace phaseless {

struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Frame coefficients <x, f_k>.
ComplexVector coefficients(const Frame& frame, const ComplexVector& x);

/// alpha(x)_k = |<x, f_k>|^2.
MeasurementVector alpha(const Frame& frame, const ComplexVector& x);

/// A(T)_k = <T f_k, f_k> = tr(T F_k).
MeasurementVector calA(const Frame& frame, const SymOperator& t);

/// y + nu with nu_k i.i.d. N(0, sigma^2). No clipping: entries may go negative.
MeasurementVector add_noise(const MeasurementVector& y, const NoiseSpec& spec);
MeasurementVector add_noise(const MeasurementVector& y, double sigma, Rng& rng);

/// sigma with sum_k |<x, f_k>|^4 / (m sigma^2) = 10^{snr_db / 10}.
double sigma_for_snr(const Frame& frame, const ComplexVector& x, double snr_db);

/// Inverse of sigma_for_snr.
double snr_db_for_sigma(const Frame& frame, const ComplexVector& x, double sigma);

}  // namespace phaseless
