#include "phaseless/rng.hpp"

#include <cmath>

namespace phaseless {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t p : path) {
    h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  }
  return h;
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

ComplexVector Rng::complex_normal_vector(Index n) {
  ComplexVector out(n);
  for (Index i = 0; i < n; ++i) out[i] = complex_normal();
  return out;
}

RealVector Rng::normal_vector(Index n) {
  RealVector out(n);
  for (Index i = 0; i < n; ++i) out[i] = normal();
  return out;
}

}  // namespace phaseless
