#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "phaseless/symops.hpp"
#include "phaseless/types.hpp"

namespace phaseless {

/// An ordered list of m >= n vectors spanning C^n.
///
/// Each realified measurement operator Phi_k = phi_k phi_k^T + J phi_k phi_k^T J^T,
/// phi_k = iota(f_k), is rank two. The frame caches the columns phi_k and
/// J phi_k; that factored form is all any consumer needs to apply Phi_k, and
/// phi(k) materializes the dense matrix on demand.
class Frame {
 public:
  /// Columns of `vectors` are the frame vectors f_1..f_m.
  /// Throws std::invalid_argument unless the columns span C^n.
  explicit Frame(ComplexMatrix vectors);

  Index n() const { return vectors_.rows(); }
  Index m() const { return vectors_.cols(); }

  const ComplexMatrix& vectors() const { return vectors_; }
  ComplexVector vector(Index k) const { return vectors_.col(k); }

  /// 2n x m matrix with columns phi_k = iota(f_k).
  const RealMatrix& phi_columns() const { return phi_; }
  /// 2n x m matrix with columns J phi_k.
  const RealMatrix& jphi_columns() const { return jphi_; }

  /// Dense Phi_k.
  RealSymOperator phi(Index k) const;
  /// Phi_k xi = <xi, phi_k> phi_k + <xi, J phi_k> J phi_k.
  RealifiedVector apply_phi(Index k, const RealifiedVector& xi) const;

  /// Smallest singular value of the synthesis matrix.
  double min_singular_value() const { return min_sv_; }

  Frame scaled(double c) const;

 private:
  ComplexMatrix vectors_;
  RealMatrix phi_;
  RealMatrix jphi_;
  double min_sv_ = 0.0;
};

/// Entries i.i.d. complex standard normal, columns scaled to unit norm.
Frame random_gaussian_frame(Index n, Index m, std::uint64_t seed);

/// Frame given by the standard basis of C^n (m = n), optionally repeated.
Frame standard_basis_frame(Index n, int copies = 1);

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Extreme eigenvalues of the frame operator sum_k f_k f_k*.
FrameBounds frame_bounds(const Frame& frame);

/// True iff every n-subset of frame vectors is linearly independent.
/// Throws std::length_error when C(m, n) exceeds `max_subsets`.
bool is_full_spark(const Frame& frame, double sv_tol = 1e-10, double max_subsets = 1e6);

/// CSV text: row k = Re f_k(1), Im f_k(1), ..., Re f_k(n), Im f_k(n).
void save_frame_csv(const Frame& frame, std::ostream& out);
Frame load_frame_csv(std::istream& in);
void save_frame_csv(const Frame& frame, const std::string& path);
Frame load_frame_csv(const std::string& path);

}  // namespace phaseless
