#pragma once

// Realification calculus for H = C^n with entrywise conjugation.
//
// iota maps x to (Re x | Im x) in R^{2n}; J is the real matrix [[0, -I], [I, 0]],
// the image of multiplication by i. The complex inner product <x, y> is linear
// in x and antilinear in y.

#include "phaseless/types.hpp"

namespace phaseless {

/// Throws std::invalid_argument if any entry is NaN or infinite.
void require_finite(const ComplexVector& x, const char* what);
void require_finite(const RealVector& x, const char* what);

/// Throws std::invalid_argument if the two sizes differ.
void require_same_dim(Index a, Index b, const char* what);

RealifiedVector iota(const ComplexVector& x);
ComplexVector iota_inv(const RealifiedVector& xi);

/// J(v, w) = (-w, v) blockwise.
RealifiedVector apply_J(const RealifiedVector& xi);

/// Dense 2n x 2n matrix of J.
RealMatrix J_matrix(Index n);

/// Rotates v so its largest-magnitude entry is real positive (first index on ties).
void fix_phase(ComplexVector& v);

/// <x, y> = sum_j x_j conj(y_j).
Complex inner(const ComplexVector& x, const ComplexVector& y);

/// Re<x, y> = <iota(x), iota(y)>.
double real_inner(const ComplexVector& x, const ComplexVector& y);

/// Im<x, y> = <iota(x), J iota(y)>.
double imag_inner(const ComplexVector& x, const ComplexVector& y);

}  // namespace phaseless
