#include "phaseless/frames.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "phaseless/hilbert.hpp"
#include "phaseless/rng.hpp"

namespace phaseless {

Frame::Frame(ComplexMatrix vectors) : vectors_(std::move(vectors)) {
  const Index n = vectors_.rows();
  const Index m = vectors_.cols();
  if (n < 1) throw std::invalid_argument("Frame: dimension must be positive");
  if (m < n) throw std::invalid_argument("Frame: need at least n vectors");
  if (!vectors_.allFinite()) throw std::invalid_argument("Frame: non-finite entry");

  Eigen::JacobiSVD<ComplexMatrix> svd(vectors_);
  min_sv_ = svd.singularValues()(n - 1);
  if (!(min_sv_ > 1e-10)) throw std::invalid_argument("Frame: vectors do not span C^n");

  phi_.resize(2 * n, m);
  phi_.topRows(n) = vectors_.real();
  phi_.bottomRows(n) = vectors_.imag();
  jphi_.resize(2 * n, m);
  jphi_.topRows(n) = -vectors_.imag();
  jphi_.bottomRows(n) = vectors_.real();
}

RealSymOperator Frame::phi(Index k) const {
  const RealVector p = phi_.col(k);
  const RealVector jp = jphi_.col(k);
  return RealSymOperator(p * p.transpose() + jp * jp.transpose());
}

RealifiedVector Frame::apply_phi(Index k, const RealifiedVector& xi) const {
  require_same_dim(xi.size(), 2 * n(), "Frame::apply_phi");
  return xi.dot(phi_.col(k)) * phi_.col(k) + xi.dot(jphi_.col(k)) * jphi_.col(k);
}

Frame Frame::scaled(double c) const { return Frame(c * vectors_); }

Frame random_gaussian_frame(Index n, Index m, std::uint64_t seed) {
  if (n < 1 || m < n) throw std::invalid_argument("random_gaussian_frame: need m >= n >= 1");
  Rng rng(seed);
  ComplexMatrix f(n, m);
  for (Index k = 0; k < m; ++k) {
    for (Index i = 0; i < n; ++i) f(i, k) = rng.complex_normal();
    f.col(k) /= f.col(k).norm();
  }
  return Frame(std::move(f));
}

Frame standard_basis_frame(Index n, int copies) {
  if (copies < 1) throw std::invalid_argument("standard_basis_frame: copies must be >= 1");
  ComplexMatrix f(n, n * copies);
  for (int c = 0; c < copies; ++c) f.middleCols(c * n, n) = ComplexMatrix::Identity(n, n);
  return Frame(std::move(f));
}

FrameBounds frame_bounds(const Frame& frame) {
  const ComplexMatrix s = frame.vectors() * frame.vectors().adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s, Eigen::EigenvaluesOnly);
  return {es.eigenvalues()(0), es.eigenvalues()(frame.n() - 1)};
}

namespace {

double binomial(Index m, Index n) {
  double c = 1.0;
  for (Index i = 1; i <= n; ++i) c = c * static_cast<double>(m - n + i) / static_cast<double>(i);
  return c;
}

}  // namespace

bool is_full_spark(const Frame& frame, double sv_tol, double max_subsets) {
  const Index n = frame.n();
  const Index m = frame.m();
  if (binomial(m, n) > max_subsets) {
    throw std::length_error("is_full_spark: too many subsets to enumerate");
  }
  std::vector<Index> idx(n);
  for (Index i = 0; i < n; ++i) idx[i] = i;
  ComplexMatrix sub(n, n);
  while (true) {
    for (Index i = 0; i < n; ++i) sub.col(i) = frame.vectors().col(idx[i]);
    Eigen::JacobiSVD<ComplexMatrix> svd(sub);
    if (!(svd.singularValues()(n - 1) > sv_tol)) return false;

    // next combination in lexicographic order
    Index i = n - 1;
    while (i >= 0 && idx[i] == m - n + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (Index j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return true;
}

void save_frame_csv(const Frame& frame, std::ostream& out) {
  char buf[64];
  for (Index k = 0; k < frame.m(); ++k) {
    for (Index i = 0; i < frame.n(); ++i) {
      const Complex z = frame.vectors()(i, k);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", z.real(), z.imag());
      if (i > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

Frame load_frame_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::invalid_argument("load_frame_csv: bad number '" + cell + "'");
      }
    }
    if (row.empty() || row.size() % 2 != 0) {
      throw std::invalid_argument("load_frame_csv: each row needs interleaved re/im pairs");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("load_frame_csv: ragged rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("load_frame_csv: no frame vectors");
  const Index n = static_cast<Index>(rows.front().size() / 2);
  const Index m = static_cast<Index>(rows.size());
  ComplexMatrix f(n, m);
  for (Index k = 0; k < m; ++k) {
    for (Index i = 0; i < n; ++i) f(i, k) = Complex(rows[k][2 * i], rows[k][2 * i + 1]);
  }
  return Frame(std::move(f));
}

void save_frame_csv(const Frame& frame, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_frame_csv: cannot open " + path);
  save_frame_csv(frame, out);
}

Frame load_frame_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_frame_csv: cannot open " + path);
  return load_frame_csv(in);
}

}  // namespace phaseless
