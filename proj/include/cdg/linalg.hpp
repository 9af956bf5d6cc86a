/**
 * @file linalg.hpp
 * @brief Compressed-row sparse matrices and a direct solver for the
 *        nonsymmetric assembled systems.
 */
#pragma once

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace cdg {

struct Triplet {
  std::size_t row{};
  std::size_t col{};
  double value{};
};

class SparseMatrix {
 public:
  SparseMatrix() = default;

  std::size_t size() const { return n_; }
  std::size_t nnz() const { return cols_.size(); }
  const std::vector<std::size_t>& row_offsets() const { return offsets_; }
  const std::vector<std::size_t>& columns() const { return cols_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  std::span<const std::size_t> row_columns(std::size_t r) const {
    return {cols_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
  }
  std::span<double> row_values(std::size_t r) {
    return {values_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
  }
  std::span<const double> row_values(std::size_t r) const {
    return {values_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
  }

  /// Stored value at (r, c), zero when not in the structure.
  double at(std::size_t r, std::size_t c) const {
    const auto cols = row_columns(r);
    const auto it = std::lower_bound(cols.begin(), cols.end(), c);
    if (it == cols.end() || *it != c) return 0.0;
    return values_[offsets_[r] + static_cast<std::size_t>(it - cols.begin())];
  }

  std::vector<double> multiply(std::span<const double> x) const {
    if (x.size() != n_) throw std::invalid_argument("SparseMatrix::multiply: size mismatch");
    std::vector<double> y(n_, 0.0);
    for (std::size_t r = 0; r < n_; ++r) {
      double s = 0.0;
      for (std::size_t p = offsets_[r]; p < offsets_[r + 1]; ++p) s += values_[p] * x[cols_[p]];
      y[r] = s;
    }
    return y;
  }

  friend SparseMatrix from_triplets(std::size_t n, std::span<const Triplet> entries);

 private:
  std::size_t n_{0};
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

/// Duplicates are summed in input order; explicit zeros stay in the structure.
inline SparseMatrix from_triplets(std::size_t n, std::span<const Triplet> entries) {
  for (const auto& t : entries)
    if (t.row >= n || t.col >= n) throw std::invalid_argument("from_triplets: index out of range");

  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ta = entries[a];
    const auto& tb = entries[b];
    return ta.row != tb.row ? ta.row < tb.row : ta.col < tb.col;
  });

  SparseMatrix m;
  m.n_ = n;
  m.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& t = entries[order[i]];
    if (!m.cols_.empty() && i > 0) {
      const auto& prev = entries[order[i - 1]];
      if (prev.row == t.row && prev.col == t.col) {
        m.values_.back() += t.value;
        continue;
      }
    }
    m.cols_.push_back(t.col);
    m.values_.push_back(t.value);
    ++m.offsets_[t.row + 1];
  }
  std::partial_sum(m.offsets_.begin(), m.offsets_.end(), m.offsets_.begin());
  return m;
}

enum class SolveStatus { Converged, Breakdown };

struct SolveReport {
  double relative_residual{0.0};
  std::size_t iterations{0};
  SolveStatus status{SolveStatus::Converged};
};

struct SolveResult {
  std::vector<double> x;
  SolveReport report;
};

inline double relative_residual(const SparseMatrix& a, std::span<const double> x,
                                std::span<const double> b) {
  const auto ax = a.multiply(x);
  double rr = 0.0;
  double bb = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    rr += (ax[i] - b[i]) * (ax[i] - b[i]);
    bb += b[i] * b[i];
  }
  return bb > 0.0 ? std::sqrt(rr / bb) : std::sqrt(rr);
}

/**
 * Sparse LU with COLAMD ordering and partial pivoting, followed by a few
 * steps of iterative refinement. The residual is always recomputed here;
 * Converged is only reported when it meets `tol`. `iterations` counts the
 * refinement steps taken.
 */
inline SolveResult solve(const SparseMatrix& a, std::span<const double> b, double tol = 1e-10) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("solve: rhs size mismatch");
  SolveResult out;
  out.x.assign(n, 0.0);
  if (n == 0) return out;

  using EigenMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
  std::vector<Eigen::Triplet<double, int>> trips;
  trips.reserve(a.nnz());
  for (std::size_t r = 0; r < n; ++r) {
    const auto cols = a.row_columns(r);
    const auto vals = a.row_values(r);
    for (std::size_t p = 0; p < cols.size(); ++p)
      trips.emplace_back(static_cast<int>(r), static_cast<int>(cols[p]), vals[p]);
  }
  EigenMatrix em(static_cast<int>(n), static_cast<int>(n));
  em.setFromTriplets(trips.begin(), trips.end());
  em.makeCompressed();

  Eigen::SparseLU<EigenMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(em);
  if (lu.info() != Eigen::Success) {
    out.report.status = SolveStatus::Breakdown;
    out.report.relative_residual = std::numeric_limits<double>::quiet_NaN();
    return out;
  }

  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(n));
  Eigen::VectorXd x = lu.solve(rhs);
  auto residual_of = [&](const Eigen::VectorXd& v) {
    return relative_residual(a, std::span<const double>(v.data(), n), b);
  };
  double res = residual_of(x);
  constexpr std::size_t max_refinement = 5;
  std::size_t steps = 0;
  while (steps < max_refinement && !(res <= tol * 1e-2) && std::isfinite(res)) {
    const auto ax = a.multiply(std::span<const double>(x.data(), n));
    Eigen::VectorXd r(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) r[static_cast<Eigen::Index>(i)] = b[i] - ax[i];
    const Eigen::VectorXd candidate = x + lu.solve(r);
    const double cres = residual_of(candidate);
    ++steps;
    if (!(cres < res)) break;
    x = candidate;
    res = cres;
  }

  out.x.assign(x.data(), x.data() + n);
  out.report.relative_residual = res;
  out.report.iterations = steps;
  out.report.status = (std::isfinite(res) && res <= tol) ? SolveStatus::Converged
                                                         : SolveStatus::Breakdown;
  return out;
}

}  // namespace cdg
