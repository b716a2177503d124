#include "roflab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace roflab {

SparseMatrix::SparseMatrix(int n, std::vector<int> row_offsets, std::vector<int> cols,
                           std::vector<double> values)
    : n_(n), row_offsets_(std::move(row_offsets)), cols_(std::move(cols)), values_(std::move(values)) {
  if (static_cast<int>(row_offsets_.size()) != n_ + 1 || cols_.size() != values_.size() ||
      row_offsets_.back() != static_cast<int>(cols_.size()))
    throw std::invalid_argument("SparseMatrix: inconsistent CSR arrays");
}

int SparseMatrix::find(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) throw std::out_of_range("SparseMatrix: index out of range");
  const auto begin = cols_.begin() + row_offsets_[i];
  const auto end = cols_.begin() + row_offsets_[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return -1;
  return static_cast<int>(it - cols_.begin());
}

double SparseMatrix::at(int i, int j) const {
  const int k = find(i, j);
  return k < 0 ? 0.0 : values_[k];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw std::invalid_argument("SparseMatrix::multiply: dimension mismatch");
  for (int i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) sum += values_[k] * x[cols_[k]];
    y[i] = sum;
  }
}

Vector SparseMatrix::operator*(std::span<const double> x) const {
  Vector y(n_);
  multiply(x, y);
  return y;
}

Vector SparseMatrix::diagonal() const {
  Vector d(n_, 0.0);
  for (int i = 0; i < n_; ++i) d[i] = at(i, i);
  return d;
}

double SparseMatrix::symmetry_defect() const {
  double max_entry = 0.0;
  double max_diff = 0.0;
  for (int i = 0; i < n_; ++i) {
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      max_entry = std::max(max_entry, std::abs(values_[k]));
      max_diff = std::max(max_diff, std::abs(values_[k] - at(cols_[k], i)));
    }
  }
  return max_entry > 0.0 ? max_diff / max_entry : 0.0;
}

SparseBuilder::SparseBuilder(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("SparseBuilder: negative dimension");
}

void SparseBuilder::add(int row, int col, double value) {
  if (row < 0 || row >= n_ || col < 0 || col >= n_)
    throw std::out_of_range("SparseBuilder::add: index out of range");
  entries_.push_back({row, col, value});
}

SparseMatrix SparseBuilder::finalize() const {
  std::vector<Entry> sorted = entries_;
  // Stable, so duplicates are summed in insertion order.
  std::stable_sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<int> offsets(static_cast<std::size_t>(n_) + 1, 0);
  std::vector<int> cols;
  std::vector<double> values;
  cols.reserve(sorted.size());
  values.reserve(sorted.size());
  for (std::size_t k = 0; k < sorted.size();) {
    const int r = sorted[k].row;
    const int c = sorted[k].col;
    double sum = 0.0;
    while (k < sorted.size() && sorted[k].row == r && sorted[k].col == c) sum += sorted[k++].value;
    cols.push_back(c);
    values.push_back(sum);
    ++offsets[static_cast<std::size_t>(r) + 1];
  }
  for (int i = 0; i < n_; ++i) offsets[i + 1] += offsets[i];
  return SparseMatrix(n_, std::move(offsets), std::move(cols), std::move(values));
}

void SparseSystem::apply_dirichlet() {
  const int n = matrix.size();
  if (static_cast<int>(rhs.size()) != n || static_cast<int>(dirichlet_mask.size()) != n)
    throw std::invalid_argument("SparseSystem: dimension mismatch");
  const auto& offsets = matrix.row_offsets();
  const auto& cols = matrix.columns();
  auto& vals = matrix.values();
  for (int i = 0; i < n; ++i) {
    for (int k = offsets[i]; k < offsets[i + 1]; ++k) {
      const int j = cols[k];
      if (dirichlet_mask[i] || dirichlet_mask[j]) vals[k] = (i == j) ? 1.0 : 0.0;
    }
    if (dirichlet_mask[i]) {
      if (matrix.find(i, i) < 0) throw std::invalid_argument("SparseSystem: constrained row without diagonal");
      rhs[i] = 0.0;
    }
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

CgResult cg_solve(const SparseMatrix& a, std::span<const double> b, std::span<const double> x0,
                  const CgOptions& opts) {
  const int n = a.size();
  if (static_cast<int>(b.size()) != n || static_cast<int>(x0.size()) != n)
    throw std::invalid_argument("cg_solve: dimension mismatch");
  if (!(opts.rel_tol > 0.0)) throw std::invalid_argument("cg_solve: rel_tol must be positive");
  const int max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * std::max(n, 1);

  CgResult res;
  res.x.assign(x0.begin(), x0.end());
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    res.x.assign(n, 0.0);
    return res;
  }

  Vector inv_diag = a.diagonal();
  for (double& d : inv_diag) {
    if (!(d > 0.0)) throw std::invalid_argument("cg_solve: non-positive diagonal entry");
    d = 1.0 / d;
  }

  Vector r(n), z(n), p(n), q(n);
  a.multiply(res.x, q);
  for (int i = 0; i < n; ++i) r[i] = b[i] - q[i];
  double rnorm = norm2(r);
  const double target = opts.rel_tol * bnorm;
  if (rnorm <= target) {
    res.residual = rnorm / bnorm;
    return res;
  }
  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);

  for (int it = 1; it <= max_iter; ++it) {
    a.multiply(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) throw CgError("cg_solve: matrix not positive definite", rnorm / bnorm, it);
    const double step = rz / pq;
    for (int i = 0; i < n; ++i) {
      res.x[i] += step * p[i];
      r[i] -= step * q[i];
    }
    rnorm = norm2(r);
    if (rnorm <= target) {
      // Guard against drift of the recursive residual.
      a.multiply(res.x, q);
      for (int i = 0; i < n; ++i) q[i] = b[i] - q[i];
      const double true_norm = norm2(q);
      if (true_norm <= target) {
        res.iterations = it;
        res.residual = true_norm / bnorm;
        return res;
      }
      r = q;
      rnorm = true_norm;
    }
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw CgError("cg_solve: no convergence within " + std::to_string(max_iter) +
                    " iterations (relative residual " + std::to_string(rnorm / bnorm) + ")",
                rnorm / bnorm, max_iter);
}

CgResult cg_solve(const SparseSystem& sys, std::span<const double> x0, const CgOptions& opts) {
  if (static_cast<int>(sys.rhs.size()) != sys.matrix.size())
    throw std::invalid_argument("cg_solve: dimension mismatch");
  return cg_solve(sys.matrix, sys.rhs, x0, opts);
}

}  // namespace roflab
