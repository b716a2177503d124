#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace roflab {

using Vector = std::vector<double>;

/// Square matrix in compressed sparse row storage.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int n, std::vector<int> row_offsets, std::vector<int> cols, std::vector<double> values);

  int size() const { return n_; }
  int nonzeros() const { return static_cast<int>(values_.size()); }

  const std::vector<int>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& columns() const { return cols_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Entry (i, j), zero if not stored.
  double at(int i, int j) const;
  /// Position of (i, j) in values(), or -1.
  int find(int i, int j) const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  Vector operator*(std::span<const double> x) const;

  Vector diagonal() const;
  /// max |a_ij - a_ji| / max |a_ij|.
  double symmetry_defect() const;

 private:
  int n_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> cols_;
  std::vector<double> values_;
};

/// Scatter-add assembly; duplicate entries are summed by finalize().
class SparseBuilder {
 public:
  explicit SparseBuilder(int n);

  void add(int row, int col, double value);
  SparseMatrix finalize() const;

 private:
  struct Entry {
    int row;
    int col;
    double value;
  };
  int n_;
  std::vector<Entry> entries_;
};

/// Linear system with per-row Dirichlet flags (constrained value is zero).
struct SparseSystem {
  SparseMatrix matrix;
  Vector rhs;
  std::vector<bool> dirichlet_mask;

  /// Reduces constrained rows and columns to the identity and zeroes their rhs.
  void apply_dirichlet();
};

struct CgResult {
  Vector x;
  int iterations = 0;
  double residual = 0.0;  // ||b - Ax|| / ||b||
};

class CgError : public std::runtime_error {
 public:
  CgError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

struct CgOptions {
  double rel_tol = 1e-10;
  int max_iter = 0;  // 0: 10 n
};

/// Jacobi-preconditioned conjugate gradients for SPD matrices.
/// Converged when ||b - Ax|| <= rel_tol ||b||; throws CgError otherwise.
CgResult cg_solve(const SparseMatrix& a, std::span<const double> b, std::span<const double> x0,
                  const CgOptions& opts = {});
CgResult cg_solve(const SparseSystem& sys, std::span<const double> x0, const CgOptions& opts = {});

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace roflab
