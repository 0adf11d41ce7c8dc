#include "drsplit/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "drsplit/errors.hpp"

namespace drsplit {

Matrix symmetric_part(const Matrix& m) { return 0.5 * (m + m.transpose()); }

namespace {

Vector symmetric_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvalues of a non-square matrix");
  }
  if (m.size() == 0) return Vector();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

double min_symmetric_eigenvalue(const Matrix& m) {
  const Vector ev = symmetric_eigenvalues(m);
  return ev.size() == 0 ? 0.0 : ev.minCoeff();
}

double max_abs_symmetric_eigenvalue(const Matrix& m) {
  const Vector ev = symmetric_eigenvalues(m);
  return ev.size() == 0 ? 0.0 : ev.cwiseAbs().maxCoeff();
}

bool has_psd_symmetric_part(const Matrix& m, double rel_tol, double floor) {
  const Vector ev = symmetric_eigenvalues(m);
  if (ev.size() == 0) return true;
  const double scale = std::max(floor, ev.cwiseAbs().maxCoeff());
  return ev.minCoeff() >= -rel_tol * scale;
}

double symmetry_defect(const Matrix& m) {
  return (m - m.transpose()).norm() / std::max(1.0, m.norm());
}

Vector solve_dense(const Matrix& a, const Vector& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "linear solve with inconsistent sizes");
  }
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularSystem, "matrix is numerically singular");
  return lu.solve(b);
}

Matrix solve_dense_columns(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "linear solve with inconsistent sizes");
  }
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularSystem, "matrix is numerically singular");
  return lu.solve(b);
}

std::optional<Matrix> try_inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) return std::nullopt;
  return lu.inverse();
}

Index numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  if (smax == 0.0) return 0;
  return static_cast<Index>((sv.array() > rel_tol * smax).count());
}

}  // namespace drsplit
