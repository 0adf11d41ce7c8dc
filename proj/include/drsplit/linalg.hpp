#pragma once

#include <Eigen/Dense>
#include <optional>

namespace drsplit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Relative tolerance for construction-time monotonicity checks.
inline constexpr double kPsdTolerance = 1e-10;

Matrix symmetric_part(const Matrix& m);

/// Smallest eigenvalue of (M + M^T)/2.
double min_symmetric_eigenvalue(const Matrix& m);

/// Largest |eigenvalue| of (M + M^T)/2.
double max_abs_symmetric_eigenvalue(const Matrix& m);

/// True when the symmetric part has no eigenvalue below
/// -rel_tol * max(floor, largest |eigenvalue|).
bool has_psd_symmetric_part(const Matrix& m, double rel_tol = kPsdTolerance,
                            double floor = 0.0);

/// ||M - M^T||_F / max(1, ||M||_F).
double symmetry_defect(const Matrix& m);

/// Solves a * x = b with a full-pivot LU; throws SingularSystem when a is
/// numerically singular.
Vector solve_dense(const Matrix& a, const Vector& b);
Matrix solve_dense_columns(const Matrix& a, const Matrix& b);

std::optional<Matrix> try_inverse(const Matrix& a);

/// Numerical rank from singular values, threshold rel_tol * sigma_max.
Index numerical_rank(const Matrix& a, double rel_tol = 1e-10);

}  // namespace drsplit
