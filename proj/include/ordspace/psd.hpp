#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "ordspace/element.hpp"
#include "ordspace/rational.hpp"

namespace ordspace {

// Hermitian d x d matrices as R^(d*d): the d diagonal entries first, then for
// each pair j < k in lexicographic order Re H_jk followed by Im H_jk.

/// Exact hermitian (or general complex) matrix as real and imaginary parts.
struct ComplexMatrixQ {
  QMatrix re;
  QMatrix im;
};

std::size_t psd_coordinate_count(std::size_t d);
/// Recovers d from d*d; throws when n is not a square.
std::size_t psd_size_from_dimension(std::size_t n);

ComplexMatrixQ hermitian_from_coords(const QVector& coords, std::size_t d);
QVector coords_from_hermitian(const ComplexMatrixQ& h);
Eigen::MatrixXcd to_eigen(const ComplexMatrixQ& m);
Eigen::MatrixXcd hermitian_matrix(const QVector& coords, std::size_t d);

/// X = H1 + i H2 with H1, H2 hermitian.
ComplexMatrixQ complex_matrix(const ComplexElement& v, std::size_t d);
ComplexElement element_from_matrix(const ComplexMatrixQ& x);
/// Matrix unit E_jk (zero-based indices).
ComplexElement matrix_unit(std::size_t d, std::size_t j, std::size_t k);
/// The identity matrix in hermitian coordinates.
QVector identity_coords(std::size_t d);

/// Exact positive semidefiniteness of a rational hermitian matrix.
bool is_psd_exact(const ComplexMatrixQ& h);
/// r*I - H and r*I + H both PSD, i.e. the operator norm of H is at most r.
bool op_norm_at_most(const ComplexMatrixQ& h, const Rational& r);

double min_eigenvalue(const QVector& coords, std::size_t d);
double max_eigenvalue(const QVector& coords, std::size_t d);

/// Hermitian matrix F with f(H) = tr(F H) for the functional with these coefficients.
ComplexMatrixQ representing_matrix(const QVector& coeffs, std::size_t d);

}  // namespace ordspace
