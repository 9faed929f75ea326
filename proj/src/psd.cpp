#include "ordspace/psd.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ordspace/errors.hpp"

namespace ordspace {

std::size_t psd_coordinate_count(std::size_t d) { return d * d; }

std::size_t psd_size_from_dimension(std::size_t n) {
  std::size_t d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) throw DimensionMismatch("matrix space dimension must be a square");
  return d;
}

ComplexMatrixQ hermitian_from_coords(const QVector& coords, std::size_t d) {
  if (coords.size() != d * d) throw DimensionMismatch("hermitian coordinates have the wrong length");
  ComplexMatrixQ h{QMatrix(d, zeros(d)), QMatrix(d, zeros(d))};
  for (std::size_t k = 0; k < d; ++k) h.re[k][k] = coords[k];
  std::size_t p = d;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      h.re[j][k] = h.re[k][j] = coords[p];
      h.im[j][k] = coords[p + 1];
      h.im[k][j] = -coords[p + 1];
      p += 2;
    }
  }
  return h;
}

QVector coords_from_hermitian(const ComplexMatrixQ& h) {
  const std::size_t d = h.re.size();
  QVector c = zeros(d * d);
  for (std::size_t k = 0; k < d; ++k) c[k] = h.re[k][k];
  std::size_t p = d;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      c[p] = h.re[j][k];
      c[p + 1] = h.im[j][k];
      p += 2;
    }
  }
  return c;
}

Eigen::MatrixXcd to_eigen(const ComplexMatrixQ& m) {
  const auto d = static_cast<Eigen::Index>(m.re.size());
  Eigen::MatrixXcd x(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) {
      x(j, k) = {m.re[j][k].get_d(), m.im[j][k].get_d()};
    }
  }
  return x;
}

Eigen::MatrixXcd hermitian_matrix(const QVector& coords, std::size_t d) {
  return to_eigen(hermitian_from_coords(coords, d));
}

ComplexMatrixQ complex_matrix(const ComplexElement& v, std::size_t d) {
  ComplexMatrixQ h1 = hermitian_from_coords(v.re, d);
  ComplexMatrixQ h2 = hermitian_from_coords(v.im, d);
  ComplexMatrixQ x{QMatrix(d, zeros(d)), QMatrix(d, zeros(d))};
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      x.re[j][k] = h1.re[j][k] - h2.im[j][k];
      x.im[j][k] = h1.im[j][k] + h2.re[j][k];
    }
  }
  return x;
}

ComplexElement element_from_matrix(const ComplexMatrixQ& x) {
  const std::size_t d = x.re.size();
  ComplexMatrixQ h1{QMatrix(d, zeros(d)), QMatrix(d, zeros(d))};
  ComplexMatrixQ h2 = h1;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      h1.re[j][k] = (x.re[j][k] + x.re[k][j]) / 2;
      h1.im[j][k] = (x.im[j][k] - x.im[k][j]) / 2;
      h2.re[j][k] = (x.im[j][k] + x.im[k][j]) / 2;
      h2.im[j][k] = -(x.re[j][k] - x.re[k][j]) / 2;
    }
  }
  return {coords_from_hermitian(h1), coords_from_hermitian(h2)};
}

ComplexElement matrix_unit(std::size_t d, std::size_t j, std::size_t k) {
  if (j >= d || k >= d) throw PreconditionError("matrix unit index out of range");
  ComplexMatrixQ x{QMatrix(d, zeros(d)), QMatrix(d, zeros(d))};
  x.re[j][k] = 1;
  return element_from_matrix(x);
}

QVector identity_coords(std::size_t d) {
  QVector c = zeros(d * d);
  for (std::size_t k = 0; k < d; ++k) c[k] = 1;
  return c;
}

bool is_psd_exact(const ComplexMatrixQ& h) {
  const std::size_t d = h.re.size();
  const std::size_t n = 2 * d;
  // Real symmetric embedding [[A, -B], [B, A]].
  QMatrix s(n, zeros(n));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      s[j][k] = h.re[j][k];
      s[j + d][k + d] = h.re[j][k];
      s[j][k + d] = -h.im[j][k];
      s[j + d][k] = h.im[j][k];
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(s[k][k]) < 0) return false;
    if (sgn(s[k][k]) == 0) {
      for (std::size_t j = k + 1; j < n; ++j) {
        if (sgn(s[k][j]) != 0) return false;
      }
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(s[i][k]) == 0) continue;
      Rational f = s[i][k] / s[k][k];
      for (std::size_t j = k + 1; j < n; ++j) {
        if (sgn(s[k][j]) != 0) s[i][j] -= f * s[k][j];
      }
    }
  }
  return true;
}

bool op_norm_at_most(const ComplexMatrixQ& h, const Rational& r) {
  const std::size_t d = h.re.size();
  ComplexMatrixQ plus = h, minus = h;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      minus.re[j][k] = -h.re[j][k];
      minus.im[j][k] = -h.im[j][k];
    }
    plus.re[j][j] += r;
    minus.re[j][j] += r;
  }
  return is_psd_exact(plus) && is_psd_exact(minus);
}

double min_eigenvalue(const QVector& coords, std::size_t d) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_matrix(coords, d), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const QVector& coords, std::size_t d) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_matrix(coords, d), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

ComplexMatrixQ representing_matrix(const QVector& coeffs, std::size_t d) {
  ComplexMatrixQ f = hermitian_from_coords(coeffs, d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      if (j == k) continue;
      f.re[j][k] /= 2;
      f.im[j][k] /= 2;
    }
  }
  return f;
}

}  // namespace ordspace
