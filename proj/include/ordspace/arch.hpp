#pragma once

#include <optional>
#include <string>

#include "ordspace/element.hpp"
#include "ordspace/space.hpp"

namespace ordspace {

/// D = {v : r e + v in C for all r > 0} (the closure here) and N = D ∩ -D.
struct DandN {
  ConeSpec d;
  QMatrix n_basis;
};

DandN compute_D_and_N(const OrderedSpace& v);

/// Coordinates on R^n / span(subspace): pivot columns of the reduced echelon
/// form of the subspace are dropped, the remaining columns become the
/// quotient coordinates. projection * section = I and ker(projection) = span.
struct Complement {
  QMatrix projection;  // k x n
  QMatrix section;     // n x k
};

Complement complement_coordinates(const QMatrix& subspace, std::size_t n);

struct QuotientResult {
  OrderedSpace space;
  QMatrix projection;
  QMatrix section;
  QMatrix kernel;  // basis of the subspace divided out
  bool identity = false;
};

/// Quotient by N with cone the image of D; always Archimedean.
QuotientResult archimedeanize(const OrderedSpace& v);

struct IdealCheck {
  bool is_ideal = false;
  /// When not an ideal: p in J, 0 <= q <= p, q outside J.
  std::optional<QVector> witness_p;
  std::optional<QVector> witness_q;
  std::string reason;
};

/// Order ideal test against the closed cone. J is given by spanning vectors.
IdealCheck is_order_ideal(const OrderedSpace& v, const QMatrix& j);

/// V/J with cone C + J and unit e + J. Needs J an order ideal, e outside J,
/// and a closed cone when J is nonzero.
QuotientResult quotient(const OrderedSpace& v, const QMatrix& j);

/// Quotient by N_J, the lineality space of closure(C) + J; always Archimedean.
QuotientResult arch_quotient(const OrderedSpace& v, const QMatrix& j);

ComplexElement project(const QuotientResult& q, const ComplexElement& x);
ComplexElement lift(const QuotientResult& q, const ComplexElement& y);

/// phi: matrix of shape dim(W) x dim(V) acting on hermitian coordinates.
struct FactorResult {
  QuotientResult arch;
  QMatrix induced;  // dim(W) x dim(V/N)
  bool commutes = false;
  bool induced_unital = false;
  bool induced_positive = false;
};

/// A unital positive map into an Archimedean space factors through the
/// Archimedeanization: phi = induced * projection.
FactorResult factor_through(const OrderedSpace& v, const QMatrix& phi, const OrderedSpace& w);

struct FirstIsomorphism {
  QMatrix kernel;
  IdealCheck kernel_ideal;
  QuotientResult quotient;
  bool null_space_is_kernel = false;
  QMatrix induced;
  bool induced_injective = false;
  /// phi(V+) = W+ ∩ im(phi)
  bool image_condition = false;
  std::optional<QVector> image_witness;  // in W+ ∩ im(phi) but not in phi(V+)
  bool is_order_isomorphism = false;
};

FirstIsomorphism first_isomorphism(const OrderedSpace& v, const QMatrix& phi, const OrderedSpace& w);

/// Shared by factor_through and the CLI: phi(e_V) = e_W and phi(C) within W+.
bool is_unital(const OrderedSpace& v, const QMatrix& phi, const OrderedSpace& w);
bool is_positive_map(const OrderedSpace& v, const QMatrix& phi, const OrderedSpace& w);

}  // namespace ordspace
