#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordspace/element.hpp"
#include "ordspace/scalar.hpp"
#include "ordspace/space.hpp"

namespace ordspace {

enum class NormKind { Minimal, Maximal, Decomposition };

std::string to_string(NormKind k);

/// v = sum_i lambda_i * element_i with lambda_i = (re, im).
struct Decomposition {
  enum class Kind { Hermitian, Positive };
  struct Term {
    Rational re;
    Rational im;
    QVector element;
    Kind kind = Kind::Hermitian;
  };
  std::vector<Term> terms;
};

/// Every lower bound is the square root of an exact rational.
///  State:             f a state; bound^2 = f(x)^2 + f(y)^2.
///  MaximalDual:       real-linear Phi = (g1, g2) zero on the lineality space;
///                     bound^2 = Phi(v)^2 / max(1, max_b |Phi(b)|^2) over unit-ball vertices b.
///  DecompositionDual: Phi as above and a positive psi with psi(e) <= 1;
///                     bound^2 = Phi(v)^2 / max(1, max_c |Phi(c)|^2 / psi(c)^2) over extreme rays c.
///  NumericalRadius:   test vector u; bound^2 = |u* X u|^2 / |u|^4.
///  OperatorNorm:      test vector u; bound^2 = |X u|^2 / |u|^2.
struct LowerCertificate {
  enum class Kind { State, MaximalDual, DecompositionDual, NumericalRadius, OperatorNorm };
  Kind kind = Kind::State;
  QVector g1;
  QVector g2;
  QVector psi;
  QVector u_re;
  QVector u_im;
  Rational bound_squared;
};

/// lower <= norm <= upper. Endpoints are exact only when backed by exact certificates.
struct CertifiedInterval {
  Scalar lower;
  Scalar upper;
  double tol = 0.0;
  bool tolerance_met = false;
  int rounds = 0;
  std::string method_notes;
  std::optional<LowerCertificate> lower_certificate;
  std::optional<Decomposition> upper_certificate;

  double width() const { return upper.to_double() - lower.to_double(); }
  bool exact() const;
  /// The exact value when exact(), otherwise the midpoint.
  Scalar value() const;
};

struct NormOptions {
  double tol = 1e-6;
  /// Cut-generation rounds for the polyhedral LPs, refinement doublings for matrix cones.
  int max_rounds = 60;
};

/// sup |f(v)| over states. Polyhedral: exact on squares. Matrix cones: the numerical radius.
CertifiedInterval minimal_norm(const OrderedSpace& space, const ComplexElement& v, const NormOptions& opts = {});
/// inf sum |lambda_i| ||h_i|| over v = sum lambda_i h_i with h_i hermitian.
CertifiedInterval maximal_norm(const OrderedSpace& space, const ComplexElement& v, const NormOptions& opts = {});
/// inf ||sum |lambda_i| p_i|| over v = sum lambda_i p_i with p_i positive.
CertifiedInterval decomposition_norm(const OrderedSpace& space, const ComplexElement& v, const NormOptions& opts = {});
CertifiedInterval norm(NormKind kind, const OrderedSpace& space, const ComplexElement& v, const NormOptions& opts = {});

/// t ||v||_m + (1 - t) ||v||_M, 0 <= t <= 1.
CertifiedInterval convex_combination_norm(const OrderedSpace& space, const ComplexElement& v, const Rational& t,
                                          const NormOptions& opts = {});

/// Re-checks both certificates of an interval from scratch. On failure, why names the broken check.
bool verify_interval(const OrderedSpace& space, const ComplexElement& v, NormKind kind, const CertifiedInterval& iv,
                     std::string* why = nullptr);

struct MapPositivity {
  bool unital = false;
  bool positive = false;
  /// max ||phi(v)||_m / ||v||_m over the sampled elements.
  double norm_estimate = 0.0;
  std::optional<ComplexElement> witness;
  std::size_t samples = 0;
  /// positive iff norm_estimate <= 1 + tol; false flags a disagreement.
  bool consistent = false;
};

/// phi maps hermitian coordinates of V to those of W (dim W x dim V).
MapPositivity map_positivity_test(const OrderedSpace& v, const OrderedSpace& w, const QMatrix& phi, double tol = 1e-9);

}  // namespace ordspace
