#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "ordspace/cone.hpp"
#include "ordspace/element.hpp"
#include "ordspace/scalar.hpp"

namespace ordspace {

struct SpaceCache;

/// A real ordered vector space (R^n, cone, unit); its complexification is
/// implied by the element type. Nothing is validated at construction beyond
/// shapes; use validate_space for the axioms.
struct OrderedSpace {
  ConeSpec cone;
  QVector unit;
  std::vector<std::string> labels;
  ScalarMode mode = ScalarMode::Exact;
  double tol = 1e-9;
  /// Derived data (states, unit ball); keyed on cone and unit, so stale entries are ignored.
  std::shared_ptr<SpaceCache> cache;

  std::size_t dim() const { return cone.dim(); }
  bool is_polyhedral() const { return cone.is_polyhedral(); }
  bool is_exact() const { return mode == ScalarMode::Exact; }

  /// Polyhedral cones default to exact arithmetic, matrix cones to approximate.
  static OrderedSpace make(ConeSpec cone, QVector unit, std::vector<std::string> labels = {});
};

void require_element(const OrderedSpace& v, const ComplexElement& x);
void require_hermitian(const OrderedSpace& v, const QVector& h);

}  // namespace ordspace
