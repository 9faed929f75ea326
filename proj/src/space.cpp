#include "ordspace/space.hpp"

#include "ordspace/errors.hpp"
#include "space_cache.hpp"

namespace ordspace {

OrderedSpace OrderedSpace::make(ConeSpec cone, QVector unit, std::vector<std::string> labels) {
  if (unit.size() != cone.dim()) throw DimensionMismatch("unit length differs from cone dimension");
  if (!labels.empty() && labels.size() != cone.dim()) {
    throw DimensionMismatch("label count differs from dimension");
  }
  OrderedSpace s{std::move(cone), std::move(unit), std::move(labels), ScalarMode::Exact, 1e-9, nullptr};
  s.mode = s.cone.is_polyhedral() ? ScalarMode::Exact : ScalarMode::Approx;
  s.cache = std::make_shared<SpaceCache>();
  return s;
}

void require_element(const OrderedSpace& v, const ComplexElement& x) {
  if (x.re.size() != v.dim() || x.im.size() != v.dim()) {
    throw DimensionMismatch("element dimension differs from space dimension");
  }
}

void require_hermitian(const OrderedSpace& v, const QVector& h) {
  if (h.size() != v.dim()) throw DimensionMismatch("element dimension differs from space dimension");
}

}  // namespace ordspace
