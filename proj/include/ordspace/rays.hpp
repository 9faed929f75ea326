#pragma once

#include <cstddef>

#include "ordspace/rational.hpp"

namespace ordspace {

/// Minimal generating set of a polyhedral cone: cone = span(lineality) + cone(rays).
/// Rays are extreme modulo the lineality space and scaled to primitive integers.
struct RayEnumeration {
  QMatrix lineality;
  QMatrix rays;
};

/// Double description on {x in R^n : a.x >= 0 for a in ineq, b.x = 0 for b in eq}.
RayEnumeration enumerate_rays(const QMatrix& ineq, const QMatrix& eq, std::size_t n);

}  // namespace ordspace
