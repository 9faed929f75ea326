#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "ordspace/order.hpp"
#include "ordspace/space.hpp"

namespace ordspace {

struct SpaceCache {
  std::mutex mu;
  std::shared_ptr<const void> cone_id;
  QVector unit;
  std::optional<StatePolytope> states;
  std::optional<QMatrix> ball;

  /// Drops entries computed for a different cone or unit. Caller holds mu.
  void sync(const OrderedSpace& v) {
    if (cone_id != v.cone.identity() || unit != v.unit) {
      cone_id = v.cone.identity();
      unit = v.unit;
      states.reset();
      ball.reset();
    }
  }
};

}  // namespace ordspace
