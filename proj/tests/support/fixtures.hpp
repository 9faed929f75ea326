#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "ordspace/cone.hpp"
#include "ordspace/order.hpp"
#include "ordspace/rational.hpp"
#include "ordspace/space.hpp"

namespace ordspace::testing {

inline QVector qv(std::initializer_list<long> xs) {
  QVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline Rational q(const char* s) { return parse_rational(s); }

inline ConeSpec orthant_cone(std::size_t n) {
  std::vector<HalfspaceRow> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back({unit_vector(n, i), false});
  return ConeSpec::polyhedral_h(n, rows);
}

inline OrderedSpace orthant(std::size_t n) {
  QVector e(n, Rational(1));
  return OrderedSpace::make(orthant_cone(n), e);
}

/// {x > 0, y > 0} ∪ {0} with e = (1, 1).
inline OrderedSpace open_quadrant() {
  std::vector<HalfspaceRow> rows{{qv({1, 0}), true}, {qv({0, 1}), true}};
  return OrderedSpace::make(ConeSpec::polyhedral_h(2, rows, true), qv({1, 1}));
}

/// {x > 0} ∪ {0} with e = (1, 0).
inline OrderedSpace open_halfplane() {
  std::vector<HalfspaceRow> rows{{qv({1, 0}), true}};
  return OrderedSpace::make(ConeSpec::polyhedral_h(2, rows, true), qv({1, 0}));
}

inline OrderedSpace matrix_space(std::size_t d) {
  QVector e = zeros(d * d);
  for (std::size_t k = 0; k < d; ++k) e[k] = 1;
  return OrderedSpace::make(ConeSpec::matrix_psd(d), e);
}

/// Random pointed polyhedral spaces with an order unit, in H or V form.
class RandomSpaces {
 public:
  explicit RandomSpaces(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& engine() { return rng_; }

  OrderedSpace next(std::size_t n) { return uniform(0, 3) == 0 ? next_v(n) : next_h(n); }

  OrderedSpace next_h(std::size_t n) {
    for (;;) {
      QVector e(n);
      for (auto& x : e) x = uniform(1, 3);
      std::size_t m = n + static_cast<std::size_t>(uniform(0, 3));
      QMatrix rows;
      for (std::size_t i = 0; i < m; ++i) {
        QVector a(n);
        for (std::size_t j = 0; j < n; ++j) a[j] = i < n ? (i == j ? uniform(3, 4) : uniform(-1, 1)) : uniform(-2, 2);
        Rational ae = dot(a, e);
        Rational ue = 0;
        for (const auto& x : e) ue += x;
        while (ae < 1) {
          for (auto& x : a) x += 1;
          ae += ue;
        }
        rows.push_back(a);
      }
      if (rank(rows, n) < n) continue;
      std::vector<HalfspaceRow> hr;
      for (auto& a : rows) hr.push_back({a, false});
      return OrderedSpace::make(ConeSpec::polyhedral_h(n, hr), e);
    }
  }

  OrderedSpace next_v(std::size_t n) {
    for (;;) {
      std::size_t k = n + static_cast<std::size_t>(uniform(0, 2));
      QMatrix gens;
      for (std::size_t i = 0; i < k; ++i) {
        QVector g(n);
        for (auto& x : g) x = uniform(0, 3);
        if (is_zero(g)) g[static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1))] = 1;
        gens.push_back(g);
      }
      if (rank(gens, n) < n) continue;
      QVector e = zeros(n);
      for (const auto& g : gens) e = add(e, g);
      return OrderedSpace::make(ConeSpec::polyhedral_v(n, gens), e);
    }
  }

  /// Row i is target_unit[i] times a random convex combination of extreme
  /// states, so the map is positive and unital into an orthant with that unit.
  QMatrix positive_unital_map(const OrderedSpace& v, const QVector& target_unit) {
    std::vector<RealFunctional> states = state_polytope(v).extreme_states;
    QMatrix phi;
    for (const auto& u : target_unit) {
      QVector w(states.size());
      Rational total = 0;
      for (auto& x : w) {
        x = uniform(0, 4);
        total += x;
      }
      if (total == 0) {
        w[0] = 1;
        total = 1;
      }
      QVector row = zeros(v.dim());
      for (std::size_t s = 0; s < states.size(); ++s) row = axpy(row, u * w[s] / total, states[s].coeffs);
      phi.push_back(row);
    }
    return phi;
  }

  QVector vector(std::size_t n, int lo, int hi) {
    QVector v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ordspace::testing
