#include "ordspace/rays.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>

#include "ordspace/errors.hpp"

namespace ordspace {

namespace {

struct Ray {
  QVector v;
  boost::dynamic_bitset<> zero;  // constraints processed so far that vanish on v
};

}  // namespace

RayEnumeration enumerate_rays(const QMatrix& ineq, const QMatrix& eq, std::size_t n) {
  QMatrix cons;
  for (const auto& b : eq) {
    if (b.size() != n) throw DimensionMismatch("constraint length differs from dimension");
    if (is_zero(b)) continue;
    cons.push_back(b);
    cons.push_back(negate(b));
  }
  for (const auto& a : ineq) {
    if (a.size() != n) throw DimensionMismatch("constraint length differs from dimension");
    if (!is_zero(a)) cons.push_back(a);
  }
  const std::size_t m = cons.size();

  QMatrix lin = identity(n);
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < m; ++k) {
    const QVector& a = cons[k];

    std::size_t pick = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i) {
      if (sgn(dot(a, lin[i])) != 0) {
        pick = i;
        break;
      }
    }
    if (pick < lin.size()) {
      QVector l0 = lin[pick];
      Rational s = dot(a, l0);
      if (s < 0) {
        l0 = negate(l0);
        s = -s;
      }
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == pick) continue;
        Rational t = dot(a, lin[i]);
        if (sgn(t) != 0) {
          lin[i] = axpy(lin[i], -t / s, l0);
          normalize_direction(lin[i]);
        }
      }
      for (auto& r : rays) {
        Rational t = dot(a, r.v);
        if (sgn(t) != 0) {
          r.v = axpy(r.v, -t / s, l0);
          normalize_direction(r.v);
        }
        r.zero.resize(m);
        r.zero.set(k);
      }
      lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(pick));
      Ray fresh{l0, boost::dynamic_bitset<>(m)};
      for (std::size_t j = 0; j < k; ++j) fresh.zero.set(j);
      normalize_direction(fresh.v);
      rays.push_back(std::move(fresh));
      continue;
    }

    std::vector<Rational> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      rays[i].zero.resize(m);
      val[i] = dot(a, rays[i].v);
    }
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (sgn(val[i]) > 0) next.push_back(rays[i]);
      if (sgn(val[i]) == 0) {
        next.push_back(rays[i]);
        next.back().zero.set(k);
      }
    }
    const std::size_t dim_eff = n - lin.size();
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (sgn(val[p]) <= 0) continue;
      for (std::size_t q = 0; q < rays.size(); ++q) {
        if (sgn(val[q]) >= 0) continue;
        boost::dynamic_bitset<> common = rays[p].zero & rays[q].zero;
        if (dim_eff >= 2 && common.count() + 2 < dim_eff) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.is_subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        QVector v = axpy(scale(val[p], rays[q].v), -val[q], rays[p].v);
        normalize_direction(v);
        common.set(k);
        next.push_back({std::move(v), std::move(common)});
      }
    }
    rays = std::move(next);
  }

  RayEnumeration out;
  for (auto& l : lin) normalize_direction(l);
  out.lineality = std::move(lin);
  for (auto& r : rays) {
    if (is_zero(r.v)) continue;
    if (std::find(out.rays.begin(), out.rays.end(), r.v) == out.rays.end()) out.rays.push_back(r.v);
  }
  std::sort(out.rays.begin(), out.rays.end(), [](const QVector& x, const QVector& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [](const Rational& s, const Rational& t) { return s > t; });
  });
  return out;
}

}  // namespace ordspace
