#include "ordspace/cone.hpp"

#include <mutex>
#include <string>

#include "ordspace/errors.hpp"
#include "ordspace/lp.hpp"
#include "ordspace/psd.hpp"
#include "ordspace/rays.hpp"

namespace ordspace {

struct ConeSpec::Cache {
  std::once_flag once;
  ClosureGeometry geometry;
};

QMatrix ClosureGeometry::generators() const {
  QMatrix g;
  for (const auto& l : lineality) {
    g.push_back(l);
    g.push_back(negate(l));
  }
  for (const auto& r : rays) g.push_back(r);
  return g;
}

ConeSpec ConeSpec::polyhedral_h(std::size_t n, std::vector<HalfspaceRow> rows, bool include_origin) {
  bool strict = false;
  for (const auto& r : rows) {
    if (r.a.size() != n) throw DimensionMismatch("cone row length differs from dimension");
    strict = strict || r.strict;
  }
  if (strict && !include_origin) {
    throw PreconditionError("a strict system without the origin is not a cone");
  }
  ConeSpec c;
  c.kind_ = Kind::PolyhedralH;
  c.n_ = n;
  c.rows_ = std::move(rows);
  c.include_origin_ = include_origin;
  c.cache_ = std::make_shared<Cache>();
  return c;
}

ConeSpec ConeSpec::polyhedral_v(std::size_t n, QMatrix generators) {
  for (const auto& g : generators) {
    if (g.size() != n) throw DimensionMismatch("cone generator length differs from dimension");
  }
  ConeSpec c;
  c.kind_ = Kind::PolyhedralV;
  c.n_ = n;
  c.generators_ = std::move(generators);
  c.cache_ = std::make_shared<Cache>();
  return c;
}

ConeSpec ConeSpec::matrix_psd(std::size_t d) {
  if (d == 0) throw PreconditionError("matrix size must be positive");
  ConeSpec c;
  c.kind_ = Kind::MatrixPSD;
  c.d_ = d;
  c.n_ = d * d;
  c.cache_ = std::make_shared<Cache>();
  return c;
}

bool ConeSpec::has_strict_rows() const {
  for (const auto& r : rows_) {
    if (r.strict) return true;
  }
  return false;
}

namespace {

/// Whether {weak rows >= 0, strict rows > 0} has a point.
bool strict_part_nonempty(const std::vector<HalfspaceRow>& rows, std::size_t n) {
  LinearProgram lp;
  lp.num_vars = n + 1;
  lp.objective = unit_vector(n + 1, n);
  lp.maximize = true;
  for (const auto& r : rows) {
    QVector a = r.a;
    a.push_back(r.strict ? Rational(-1) : Rational(0));
    lp.inequalities.push_back({a, 0});
  }
  lp.inequalities.push_back({scale(-1, unit_vector(n + 1, n)), -1});
  LPResult res = solve(lp);
  return res.status == LPStatus::Optimal && res.value > 0;
}

ClosureGeometry compute_geometry(const ConeSpec& c) {
  const std::size_t n = c.dim();
  if (n > kEnumerationDimensionCap) {
    throw CapabilityError("cone enumeration is limited to dimension " + std::to_string(kEnumerationDimensionCap));
  }
  ClosureGeometry g;
  if (c.kind() == ConeSpec::Kind::PolyhedralH) {
    if (c.rows().size() > kGeneratorRowCap) {
      throw CapabilityError("cone enumeration is limited to " + std::to_string(kGeneratorRowCap) + " rows");
    }
    if (c.has_strict_rows() && !strict_part_nonempty(c.rows(), n)) {
      for (std::size_t i = 0; i < n; ++i) {
        g.rows.push_back(unit_vector(n, i));
        g.rows.push_back(negate(unit_vector(n, i)));
      }
    } else {
      for (const auto& r : c.rows()) g.rows.push_back(r.a);
    }
  } else {
    if (c.input_generators().size() > kGeneratorRowCap) {
      throw CapabilityError("cone enumeration is limited to " + std::to_string(kGeneratorRowCap) + " generators");
    }
    RayEnumeration dual = enumerate_rays(c.input_generators(), {}, n);
    for (const auto& l : dual.lineality) {
      g.rows.push_back(l);
      g.rows.push_back(negate(l));
    }
    for (const auto& r : dual.rays) g.rows.push_back(r);
  }
  RayEnumeration e = enumerate_rays(g.rows, {}, n);
  g.lineality = std::move(e.lineality);
  g.rays = std::move(e.rays);
  return g;
}

}  // namespace

const ClosureGeometry& ConeSpec::geometry() const {
  if (!is_polyhedral()) throw CapabilityError("matrix cones have no finite generating set");
  std::call_once(cache_->once, [this] { cache_->geometry = compute_geometry(*this); });
  return cache_->geometry;
}

bool member(const ConeSpec& c, const QVector& h, double tol) {
  if (h.size() != c.dim()) throw DimensionMismatch("element length differs from cone dimension");
  switch (c.kind()) {
    case ConeSpec::Kind::PolyhedralH: {
      if (is_zero(h)) return true;
      for (const auto& r : c.rows()) {
        int s = sgn(dot(r.a, h));
        if (s < 0 || (r.strict && s == 0)) return false;
      }
      return true;
    }
    case ConeSpec::Kind::PolyhedralV: {
      if (is_zero(h)) return true;
      const auto& gens = c.input_generators();
      LinearProgram lp;
      lp.num_vars = gens.size();
      lp.objective = zeros(gens.size());
      lp.nonnegative.assign(gens.size(), true);
      for (std::size_t i = 0; i < c.dim(); ++i) {
        QVector row(gens.size());
        for (std::size_t k = 0; k < gens.size(); ++k) row[k] = gens[k][i];
        lp.equalities.push_back({row, h[i]});
      }
      return solve(lp).status == LPStatus::Optimal;
    }
    case ConeSpec::Kind::MatrixPSD:
      return min_eigenvalue(h, c.matrix_size()) >= -tol;
  }
  return false;
}

ConeSpec closure(const ConeSpec& c) {
  if (c.kind() != ConeSpec::Kind::PolyhedralH || !c.has_strict_rows()) return c;
  std::vector<HalfspaceRow> rows;
  for (const auto& a : c.geometry().rows) rows.push_back({a, false});
  return ConeSpec::polyhedral_h(c.dim(), std::move(rows));
}

ConeSpec dual_cone(const ConeSpec& c) {
  if (!c.is_polyhedral()) {
    throw CapabilityError("the dual of a matrix cone is not available in coordinate form");
  }
  std::vector<HalfspaceRow> rows;
  for (const auto& g : c.geometry().generators()) rows.push_back({g, false});
  return ConeSpec::polyhedral_h(c.dim(), std::move(rows));
}

QMatrix generators(const ConeSpec& c) { return c.geometry().generators(); }

bool is_pointed(const ConeSpec& c) {
  if (!c.is_polyhedral()) return true;
  // With a strict row b, h and -h would need b.h > 0 and -b.h > 0.
  if (c.has_strict_rows()) return true;
  return c.geometry().lineality.empty();
}

bool is_closed(const ConeSpec& c) {
  if (c.kind() != ConeSpec::Kind::PolyhedralH || !c.has_strict_rows()) return true;
  const ClosureGeometry& g = c.geometry();
  if (g.lineality.empty() && g.rays.empty()) return true;
  QMatrix gens = g.generators();
  for (const auto& r : c.rows()) {
    if (!r.strict) continue;
    for (const auto& v : gens) {
      if (sgn(dot(r.a, v)) == 0) return false;
    }
  }
  return true;
}

}  // namespace ordspace
