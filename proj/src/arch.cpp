#include "ordspace/arch.hpp"

#include <algorithm>

#include "ordspace/errors.hpp"
#include "ordspace/lp.hpp"
#include "ordspace/order.hpp"
#include "ordspace/rays.hpp"

namespace ordspace {

namespace {

QMatrix basis_of(const QMatrix& vectors, std::size_t n) {
  QMatrix out;
  for (std::size_t i : independent_subset(vectors, n)) out.push_back(vectors[i]);
  return out;
}

void require_polyhedral(const OrderedSpace& v, const char* what) {
  if (!v.is_polyhedral()) throw CapabilityError(std::string(what) + " needs a polyhedral cone");
}

void require_map_shape(const QMatrix& phi, const OrderedSpace& v, const OrderedSpace& w) {
  if (phi.size() != w.dim()) throw DimensionMismatch("map has " + std::to_string(phi.size()) + " rows, target dimension is " + std::to_string(w.dim()));
  for (const auto& row : phi) {
    if (row.size() != v.dim()) throw DimensionMismatch("map columns do not match the source dimension");
  }
}

/// Closed cone generated by the images of gens, in H form.
ConeSpec image_cone(const QMatrix& projection, const QMatrix& gens, std::size_t k) {
  QMatrix images;
  for (const auto& g : gens) {
    QVector y = mat_vec(projection, g);
    if (is_zero(y)) continue;
    normalize_direction(y);
    if (std::find(images.begin(), images.end(), y) == images.end()) images.push_back(std::move(y));
  }
  ConeSpec vform = ConeSpec::polyhedral_v(k, images);
  std::vector<HalfspaceRow> rows;
  for (const auto& a : generators(dual_cone(vform))) rows.push_back({a, false});
  return ConeSpec::polyhedral_h(k, std::move(rows));
}

QuotientResult quotient_by(const OrderedSpace& v, const QMatrix& kernel, const QMatrix& cone_generators) {
  std::size_t n = v.dim();
  QuotientResult r{v, {}, {}, kernel, false};
  Complement c = complement_coordinates(kernel, n);
  r.projection = c.projection;
  r.section = c.section;
  std::size_t k = c.projection.size();
  r.space = OrderedSpace::make(image_cone(c.projection, cone_generators, k), mat_vec(c.projection, v.unit));
  r.space.tol = v.tol;
  return r;
}

QuotientResult identity_result(const OrderedSpace& v) {
  std::size_t n = v.dim();
  return QuotientResult{v, identity(n), identity(n), {}, true};
}

}  // namespace

DandN compute_D_and_N(const OrderedSpace& v) {
  if (!v.is_polyhedral()) return {v.cone, {}};
  return {closure(v.cone), v.cone.geometry().lineality};
}

Complement complement_coordinates(const QMatrix& subspace, std::size_t n) {
  Rref red = rref(subspace, n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : red.pivots) is_pivot[p] = true;
  Complement c;
  std::size_t k = n - red.pivots.size();
  c.section.assign(n, zeros(k));
  std::size_t col = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    // q(x)_f = x_f - sum_i x_{p_i} R_i[f] kills every reduced row.
    QVector row = zeros(n);
    row[f] = 1;
    for (std::size_t i = 0; i < red.pivots.size(); ++i) row[red.pivots[i]] = -red.rows[i][f];
    c.projection.push_back(std::move(row));
    c.section[f][col] = 1;
    ++col;
  }
  return c;
}

QuotientResult archimedeanize(const OrderedSpace& v) {
  if (!v.is_polyhedral()) return identity_result(v);  // the matrix cone is closed and pointed
  const ClosureGeometry& g = v.cone.geometry();
  if (g.lineality.empty()) {
    QuotientResult r = identity_result(v);
    if (!is_closed(v.cone)) {
      r.space = OrderedSpace::make(closure(v.cone), v.unit, v.labels);
      r.space.tol = v.tol;
    }
    return r;
  }
  return quotient_by(v, g.lineality, g.generators());
}

IdealCheck is_order_ideal(const OrderedSpace& v, const QMatrix& j) {
  require_polyhedral(v, "order ideal test");
  std::size_t n = v.dim();
  for (const auto& x : j) {
    if (x.size() != n) throw DimensionMismatch("ideal vector has the wrong dimension");
  }
  const ClosureGeometry& g = v.cone.geometry();
  QMatrix jb = basis_of(j, n);
  IdealCheck out;
  // {0} is an ideal of any pointed cone: 0 <= q <= 0 forces q = 0.
  if (jb.empty()) {
    out.is_ideal = true;
    return out;
  }
  // A lineality vector l satisfies 0 <= l <= 0, so it must lie in J.
  for (const auto& l : g.lineality) {
    if (!in_span(jb, l, n)) {
      out.witness_p = zeros(n);
      out.witness_q = l;
      out.reason = "lineality direction of the closed cone lies outside J";
      return out;
    }
  }
  QMatrix j_perp = null_space(jb, n);
  if (j_perp.empty()) {
    out.is_ideal = true;
    return out;
  }
  // p* = sum of generators of J ∩ closure(C) lies in the relative interior of
  // that face, so [0, p*] contains [0, p] up to scaling for every p in J ∩ C.
  RayEnumeration face = enumerate_rays(g.rows, j_perp, n);
  QVector p = zeros(n);
  for (const auto& r : face.rays) p = add(p, r);
  if (is_zero(p)) {
    out.is_ideal = true;
    return out;
  }
  // Any q in [0, p*] with a nonzero J-perp coordinate is a violation.
  LinearProgram lp;
  lp.num_vars = n;
  for (const auto& a : g.rows) {
    lp.inequalities.push_back({a, 0});
    lp.inequalities.push_back({negate(a), -dot(a, p)});
  }
  for (const auto& f : j_perp) {
    for (int sign : {1, -1}) {
      lp.objective = scale(sign, f);
      LPResult res = solve(lp);
      if (res.status == LPStatus::Optimal && res.value > 0) {
        out.witness_p = p;
        out.witness_q = res.witness;
        out.reason = "0 <= q <= p with p in J but q outside J";
        return out;
      }
    }
  }
  out.is_ideal = true;
  return out;
}

QuotientResult quotient(const OrderedSpace& v, const QMatrix& j) {
  require_polyhedral(v, "quotient");
  std::size_t n = v.dim();
  QMatrix jb = basis_of(j, n);
  if (jb.empty()) return identity_result(v);
  IdealCheck ideal = is_order_ideal(v, jb);
  if (!ideal.is_ideal) {
    throw NotOrderIdeal("subspace is not an order ideal: q = (" + [&] {
      std::string s;
      for (std::size_t i = 0; i < n; ++i) s += (i ? ", " : "") + to_string((*ideal.witness_q)[i]);
      return s;
    }() + ")");
  }
  if (in_span(jb, v.unit, n)) throw PreconditionError("order unit lies in the ideal");
  if (!is_closed(v.cone)) throw CapabilityError("quotient by a nonzero ideal needs a closed cone; use arch_quotient");
  QuotientResult r = quotient_by(v, jb, v.cone.geometry().generators());
  if (!is_pointed(r.space.cone)) throw InternalError("image cone of an order ideal quotient is not pointed");
  return r;
}

QuotientResult arch_quotient(const OrderedSpace& v, const QMatrix& j) {
  require_polyhedral(v, "arch_quotient");
  std::size_t n = v.dim();
  QMatrix jb = basis_of(j, n);
  IdealCheck ideal = is_order_ideal(v, jb);
  if (!ideal.is_ideal) throw NotOrderIdeal("subspace is not an order ideal");
  if (jb.empty()) return archimedeanize(v);
  // closure(C) + J is finitely generated, hence closed; its lineality is N_J.
  QMatrix gens = v.cone.geometry().generators();
  for (const auto& x : jb) {
    gens.push_back(x);
    gens.push_back(negate(x));
  }
  ConeSpec sum = ConeSpec::polyhedral_v(n, gens);
  QMatrix n_j = sum.geometry().lineality;
  if (n_j.empty()) {
    QuotientResult r = identity_result(v);
    r.space = OrderedSpace::make(closure(v.cone), v.unit, v.labels);
    r.space.tol = v.tol;
    return r;
  }
  if (in_span(n_j, v.unit, n)) throw PreconditionError("order unit lies in N_J");
  return quotient_by(v, n_j, gens);
}

ComplexElement project(const QuotientResult& q, const ComplexElement& x) { return apply(q.projection, x); }

ComplexElement lift(const QuotientResult& q, const ComplexElement& y) { return apply(q.section, y); }

bool is_unital(const OrderedSpace& v, const QMatrix& phi, const OrderedSpace& w) {
  require_map_shape(phi, v, w);
  return mat_vec(phi, v.unit) == w.unit;
}

bool is_positive_map(const OrderedSpace& v, const QMatrix& phi, const OrderedSpace& w) {
  require_map_shape(phi, v, w);
  require_polyhedral(v, "positivity of a map");
  // Positive on C iff positive on its closure when the target cone is closed.
  for (const auto& g : v.cone.geometry().generators()) {
    if (!member(w.cone, mat_vec(phi, g), w.tol)) return false;
  }
  return true;
}

FactorResult factor_through(const OrderedSpace& v, const QMatrix& phi, const OrderedSpace& w) {
  require_map_shape(phi, v, w);
  if (!is_archimedean(w)) throw NotArchimedean("target space is not Archimedean");
  if (!is_unital(v, phi, w)) throw PreconditionError("map is not unital");
  if (v.is_polyhedral() && !is_positive_map(v, phi, w)) throw PreconditionError("map is not positive");
  QuotientResult arch = archimedeanize(v);
  QMatrix induced = mat_mul(phi, arch.section);
  FactorResult out{std::move(arch), std::move(induced)};
  out.commutes = mat_mul(out.induced, out.arch.projection) == phi;
  out.induced_unital = mat_vec(out.induced, out.arch.space.unit) == w.unit;
  out.induced_positive = true;
  if (out.arch.space.is_polyhedral()) {
    for (const auto& g : out.arch.space.cone.geometry().generators()) {
      out.induced_positive = out.induced_positive && member(w.cone, mat_vec(out.induced, g), w.tol);
    }
  }
  return out;
}

FirstIsomorphism first_isomorphism(const OrderedSpace& v, const QMatrix& phi, const OrderedSpace& w) {
  require_map_shape(phi, v, w);
  require_polyhedral(v, "first_isomorphism");
  require_polyhedral(w, "first_isomorphism");
  if (!is_archimedean(v) || !is_archimedean(w)) throw NotArchimedean("first_isomorphism needs Archimedean spaces");
  if (!is_unital(v, phi, w)) throw PreconditionError("map is not unital");
  if (!is_positive_map(v, phi, w)) throw PreconditionError("map is not positive");
  std::size_t n = v.dim();
  std::size_t m = w.dim();
  QMatrix kernel = null_space(phi, n);
  IdealCheck ideal = is_order_ideal(v, kernel);
  if (!ideal.is_ideal) throw InternalError("kernel of a positive unital map failed the order ideal test");
  QuotientResult quo = arch_quotient(v, kernel);
  FirstIsomorphism out{std::move(kernel), std::move(ideal), std::move(quo), false, {}, false, false, std::nullopt, false};
  // N_J contains J; equal dimensions make them equal.
  out.null_space_is_kernel = out.quotient.kernel.size() == out.kernel.size();
  out.induced = mat_mul(phi, out.quotient.section);
  out.induced_injective = rank(out.induced, out.quotient.projection.size()) == out.quotient.projection.size();

  // W+ ∩ im(phi) against phi(V+), both finitely generated.
  QMatrix image_cols = transpose(phi, n);
  QMatrix image_basis = basis_of(image_cols, m);
  QMatrix im_perp = image_basis.empty() ? identity(m) : null_space(image_basis, m);
  RayEnumeration target = enumerate_rays(w.cone.geometry().rows, im_perp, m);
  QMatrix images;
  for (const auto& g : v.cone.geometry().generators()) images.push_back(mat_vec(phi, g));
  ConeSpec phi_cone = ConeSpec::polyhedral_v(m, images);
  out.image_condition = true;
  QMatrix target_gens = target.rays;
  for (const auto& l : target.lineality) {
    target_gens.push_back(l);
    target_gens.push_back(negate(l));
  }
  for (const auto& t : target_gens) {
    if (!member(phi_cone, t)) {
      out.image_condition = false;
      out.image_witness = t;
      break;
    }
  }
  out.is_order_isomorphism = out.null_space_is_kernel && out.induced_injective && out.image_condition;
  return out;
}

}  // namespace ordspace
