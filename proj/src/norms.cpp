#include "ordspace/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ordspace/arch.hpp"
#include "ordspace/errors.hpp"
#include "ordspace/lp.hpp"
#include "ordspace/order.hpp"
#include "ordspace/psd.hpp"

namespace ordspace {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------- scalars

Scalar sqrt_down(const Rational& sq) {
  Rational root;
  if (exact_sqrt(sq, root)) return Scalar(root);
  return Scalar::approx(sqrt_lower(sq));
}

Scalar sqrt_up(const Rational& sq) {
  Rational root;
  if (exact_sqrt(sq, root)) return Scalar(root);
  return Scalar::approx(sqrt_upper(sq));
}

double down(double x) { return std::nextafter(x, -INFINITY); }
double up(double x) { return std::nextafter(x, INFINITY); }

bool scalar_le(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() <= b.exact();
  return a.to_double() <= b.to_double();
}

Rational sq(const Rational& a) { return a * a; }

/// |lambda| for a decomposition coefficient, rounded up when irrational.
Rational modulus_up(const Rational& re, const Rational& im) {
  Rational m2 = re * re + im * im;
  Rational root;
  if (exact_sqrt(m2, root)) return root;
  return from_double(sqrt_upper(m2));
}

/// (cos, sin) of an angle near theta as an exact rational point on the unit circle.
std::pair<Rational, Rational> rational_phase(double theta, long max_den) {
  theta = std::remainder(theta, 2 * kPi);
  bool flip = std::abs(theta) > kPi / 2;
  if (flip) theta += theta > 0 ? -kPi : kPi;
  Rational t = rationalize(std::tan(theta / 2), max_den);
  Rational d = 1 + t * t;
  Rational c = (1 - t * t) / d;
  Rational s = 2 * t / d;
  if (flip) return {-c, -s};
  return {c, s};
}

bool parallel(const QVector& x, const QVector& y) { return rank({x, y}, x.size()) <= 1; }

QVector stack(const QVector& a, const QVector& b) {
  QVector out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

CertifiedInterval make_interval(Scalar lower, Scalar upper) {
  return CertifiedInterval{std::move(lower), std::move(upper), 0.0, false, 0, {}, std::nullopt, std::nullopt};
}

// ---------------------------------------------------------------- polyhedral minimal

CertifiedInterval exact_interval(const Rational& value_sq, const std::string& notes) {
  CertifiedInterval iv = make_interval(sqrt_down(value_sq), sqrt_up(value_sq));
  iv.tolerance_met = true;
  iv.method_notes = notes;
  return iv;
}

CertifiedInterval polyhedral_minimal(const OrderedSpace& space, const ComplexElement& v) {
  Rational best = 0;
  const RealFunctional* arg = nullptr;
  std::vector<RealFunctional> states = state_polytope(space).extreme_states;
  for (const auto& f : states) {
    Rational m = evaluate(f, v).abs_squared();
    if (!arg || m > best) {
      best = m;
      arg = &f;
    }
  }
  CertifiedInterval iv = exact_interval(best, "maximum of |f(v)| over all extreme states, exact on squares");
  if (arg) iv.lower_certificate = LowerCertificate{LowerCertificate::Kind::State, arg->coeffs, {}, {}, {}, {}, best};
  return iv;
}

// ---------------------------------------------------------------- parallel shortcut

/// v = (a + ib) h: every order norm equals |a + ib| ||h||.
CertifiedInterval parallel_norm(const OrderedSpace& space, const ComplexElement& v, NormKind kind) {
  std::size_t n = space.dim();
  QVector h;
  Rational a, b;
  if (!is_zero(v.re)) {
    h = v.re;
    a = 1;
    QVector c;
    in_span({h}, v.im, n, &c);
    b = c[0];
  } else {
    h = v.im;
    a = 0;
    b = 1;
  }
  if (is_zero(h)) {
    CertifiedInterval iv = exact_interval(0, "zero element");
    iv.upper_certificate = Decomposition{};
    return iv;
  }
  StateInterval si = state_interval(space, h);
  Rational norm_h = std::max(abs(si.alpha.exact()), abs(si.beta.exact()));
  const RealFunctional& f = abs(si.alpha.exact()) > abs(si.beta.exact()) ? *si.alpha_state : *si.beta_state;
  Rational value_sq = (a * a + b * b) * norm_h * norm_h;
  CertifiedInterval iv = exact_interval(value_sq, "element is a complex multiple of a hermitian element");
  iv.lower_certificate = LowerCertificate{LowerCertificate::Kind::State, f.coeffs, {}, {}, {}, {}, evaluate(f, v).abs_squared()};
  Decomposition d;
  if (kind == NormKind::Decomposition) {
    // h = p1 - p2 with p1 + p2 = ||h|| e.
    QVector ne = scale(norm_h, space.unit);
    d.terms.push_back({a, b, scale(Rational(1, 2), add(ne, h)), Decomposition::Kind::Positive});
    d.terms.push_back({-a, -b, scale(Rational(1, 2), sub(ne, h)), Decomposition::Kind::Positive});
  } else {
    d.terms.push_back({a, b, h, Decomposition::Kind::Hermitian});
  }
  iv.upper_certificate = d;
  return iv;
}

// ---------------------------------------------------------------- column generation

/// min sum_j cost_j mu_j subject to sum_j mu_j column_j = (x, y, 0), mu >= 0, where
/// phase columns are (c a, s a, bottom(a)) for atoms a and rational unit (c, s).
struct PhaseProblem {
  std::size_t n = 0;
  std::size_t extra = 0;
  QMatrix atoms;
  std::vector<QVector> bottoms;  // per atom, length extra
  std::vector<Rational> atom_cost;
  QMatrix fixed_columns;
  std::vector<Rational> fixed_cost;
  /// Decomposition term for a fixed column at a given weight, when it carries one.
  std::function<std::optional<Decomposition::Term>(std::size_t, const Rational&)> fixed_term;
  Decomposition::Kind atom_kind = Decomposition::Kind::Hermitian;
};

class ColumnGeneration {
 public:
  ColumnGeneration(const PhaseProblem& p, const ComplexElement& v)
      : p_(p), sx_(2 * p.n + p.extra, stack(stack(v.re, v.im), zeros(p.extra))) {
    for (std::size_t j = 0; j < p_.fixed_columns.size(); ++j) sx_.add_column(p_.fixed_columns[j], -p_.fixed_cost[j]);
    for (std::size_t i = 0; i < p_.atoms.size(); ++i) {
      add_phase(i, 1, 0);
      add_phase(i, 0, 1);
      add_phase(i, -1, 0);
      add_phase(i, 0, -1);
    }
  }

  void solve() {
    LPStatus st = sx_.solve();
    if (st != LPStatus::Optimal) throw InternalError(std::string("phase decomposition LP not optimal: ") + to_string(st));
    dual_ = sx_.dual();
  }

  Rational upper() const { return -sx_.value(); }
  const QVector& dual() const { return dual_; }

  /// (a.y1, a.y2) for an atom under the current dual.
  std::pair<Rational, Rational> pairing(std::size_t i) const {
    Rational p1 = 0, p2 = 0;
    const QVector& a = p_.atoms[i];
    for (std::size_t k = 0; k < p_.n; ++k) {
      p1 += a[k] * dual_[k];
      p2 += a[k] * dual_[p_.n + k];
    }
    return {p1, p2};
  }

  /// bottom(a).y3 + cost(a): the phase column is priced out iff |pairing| <= threshold.
  Rational threshold(std::size_t i) const {
    Rational t = p_.atom_cost[i];
    for (std::size_t k = 0; k < p_.extra; ++k) t += p_.bottoms[i][k] * dual_[2 * p_.n + k];
    return t;
  }

  /// Adds the best rational phase column of every violated atom; returns how many were added.
  int add_cuts(long max_den) {
    int added = 0;
    for (std::size_t i = 0; i < p_.atoms.size(); ++i) {
      auto [p1, p2] = pairing(i);
      Rational k = threshold(i);
      if (p1 * p1 + p2 * p2 <= k * k && k >= 0) continue;
      double theta = std::atan2(-p2.get_d(), -p1.get_d());
      auto [c, s] = rational_phase(theta, max_den);
      if (c * p1 + s * p2 + k >= 0) continue;  // rounding left it priced out
      add_phase(i, c, s);
      ++added;
    }
    return added;
  }

  Decomposition decomposition() const {
    QVector mu = sx_.primal();
    Decomposition d;
    std::size_t nf = p_.fixed_columns.size();
    for (std::size_t j = 0; j < nf; ++j) {
      if (mu[j] == 0 || !p_.fixed_term) continue;
      if (auto t = p_.fixed_term(j, mu[j])) d.terms.push_back(*t);
    }
    for (std::size_t j = 0; j < phases_.size(); ++j) {
      const Rational& w = mu[nf + j];
      if (w == 0) continue;
      const auto& [i, c, s] = phases_[j];
      d.terms.push_back({w * c, w * s, p_.atoms[i], p_.atom_kind});
    }
    return d;
  }

 private:
  void add_phase(std::size_t i, const Rational& c, const Rational& s) {
    QVector col = stack(scale(c, p_.atoms[i]), scale(s, p_.atoms[i]));
    if (p_.extra) col = stack(col, p_.bottoms[i]);
    sx_.add_column(col, -p_.atom_cost[i]);
    phases_.push_back({i, c, s});
  }

  const PhaseProblem& p_;
  StandardSimplex sx_;
  QVector dual_;
  std::vector<std::tuple<std::size_t, Rational, Rational>> phases_;
};

void set_lower(CertifiedInterval& iv, const LowerCertificate& cert) {
  if (!iv.lower_certificate || cert.bound_squared > iv.lower_certificate->bound_squared) {
    iv.lower_certificate = cert;
    iv.lower = sqrt_down(cert.bound_squared);
  }
}

void finish(CertifiedInterval& iv, double tol) {
  iv.tol = tol;
  iv.tolerance_met = iv.width() <= tol;
}

/// Runs cut rounds until the bracket closes or the budget is spent.
template <typename LowerFn>
void refine(ColumnGeneration& cg, CertifiedInterval& iv, const NormOptions& opts, LowerFn lower_from_dual) {
  long max_den = 64;
  for (int round = 0;; ++round) {
    cg.solve();
    iv.rounds = round + 1;
    Rational upper = cg.upper();
    if (!iv.upper.is_exact() || upper < iv.upper.exact()) {
      iv.upper = Scalar(upper);
      iv.upper_certificate = cg.decomposition();
    }
    if (auto cert = lower_from_dual(cg)) set_lower(iv, *cert);
    if (iv.width() <= opts.tol || round + 1 >= opts.max_rounds) break;
    int added = cg.add_cuts(max_den);
    while (added == 0 && max_den < (1L << 40)) {
      max_den *= 8;
      added = cg.add_cuts(max_den);
    }
    if (added == 0) break;
  }
}

QMatrix unique_up_to_sign(const QMatrix& vs) {
  QMatrix out;
  for (const auto& b : vs) {
    QVector nb = negate(b);
    if (std::find(out.begin(), out.end(), b) == out.end() && std::find(out.begin(), out.end(), nb) == out.end()) {
      out.push_back(b);
    }
  }
  return out;
}

CertifiedInterval polyhedral_maximal(const OrderedSpace& space, const ComplexElement& v, const NormOptions& opts) {
  std::size_t n = space.dim();
  if (parallel(v.re, v.im)) {
    CertifiedInterval iv = parallel_norm(space, v, NormKind::Maximal);
    finish(iv, opts.tol);
    return iv;
  }
  CertifiedInterval iv = polyhedral_minimal(space, v);
  iv.upper = Scalar::approx(INFINITY);
  iv.upper_certificate.reset();
  iv.method_notes = "phase column generation over unit-ball vertices; exact dual bound";

  PhaseProblem p;
  p.n = n;
  p.atoms = unique_up_to_sign(unit_ball_vertices(space));
  p.atom_cost.assign(p.atoms.size(), 1);
  const QMatrix& lin = space.cone.geometry().lineality;
  for (const auto& l : lin) {
    for (int sign : {1, -1}) {
      QVector sl = scale(sign, l);
      p.fixed_columns.push_back(stack(sl, zeros(n)));
      p.fixed_columns.push_back(stack(zeros(n), sl));
      p.fixed_cost.push_back(0);
      p.fixed_cost.push_back(0);
    }
  }
  p.fixed_term = [&](std::size_t j, const Rational& w) -> std::optional<Decomposition::Term> {
    const QVector& l = lin[j / 4];
    Rational sign = (j / 2) % 2 == 0 ? 1 : -1;
    if (j % 2 == 0) return Decomposition::Term{w * sign, 0, l, Decomposition::Kind::Hermitian};
    return Decomposition::Term{0, w * sign, l, Decomposition::Kind::Hermitian};
  };

  ColumnGeneration cg(p, v);
  refine(cg, iv, opts, [&](const ColumnGeneration& g) -> std::optional<LowerCertificate> {
    Rational rho2 = 1;
    for (std::size_t i = 0; i < p.atoms.size(); ++i) {
      auto [p1, p2] = g.pairing(i);
      rho2 = std::max(rho2, Rational(p1 * p1 + p2 * p2));
    }
    const QVector& y = g.dual();
    LowerCertificate c;
    c.kind = LowerCertificate::Kind::MaximalDual;
    c.g1 = negate(QVector(y.begin(), y.begin() + n));
    c.g2 = negate(QVector(y.begin() + n, y.begin() + 2 * n));
    Rational phi_v = dot(c.g1, v.re) + dot(c.g2, v.im);
    if (phi_v <= 0) return std::nullopt;
    c.bound_squared = phi_v * phi_v / rho2;
    return c;
  });
  finish(iv, opts.tol);
  return iv;
}

CertifiedInterval polyhedral_decomposition(const OrderedSpace& space, const ComplexElement& v, const NormOptions& opts) {
  std::size_t n = space.dim();
  if (parallel(v.re, v.im)) {
    CertifiedInterval iv = parallel_norm(space, v, NormKind::Decomposition);
    finish(iv, opts.tol);
    return iv;
  }
  CertifiedInterval iv = polyhedral_minimal(space, v);
  iv.upper = Scalar::approx(INFINITY);
  iv.upper_certificate.reset();
  iv.method_notes = "phase column generation over extreme rays; exact dual bound with a state";

  const ClosureGeometry& g = space.cone.geometry();
  const QMatrix& rows = g.rows;
  std::size_t m = rows.size();
  PhaseProblem p;
  p.n = n;
  p.extra = m;
  p.atom_kind = Decomposition::Kind::Positive;
  p.atoms = g.rays;
  for (const auto& c : g.rays) {
    QVector bottom(m);
    for (std::size_t k = 0; k < m; ++k) bottom[k] = -dot(rows[k], c);
    p.bottoms.push_back(bottom);
    p.atom_cost.push_back(0);
  }
  // Columns: s (weight on e), one slack per row, then lineality directions.
  QVector s_col = zeros(2 * n + m);
  for (std::size_t k = 0; k < m; ++k) s_col[2 * n + k] = dot(rows[k], space.unit);
  p.fixed_columns.push_back(s_col);
  p.fixed_cost.push_back(1);
  for (std::size_t k = 0; k < m; ++k) {
    QVector col = zeros(2 * n + m);
    col[2 * n + k] = -1;
    p.fixed_columns.push_back(col);
    p.fixed_cost.push_back(0);
  }
  for (const auto& l : g.lineality) {
    for (int sign : {1, -1}) {
      QVector sl = scale(sign, l);
      p.fixed_columns.push_back(stack(stack(sl, zeros(n)), zeros(m)));
      p.fixed_columns.push_back(stack(stack(zeros(n), sl), zeros(m)));
      p.fixed_cost.push_back(0);
      p.fixed_cost.push_back(0);
    }
  }
  p.fixed_term = [&, m](std::size_t j, const Rational& w) -> std::optional<Decomposition::Term> {
    if (j < 1 + m) return std::nullopt;
    std::size_t r = j - 1 - m;
    const QVector& l = g.lineality[r / 4];
    Rational sign = (r / 2) % 2 == 0 ? 1 : -1;
    if (r % 2 == 0) return Decomposition::Term{w, 0, scale(sign, l), Decomposition::Kind::Positive};
    return Decomposition::Term{0, w, scale(sign, l), Decomposition::Kind::Positive};
  };

  // A state positive on every ray, mixed into psi so rays with psi(c) = 0 stay finite.
  QVector interior = zeros(n);
  std::vector<RealFunctional> states = state_polytope(space).extreme_states;
  for (const auto& f : states) interior = add(interior, f.coeffs);
  interior = scale(Rational(1, static_cast<long>(states.size())), interior);

  ColumnGeneration cg(p, v);
  refine(cg, iv, opts, [&](const ColumnGeneration& gen) -> std::optional<LowerCertificate> {
    const QVector& y = gen.dual();
    LowerCertificate best;
    bool found = false;
    QVector g1 = negate(QVector(y.begin(), y.begin() + n));
    QVector g2 = negate(QVector(y.begin() + n, y.begin() + 2 * n));
    Rational phi_v = dot(g1, v.re) + dot(g2, v.im);
    if (phi_v <= 0) return std::nullopt;
    QVector psi = zeros(n);
    for (std::size_t k = 0; k < m; ++k) psi = axpy(psi, -y[2 * n + k], rows[k]);
    for (const Rational& t : {Rational(0), Rational(1, 1000), Rational(1, 100), Rational(1, 10), Rational(1, 2)}) {
      QVector psi_t = add(scale(1 - t, psi), scale(t, interior));
      Rational rho2 = 1;
      bool ok = true;
      for (std::size_t i = 0; i < p.atoms.size() && ok; ++i) {
        auto [p1, p2] = gen.pairing(i);
        Rational num = p1 * p1 + p2 * p2;
        Rational den = dot(psi_t, p.atoms[i]);
        if (den == 0) {
          ok = num == 0;
        } else {
          rho2 = std::max(rho2, Rational(num / (den * den)));
        }
      }
      if (!ok) continue;
      Rational b2 = phi_v * phi_v / rho2;
      if (!found || b2 > best.bound_squared) {
        best = LowerCertificate{LowerCertificate::Kind::DecompositionDual, g1, g2, psi_t, {}, {}, b2};
        found = true;
      }
    }
    if (!found) return std::nullopt;
    return best;
  });
  finish(iv, opts.tol);
  return iv;
}

// ---------------------------------------------------------------- matrix cones

using CVec = std::pair<QVector, QVector>;  // real and imaginary parts

/// Rational complex vector close to u, scaled so its largest entry is exactly 1.
CVec rational_vector(const Eigen::VectorXcd& u) {
  Eigen::Index k = 0;
  for (Eigen::Index i = 1; i < u.size(); ++i) {
    if (std::abs(u(i)) > std::abs(u(k))) k = i;
  }
  Eigen::VectorXcd w = u / u(k);
  CVec out{QVector(u.size()), QVector(u.size())};
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    out.first[i] = rationalize(w(i).real(), 1000000);
    out.second[i] = rationalize(w(i).imag(), 1000000);
  }
  out.first[k] = 1;
  out.second[k] = 0;
  return out;
}

/// y = X u in exact arithmetic.
CVec mul(const ComplexMatrixQ& x, const CVec& u) {
  std::size_t d = x.re.size();
  CVec out{zeros(d), zeros(d)};
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      out.first[j] += x.re[j][k] * u.first[k] - x.im[j][k] * u.second[k];
      out.second[j] += x.re[j][k] * u.second[k] + x.im[j][k] * u.first[k];
    }
  }
  return out;
}

Rational norm_sq(const CVec& u) { return dot(u.first, u.first) + dot(u.second, u.second); }

/// |u* X u|^2 / |u|^4
Rational numerical_radius_bound(const ComplexMatrixQ& x, const CVec& u) {
  CVec xu = mul(x, u);
  // u* w = sum conj(u_j) w_j
  Rational re = dot(u.first, xu.first) + dot(u.second, xu.second);
  Rational im = dot(u.first, xu.second) - dot(u.second, xu.first);
  Rational n2 = norm_sq(u);
  return (re * re + im * im) / (n2 * n2);
}

Rational operator_norm_bound(const ComplexMatrixQ& x, const CVec& u) { return norm_sq(mul(x, u)) / norm_sq(u); }

/// Smallest convenient rational r with ||H|| <= r, verified exactly.
Rational certified_op_norm(const QVector& coords, std::size_t d) {
  ComplexMatrixQ h = hermitian_from_coords(coords, d);
  double est = std::max(std::abs(max_eigenvalue(coords, d)), std::abs(min_eigenvalue(coords, d)));
  for (long den : {1000L, 1000000L}) {
    Rational r = rationalize(est, den);
    if (op_norm_at_most(h, r)) return r;
  }
  for (double pad = 1e-12;; pad *= 16) {
    Rational r = from_double(est * (1 + pad) + pad);
    if (op_norm_at_most(h, r)) return r;
  }
}

CertifiedInterval psd_minimal(const OrderedSpace& space, const ComplexElement& v, const NormOptions& opts) {
  std::size_t d = space.cone.matrix_size();
  ComplexMatrixQ xq = complex_matrix(v, d);
  Eigen::MatrixXcd x = to_eigen(xq);
  double scale_pad = 1e-12 * (x.norm() + 1);
  CertifiedInterval iv = make_interval(Scalar(Rational(0)), Scalar::approx(INFINITY));
  iv.method_notes = "numerical radius: phase grid of largest eigenvalues of Re(e^{i t} X), bounded by max / cos(pi / K)";
  if (x.norm() == 0) {
    iv.upper = Scalar(Rational(0));
    finish(iv, opts.tol);
    return iv;
  }
  long k = 64;
  for (int round = 0; round < std::max(1, opts.max_rounds); ++round) {
    double best = -INFINITY;
    Eigen::VectorXcd best_vec;
    for (long j = 0; j < k; ++j) {
      double theta = 2 * kPi * static_cast<double>(j) / static_cast<double>(k);
      std::complex<double> ph(std::cos(theta), std::sin(theta));
      Eigen::MatrixXcd a = (ph * x + std::conj(ph) * x.adjoint()) / 2.0;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
      double top = es.eigenvalues()(a.rows() - 1);
      if (top > best) {
        best = top;
        best_vec = es.eigenvectors().col(a.rows() - 1);
      }
    }
    iv.rounds = round + 1;
    // Any z has max_j Re(e^{i t_j} z) >= |z| cos(pi / K).
    iv.upper = Scalar::approx(up((best + scale_pad) / std::cos(kPi / static_cast<double>(k))));
    CVec u = rational_vector(best_vec);
    LowerCertificate c{LowerCertificate::Kind::NumericalRadius, {}, {}, {}, u.first, u.second, numerical_radius_bound(xq, u)};
    set_lower(iv, c);
    if (iv.width() <= opts.tol || k >= (1L << 20)) break;
    k *= 4;
  }
  finish(iv, opts.tol);
  return iv;
}

bool is_diagonal(const ComplexElement& v, std::size_t d) {
  for (std::size_t i = d; i < v.re.size(); ++i) {
    if (v.re[i] != 0 || v.im[i] != 0) return false;
  }
  return true;
}

QVector pad_diagonal(const QVector& diag, std::size_t d) {
  QVector out = zeros(d * d);
  std::copy(diag.begin(), diag.end(), out.begin());
  return out;
}

OrderedSpace diagonal_space(std::size_t d) {
  std::vector<HalfspaceRow> rows;
  for (std::size_t i = 0; i < d; ++i) rows.push_back({unit_vector(d, i), false});
  return OrderedSpace::make(ConeSpec::polyhedral_h(d, rows), QVector(d, Rational(1)));
}

/// Diagonal elements live in the commutative subalgebra C^d; norms and certificates transfer.
CertifiedInterval commutative_path(const ComplexElement& v, std::size_t d, NormKind kind, const NormOptions& opts) {
  OrderedSpace cd = diagonal_space(d);
  ComplexElement w{QVector(v.re.begin(), v.re.begin() + d), QVector(v.im.begin(), v.im.begin() + d)};
  CertifiedInterval iv = kind == NormKind::Maximal ? polyhedral_maximal(cd, w, opts) : polyhedral_decomposition(cd, w, opts);
  if (iv.upper_certificate) {
    for (auto& t : iv.upper_certificate->terms) t.element = pad_diagonal(t.element, d);
  }
  if (iv.lower_certificate) {
    auto& c = *iv.lower_certificate;
    if (!c.g1.empty()) c.g1 = pad_diagonal(c.g1, d);
    if (!c.g2.empty()) c.g2 = pad_diagonal(c.g2, d);
    if (!c.psi.empty()) c.psi = pad_diagonal(c.psi, d);
  }
  iv.method_notes = "diagonal element: computed in the commutative subalgebra C^d; " + iv.method_notes;
  return iv;
}

/// v = e^{-it} A + i e^{-it} B with A = Re(e^{it} v), B = Im(e^{it} v): cost ||A|| + ||B||.
/// With positive set, each piece H with ||H|| <= r becomes (rI + H)/2 - (rI - H)/2,
/// whose weighted sum is (r_A + r_B) I, so the same value bounds the decomposition norm.
void psd_phase_split_upper(const ComplexElement& v, std::size_t d, CertifiedInterval& iv, bool positive) {
  double best = INFINITY;
  std::pair<Rational, Rational> best_phase{1, 0};
  const long k = 256;
  for (long j = 0; j < k; ++j) {
    auto ph = rational_phase(2 * kPi * static_cast<double>(j) / k, 1000);
    const auto& [c, s] = ph;
    QVector a = sub(scale(c, v.re), scale(s, v.im));
    QVector b = add(scale(s, v.re), scale(c, v.im));
    double est = std::max(std::abs(max_eigenvalue(a, d)), std::abs(min_eigenvalue(a, d))) +
                 std::max(std::abs(max_eigenvalue(b, d)), std::abs(min_eigenvalue(b, d)));
    if (est < best - 1e-12) {
      best = est;
      best_phase = ph;
    }
  }
  const auto& [c, s] = best_phase;
  QVector a = sub(scale(c, v.re), scale(s, v.im));
  QVector b = add(scale(s, v.re), scale(c, v.im));
  Rational ra = certified_op_norm(a, d);
  Rational rb = certified_op_norm(b, d);
  Rational value = ra + rb;
  if (iv.upper.is_exact() && iv.upper.exact() <= value) return;
  if (!iv.upper.is_exact() && iv.upper.to_double() <= value.get_d()) return;
  iv.upper = Scalar(value);
  Decomposition dec;
  if (!positive) {
    dec.terms.push_back({c, -s, a, Decomposition::Kind::Hermitian});
    dec.terms.push_back({s, c, b, Decomposition::Kind::Hermitian});
  } else {
    QVector id = identity_coords(d);
    auto split = [&](const QVector& h, const Rational& r, const Rational& re, const Rational& im) {
      QVector ri = scale(r, id);
      dec.terms.push_back({re, im, scale(Rational(1, 2), add(ri, h)), Decomposition::Kind::Positive});
      dec.terms.push_back({-re, -im, scale(Rational(1, 2), sub(ri, h)), Decomposition::Kind::Positive});
    };
    split(a, ra, c, -s);
    split(b, rb, s, c);
  }
  iv.upper_certificate = dec;
}

/// Exact lower bound ||X||_op <= ||X||_dec from a test vector.
LowerCertificate psd_operator_lower(const ComplexElement& v, std::size_t d) {
  ComplexMatrixQ xq = complex_matrix(v, d);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(xq), Eigen::ComputeFullV);
  CVec u = rational_vector(svd.matrixV().col(0));
  return {LowerCertificate::Kind::OperatorNorm, {}, {}, {}, u.first, u.second, operator_norm_bound(xq, u)};
}

CertifiedInterval psd_maximal(const OrderedSpace& space, const ComplexElement& v, const NormOptions& opts) {
  std::size_t d = space.cone.matrix_size();
  if (is_diagonal(v, d)) return commutative_path(v, d, NormKind::Maximal, opts);
  CertifiedInterval iv = psd_minimal(space, v, opts);
  iv.upper = Scalar::approx(INFINITY);
  set_lower(iv, psd_operator_lower(v, d));
  psd_phase_split_upper(v, d, iv, false);
  iv.method_notes = "bounds only: lower from the operator norm, upper from an exact hermitian phase split";
  finish(iv, opts.tol);
  return iv;
}

CertifiedInterval psd_decomposition(const OrderedSpace& space, const ComplexElement& v, const NormOptions& opts) {
  std::size_t d = space.cone.matrix_size();
  if (is_diagonal(v, d)) return commutative_path(v, d, NormKind::Decomposition, opts);
  CertifiedInterval iv = psd_minimal(space, v, opts);
  iv.upper = Scalar::approx(INFINITY);
  set_lower(iv, psd_operator_lower(v, d));
  psd_phase_split_upper(v, d, iv, true);
  iv.method_notes = "bounds only: lower from the operator norm, upper from an exact positive phase split";
  finish(iv, opts.tol);
  return iv;
}

void require_complex(const OrderedSpace& space, const ComplexElement& v) { require_element(space, v); }

}  // namespace

std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::Minimal:
      return "m";
    case NormKind::Maximal:
      return "M";
    case NormKind::Decomposition:
      return "dec";
  }
  return "?";
}

bool CertifiedInterval::exact() const {
  return lower.is_exact() && upper.is_exact() && lower.exact() == upper.exact();
}

Scalar CertifiedInterval::value() const {
  if (exact()) return lower;
  return Scalar::approx((lower.to_double() + upper.to_double()) / 2);
}

CertifiedInterval minimal_norm(const OrderedSpace& space, const ComplexElement& v, const NormOptions& opts) {
  require_complex(space, v);
  CertifiedInterval iv = space.is_polyhedral() ? polyhedral_minimal(space, v) : psd_minimal(space, v, opts);
  finish(iv, opts.tol);
  return iv;
}

CertifiedInterval maximal_norm(const OrderedSpace& space, const ComplexElement& v, const NormOptions& opts) {
  require_complex(space, v);
  return space.is_polyhedral() ? polyhedral_maximal(space, v, opts) : psd_maximal(space, v, opts);
}

CertifiedInterval decomposition_norm(const OrderedSpace& space, const ComplexElement& v, const NormOptions& opts) {
  require_complex(space, v);
  return space.is_polyhedral() ? polyhedral_decomposition(space, v, opts) : psd_decomposition(space, v, opts);
}

CertifiedInterval norm(NormKind kind, const OrderedSpace& space, const ComplexElement& v, const NormOptions& opts) {
  switch (kind) {
    case NormKind::Minimal:
      return minimal_norm(space, v, opts);
    case NormKind::Maximal:
      return maximal_norm(space, v, opts);
    case NormKind::Decomposition:
      return decomposition_norm(space, v, opts);
  }
  throw InternalError("unknown norm kind");
}

CertifiedInterval convex_combination_norm(const OrderedSpace& space, const ComplexElement& v, const Rational& t,
                                          const NormOptions& opts) {
  if (t < 0 || t > 1) throw PreconditionError("convex combination weight must lie in [0, 1]");
  if (t == 1) return minimal_norm(space, v, opts);
  if (t == 0) return maximal_norm(space, v, opts);
  CertifiedInterval m = minimal_norm(space, v, opts);
  CertifiedInterval big = maximal_norm(space, v, opts);
  double td = t.get_d();
  CertifiedInterval iv = make_interval(Scalar(Rational(0)), Scalar(Rational(0)));
  auto combine = [&](const Scalar& a, const Scalar& b, bool lower) {
    if (a.is_exact() && b.is_exact()) return Scalar(t * a.exact() + (1 - t) * b.exact());
    double x = td * a.to_double() + (1 - td) * b.to_double();
    return Scalar::approx(lower ? down(down(x)) : up(up(x)));
  };
  iv.lower = combine(m.lower, big.lower, true);
  iv.upper = combine(m.upper, big.upper, false);
  iv.rounds = m.rounds + big.rounds;
  iv.method_notes = "t * minimal + (1 - t) * maximal; certificates are those of the two parts";
  iv.upper_certificate = big.upper_certificate;
  iv.lower_certificate = big.lower_certificate;
  finish(iv, opts.tol);
  return iv;
}

// ---------------------------------------------------------------- verification

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

/// Upper bound on ||h|| for hermitian h in the given space, exact when possible.
Rational hermitian_norm_upper(const OrderedSpace& space, const QVector& h) {
  if (space.is_polyhedral()) return order_seminorm(space, h).exact();
  return certified_op_norm(h, space.cone.matrix_size());
}

bool in_closed_cone(const OrderedSpace& space, const QVector& p) {
  if (space.is_polyhedral()) return member(closure(space.cone), p);
  return is_psd_exact(hermitian_from_coords(p, space.cone.matrix_size()));
}

bool verify_upper(const OrderedSpace& space, const ComplexElement& v, NormKind kind, const CertifiedInterval& iv,
                  std::string* why) {
  if (kind == NormKind::Minimal) {
    if (!space.is_polyhedral()) return true;  // grid bound, re-derived by recomputation only
    CertifiedInterval again = polyhedral_minimal(space, v);
    return scalar_le(again.upper, iv.upper) || fail(why, "minimal norm exceeds the claimed upper bound");
  }
  if (!iv.upper_certificate) {
    return (!iv.upper.is_exact() && std::isinf(iv.upper.to_double())) || fail(why, "upper bound has no certificate");
  }
  const Decomposition& d = *iv.upper_certificate;
  std::size_t n = space.dim();
  ComplexElement sum{zeros(n), zeros(n)};
  for (const auto& t : d.terms) sum = add(sum, complex_scale(t.re, t.im, ComplexElement::hermitian(t.element)));
  if (!(sum == v)) return fail(why, "decomposition does not reconstruct the element");
  Rational total = 0;
  if (kind == NormKind::Maximal) {
    for (const auto& t : d.terms) total += modulus_up(t.re, t.im) * hermitian_norm_upper(space, t.element);
  } else {
    QVector weighted = zeros(n);
    for (const auto& t : d.terms) {
      if (t.kind != Decomposition::Kind::Positive || !in_closed_cone(space, t.element)) {
        return fail(why, "decomposition term is not positive");
      }
      weighted = axpy(weighted, modulus_up(t.re, t.im), t.element);
    }
    if (!space.is_polyhedral()) {
      Rational claim = iv.upper.is_exact() ? iv.upper.exact() : from_double(iv.upper.to_double());
      return op_norm_at_most(hermitian_from_coords(weighted, space.cone.matrix_size()), claim) ||
             fail(why, "weighted sum of positive terms exceeds the upper bound");
    }
    total = hermitian_norm_upper(space, weighted);
  }
  if (iv.upper.is_exact()) return total <= iv.upper.exact() || fail(why, "decomposition cost exceeds the upper bound");
  return total.get_d() <= iv.upper.to_double() * (1 + 1e-12) + 1e-15 || fail(why, "decomposition cost exceeds the upper bound");
}

/// Space whose generators the dual certificate was checked against: the
/// diagonal subalgebra for transferred matrix certificates.
bool dual_space(const OrderedSpace& space, const LowerCertificate& c, OrderedSpace& out, std::size_t& used, std::string* why) {
  if (space.is_polyhedral()) {
    out = space;
    used = space.dim();
    return true;
  }
  std::size_t d = space.cone.matrix_size();
  for (const QVector* g : {&c.g1, &c.g2, &c.psi}) {
    for (std::size_t i = d; i < g->size(); ++i) {
      if ((*g)[i] != 0) return fail(why, "matrix dual certificate is not diagonal");
    }
  }
  out = diagonal_space(d);
  used = d;
  return true;
}

QVector head(const QVector& v, std::size_t k) { return QVector(v.begin(), v.begin() + static_cast<long>(std::min(k, v.size()))); }

bool verify_lower(const OrderedSpace& space, const ComplexElement& v, const CertifiedInterval& iv, std::string* why) {
  if (!iv.lower_certificate) {
    return (iv.lower.is_exact() && iv.lower.exact() == 0) || fail(why, "lower bound has no certificate");
  }
  const LowerCertificate& c = *iv.lower_certificate;
  Rational bound;
  switch (c.kind) {
    case LowerCertificate::Kind::State: {
      RealFunctional f{c.g1};
      if (f(space.unit) != 1 || !is_positive_functional(space, f)) return fail(why, "lower certificate is not a state");
      bound = evaluate(f, v).abs_squared();
      break;
    }
    case LowerCertificate::Kind::MaximalDual:
    case LowerCertificate::Kind::DecompositionDual: {
      OrderedSpace s = space;
      std::size_t k = 0;
      if (!dual_space(space, c, s, k, why)) return false;
      QVector g1 = head(c.g1, k), g2 = head(c.g2, k);
      Rational phi_v = dot(g1, head(v.re, k)) + dot(g2, head(v.im, k));
      const ClosureGeometry& geo = s.cone.geometry();
      for (const auto& l : geo.lineality) {
        if (dot(g1, l) != 0 || dot(g2, l) != 0) return fail(why, "dual functional is nonzero on the lineality space");
      }
      Rational rho2 = 1;
      if (c.kind == LowerCertificate::Kind::MaximalDual) {
        for (const auto& b : unit_ball_vertices(s)) rho2 = std::max(rho2, Rational(sq(dot(g1, b)) + sq(dot(g2, b))));
      } else {
        RealFunctional psi{head(c.psi, k)};
        if (!is_positive_functional(s, psi) || psi(s.unit) > 1) return fail(why, "psi is not a subunital positive functional");
        for (const auto& r : geo.rays) {
          Rational num = sq(dot(g1, r)) + sq(dot(g2, r));
          Rational den = psi(r);
          if (den == 0) {
            if (num != 0) return fail(why, "psi vanishes on a ray where the dual functional does not");
            continue;
          }
          rho2 = std::max(rho2, Rational(num / (den * den)));
        }
      }
      if (phi_v < 0) return fail(why, "dual value is negative");
      bound = phi_v * phi_v / rho2;
      break;
    }
    case LowerCertificate::Kind::NumericalRadius:
    case LowerCertificate::Kind::OperatorNorm: {
      if (space.is_polyhedral()) return fail(why, "matrix certificate on a polyhedral space");
      ComplexMatrixQ xq = complex_matrix(v, space.cone.matrix_size());
      CVec u{c.u_re, c.u_im};
      if (norm_sq(u) == 0) return fail(why, "zero test vector");
      bound = c.kind == LowerCertificate::Kind::NumericalRadius ? numerical_radius_bound(xq, u) : operator_norm_bound(xq, u);
      break;
    }
  }
  if (bound != c.bound_squared) return fail(why, "recorded bound does not match the certificate");
  if (iv.lower.is_exact()) return sq(iv.lower.exact()) <= bound || fail(why, "lower bound exceeds its certificate");
  double l = iv.lower.to_double();
  return l <= 0 || Rational(l) * Rational(l) <= bound || fail(why, "lower bound exceeds its certificate");
}

}  // namespace

bool verify_interval(const OrderedSpace& space, const ComplexElement& v, NormKind kind, const CertifiedInterval& iv,
                     std::string* why) {
  if (!scalar_le(iv.lower, iv.upper) && !(iv.lower.to_double() <= iv.upper.to_double())) {
    return fail(why, "lower bound exceeds upper bound");
  }
  if (kind == NormKind::Minimal && iv.lower_certificate &&
      (iv.lower_certificate->kind == LowerCertificate::Kind::MaximalDual ||
       iv.lower_certificate->kind == LowerCertificate::Kind::DecompositionDual)) {
    return fail(why, "dual certificates do not bound the minimal norm");
  }
  return verify_lower(space, v, iv, why) && verify_upper(space, v, kind, iv, why);
}

MapPositivity map_positivity_test(const OrderedSpace& v, const OrderedSpace& w, const QMatrix& phi, double tol) {
  MapPositivity out;
  out.unital = is_unital(v, phi, w);
  if (!out.unital) throw PreconditionError("map is not unital");
  if (!is_archimedean(v) || !is_archimedean(w)) throw NotArchimedean("positivity test needs Archimedean spaces");
  out.positive = is_positive_map(v, phi, w);
  QMatrix ball = unique_up_to_sign(unit_ball_vertices(v));
  std::vector<Rational> weights{0, 1, -1, Rational(1, 2), Rational(-1, 2), 2};
  NormOptions opts;
  opts.tol = tol;
  Rational best_sq = -1;
  double best = 0;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::size_t j = 0; j < ball.size(); ++j) {
      for (const auto& t : weights) {
        if (t == 0 && j > 0) continue;
        ComplexElement x{ball[i], scale(t, ball[j])};
        CertifiedInterval nx = minimal_norm(v, x, opts);
        if (nx.upper.to_double() == 0) continue;
        ComplexElement y = ordspace::apply(phi, x);
        CertifiedInterval ny = minimal_norm(w, y, opts);
        ++out.samples;
        if (nx.lower_certificate && ny.lower_certificate && w.is_polyhedral()) {
          Rational r = ny.lower_certificate->bound_squared / nx.lower_certificate->bound_squared;
          if (r > best_sq) {
            best_sq = r;
            best = std::sqrt(r.get_d());
            out.witness = x;
          }
        } else {
          double r = ny.value().to_double() / nx.value().to_double();
          if (r > best) {
            best = r;
            out.witness = x;
          }
        }
      }
    }
  }
  out.norm_estimate = best;
  out.consistent = out.positive == (best <= 1 + tol);
  return out;
}

}  // namespace ordspace
