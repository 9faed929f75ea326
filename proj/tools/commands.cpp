#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "ordspace/arch.hpp"
#include "ordspace/errors.hpp"
#include "ordspace/funcsys.hpp"
#include "ordspace/norms.hpp"
#include "ordspace/order.hpp"

namespace ordspace::cli {

namespace {

Json space_json(const OrderedSpace& s) {
  Json c;
  c["schema_version"] = kSchemaVersion;
  c["scalar_mode"] = s.is_exact() ? "exact" : "approx";
  c["dimension"] = s.dim();
  Json cone;
  switch (s.cone.kind()) {
    case ConeSpec::Kind::PolyhedralH: {
      cone["type"] = "halfspaces";
      Json rows = Json::array();
      for (const auto& r : s.cone.rows()) rows.push_back(Json{{"a", to_json(r.a)}, {"strict", r.strict}});
      cone["rows"] = rows;
      cone["include_origin"] = s.cone.include_origin();
      break;
    }
    case ConeSpec::Kind::PolyhedralV:
      cone["type"] = "generators";
      cone["generators"] = to_json(s.cone.input_generators());
      break;
    case ConeSpec::Kind::MatrixPSD:
      cone["type"] = "psd";
      cone["size"] = s.cone.matrix_size();
      break;
  }
  c["cone"] = cone;
  c["unit"] = to_json(s.unit);
  if (!s.labels.empty()) c["labels"] = s.labels;
  return c;
}

Json optional_vector(const std::optional<QVector>& v) { return v ? to_json(*v) : Json(nullptr); }

Json state_json(const std::optional<RealFunctional>& f) { return f ? to_json(f->coeffs) : Json(nullptr); }

NormOptions norm_options(const Json& inputs) {
  NormOptions o;
  o.tol = inputs.at("tol").get<double>();
  o.max_rounds = inputs.at("max_rounds").get<int>();
  if (!(o.tol > 0)) throw PreconditionError("--tol must be positive");
  if (o.max_rounds < 1) throw PreconditionError("--max-rounds must be at least 1");
  return o;
}

NormKind kind_from(const std::string& k) {
  if (k == "m") return NormKind::Minimal;
  if (k == "M") return NormKind::Maximal;
  if (k == "dec") return NormKind::Decomposition;
  throw ParseError("--kind must be m, M, dec or t");
}

QVector hermitian_input(const Json& inputs) {
  ComplexElement v = element_from_json(inputs.at("element"));
  if (!v.is_hermitian()) throw PreconditionError("this operation takes a hermitian element");
  return v.re;
}

Json quotient_json(const QuotientResult& q) {
  return Json{{"identity", q.identity},
              {"archimedean", is_archimedean(q.space)},
              {"space", space_json(q.space)},
              {"projection", to_json(q.projection)},
              {"section", to_json(q.section)},
              {"kernel", to_json(q.kernel)}};
}

Json ideal_json(const IdealCheck& c) {
  return Json{{"is_ideal", c.is_ideal},
              {"reason", c.reason},
              {"witness_p", optional_vector(c.witness_p)},
              {"witness_q", optional_vector(c.witness_q)}};
}

const std::vector<Rational>& sample_radii() {
  static const std::vector<Rational> radii = [] {
    std::vector<Rational> r;
    Rational x = 1;
    for (int k = 0; k <= 10; ++k, x /= 2) r.push_back(x);
    return r;
  }();
  return radii;
}

// ---------------------------------------------------------------- operations

void op_validate(const SpaceFile& f, const Json&, Outcome& o) {
  ValidationReport rep = check_space(f.space);
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(Json{{"axiom", c.axiom}, {"ok", c.ok}, {"detail", c.detail}});
  bool closed = f.space.is_polyhedral() ? is_closed(f.space.cone) : true;
  o.result = Json{{"valid", rep.valid},
                  {"pointed", rep.pointed},
                  {"unit_in_cone", rep.unit_in_cone},
                  {"order_unit", rep.order_unit},
                  {"archimedean", rep.archimedean},
                  {"closed", closed},
                  {"checks", checks}};
  Json radii = Json::array();
  for (const auto& r : rep.unit_radii) radii.push_back(to_json(r));
  o.certificates["unit_radii"] = radii;
  if (!rep.valid) o.exit_code = kPrecondition;
}

void op_archimedean_check(const SpaceFile& f, const Json&, Outcome& o) {
  const OrderedSpace& s = f.space;
  bool arch = is_archimedean(s);
  o.result = Json{{"archimedean", arch}, {"closed", s.is_polyhedral() ? is_closed(s.cone) : true}};
  o.certificates["witness"] = nullptr;
  if (arch || !s.is_polyhedral()) return;
  // A closure generator outside the cone: r e + h stays inside for every sampled r > 0.
  for (const auto& g : generators(closure(s.cone))) {
    if (member(s.cone, g)) continue;
    Json samples = Json::array();
    for (const auto& r : sample_radii()) {
      samples.push_back(Json{{"r", to_json(r)}, {"member", member(s.cone, axpy(g, r, s.unit))}});
    }
    o.certificates["witness"] = Json{{"h", to_json(g)}, {"h_member", false}, {"samples", samples}};
    return;
  }
  o.warnings.push_back("no closure generator separates the cone from its closure; no witness recorded");
}

void op_seminorm(const SpaceFile& f, const Json& inputs, Outcome& o) {
  QVector h = hermitian_input(inputs);
  require_hermitian(f.space, h);
  StateInterval si = state_interval(f.space, h);
  o.result = Json{{"alpha", to_json(si.alpha)}, {"beta", to_json(si.beta)},
                  {"seminorm", to_json(max(abs(si.alpha), abs(si.beta)))}};
  o.certificates = Json{{"alpha_state", state_json(si.alpha_state)}, {"beta_state", state_json(si.beta_state)}};
  if (!is_archimedean(f.space)) {
    o.warnings.push_back("the cone is not closed: alpha and beta are computed on its closure");
  }
}

void op_states(const SpaceFile& f, const Json&, Outcome& o) {
  StatePolytope p = state_polytope(f.space);
  Json states = Json::array();
  for (const auto& s : p.extreme_states) states.push_back(to_json(s.coeffs));
  o.result = Json{{"count", p.extreme_states.size()}, {"states", states}};
  if (!is_archimedean(f.space)) o.warnings.push_back("states are those of the closed cone");
}

void op_norm(const SpaceFile& f, const Json& inputs, Outcome& o) {
  ComplexElement v = element_from_json(inputs.at("element"));
  NormOptions opts = norm_options(inputs);
  std::string kind = inputs.at("kind").get<std::string>();
  CertifiedInterval iv = kind == "t" ? CertifiedInterval{} : norm(kind_from(kind), f.space, v, opts);
  if (kind == "t") {
    Rational t = rational_from_json(inputs.at("t"));
    iv = convex_combination_norm(f.space, v, t, opts);
    CertifiedInterval m = minimal_norm(f.space, v, opts);
    CertifiedInterval big = maximal_norm(f.space, v, opts);
    o.result = Json{{"kind", kind}, {"t", to_json(t)}, {"interval", to_json(iv)},
                    {"parts", Json{{"m", to_json(m)}, {"M", to_json(big)}}}};
    o.certificates = Json{{"m", certificates_json(m)}, {"M", certificates_json(big)}};
  } else {
    o.result = Json{{"kind", kind}, {"interval", to_json(iv)}};
    o.certificates = certificates_json(iv);
  }
  if (!iv.tolerance_met) {
    o.warnings.push_back("interval width exceeds --tol after the refinement budget");
    o.exit_code = kToleranceUnmet;
  }
}

void note_closed_reduction(const SpaceFile& f, Outcome& o) {
  if (f.space.is_polyhedral() && is_closed(f.space.cone)) {
    o.warnings.push_back("closed polyhedral cone: the condition for all r > 0 reduces to membership");
  }
}

void op_archimedeanize(const SpaceFile& f, const Json&, Outcome& o) {
  QuotientResult q = archimedeanize(f.space);
  o.result = quotient_json(q);
  note_closed_reduction(f, o);
}

void op_quotient(const SpaceFile& f, const Json& inputs, Outcome& o, bool arch) {
  QMatrix j = matrix_from_json(inputs.at("ideal"));
  IdealCheck check = is_order_ideal(f.space, j);
  QuotientResult q = arch ? arch_quotient(f.space, j) : quotient(f.space, j);
  o.result = quotient_json(q);
  o.certificates["ideal_check"] = ideal_json(check);
  if (arch) note_closed_reduction(f, o);
}

void op_embed(const SpaceFile& f, const Json& inputs, Outcome& o) {
  Embedding emb = kadison_embed(f.space);
  std::size_t samples = inputs.at("samples").get<std::size_t>();
  std::uint64_t seed = inputs.at("seed").get<std::uint64_t>();
  EmbeddingReport rep = verify_embedding(f.space, emb, samples, seed);
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    checks.push_back(Json{{"name", c.name}, {"ok", c.ok},
                          {"counterexample", c.counterexample ? to_json(*c.counterexample) : Json(nullptr)}});
  }
  o.result = Json{{"ok", rep.ok}, {"injective", rep.injective}, {"samples", rep.samples}, {"checks", checks},
                  {"image", emb.image_description}};
  o.certificates["matrix"] = to_json(emb.matrix);
  if (!rep.ok) o.exit_code = kFailure;
}

void op_extend(const SpaceFile& f, const Json& inputs, Outcome& o) {
  QMatrix sub = matrix_from_json(inputs.at("subspace"));
  QVector values = vector_from_json(inputs.at("values"));
  Extension ext = extend_positive_functional(f.space, sub, values);
  o.result = Json{{"functional", to_json(ext.functional.coeffs)},
                  {"positive", is_positive_functional(f.space, ext.functional)},
                  {"value_at_unit", to_json(ext.functional(f.space.unit))}};
  Json steps = Json::array();
  for (const auto& s : ext.steps) {
    steps.push_back(Json{{"direction", to_json(s.direction)},
                         {"lower", to_json(s.lower)},
                         {"value", to_json(s.value)},
                         {"upper", to_json(s.upper)}});
  }
  o.certificates["steps"] = steps;
}

void op_first_iso(const SpaceFile& f, const Json&, Outcome& o) {
  if (!f.map) throw PreconditionError("first-iso needs a map block in the space file");
  const OrderedSpace& w = f.map->target->space;
  const QMatrix& phi = f.map->matrix;
  FirstIsomorphism fi = first_isomorphism(f.space, phi, w);
  o.result = Json{{"unital", is_unital(f.space, phi, w)},
                  {"positive", is_positive_map(f.space, phi, w)},
                  {"kernel", to_json(fi.kernel)},
                  {"kernel_is_ideal", fi.kernel_ideal.is_ideal},
                  {"null_space_is_kernel", fi.null_space_is_kernel},
                  {"induced_injective", fi.induced_injective},
                  {"image_condition", fi.image_condition},
                  {"is_order_isomorphism", fi.is_order_isomorphism},
                  {"quotient", quotient_json(fi.quotient)}};
  o.certificates = Json{{"kernel_ideal", ideal_json(fi.kernel_ideal)},
                        {"induced", to_json(fi.induced)},
                        {"image_witness", optional_vector(fi.image_witness)}};
  if (!fi.is_order_isomorphism) o.warnings.push_back("not an order isomorphism onto the image");
}

using OpFn = std::function<void(const SpaceFile&, const Json&, Outcome&)>;

const std::map<std::string, OpFn>& operations() {
  static const std::map<std::string, OpFn> ops = {
      {"validate", op_validate},
      {"archimedean-check", op_archimedean_check},
      {"seminorm", op_seminorm},
      {"states", op_states},
      {"norm", op_norm},
      {"archimedeanize", op_archimedeanize},
      {"quotient", [](const SpaceFile& f, const Json& i, Outcome& o) { op_quotient(f, i, o, false); }},
      {"arch-quotient", [](const SpaceFile& f, const Json& i, Outcome& o) { op_quotient(f, i, o, true); }},
      {"embed", op_embed},
      {"extend-functional", op_extend},
      {"first-iso", op_first_iso},
  };
  return ops;
}

// ---------------------------------------------------------------- verification

struct Checks {
  Json list = Json::array();
  bool ok = true;
  void add(const std::string& name, bool pass, const std::string& detail = "") {
    list.push_back(Json{{"name", name}, {"ok", pass}, {"detail", detail}});
    ok = ok && pass;
  }
};

bool is_state(const OrderedSpace& s, const QVector& f) {
  return is_positive_functional(s, RealFunctional{f}) && dot(f, s.unit) == 1;
}

void verify_interval_json(const OrderedSpace& s, const ComplexElement& v, NormKind kind, const Json& interval,
                          const Json& certs, const std::string& name, Checks& checks) {
  std::string why;
  CertifiedInterval iv = interval_from_json(interval, certs);
  bool ok = verify_interval(s, v, kind, iv, &why);
  checks.add(name + " certificates", ok, why);
}

void verify_norm(const SpaceFile& f, const Json& inputs, const Json& result, const Json& certs, Checks& checks) {
  ComplexElement v = element_from_json(inputs.at("element"));
  std::string kind = inputs.at("kind").get<std::string>();
  if (kind != "t") {
    verify_interval_json(f.space, v, kind_from(kind), result.at("interval"), certs, kind, checks);
    return;
  }
  verify_interval_json(f.space, v, NormKind::Minimal, result.at("parts").at("m"), certs.at("m"), "m", checks);
  verify_interval_json(f.space, v, NormKind::Maximal, result.at("parts").at("M"), certs.at("M"), "M", checks);
  double t = rational_from_json(inputs.at("t")).get_d();
  auto end = [&](const char* part, const char* side) {
    return scalar_from_json(result.at("parts").at(part).at(side)).to_double();
  };
  double lo = scalar_from_json(result.at("interval").at("lower")).to_double();
  double hi = scalar_from_json(result.at("interval").at("upper")).to_double();
  const double slack = 1e-12;
  checks.add("convex combination bounds",
             lo <= t * end("m", "lower") + (1 - t) * end("M", "lower") + slack &&
                 hi >= t * end("m", "upper") + (1 - t) * end("M", "upper") - slack);
}

void verify_seminorm(const SpaceFile& f, const Json& inputs, const Json& result, const Json& certs, Checks& checks) {
  if (!f.space.is_polyhedral()) return;
  QVector h = hermitian_input(inputs);
  ConeSpec closed = closure(f.space.cone);
  for (const char* side : {"alpha", "beta"}) {
    Rational value = rational_from_json(result.at(side).at("exact"));
    const Json& st = certs.at(std::string(side) + "_state");
    bool ok = !st.is_null();
    if (ok) {
      QVector g = vector_from_json(st);
      ok = is_state(f.space, g) && dot(g, h) == value;
    }
    QVector gap = std::string(side) == "alpha" ? axpy(h, -value, f.space.unit) : axpy(negate(h), value, f.space.unit);
    ok = ok && member(closed, gap);
    checks.add(std::string(side) + " attained by a state and feasible", ok);
  }
}

void verify_quotient_maps(const OrderedSpace& source, const Json& q, Checks& checks) {
  QMatrix p = matrix_from_json(q.at("projection"));
  QMatrix sec = matrix_from_json(q.at("section"));
  QMatrix kernel = matrix_from_json(q.at("kernel"));
  std::size_t k = p.size();
  checks.add("projection * section = I", k == 0 ? sec.empty() || sec[0].empty() : mat_mul(p, sec) == identity(k));
  bool kills = true;
  for (const auto& x : kernel) kills = kills && (k == 0 || is_zero(mat_vec(p, x)));
  checks.add("projection kills the kernel", kills);
  QVector unit = vector_from_json(q.at("space").at("unit"));
  checks.add("unit maps to unit", k == 0 ? unit.empty() : mat_vec(p, source.unit) == unit);
  if (k > 0) {
    SpaceFile qs = parse_space(q.at("space"));
    bool images = true;
    for (const auto& g : generators(closure(source.cone))) images = images && member(closure(qs.space.cone), mat_vec(p, g));
    checks.add("cone maps into the quotient cone", images);
  }
}

void verify_structure(const std::string& op, const SpaceFile& f, const Json& inputs, const Json& result,
                      const Json& certs, Checks& checks) {
  if (op == "norm") {
    verify_norm(f, inputs, result, certs, checks);
  } else if (op == "seminorm") {
    verify_seminorm(f, inputs, result, certs, checks);
  } else if (op == "states") {
    bool all = true;
    for (const auto& s : result.at("states")) all = all && is_state(f.space, vector_from_json(s));
    checks.add("every listed functional is a state", all);
  } else if (op == "archimedean-check") {
    const Json& w = certs.at("witness");
    if (!w.is_null()) {
      QVector h = vector_from_json(w.at("h"));
      bool ok = !member(f.space.cone, h);
      for (const auto& s : w.at("samples")) ok = ok && member(f.space.cone, axpy(h, rational_from_json(s.at("r")), f.space.unit));
      checks.add("witness: h outside the cone, r e + h inside for sampled r", ok);
    }
  } else if (op == "archimedeanize" || op == "quotient" || op == "arch-quotient") {
    verify_quotient_maps(f.space, result, checks);
  } else if (op == "first-iso") {
    verify_quotient_maps(f.space, result.at("quotient"), checks);
    QMatrix induced = matrix_from_json(certs.at("induced"));
    QMatrix p = matrix_from_json(result.at("quotient").at("projection"));
    checks.add("induced * projection = phi", !f.map || p.empty() || mat_mul(induced, p) == f.map->matrix);
  } else if (op == "embed") {
    Embedding emb;
    emb.matrix = matrix_from_json(certs.at("matrix"));
    bool states = true;
    for (const auto& row : emb.matrix) {
      states = states && is_state(f.space, row);
      emb.extreme_states.push_back(RealFunctional{row});
    }
    checks.add("rows are states", states);
    EmbeddingReport rep = verify_embedding(f.space, emb, inputs.at("samples").get<std::size_t>(),
                                           inputs.at("seed").get<std::uint64_t>() + 1);
    checks.add("embedding checks on fresh samples", rep.ok);
  } else if (op == "extend-functional") {
    QVector g = vector_from_json(result.at("functional"));
    QMatrix sub = matrix_from_json(inputs.at("subspace"));
    QVector values = vector_from_json(inputs.at("values"));
    bool agrees = sub.size() == values.size();
    for (std::size_t i = 0; agrees && i < sub.size(); ++i) agrees = dot(g, sub[i]) == values[i];
    checks.add("extension agrees on the subspace", agrees);
    checks.add("extension is positive", is_positive_functional(f.space, RealFunctional{g}));
    bool bracketed = true;
    for (const auto& s : certs.at("steps")) {
      Rational lo = rational_from_json(s.at("lower"));
      Rational val = rational_from_json(s.at("value"));
      Rational hi = rational_from_json(s.at("upper"));
      bracketed = bracketed && lo <= val && val <= hi && dot(g, vector_from_json(s.at("direction"))) == val;
    }
    checks.add("each step value lies in its admissible interval", bracketed);
  }
}

// ---------------------------------------------------------------- command line

struct Flags {
  std::string file;
  std::string element;
  std::string kind = "m";
  double tol = 1e-6;
  int max_rounds = 60;
  std::string t = "1/2";
  std::string ideal;
  std::string subspace;
  std::string values;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::string out;
};

Json build_inputs(const std::string& op, const Flags& fl, const SpaceFile& f) {
  Json in;
  in["space"] = f.canonical;
  auto element = [&] {
    if (fl.element.empty()) throw ParseError(op + " needs --element");
    in["element"] = to_json(parse_element(f, fl.element));
  };
  if (op == "norm") {
    element();
    in["kind"] = fl.kind;
    in["tol"] = fl.tol;
    in["max_rounds"] = fl.max_rounds;
    if (fl.kind == "t") in["t"] = to_json(parse_number(fl.t, true));
  } else if (op == "seminorm") {
    element();
  } else if (op == "quotient" || op == "arch-quotient") {
    if (!fl.ideal.empty()) {
      in["ideal"] = to_json(parse_vector_list(f, fl.ideal));
    } else if (f.ideal) {
      in["ideal"] = to_json(*f.ideal);
    } else {
      throw ParseError(op + " needs --ideal or an ideal block in the space file");
    }
  } else if (op == "embed") {
    in["samples"] = fl.samples;
    in["seed"] = fl.seed;
  } else if (op == "extend-functional") {
    QMatrix sub = fl.subspace.empty() ? QMatrix{f.space.unit} : parse_vector_list(f, fl.subspace);
    QVector values;
    if (fl.values.empty()) {
      if (!fl.subspace.empty()) throw ParseError("--subspace needs --values");
      values = {Rational(1)};
    } else {
      std::stringstream ss(fl.values);
      std::string item;
      while (std::getline(ss, item, ';')) values.push_back(parse_number(item, f.decimal_input));
    }
    if (values.size() != sub.size()) throw ParseError("--values needs one value per --subspace vector");
    in["subspace"] = to_json(sub);
    in["values"] = to_json(values);
  }
  return in;
}

Json assemble(const std::string& op, const Json& inputs, const Outcome& o, double ms) {
  Json report;
  report["operation"] = op;
  report["inputs_digest"] = digest(inputs);
  report["inputs"] = inputs;
  report["result"] = o.result;
  report["certificates"] = o.certificates;
  report["warnings"] = o.warnings;
  report["timing"] = Json{{"wall_ms", std::round(ms * 1000.0) / 1000.0}};
  return report;
}

void emit(const Json& report, const std::string& path, std::ostream& out) {
  std::string text = report.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw PreconditionError("cannot write '" + path + "'");
  file << text;
}

}  // namespace

Outcome execute(const std::string& operation, const Json& inputs) {
  auto it = operations().find(operation);
  if (it == operations().end()) throw ParseError("unknown operation '" + operation + "'");
  SpaceFile f = parse_space(inputs.at("space"));
  Outcome o;
  if (f.decimal_input && f.space.is_polyhedral()) {
    o.warnings.push_back("approx-mode polyhedral input: decimals were converted to exact rationals");
  }
  it->second(f, inputs, o);
  return o;
}

Outcome verify_report(const Json& report) {
  try {
    std::string op = report.at("operation").get<std::string>();
    const Json& inputs = report.at("inputs");
    Checks checks;
    checks.add("inputs digest", digest(inputs) == report.at("inputs_digest").get<std::string>());
    SpaceFile f = parse_space(inputs.at("space"));
    verify_structure(op, f, inputs, report.at("result"), report.at("certificates"), checks);
    Outcome again = execute(op, inputs);
    checks.add("recomputed result matches", again.result.dump() == report.at("result").dump());
    Outcome o;
    o.result = Json{{"operation", op}, {"ok", checks.ok}, {"checks", checks.list}};
    if (!checks.ok) o.exit_code = kFailure;
    return o;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ordered *-vector spaces: order units, norms, quotients and certificates", "ordspace"};
  app.require_subcommand(1);
  Flags fl;
  std::string report_path;

  struct Spec {
    const char* name;
    const char* help;
    std::vector<std::string> flags;
  };
  const std::vector<Spec> specs = {
      {"validate", "check the ordered-space axioms", {}},
      {"archimedean-check", "decide whether the unit is Archimedean", {}},
      {"seminorm", "state interval and order seminorm of a hermitian element", {"element"}},
      {"states", "extreme states of a polyhedral space", {}},
      {"norm", "certified interval for the m, M, dec or convex-combination norm",
       {"element", "kind", "tol", "max-rounds", "t"}},
      {"archimedeanize", "quotient by the null space of the closed cone", {}},
      {"quotient", "quotient by an order ideal", {"ideal"}},
      {"arch-quotient", "Archimedean quotient by a subspace", {"ideal"}},
      {"embed", "embedding into functions on the extreme states", {"samples", "seed"}},
      {"extend-functional", "extend a positive functional from a subspace", {"subspace", "values"}},
      {"first-iso", "first isomorphism theorem for the space's map block", {}},
  };
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("file", fl.file, "space file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", fl.out, "write the report here instead of stdout");
    for (const auto& name : spec.flags) {
      if (name == "element") sub->add_option("--element", fl.element, "element expression or name")->required();
      if (name == "kind") {
        sub->add_option("--kind", fl.kind, "m, M, dec or t")->check(CLI::IsMember({"m", "M", "dec", "t"}));
      }
      if (name == "tol") sub->add_option("--tol", fl.tol, "target interval width")->capture_default_str();
      if (name == "max-rounds") {
        sub->add_option("--max-rounds", fl.max_rounds, "refinement budget")->capture_default_str();
      }
      if (name == "t") sub->add_option("--t", fl.t, "weight of the minimal norm for --kind t")->capture_default_str();
      if (name == "ideal") sub->add_option("--ideal", fl.ideal, "spanning vectors \"(..);(..)\"");
      if (name == "subspace") sub->add_option("--subspace", fl.subspace, "spanning vectors \"(..);(..)\"");
      if (name == "values") sub->add_option("--values", fl.values, "values on the spanning vectors \"a;b\"");
      if (name == "samples") sub->add_option("--samples", fl.samples, "random samples")->capture_default_str();
      if (name == "seed") sub->add_option("--seed", fl.seed, "sampling seed")->capture_default_str();
    }
  }
  CLI::App* verify = app.add_subcommand("verify", "re-check the certificates of a report");
  verify->add_option("report", report_path, "report file (JSON)")->required()->check(CLI::ExistingFile);
  verify->add_option("--out", fl.out, "write the verification report here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }

  std::string op = app.get_subcommands().front()->get_name();
  try {
    auto start = std::chrono::steady_clock::now();
    Json inputs;
    Outcome o;
    if (op == "verify") {
      Json report = read_json_file(report_path);
      inputs = Json{{"report_digest", digest(report)}};
      o = verify_report(report);
    } else {
      SpaceFile f = load_space(fl.file);
      inputs = build_inputs(op, fl, f);
      o = execute(op, inputs);
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(assemble(op, inputs, o, ms), fl.out, out);
    for (const auto& w : o.warnings) err << "warning: " << w.get<std::string>() << "\n";
    return o.exit_code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const nlohmann::json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const CapabilityError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kCapability;
  } catch (const ToleranceError& e) {
    err << "tolerance: " << e.what() << "\n";
    return kToleranceUnmet;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace ordspace::cli
