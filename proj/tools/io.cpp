#include "io.hpp"

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ordspace/errors.hpp"
#include "ordspace/psd.hpp"

namespace ordspace::cli {

namespace {

void require_object(const Json& j, const std::string& where, const std::set<std::string>& required,
                    const std::set<std::string>& optional) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& key : required) {
    if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  }
  for (const auto& [key, _] : j.items()) {
    if (!required.count(key) && !optional.count(key)) throw ParseError(where + ": unknown field '" + key + "'");
  }
}

Rational number_from_json(const Json& j, bool allow_decimal, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_number(j.get<std::string>(), allow_decimal);
  throw ParseError(where + ": numbers are integers or strings such as \"1/2\"");
}

QVector vector_field(const Json& j, std::size_t n, bool allow_decimal, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  if (j.size() != n) {
    throw ParseError(where + ": expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  }
  QVector v;
  for (const auto& x : j) v.push_back(number_from_json(x, allow_decimal, where));
  return v;
}

QMatrix matrix_field(const Json& j, std::size_t cols, bool allow_decimal, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of rows");
  QMatrix m;
  for (const auto& row : j) m.push_back(vector_field(row, cols, allow_decimal, where));
  return m;
}

bool is_identifier_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_identifier_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool reserved_name(const std::string& name) {
  if (name == "e" || name == "I" || name == "i") return true;
  return name.size() == 3 && name[0] == 'E' && std::isdigit(static_cast<unsigned char>(name[1])) &&
         std::isdigit(static_cast<unsigned char>(name[2]));
}

std::string vector_text(const QVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out + ")";
}

/// Recursive descent over the element grammar:
///   expr   := [sign] term (sign term)*
///   term   := factor ([*] factor)*   with exactly one vector-valued factor
///   factor := number | i | (x1,...,xn) | name
class ElementParser {
 public:
  ElementParser(const SpaceFile& file, const std::string& text) : file_(file), text_(text) {}

  ComplexElement parse() {
    std::size_t n = file_.space.dim();
    ComplexElement sum{zeros(n), zeros(n)};
    skip();
    bool negative = take('-');
    if (!negative) take('+');
    sum = add(sum, term(negative));
    while (true) {
      skip();
      if (pos_ == text_.size()) break;
      if (take('+')) {
        sum = add(sum, term(false));
      } else if (take('-')) {
        sum = add(sum, term(true));
      } else {
        fail("expected '+' or '-'");
      }
    }
    return sum;
  }

 private:
  ComplexElement term(bool negative) {
    Rational re = negative ? -1 : 1;
    Rational im = 0;
    std::optional<ComplexElement> atom;
    bool first = true;
    while (true) {
      skip();
      if (pos_ == text_.size() || peek() == '+' || peek() == '-') break;
      if (!first && take('*')) skip();
      first = false;
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        Rational s = number();
        re *= s;
        im *= s;
      } else if (c == '(') {
        set_atom(atom, vector_literal());
      } else if (is_identifier_start(c)) {
        std::string name = identifier();
        if (name == "i") {
          Rational r = re;
          re = -im;
          im = r;
        } else {
          set_atom(atom, named(name));
        }
      } else {
        fail("unexpected character");
      }
    }
    if (!atom) fail("term has no vector");
    return complex_scale(re, im, *atom);
  }

  void set_atom(std::optional<ComplexElement>& atom, ComplexElement v) {
    if (atom) fail("a term may contain only one vector");
    atom = std::move(v);
  }

  ComplexElement vector_literal() {
    std::size_t close = text_.find(')', pos_);
    if (close == std::string::npos) fail("unclosed '('");
    std::string body = text_.substr(pos_ + 1, close - pos_ - 1);
    pos_ = close + 1;
    QVector v;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_number(item, file_.decimal_input));
    if (v.size() != file_.space.dim()) {
      fail("vector has " + std::to_string(v.size()) + " entries, the space has dimension " +
           std::to_string(file_.space.dim()));
    }
    return ComplexElement::hermitian(v);
  }

  ComplexElement named(const std::string& name) {
    const OrderedSpace& s = file_.space;
    if (name == "e") return ComplexElement::hermitian(s.unit);
    if (name == "I") {
      if (s.is_polyhedral()) return ComplexElement::hermitian(s.unit);
      return ComplexElement::hermitian(identity_coords(s.cone.matrix_size()));
    }
    if (reserved_name(name)) {
      if (s.is_polyhedral()) fail("matrix units need a matrix space");
      std::size_t d = s.cone.matrix_size();
      std::size_t j = static_cast<std::size_t>(name[1] - '0');
      std::size_t k = static_cast<std::size_t>(name[2] - '0');
      if (j < 1 || k < 1 || j > d || k > d) fail("matrix unit out of range");
      return matrix_unit(d, j - 1, k - 1);
    }
    auto it = file_.elements.find(name);
    if (it == file_.elements.end()) fail("unknown element '" + name + "'");
    return it->second;
  }

  Rational number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' || text_[pos_] == '.')) {
      ++pos_;
    }
    return parse_number(text_.substr(start, pos_ - start), file_.decimal_input);
  }

  std::string identifier() {
    std::size_t start = pos_;
    // A lone "i" is the imaginary unit; "i*E12" and "E12 i" both work, "iE12" is a name.
    if (text_[pos_] == 'i' && (pos_ + 1 == text_.size() || !is_identifier_char(text_[pos_ + 1]))) {
      ++pos_;
      return "i";
    }
    while (pos_ < text_.size() && is_identifier_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  char peek() const { return text_[pos_]; }
  bool take(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("element '" + text_ + "' at offset " + std::to_string(pos_) + ": " + msg);
  }

  const SpaceFile& file_;
  const std::string& text_;
  std::size_t pos_ = 0;
};

std::string element_text(const ComplexElement& v) { return vector_text(v.re) + "+" + vector_text(v.im) + "i"; }

Json cone_from_json(const Json& j, std::size_t n, bool allow_decimal, std::optional<ConeSpec>& cone) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParseError("cone: expected an object with a string 'type'");
  }
  std::string type = j["type"].get<std::string>();
  Json canonical;
  canonical["type"] = type;
  if (type == "halfspaces") {
    require_object(j, "cone", {"type", "rows"}, {"include_origin"});
    if (!j["rows"].is_array()) throw ParseError("cone.rows: expected an array");
    std::vector<HalfspaceRow> rows;
    Json rows_out = Json::array();
    for (const auto& r : j["rows"]) {
      require_object(r, "cone.rows[]", {"a"}, {"strict"});
      HalfspaceRow row{vector_field(r["a"], n, allow_decimal, "cone.rows[].a"), false};
      if (r.contains("strict")) {
        if (!r["strict"].is_boolean()) throw ParseError("cone.rows[].strict: expected a boolean");
        row.strict = r["strict"].get<bool>();
      }
      rows_out.push_back(Json{{"a", to_json(row.a)}, {"strict", row.strict}});
      rows.push_back(std::move(row));
    }
    bool origin = true;
    if (j.contains("include_origin")) {
      if (!j["include_origin"].is_boolean()) throw ParseError("cone.include_origin: expected a boolean");
      origin = j["include_origin"].get<bool>();
    }
    canonical["rows"] = rows_out;
    canonical["include_origin"] = origin;
    cone = ConeSpec::polyhedral_h(n, std::move(rows), origin);
  } else if (type == "generators") {
    require_object(j, "cone", {"type", "generators"}, {});
    QMatrix gens = matrix_field(j["generators"], n, allow_decimal, "cone.generators");
    canonical["generators"] = to_json(gens);
    cone = ConeSpec::polyhedral_v(n, std::move(gens));
  } else if (type == "psd") {
    require_object(j, "cone", {"type", "size"}, {});
    if (!j["size"].is_number_unsigned()) throw ParseError("cone.size: expected a positive integer");
    std::size_t d = j["size"].get<std::size_t>();
    if (d == 0 || d * d != n) throw ParseError("cone.size: a psd cone of size d needs dimension d*d");
    canonical["size"] = d;
    cone = ConeSpec::matrix_psd(d);
  } else {
    throw ParseError("cone.type: expected 'halfspaces', 'generators' or 'psd', got '" + type + "'");
  }
  return canonical;
}

}  // namespace

Rational parse_number(const std::string& text, bool allow_decimal) {
  if (text.find('.') != std::string::npos) {
    if (!allow_decimal) throw ParseError("decimal '" + text + "' in an exact-mode file; write it as p/q");
    return parse_decimal(text);
  }
  return parse_rational(text);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

SpaceFile load_space(const std::string& path) {
  std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_space(read_json_file(path), dir.empty() ? "." : dir);
}

SpaceFile parse_space(const Json& doc, const std::string& base_dir) {
  require_object(doc, "space", {"schema_version", "scalar_mode", "dimension", "cone", "unit"},
                 {"labels", "elements", "ideal", "map"});
  if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kSchemaVersion) {
    throw ParseError("schema_version: only version " + std::to_string(kSchemaVersion) + " is supported");
  }
  if (!doc["scalar_mode"].is_string()) throw ParseError("scalar_mode: expected \"exact\" or \"approx\"");
  std::string mode = doc["scalar_mode"].get<std::string>();
  if (mode != "exact" && mode != "approx") throw ParseError("scalar_mode: expected \"exact\" or \"approx\"");
  bool decimals = mode == "approx";
  if (!doc["dimension"].is_number_unsigned() || doc["dimension"].get<std::size_t>() == 0) {
    throw ParseError("dimension: expected a positive integer");
  }
  std::size_t n = doc["dimension"].get<std::size_t>();

  std::optional<ConeSpec> cone;
  Json cone_canonical = cone_from_json(doc["cone"], n, decimals, cone);
  if (!cone->is_polyhedral() && mode == "exact") {
    throw ParseError("scalar_mode: psd cones are computed in approx mode");
  }

  QVector unit;
  if (doc["unit"].is_string() && doc["unit"].get<std::string>() == "I") {
    if (cone->is_polyhedral()) throw ParseError("unit: \"I\" needs a psd cone");
    unit = identity_coords(cone->matrix_size());
  } else {
    unit = vector_field(doc["unit"], n, decimals, "unit");
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array()) throw ParseError("labels: expected an array of strings");
    for (const auto& l : doc["labels"]) {
      if (!l.is_string()) throw ParseError("labels: expected an array of strings");
      labels.push_back(l.get<std::string>());
    }
    if (labels.size() != n) throw ParseError("labels: one label per coordinate");
  }

  SpaceFile out{OrderedSpace::make(*cone, unit, labels), decimals, {}, std::nullopt, std::nullopt, Json::object()};
  Json& c = out.canonical;
  c["schema_version"] = kSchemaVersion;
  c["scalar_mode"] = mode;
  c["dimension"] = n;
  c["cone"] = cone_canonical;
  c["unit"] = to_json(unit);
  if (!labels.empty()) c["labels"] = labels;

  if (doc.contains("elements")) {
    if (!doc["elements"].is_object()) throw ParseError("elements: expected an object of name: expression");
    Json elements = Json::object();
    for (const auto& [name, expr] : doc["elements"].items()) {
      if (name.empty() || !is_identifier_start(name[0]) || reserved_name(name)) {
        throw ParseError("elements: '" + name + "' is not a usable name");
      }
      for (char ch : name) {
        if (!is_identifier_char(ch)) throw ParseError("elements: '" + name + "' is not a usable name");
      }
      if (!expr.is_string()) throw ParseError("elements." + name + ": expected an expression string");
      ComplexElement v = parse_element(out, expr.get<std::string>());
      elements[name] = element_text(v);
      out.elements.emplace(name, std::move(v));
    }
    c["elements"] = elements;
  }
  if (doc.contains("ideal")) {
    out.ideal = matrix_field(doc["ideal"], n, decimals, "ideal");
    c["ideal"] = to_json(*out.ideal);
  }
  if (doc.contains("map")) {
    const Json& m = doc["map"];
    require_object(m, "map", {"target", "matrix"}, {});
    SpaceFile target = m["target"].is_string()
                           ? load_space((std::filesystem::path(base_dir) / m["target"].get<std::string>()).string())
                           : parse_space(m["target"], base_dir);
    QMatrix phi = matrix_field(m["matrix"], n, decimals, "map.matrix");
    if (phi.size() != target.space.dim()) throw ParseError("map.matrix: one row per target coordinate");
    Json target_canonical = target.canonical;
    out.map = MapBlock{std::move(phi), std::make_shared<SpaceFile>(std::move(target))};
    c["map"] = Json{{"target", target_canonical}, {"matrix", to_json(out.map->matrix)}};
  }
  return out;
}

ComplexElement parse_element(const SpaceFile& file, const std::string& text) {
  return ElementParser(file, text).parse();
}

QMatrix parse_vector_list(const SpaceFile& file, const std::string& text) {
  QMatrix out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    ComplexElement v = parse_element(file, item);
    if (!v.is_hermitian()) throw ParseError("'" + item + "': expected a hermitian vector");
    out.push_back(v.re);
  }
  if (out.empty()) throw ParseError("empty vector list");
  return out;
}

// ---------------------------------------------------------------- serialization

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const QVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const QMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(to_json(row));
  return out;
}

Json to_json(const Scalar& s) {
  Json out;
  if (s.is_exact()) out["exact"] = to_string(s.exact());
  out["approx"] = s.to_double();
  return out;
}

Json to_json(const ComplexElement& v) { return Json{{"re", to_json(v.re)}, {"im", to_json(v.im)}}; }

Json to_json(const CertifiedInterval& iv) {
  Json out;
  out["lower"] = to_json(iv.lower);
  out["upper"] = to_json(iv.upper);
  out["width"] = iv.width();
  out["exact"] = iv.exact();
  out["tol"] = iv.tol;
  out["tolerance_met"] = iv.tolerance_met;
  out["rounds"] = iv.rounds;
  out["method_notes"] = iv.method_notes;
  return out;
}

namespace {

const char* lower_kind_name(LowerCertificate::Kind k) {
  switch (k) {
    case LowerCertificate::Kind::State: return "state";
    case LowerCertificate::Kind::MaximalDual: return "maximal_dual";
    case LowerCertificate::Kind::DecompositionDual: return "decomposition_dual";
    case LowerCertificate::Kind::NumericalRadius: return "numerical_radius";
    case LowerCertificate::Kind::OperatorNorm: return "operator_norm";
  }
  return "state";
}

LowerCertificate::Kind lower_kind_from(const std::string& s) {
  if (s == "state") return LowerCertificate::Kind::State;
  if (s == "maximal_dual") return LowerCertificate::Kind::MaximalDual;
  if (s == "decomposition_dual") return LowerCertificate::Kind::DecompositionDual;
  if (s == "numerical_radius") return LowerCertificate::Kind::NumericalRadius;
  if (s == "operator_norm") return LowerCertificate::Kind::OperatorNorm;
  throw ParseError("unknown lower certificate kind '" + s + "'");
}

}  // namespace

Json certificates_json(const CertifiedInterval& iv) {
  Json out = Json::object();
  if (iv.lower_certificate) {
    const LowerCertificate& c = *iv.lower_certificate;
    out["lower"] = Json{{"kind", lower_kind_name(c.kind)}, {"bound_squared", to_json(c.bound_squared)},
                        {"g1", to_json(c.g1)},           {"g2", to_json(c.g2)},
                        {"psi", to_json(c.psi)},         {"u_re", to_json(c.u_re)},
                        {"u_im", to_json(c.u_im)}};
  } else {
    out["lower"] = nullptr;
  }
  if (iv.upper_certificate) {
    Json terms = Json::array();
    for (const auto& t : iv.upper_certificate->terms) {
      terms.push_back(Json{{"kind", t.kind == Decomposition::Kind::Positive ? "positive" : "hermitian"},
                           {"re", to_json(t.re)},
                           {"im", to_json(t.im)},
                           {"element", to_json(t.element)}});
    }
    out["upper"] = Json{{"terms", terms}};
  } else {
    out["upper"] = nullptr;
  }
  return out;
}

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("expected a rational string");
  return parse_rational(j.get<std::string>());
}

QVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  QVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

QMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rows");
  QMatrix m;
  for (const auto& row : j) m.push_back(vector_from_json(row));
  return m;
}

Scalar scalar_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("approx")) throw ParseError("expected a scalar object");
  if (j.contains("exact")) return Scalar(rational_from_json(j["exact"]));
  return Scalar::approx(j["approx"].get<double>());
}

ComplexElement element_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) throw ParseError("expected an element object");
  return {vector_from_json(j["re"]), vector_from_json(j["im"])};
}

CertifiedInterval interval_from_json(const Json& interval, const Json& certificates) {
  try {
    CertifiedInterval iv{scalar_from_json(interval.at("lower")),
                         scalar_from_json(interval.at("upper")),
                         interval.at("tol").get<double>(),
                         interval.at("tolerance_met").get<bool>(),
                         interval.at("rounds").get<int>(),
                         interval.at("method_notes").get<std::string>(),
                         std::nullopt,
                         std::nullopt};
    const Json& lower = certificates.at("lower");
    if (!lower.is_null()) {
      LowerCertificate c;
      c.kind = lower_kind_from(lower.at("kind").get<std::string>());
      c.bound_squared = rational_from_json(lower.at("bound_squared"));
      c.g1 = vector_from_json(lower.at("g1"));
      c.g2 = vector_from_json(lower.at("g2"));
      c.psi = vector_from_json(lower.at("psi"));
      c.u_re = vector_from_json(lower.at("u_re"));
      c.u_im = vector_from_json(lower.at("u_im"));
      iv.lower_certificate = c;
    }
    const Json& upper = certificates.at("upper");
    if (!upper.is_null()) {
      Decomposition d;
      for (const auto& t : upper.at("terms")) {
        d.terms.push_back({rational_from_json(t.at("re")), rational_from_json(t.at("im")),
                           vector_from_json(t.at("element")),
                           t.at("kind").get<std::string>() == "positive" ? Decomposition::Kind::Positive
                                                                          : Decomposition::Kind::Hermitian});
      }
      iv.upper_certificate = d;
    }
    return iv;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed interval: ") + e.what());
  }
}

std::string digest(const Json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

}  // namespace ordspace::cli
