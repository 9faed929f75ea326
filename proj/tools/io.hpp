#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "ordspace/element.hpp"
#include "ordspace/norms.hpp"
#include "ordspace/order.hpp"
#include "ordspace/space.hpp"

namespace ordspace::cli {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct SpaceFile;

struct MapBlock {
  QMatrix matrix;  // dim(target) x dim(source)
  std::shared_ptr<SpaceFile> target;
};

/// One parsed space file. `canonical` re-serializes the space, its elements,
/// ideal and map with every rational in canonical form and maps inlined, so a
/// report can carry its inputs without file references.
struct SpaceFile {
  OrderedSpace space;
  bool decimal_input = false;
  std::map<std::string, ComplexElement> elements;
  std::optional<QMatrix> ideal;
  std::optional<MapBlock> map;
  Json canonical;
};

/// Strict schema: unknown keys, wrong types and mode-inconsistent numbers throw ParseError.
/// Relative map targets resolve against base_dir.
SpaceFile parse_space(const Json& doc, const std::string& base_dir = ".");
SpaceFile load_space(const std::string& path);
Json read_json_file(const std::string& path);

/// Rational entry: "p/q" always; decimal strings only when decimals are allowed.
Rational parse_number(const std::string& text, bool allow_decimal);

/// Sums of terms such as "(1,0)+(0,1)i", "2*E12 - i*E21", "e", "I" or a named element.
/// Matrix units Ejk are 1-based and only exist in matrix spaces.
ComplexElement parse_element(const SpaceFile& file, const std::string& text);

/// "(1,0,0);(0,1,0)"
QMatrix parse_vector_list(const SpaceFile& file, const std::string& text);

Json to_json(const Rational& q);
Json to_json(const QVector& v);
Json to_json(const QMatrix& m);
Json to_json(const Scalar& s);
Json to_json(const ComplexElement& v);
Json to_json(const CertifiedInterval& iv);
Json certificates_json(const CertifiedInterval& iv);

Rational rational_from_json(const Json& j);
QVector vector_from_json(const Json& j);
QMatrix matrix_from_json(const Json& j);
Scalar scalar_from_json(const Json& j);
ComplexElement element_from_json(const Json& j);
/// Inverse of to_json plus certificates_json.
CertifiedInterval interval_from_json(const Json& interval, const Json& certificates);

/// FNV-1a 64 over the compact dump, as "fnv1a64:<hex>".
std::string digest(const Json& j);

}  // namespace ordspace::cli
