#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "ordspace/rational.hpp"

namespace ordspace {

/// a . x >= 0, or a . x > 0 when strict.
struct HalfspaceRow {
  QVector a;
  bool strict = false;
};

/// Closed polyhedral data shared by every polyhedral cone query.
struct ClosureGeometry {
  QMatrix rows;       // closure = {x : r . x >= 0 for each row}
  QMatrix lineality;  // basis of closure ∩ -closure
  QMatrix rays;       // extreme rays modulo the lineality space
  /// Generating set: +-lineality, then rays.
  QMatrix generators() const;
};

/// A convex cone in R^n. Strict rows describe {x : weak rows >= 0, strict rows > 0} ∪ {0}.
class ConeSpec {
 public:
  enum class Kind { PolyhedralH, PolyhedralV, MatrixPSD };

  static ConeSpec polyhedral_h(std::size_t n, std::vector<HalfspaceRow> rows, bool include_origin = true);
  static ConeSpec polyhedral_v(std::size_t n, QMatrix generators);
  static ConeSpec matrix_psd(std::size_t d);

  Kind kind() const { return kind_; }
  bool is_polyhedral() const { return kind_ != Kind::MatrixPSD; }
  std::size_t dim() const { return n_; }
  const std::vector<HalfspaceRow>& rows() const { return rows_; }
  const QMatrix& input_generators() const { return generators_; }
  bool include_origin() const { return include_origin_; }
  std::size_t matrix_size() const { return d_; }
  bool has_strict_rows() const;

  /// Computed once and shared between copies. Polyhedral cones only.
  const ClosureGeometry& geometry() const;
  /// Shared by copies of the same cone; distinct for independently built cones.
  std::shared_ptr<const void> identity() const { return cache_; }

 private:
  ConeSpec() = default;
  struct Cache;

  Kind kind_ = Kind::PolyhedralH;
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<HalfspaceRow> rows_;
  QMatrix generators_;
  bool include_origin_ = true;
  std::shared_ptr<Cache> cache_;
};

constexpr std::size_t kGeneratorRowCap = 24;

/// Exact for polyhedral cones; eigenvalue test with tolerance for matrix cones.
bool member(const ConeSpec& c, const QVector& h, double tol = 1e-9);
/// Strict flags cleared; a strict system with empty interior closes to {0}.
ConeSpec closure(const ConeSpec& c);
/// {f : f . x >= 0 on the closure}, returned in H form.
ConeSpec dual_cone(const ConeSpec& c);
/// Generators of the closure: +-lineality basis and extreme rays.
QMatrix generators(const ConeSpec& c);
/// C ∩ -C = {0}.
bool is_pointed(const ConeSpec& c);
/// True when the cone equals its closure.
bool is_closed(const ConeSpec& c);

}  // namespace ordspace
