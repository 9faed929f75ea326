#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordspace/element.hpp"
#include "ordspace/space.hpp"

namespace ordspace {

/// v -> (f_k(v)) over the extreme states f_k: an order embedding into
/// functions on a finite set, isometric for the minimal norm.
struct Embedding {
  std::vector<RealFunctional> extreme_states;
  QMatrix matrix;  // rows are states, columns hermitian coordinates
  /// Hermitian h is positive iff every entry of matrix * h is >= 0.
  std::string image_description;

  ComplexElement operator()(const ComplexElement& v) const { return apply(matrix, v); }
};

/// Archimedean polyhedral spaces only; throws NotArchimedean otherwise.
Embedding kadison_embed(const OrderedSpace& space);

struct EmbeddingCheck {
  std::string name;
  bool ok = false;
  std::optional<ComplexElement> counterexample;
};

struct EmbeddingReport {
  bool ok = false;
  bool injective = false;
  std::size_t samples = 0;
  std::vector<EmbeddingCheck> checks;  // isometry, order, unit, star
};

/// Isometry and conjugation on random complex elements, order equivalence on
/// random hermitian ones, and the image of the unit.
EmbeddingReport verify_embedding(const OrderedSpace& space, const Embedding& emb, std::size_t samples,
                                 std::uint64_t seed = 1);

}  // namespace ordspace
