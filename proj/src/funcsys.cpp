#include "ordspace/funcsys.hpp"

#include <random>

#include "ordspace/errors.hpp"
#include "ordspace/norms.hpp"
#include "ordspace/order.hpp"

namespace ordspace {

Embedding kadison_embed(const OrderedSpace& space) {
  if (!space.is_polyhedral()) throw CapabilityError("function system embedding needs a polyhedral cone");
  if (!is_archimedean(space)) {
    throw NotArchimedean("the embedding is injective only for Archimedean spaces; archimedeanize first");
  }
  Embedding emb;
  emb.extreme_states = state_polytope(space).extreme_states;
  for (const auto& f : emb.extreme_states) emb.matrix.push_back(f.coeffs);
  emb.image_description = "coordinatewise: h is positive iff every state value is nonnegative";
  return emb;
}

namespace {

QVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 6);
  QVector v(n);
  for (auto& x : v) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return v;
}

void record(EmbeddingCheck& c, const ComplexElement& v, bool pass) {
  if (!pass && c.ok) {
    c.ok = false;
    c.counterexample = v;
  }
}

}  // namespace

EmbeddingReport verify_embedding(const OrderedSpace& space, const Embedding& emb, std::size_t samples,
                                 std::uint64_t seed) {
  std::size_t n = space.dim();
  EmbeddingReport rep;
  rep.samples = samples;
  rep.injective = rank(emb.matrix, n) == n;
  EmbeddingCheck iso{"isometry", true, std::nullopt};
  EmbeddingCheck order{"order", true, std::nullopt};
  EmbeddingCheck unit{"unit", true, std::nullopt};
  EmbeddingCheck conj{"star", true, std::nullopt};

  ComplexElement e = ComplexElement::hermitian(space.unit);
  ComplexElement fe = emb(e);
  for (const auto& x : fe.re) record(unit, e, x == 1);
  record(unit, e, is_zero(fe.im));

  ConeSpec closed = closure(space.cone);
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    ComplexElement v{random_vector(rng, n), random_vector(rng, n)};
    ComplexElement fv = emb(v);
    // Isometry on squares: max_k |f_k(v)|^2 against the minimal norm's certified square.
    Rational sup = 0;
    for (std::size_t k = 0; k < fv.re.size(); ++k) sup = std::max(sup, Rational(fv.re[k] * fv.re[k] + fv.im[k] * fv.im[k]));
    CertifiedInterval m = minimal_norm(space, v);
    record(iso, v, m.lower_certificate && m.lower_certificate->bound_squared == sup);

    ComplexElement fs = emb(star(v));
    record(conj, v, fs.re == fv.re && fs.im == negate(fv.im));

    // Half the hermitian samples are pushed into the cone so both sides get exercised.
    QVector h = v.re;
    if (s % 2 == 1) h = axpy(h, order_seminorm(space, h).exact(), space.unit);
    bool nonneg = true;
    for (const auto& x : mat_vec(emb.matrix, h)) nonneg = nonneg && x >= 0;
    record(order, ComplexElement::hermitian(h), nonneg == member(closed, h));
  }
  rep.checks = {iso, order, unit, conj};
  rep.ok = rep.injective;
  for (const auto& c : rep.checks) rep.ok = rep.ok && c.ok;
  return rep;
}

}  // namespace ordspace
