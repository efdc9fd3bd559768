#pragma once

#include "qbar/interval.hpp"
#include "qbar/tower.hpp"

#include <vector>

namespace qbar {

// Enclosures of all 2^t complex embeddings of a tower. Embedding e sends
// generator i to +root or -root according to bit i of e.
class EmbeddingSet {
 public:
  EmbeddingSet(unsigned bits, std::vector<std::vector<ComplexInterval>> generator_values);

  unsigned bits() const { return bits_; }
  std::size_t count() const { return monomials_.size(); }
  const ComplexInterval& generator_value(std::size_t e, unsigned i) const { return gens_[e][i]; }
  bool real(std::size_t e) const { return real_[e]; }
  bool all_real() const;

  // x must live in the context these embeddings were built for (or a prefix)
  ComplexInterval evaluate(std::size_t e, const TowerElement& x) const;

 private:
  unsigned bits_;
  std::vector<std::vector<ComplexInterval>> gens_;
  std::vector<std::vector<ComplexInterval>> monomials_;
  std::vector<bool> real_;
};

// Builds the embeddings at `bits`, doubling precision up to `max_bits` until
// every root is separated from zero (PrecisionCapExceeded beyond that).
EmbeddingSet embed_all(const TowerContext& ctx, unsigned bits, unsigned max_bits = 4096);

}  // namespace qbar
