#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "grady/gf2.hpp"

namespace grady {

// A GF(2) vector space with an alternating bilinear pairing and, optionally,
// a quadratic form given as a full value table over all 2^dim vectors.
// Invariants: the Gram matrix is symmetric with zero diagonal; when the form
// is present, Q(x+y) = Q(x) + Q(y) + <x,y> and Q(0) = 0.
class QuadSpace2 {
 public:
  QuadSpace2() = default;

  // Pairing-only space.
  QuadSpace2(int dim, GF2Matrix gram) : dim_(dim), gram_(std::move(gram)) {
    validate_gram();
  }

  // Space with quadratic form; the pairing is the polarization.
  QuadSpace2(int dim, std::vector<int> quad_table)
      : dim_(dim), quad_(std::move(quad_table)) {
    if (static_cast<int>(quad_->size()) != (1 << dim_))
      throw std::invalid_argument("quadratic form table has wrong size");
    if ((*quad_)[0] != 0) throw std::invalid_argument("Q(0) must be 0");
    gram_ = GF2Matrix(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        gf2vec ei = gf2vec(1) << i, ej = gf2vec(1) << j;
        int p = ((*quad_)[ei ^ ej] ^ (*quad_)[ei] ^ (*quad_)[ej]) & 1;
        gram_.set(i, j, p);
      }
    validate_gram();
    // The table must itself satisfy the polarization law everywhere.
    for (gf2vec x = 0; x < (gf2vec(1) << dim_); ++x)
      for (gf2vec y = 0; y < (gf2vec(1) << dim_); ++y)
        if ((((*quad_)[x ^ y] ^ (*quad_)[x] ^ (*quad_)[y]) & 1) != pairing(x, y))
          throw std::invalid_argument("value table is not a quadratic form");
  }

  static QuadSpace2 from_form(int dim, const std::function<int(gf2vec)>& q) {
    std::vector<int> table(std::size_t(1) << dim);
    for (gf2vec x = 0; x < (gf2vec(1) << dim); ++x) table[x] = q(x) & 1;
    return QuadSpace2(dim, std::move(table));
  }

  int dim() const { return dim_; }
  const GF2Matrix& gram() const { return gram_; }
  bool has_quad() const { return quad_.has_value(); }

  int pairing(gf2vec x, gf2vec y) const {
    int p = 0;
    for (int i = 0; i < dim_; ++i)
      if ((x >> i) & 1) p ^= __builtin_parity(gram_.row[i] & y);
    return p;
  }

  int quad(gf2vec x) const {
    if (!quad_) throw std::logic_error("no quadratic form on this space");
    return (*quad_)[x];
  }

  // rank of the pairing; the pairing is nondegenerate iff radical is trivial
  int pairing_rank() const { return gf2_rank(gram_.row); }
  bool nondegenerate() const { return pairing_rank() == dim_; }

  std::vector<gf2vec> radical() const {
    // kernel of the Gram matrix
    std::vector<gf2vec> rad;
    for (gf2vec x = 0; x < (gf2vec(1) << dim_); ++x) {
      bool in_rad = true;
      for (int i = 0; i < dim_ && in_rad; ++i)
        if (__builtin_parity(gram_.row[i] & x)) in_rad = false;
      if (in_rad) rad.push_back(x);
    }
    return rad;
  }

 private:
  void validate_gram() {
    if (gram_.rows != dim_ || gram_.cols != dim_)
      throw std::invalid_argument("gram matrix has wrong size");
    for (int i = 0; i < dim_; ++i) {
      if (gram_.get(i, i) != 0) throw std::invalid_argument("pairing must be alternating");
      for (int j = 0; j < dim_; ++j)
        if (gram_.get(i, j) != gram_.get(j, i))
          throw std::invalid_argument("pairing must be symmetric");
    }
  }

  int dim_ = 0;
  GF2Matrix gram_;
  std::optional<std::vector<int>> quad_;
};

// Polarization of a quadratic form value table: the alternating Gram matrix
// with entries Q(e_i + e_j) + Q(e_i) + Q(e_j).
inline GF2Matrix polarize(const QuadSpace2& space) {
  if (!space.has_quad()) throw std::invalid_argument("polarize needs a quadratic form");
  return space.gram();
}

// Arf invariant as the majority value: +1 if the form takes 0 more often
// than 1, -1 otherwise. Defined for nondegenerate polarization (dim 0 gives +1).
inline int arf(const QuadSpace2& space) {
  if (!space.has_quad()) throw std::invalid_argument("arf needs a quadratic form");
  if (!space.nondegenerate())
    throw std::invalid_argument("arf needs a nondegenerate polarization");
  int zeros = 0, ones = 0;
  for (gf2vec x = 0; x < (gf2vec(1) << space.dim()); ++x)
    (space.quad(x) ? ones : zeros)++;
  if (zeros == ones) throw std::logic_error("quadratic form has no majority value");
  return zeros > ones ? +1 : -1;
}

}  // namespace grady
