#pragma once

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "takiff/nc.hpp"

namespace takiff {

// Lie bracket of two generators: a rational combination of generators plus a
// rational constant (the central charge contribution; only nonzero in affine
// contexts where the central element is specialized to a rational level).
struct BracketResult {
  std::vector<std::pair<GenKey, Rat>> linear;
  Rat constant = 0;
};

// Bracket oracle for the truncated current algebra over a fixed base Lie
// algebra, optionally extended to the centrally extended loop algebra:
//
//   [X v^r [p], Y v^s [q]] = ([X,Y]) v^{r+s} [p+q]   (dropped when r+s > ell)
//                          + p * delta_{p,-q} * <X v^r, Y v^s> * level,
//
// where the pairing <X v^r, Y v^s> is gram(X,Y) when r = s = 0 and zero
// otherwise. In finite mode all modes are 0 and the central term is absent.
class TakiffOracle {
 public:
  TakiffOracle(std::shared_ptr<const LieAlgebraData> alg, int ell, bool affine = false,
               Rat level = 0)
      : alg_(std::move(alg)), ell_(ell), affine_(affine), level_(std::move(level)) {
    if (!alg_) throw std::invalid_argument("oracle needs an algebra");
    if (ell_ < 0) throw std::invalid_argument("truncation order must be nonnegative");
  }

  const LieAlgebraData& algebra() const { return *alg_; }
  std::shared_ptr<const LieAlgebraData> algebra_ptr() const { return alg_; }
  int ell() const { return ell_; }
  bool affine() const { return affine_; }
  const Rat& level() const { return level_; }

  void check_generator(GenKey g) const {
    if (gen_basis(g) >= alg_->dim) throw std::out_of_range("generator basis index out of range");
    if (gen_deg(g) > ell_) throw std::out_of_range("generator degree exceeds truncation order");
    if (!affine_ && gen_mode(g) != 0)
      throw std::invalid_argument("nonzero mode generator in a finite context");
  }

  BracketResult bracket(GenKey a, GenKey b) const {
    check_generator(a);
    check_generator(b);
    BracketResult out;
    const int deg = gen_deg(a) + gen_deg(b);
    if (deg <= ell_) {
      const int mode = gen_mode(a) + gen_mode(b);
      for (const auto& [k, c] : alg_->bracket(gen_basis(a), gen_basis(b)))
        out.linear.emplace_back(gen_key(k, deg, mode), c);
    }
    if (affine_ && gen_mode(a) + gen_mode(b) == 0 && gen_mode(a) != 0 && gen_deg(a) == 0 &&
        gen_deg(b) == 0) {
      const Rat& pair = alg_->gram.at(gen_basis(a), gen_basis(b));
      if (pair != 0) out.constant = gen_mode(a) * pair * level_;
    }
    return out;
  }

 private:
  std::shared_ptr<const LieAlgebraData> alg_;
  int ell_;
  bool affine_;
  Rat level_;
};

}  // namespace takiff
