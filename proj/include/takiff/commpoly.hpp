#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "takiff/nc.hpp"

namespace takiff {

// Commutative polynomial in generator variables (monomials are sorted
// multisets of generator keys). Used for symbols of enveloping-algebra
// elements and everything downstream of them: restrictions, gradients,
// Jacobian ranks, infinitesimal invariance.
class CommPoly {
 public:
  using TermMap = std::map<Mono, Rat, MonoOrder>;

  CommPoly() = default;

  static CommPoly zero() { return CommPoly(); }
  static CommPoly constant(const Rat& c) {
    CommPoly p;
    p.add_term({}, c);
    return p;
  }
  static CommPoly var(GenKey g) {
    CommPoly p;
    p.add_term({g}, 1);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size()); }
  const TermMap& terms() const { return terms_; }

  void add_term(Mono m, const Rat& c) {
    if (c == 0) return;
    if (!mono_is_sorted(m)) std::sort(m.begin(), m.end());
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  CommPoly& operator+=(const CommPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  CommPoly& operator-=(const CommPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  CommPoly& operator*=(const Rat& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  CommPoly operator+(const CommPoly& o) const {
    CommPoly r = *this;
    r += o;
    return r;
  }
  CommPoly operator-(const CommPoly& o) const {
    CommPoly r = *this;
    r -= o;
    return r;
  }
  CommPoly scaled(const Rat& s) const {
    CommPoly r = *this;
    r *= s;
    return r;
  }

  CommPoly operator*(const CommPoly& o) const {
    CommPoly r;
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) {
        Mono m;
        m.reserve(ma.size() + mb.size());
        std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
        r.add_term(std::move(m), ca * cb);
      }
    return r;
  }

  CommPoly pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative power");
    CommPoly r = constant(1);
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
  }

  bool operator==(const CommPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const CommPoly& o) const { return !(*this == o); }

  std::set<GenKey> variables() const {
    std::set<GenKey> v;
    for (const auto& [m, c] : terms_) v.insert(m.begin(), m.end());
    return v;
  }

  // Keeps only monomials all of whose variables satisfy the predicate
  // (e.g. restriction to the Cartan subalgebra: set every non-Cartan
  // coordinate to zero).
  CommPoly restricted(const std::function<bool(GenKey)>& keep) const {
    CommPoly r;
    for (const auto& [m, c] : terms_) {
      bool ok = true;
      for (GenKey g : m)
        if (!keep(g)) {
          ok = false;
          break;
        }
      if (ok) r.add_term(m, c);
    }
    return r;
  }

  Rat evaluate(const std::map<GenKey, Rat>& point) const {
    Rat total = 0;
    for (const auto& [m, c] : terms_) {
      Rat v = c;
      for (GenKey g : m) {
        auto it = point.find(g);
        if (it == point.end()) throw std::invalid_argument("evaluation point misses a variable");
        v *= it->second;
        if (v == 0) break;
      }
      total += v;
    }
    return total;
  }

  // All partial derivatives evaluated at a point, handling zero coordinates
  // exactly (a monomial with two zero factors kills every partial; with one
  // zero factor only that variable's partial survives).
  std::map<GenKey, Rat> gradient_at(const std::map<GenKey, Rat>& point) const {
    std::map<GenKey, Rat> grad;
    for (const auto& [m, c] : terms_) {
      // Multiplicities of the distinct variables of the monomial.
      std::map<GenKey, int> mult;
      for (GenKey g : m) ++mult[g];
      int zero_count = 0;
      GenKey zero_var = 0;
      Rat prod_nonzero = c;
      for (const auto& [g, e] : mult) {
        auto it = point.find(g);
        if (it == point.end()) throw std::invalid_argument("evaluation point misses a variable");
        if (it->second == 0) {
          zero_count += e;
          zero_var = g;
        } else {
          for (int i = 0; i < e; ++i) prod_nonzero *= it->second;
        }
      }
      if (zero_count >= 2) continue;
      if (zero_count == 1) {
        // Only d/d(zero_var) survives: the remaining factors at full power.
        grad[zero_var] += prod_nonzero;
        continue;
      }
      for (const auto& [g, e] : mult) {
        const Rat& x = point.at(g);
        grad[g] += prod_nonzero * e / x;
      }
    }
    for (auto it = grad.begin(); it != grad.end();)
      it = (it->second == 0) ? grad.erase(it) : std::next(it);
    return grad;
  }

  // Extends a linear rule on variables to a derivation (Leibniz rule). The
  // rule returns (variable, coefficient) pairs; images may be empty.
  CommPoly apply_derivation(
      const std::function<std::vector<std::pair<GenKey, Rat>>(GenKey)>& rule) const {
    CommPoly out;
    for (const auto& [m, c] : terms_) {
      std::map<GenKey, int> mult;
      for (GenKey g : m) ++mult[g];
      for (const auto& [g, e] : mult) {
        for (const auto& [h, coef] : rule(g)) {
          // Replace one occurrence of g by h.
          Mono word;
          word.reserve(m.size());
          bool replaced = false;
          for (GenKey x : m) {
            if (!replaced && x == g) {
              word.push_back(h);
              replaced = true;
            } else {
              word.push_back(x);
            }
          }
          out.add_term(std::move(word), c * coef * e);
        }
      }
    }
    return out;
  }

 private:
  TermMap terms_;
};

// Symbol in the associated graded (symmetric) algebra: the top-filtration
// part of a PBW-normalized element, reread as a commutative polynomial.
// symbol(0) = 0.
inline CommPoly symbol(const NCPoly& p) {
  CommPoly s;
  const int d = p.degree();
  if (d < 0) return s;
  for (const auto& [m, c] : p.terms())
    if (static_cast<int>(m.size()) == d) s.add_term(m, c);
  return s;
}

inline std::string commpoly_str(const CommPoly& p, const LieAlgebraData* alg = nullptr,
                                bool with_mode = true) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    out += rat_str(c);
    for (GenKey g : m) out += "*" + gen_str(g, alg, with_mode);
  }
  return out;
}

}  // namespace takiff
