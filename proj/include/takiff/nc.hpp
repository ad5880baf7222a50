#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "takiff/lie.hpp"

namespace takiff {

// A generator of (an enveloping algebra over) a truncated current algebra:
// basis element, truncation degree in the current variable, and — in affine
// contexts — a loop mode. Everything is packed into one 64-bit key whose
// numeric order is (mode, degree, basis) lexicographically; that order puts
// negative modes before nonnegative ones, so in vacuum modules "ends with a
// nonnegative mode" is a check on the last letter of a sorted word.
using GenKey = std::uint64_t;

constexpr int kModeBias = 1 << 15;

inline GenKey gen_key(int basis, int deg, int mode = 0) {
  if (basis < 0 || basis >= (1 << 20)) throw std::out_of_range("generator basis index");
  if (deg < 0 || deg >= (1 << 15)) throw std::out_of_range("generator degree");
  if (mode < -kModeBias || mode >= kModeBias) throw std::out_of_range("generator mode");
  return (static_cast<GenKey>(mode + kModeBias) << 40) |
         (static_cast<GenKey>(deg) << 20) | static_cast<GenKey>(basis);
}

inline int gen_basis(GenKey g) { return static_cast<int>(g & ((1u << 20) - 1)); }
inline int gen_deg(GenKey g) { return static_cast<int>((g >> 20) & ((1u << 20) - 1)); }
inline int gen_mode(GenKey g) { return static_cast<int>(g >> 40) - kModeBias; }

// A word in the generators. Normally ordered (PBW) words are ascending in the
// key order; empty word = 1.
using Mono = std::vector<GenKey>;

inline bool mono_is_sorted(const Mono& m) {
  for (size_t i = 1; i < m.size(); ++i)
    if (m[i - 1] > m[i]) return false;
  return true;
}

// Graded-lexicographic order: by word length first, then lexicographically on
// the packed keys. Total degree dominating makes the top-filtration part of a
// polynomial its trailing block of terms.
struct MonoOrder {
  bool operator()(const Mono& a, const Mono& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct MonoHash {
  size_t operator()(const Mono& m) const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the key words
    for (GenKey g : m) {
      h ^= g;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

// Element of the enveloping algebra, stored as a rational combination of
// normally ordered words. The zero polynomial has no terms.
class NCPoly {
 public:
  using TermMap = std::map<Mono, Rat, MonoOrder>;

  NCPoly() = default;

  static NCPoly zero() { return NCPoly(); }
  static NCPoly one() { return constant(1); }
  static NCPoly constant(const Rat& c) {
    NCPoly p;
    p.add_term({}, c);
    return p;
  }
  static NCPoly generator(GenKey g) {
    NCPoly p;
    p.add_term({g}, 1);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  // Filtration degree (longest word); -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size()); }

  const TermMap& terms() const { return terms_; }

  Rat coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  NCPoly& operator+=(const NCPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  NCPoly& add_scaled(const NCPoly& o, const Rat& s) {
    if (s == 0) return *this;
    for (const auto& [m, c] : o.terms_) add_term(m, c * s);
    return *this;
  }
  NCPoly& operator*=(const Rat& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  NCPoly operator+(const NCPoly& o) const {
    NCPoly r = *this;
    r += o;
    return r;
  }
  NCPoly operator-(const NCPoly& o) const {
    NCPoly r = *this;
    r -= o;
    return r;
  }
  NCPoly scaled(const Rat& s) const {
    NCPoly r = *this;
    r *= s;
    return r;
  }

  bool operator==(const NCPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const NCPoly& o) const { return !(*this == o); }

 private:
  TermMap terms_;
};

// Human-readable rendering for diagnostics and witnesses:
// 3/2*H1^(1)[-2] means basis element H1, current degree 1, mode -2.
inline std::string gen_str(GenKey g, const LieAlgebraData* alg = nullptr, bool with_mode = true) {
  std::string name = (alg && gen_basis(g) < alg->dim) ? alg->basis_names[gen_basis(g)]
                                                      : "g" + std::to_string(gen_basis(g));
  name += "^(" + std::to_string(gen_deg(g)) + ")";
  if (with_mode) name += "[" + std::to_string(gen_mode(g)) + "]";
  return name;
}

inline std::string ncpoly_str(const NCPoly& p, const LieAlgebraData* alg = nullptr,
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
