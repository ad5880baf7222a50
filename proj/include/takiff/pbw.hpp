#pragma once

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "takiff/oracle.hpp"

namespace takiff {

// Enveloping-algebra context: straightens arbitrary words into the PBW basis
// of normally ordered (ascending) words, with memoization keyed by the whole
// word being straightened.
//
// Termination: straightening g into a sorted word either shortens the word
// (bracket terms, central constants) or keeps the length while strictly
// reducing the number of inversions, so the recursion is well-founded; the
// memo key is the exact word, so cached values are context-free.
class EnvelopingAlgebra {
 public:
  struct Stats {
    std::uint64_t straighten_calls = 0;
    std::uint64_t memo_hits = 0;
    std::uint64_t memo_entries = 0;
  };

  explicit EnvelopingAlgebra(TakiffOracle oracle)
      : oracle_(std::move(oracle)), memo_limit_(env_memo_limit()) {}

  const TakiffOracle& oracle() const { return oracle_; }
  const Stats& stats() const {
    stats_.memo_entries = memo_.size();
    return stats_;
  }

  // Normal form of g * p for a single generator g.
  NCPoly multiply_gen_left(GenKey g, const NCPoly& p) const {
    NCPoly out;
    for (const auto& [m, c] : p.terms()) out.add_scaled(insert_left(g, m), c);
    return out;
  }

  // Normal form of an arbitrary word (not necessarily sorted).
  NCPoly normalize_word(const Mono& word) const {
    NCPoly out = NCPoly::one();
    for (size_t i = word.size(); i-- > 0;) out = multiply_gen_left(word[i], out);
    return out;
  }

  NCPoly multiply(const NCPoly& a, const NCPoly& b) const {
    NCPoly out;
    for (const auto& [ma, ca] : a.terms()) {
      NCPoly acc = b;
      for (size_t i = ma.size(); i-- > 0;) acc = multiply_gen_left(ma[i], acc);
      out.add_scaled(acc, ca);
    }
    return out;
  }

  NCPoly commutator(const NCPoly& a, const NCPoly& b) const {
    return multiply(a, b) - multiply(b, a);
  }

  NCPoly power(const NCPoly& a, int m) const {
    if (m < 0) throw std::invalid_argument("negative power");
    NCPoly out = NCPoly::one();
    for (int i = 0; i < m; ++i) out = multiply(out, a);
    return out;
  }

  // Extends a linear rule on generators to a derivation of the enveloping
  // algebra (Leibniz over each position of each word). The rule must map
  // every generator to a linear combination of generators; anything else is
  // rejected as a malformed action.
  NCPoly derivation(const std::function<NCPoly(GenKey)>& rule, const NCPoly& p) const {
    NCPoly out;
    for (const auto& [m, c] : p.terms()) {
      for (size_t pos = 0; pos < m.size(); ++pos) {
        const NCPoly image = rule(m[pos]);
        if (image.is_zero()) continue;
        for (const auto& [im, ic] : image.terms()) {
          if (im.size() != 1)
            throw std::domain_error("derivation rule image is not a linear combination of generators");
          Mono word = m;
          word[pos] = im[0];
          // The replaced word need not be sorted any more; renormalize.
          NCPoly nf = NCPoly::one();
          for (size_t i = word.size(); i-- > 0;) nf = multiply_gen_left(word[i], nf);
          out.add_scaled(nf, c * ic);
        }
      }
    }
    return out;
  }

 private:
  static size_t env_memo_limit() {
    // TAKIFF_MEMO_LIMIT caps the number of cached straightening results
    // (0 or unset = unbounded). Exceeding the cap only disables new
    // insertions; results stay exact.
    const char* v = std::getenv("TAKIFF_MEMO_LIMIT");
    if (!v || !*v) return 0;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0')
      throw std::invalid_argument("TAKIFF_MEMO_LIMIT must be a nonnegative integer");
    return static_cast<size_t>(parsed);
  }

  NCPoly insert_left(GenKey g, const Mono& mono) const {
    ++stats_.straighten_calls;
    if (mono.empty() || g <= mono.front()) {
      Mono m;
      m.reserve(mono.size() + 1);
      m.push_back(g);
      m.insert(m.end(), mono.begin(), mono.end());
      NCPoly p;
      p.add_term(m, 1);
      return p;
    }
    Mono key;
    key.reserve(mono.size() + 1);
    key.push_back(g);
    key.insert(key.end(), mono.begin(), mono.end());
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }

    const GenKey a = mono.front();
    const Mono rest(mono.begin() + 1, mono.end());

    // g*(a*rest) = a*(g*rest) + [g,a]*rest.
    NCPoly out;
    const NCPoly gr = insert_left(g, rest);
    for (const auto& [m1, c1] : gr.terms()) out.add_scaled(insert_left(a, m1), c1);
    const BracketResult br = oracle_.bracket(g, a);
    for (const auto& [h, ch] : br.linear) out.add_scaled(insert_left(h, rest), ch);
    if (br.constant != 0) out.add_term(rest, br.constant);

    if (memo_limit_ == 0 || memo_.size() < memo_limit_) memo_.emplace(std::move(key), out);
    return out;
  }

  TakiffOracle oracle_;
  size_t memo_limit_;
  mutable std::unordered_map<Mono, NCPoly, MonoHash> memo_;
  mutable Stats stats_;
};

}  // namespace takiff
