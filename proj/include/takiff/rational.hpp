#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace takiff {

// Exact rational scalar. All arithmetic in the library is exact; no floating
// point is used anywhere.
using Rat = mpq_class;

// Parses "p", "-p" or "p/q" (decimal). Rejects empty strings, junk, interior
// whitespace (which the GMP parser would silently ignore) and zero
// denominators; the result is always canonicalized.
inline Rat rat_parse(const std::string& text) {
  const auto grammar_ok = [&]() {
    size_t i = 0;
    if (i < text.size() && text[i] == '-') ++i;
    size_t digits = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i, ++digits;
    if (digits == 0) return false;
    if (i == text.size()) return true;
    if (text[i] != '/') return false;
    ++i;
    digits = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i, ++digits;
    return digits > 0 && i == text.size();
  };
  if (!grammar_ok()) throw std::invalid_argument("bad rational literal '" + text + "'");
  mpq_class q(text, 10);
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator in rational literal '" + text + "'");
  q.canonicalize();
  return q;
}

// Canonical textual form: "p" when the denominator is 1, otherwise "p/q"
// with gcd(p,q)=1 and q>0. Stable across runs (used for byte-identical
// serialization).
inline std::string rat_str(const Rat& x) { return x.get_str(); }

}  // namespace takiff
