#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "takiff/commpoly.hpp"
#include "takiff/umatrix.hpp"

namespace takiff {

// Truncated current algebra g (x) C[v]/(v^{ell+1}) together with its
// enveloping-algebra context. Generators carry (basis index, current degree)
// and mode 0.
class TakiffAlgebra {
 public:
  TakiffAlgebra(const LieAlgebraData& base, int ell)
      : base_(std::make_shared<LieAlgebraData>(base)),
        ell_(ell),
        env_(TakiffOracle(base_, ell, false, 0)) {
    if (ell < 0) throw std::invalid_argument("truncation order must be nonnegative");
  }

  const LieAlgebraData& base() const { return *base_; }
  std::shared_ptr<const LieAlgebraData> base_ptr() const { return base_; }
  int ell() const { return ell_; }
  int dim() const { return base_->dim * (ell_ + 1); }
  const EnvelopingAlgebra& env() const { return env_; }

  std::vector<GenKey> generators() const {
    std::vector<GenKey> gens;
    gens.reserve(dim());
    for (int r = 0; r <= ell_; ++r)
      for (int i = 0; i < base_->dim; ++i) gens.push_back(gen_key(i, r, 0));
    return gens;
  }

  // Invariant pairing <X v^r, Y v^s> = delta_{r+s,ell} * gram(X,Y); the
  // top-degree pairing is the natural nondegenerate invariant form here.
  Rat pairing(GenKey a, GenKey b) const {
    env_.oracle().check_generator(a);
    env_.oracle().check_generator(b);
    if (gen_deg(a) + gen_deg(b) != ell_) return 0;
    return base_->gram.at(gen_basis(a), gen_basis(b));
  }

  RatMatrix pairing_gram() const {
    const auto gens = generators();
    const int d = static_cast<int>(gens.size());
    RatMatrix g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g.at(i, j) = pairing(gens[i], gens[j]);
    return g;
  }

 private:
  std::shared_ptr<const LieAlgebraData> base_;
  int ell_;
  EnvelopingAlgebra env_;
};

// Matrix-valued polynomial in the formal variable u; coefficient r is a
// matrix over the enveloping algebra.
class UPoly {
 public:
  UPoly() : n_(0) {}
  explicit UPoly(int n) : n_(n) {}

  // F(u) = sum_r u^r F^(r) with F^(r) the generator matrix at current degree
  // r (all entries at the given loop mode).
  static UPoly f_of_u(const LieAlgebraData& alg, const Representation& rep, int ell,
                      int mode = 0) {
    UPoly p(rep.N);
    for (int r = 0; r <= ell; ++r) p.coeff_[r] = build_F(alg, rep, r, mode);
    return p;
  }

  int n() const { return n_; }
  const std::map<int, UMatrix>& coeffs() const { return coeff_; }

  UMatrix coeff(int r) const {
    auto it = coeff_.find(r);
    return it == coeff_.end() ? UMatrix(n_) : it->second;
  }

  UPoly mul(const UPoly& o, const EnvelopingAlgebra& env) const {
    if (n_ != o.n_) throw std::invalid_argument("UPoly size mismatch");
    UPoly r(n_);
    for (const auto& [da, ma] : coeff_)
      for (const auto& [db, mb] : o.coeff_) {
        UMatrix prod = ma.mul(mb, env);
        auto it = r.coeff_.find(da + db);
        if (it == r.coeff_.end())
          r.coeff_.emplace(da + db, std::move(prod));
        else
          it->second = it->second + prod;
      }
    return r;
  }

  UPoly pow(int m, const EnvelopingAlgebra& env) const {
    if (m < 0) throw std::invalid_argument("negative power");
    UPoly r(n_);
    r.coeff_[0] = UMatrix::identity(n_);
    for (int i = 0; i < m; ++i) r = r.mul(*this, env);
    return r;
  }

  std::map<int, NCPoly> trace() const {
    std::map<int, NCPoly> t;
    for (const auto& [d, m] : coeff_) {
      NCPoly tr = m.trace();
      if (!tr.is_zero()) t[d] = std::move(tr);
    }
    return t;
  }

 private:
  int n_;
  std::map<int, UMatrix> coeff_;
};

// Scalar polynomial in u over the enveloping algebra (used for Pfaffian
// products, where factors must be multiplied in the prescribed order).
using UScalar = std::map<int, NCPoly>;

inline UScalar uscalar_mul(const UScalar& a, const UScalar& b, const EnvelopingAlgebra& env) {
  UScalar r;
  for (const auto& [da, pa] : a)
    for (const auto& [db, pb] : b) {
      NCPoly prod = env.multiply(pa, pb);
      if (prod.is_zero()) continue;
      auto [it, inserted] = r.try_emplace(da + db, prod);
      if (!inserted) {
        it->second += prod;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  return r;
}

// A coefficient family c(u) = sum_r c_r u^r with a claimed-central band of
// exponents [band_lo, band_hi].
struct CentralFamily {
  std::string label;
  int power = 0;  // trace power m, or n for the Pfaffian
  int band_lo = 0;
  int band_hi = 0;
  std::map<int, NCPoly> coeff;  // every exponent with a nonzero (or in-band) coefficient

  bool in_band(int r) const { return r >= band_lo && r <= band_hi; }
};

namespace detail {

inline void keep_band_entries(CentralFamily& fam, int max_exp) {
  // Materialize explicit zero coefficients inside the band and for low
  // exponents so "coefficient r" is always answerable.
  for (int r = 0; r <= max_exp; ++r) fam.coeff.try_emplace(r, NCPoly{});
}

}  // namespace detail

// Coefficients of tr F(u)^m over the truncated current algebra. The band
// [m*ell - ell, m*ell] is the claimed-central window; coefficients below it
// are returned too (they are generally not central).
inline CentralFamily theta_family(const TakiffAlgebra& tak, const Representation& rep, int m) {
  if (m < 0) throw std::invalid_argument("trace power must be nonnegative");
  const int ell = tak.ell();
  CentralFamily fam;
  fam.label = "theta[m=" + std::to_string(m) + "]";
  fam.power = m;
  fam.band_lo = std::max(0, m * ell - ell);
  fam.band_hi = m * ell;
  const UPoly f = UPoly::f_of_u(tak.base(), rep, ell, 0);
  fam.coeff = f.pow(m, tak.env()).trace();
  detail::keep_band_entries(fam, m * ell);
  return fam;
}

// Several trace powers sharing the incremental matrix powers of F(u).
inline std::vector<CentralFamily> theta_families(const TakiffAlgebra& tak,
                                                 const Representation& rep,
                                                 const std::vector<int>& ms) {
  int max_m = 0;
  for (int m : ms) {
    if (m < 0) throw std::invalid_argument("trace power must be nonnegative");
    max_m = std::max(max_m, m);
  }
  const int ell = tak.ell();
  const UPoly f = UPoly::f_of_u(tak.base(), rep, ell, 0);
  std::map<int, std::map<int, NCPoly>> traces;  // m -> trace coefficients
  UPoly p(rep.N);
  p = p.pow(0, tak.env());  // identity
  for (int m = 0; m <= max_m; ++m) {
    if (m > 0) p = p.mul(f, tak.env());
    for (int want : ms)
      if (want == m) traces[m] = p.trace();
  }
  std::vector<CentralFamily> out;
  for (int m : ms) {
    CentralFamily fam;
    fam.label = "theta[m=" + std::to_string(m) + "]";
    fam.power = m;
    fam.band_lo = std::max(0, m * ell - ell);
    fam.band_hi = m * ell;
    fam.coeff = traces[m];
    detail::keep_band_entries(fam, m * ell);
    out.push_back(std::move(fam));
  }
  return out;
}

// Perfect matchings of {0..2n-1} in canonical order (each pair ascending,
// pairs sorted by first element), with the permutation sign of the flattened
// sequence. Calls cb(sequence, sign).
template <typename Callback>
inline void for_each_matching(int two_n, Callback&& cb) {
  std::vector<int> avail(two_n);
  for (int i = 0; i < two_n; ++i) avail[i] = i;
  std::vector<int> seq;
  seq.reserve(two_n);
  auto sign_of = [](const std::vector<int>& s) {
    int inv = 0;
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = i + 1; j < s.size(); ++j)
        if (s[i] > s[j]) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
  };
  std::function<void()> rec = [&]() {
    if (avail.empty()) {
      cb(seq, sign_of(seq));
      return;
    }
    std::vector<int> cur = avail;
    const int a = cur[0];
    for (size_t t = 1; t < cur.size(); ++t) {
      const int b = cur[t];
      seq.push_back(a);
      seq.push_back(b);
      avail.clear();
      for (size_t u = 1; u < cur.size(); ++u)
        if (u != t) avail.push_back(cur[u]);
      rec();
      avail = cur;
      seq.pop_back();
      seq.pop_back();
    }
  };
  rec();
}

// Coefficients of the noncommutative Pfaffian
//   Pf F(u) = sum_matchings sign * F_{s1 s2}(u) F_{s3 s4}(u) ... ,
// defined for the even orthogonal series only. The band [n*ell - ell, n*ell]
// is the claimed-central window.
inline CentralFamily pfaffian_family(const TakiffAlgebra& tak, const Representation& rep,
                                     int mode = 0, const EnvelopingAlgebra* env_override = nullptr) {
  const LieAlgebraData& alg = tak.base();
  if (alg.series != Series::D)
    throw std::invalid_argument("Pfaffian is defined for the D series only; got " + alg.label);
  const int n = alg.n;
  const int ell = tak.ell();
  const EnvelopingAlgebra& env = env_override ? *env_override : tak.env();

  // Scalar u-polynomials for each matrix entry.
  const UPoly f = UPoly::f_of_u(alg, rep, ell, mode);
  auto entry = [&](int a, int b) {
    UScalar s;
    for (const auto& [d, m] : f.coeffs())
      if (!m.at(a, b).is_zero()) s[d] = m.at(a, b);
    return s;
  };

  UScalar total;
  for_each_matching(2 * n, [&](const std::vector<int>& seq, int sign) {
    UScalar prod;
    prod[0] = NCPoly::constant(sign);
    for (int p = 0; p < n; ++p) prod = uscalar_mul(prod, entry(seq[2 * p], seq[2 * p + 1]), env);
    for (auto& [d, val] : prod) {
      auto [it, inserted] = total.try_emplace(d, val);
      if (!inserted) {
        it->second += val;
        if (it->second.is_zero()) total.erase(it);
      }
    }
  });

  CentralFamily fam;
  fam.label = "pfaffian";
  fam.power = n;
  fam.band_lo = std::max(0, n * ell - ell);
  fam.band_hi = n * ell;
  fam.coeff = std::move(total);
  detail::keep_band_entries(fam, n * ell);
  return fam;
}

struct CentralityVerdict {
  bool central = false;
  std::optional<GenKey> witness_gen;
  NCPoly residual;
};

// Checks [g, x] = 0 for a generating set of the truncated current algebra:
// current degrees 0 and 1 on simple types (they generate the rest), every
// degree on reductive bases (gl has central directions that brackets cannot
// reach).
inline CentralityVerdict verify_central(const NCPoly& x, const TakiffAlgebra& tak) {
  CentralityVerdict v;
  std::vector<int> degs;
  if (tak.base().is_reductive) {
    for (int r = 0; r <= tak.ell(); ++r) degs.push_back(r);
  } else {
    degs.push_back(0);
    if (tak.ell() >= 1) degs.push_back(1);
  }
  for (int r : degs)
    for (int i = 0; i < tak.base().dim; ++i) {
      const GenKey g = gen_key(i, r, 0);
      NCPoly residual = tak.env().multiply_gen_left(g, x);
      residual -= tak.env().multiply(x, NCPoly::generator(g));
      if (!residual.is_zero()) {
        v.central = false;
        v.witness_gen = g;
        v.residual = std::move(residual);
        return v;
      }
    }
  v.central = true;
  return v;
}

// Deterministic sampling of rational points with small numerators and
// denominators, derived directly from the raw engine output so results are
// reproducible across platforms.
class RatSampler {
 public:
  explicit RatSampler(std::uint64_t seed) : eng_(seed) {}

  Rat small_rational() {
    const int num = static_cast<int>(eng_() % 201) - 100;  // [-100, 100]
    const int den = static_cast<int>(eng_() % 100) + 1;    // [1, 100]
    Rat r(num, den);
    r.canonicalize();  // two-integer construction does not reduce
    return r;
  }

  int uniform(int lo, int hi) {  // inclusive bounds
    if (hi < lo) throw std::invalid_argument("empty range");
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 eng_;
};

struct IndependenceReport {
  size_t count = 0;
  int rank = 0;
  bool independent = false;
  std::vector<std::uint64_t> seeds_tried;
  size_t variables = 0;
};

// Certifies algebraic independence of elements through their symbols: the
// Jacobian of the symbols at a random rational point has full row rank. Full
// rank at any exact point is a proof; a deficient sample is retried at two
// further seeds before reporting failure (which is then only "not certified",
// as vanishing can be bad luck — callers treat it as a hard failure because
// the expected families are known to be independent).
inline IndependenceReport independence_certificate(const std::vector<NCPoly>& elements,
                                                   std::uint64_t seed) {
  IndependenceReport report;
  report.count = elements.size();
  if (elements.empty()) {
    report.independent = true;
    return report;
  }

  std::vector<CommPoly> symbols;
  symbols.reserve(elements.size());
  std::set<GenKey> var_set;
  for (const NCPoly& e : elements) {
    symbols.push_back(symbol(e));
    for (GenKey g : symbols.back().variables()) var_set.insert(g);
  }
  const std::vector<GenKey> vars(var_set.begin(), var_set.end());
  report.variables = vars.size();

  for (int attempt = 0; attempt < 3; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    report.seeds_tried.push_back(s);
    RatSampler sampler(s);
    std::map<GenKey, Rat> point;
    for (GenKey g : vars) point[g] = sampler.small_rational();

    RatMatrix jac(static_cast<int>(symbols.size()), static_cast<int>(vars.size()));
    for (size_t i = 0; i < symbols.size(); ++i) {
      const auto grad = symbols[i].gradient_at(point);
      for (size_t j = 0; j < vars.size(); ++j) {
        auto it = grad.find(vars[j]);
        if (it != grad.end()) jac.at(static_cast<int>(i), static_cast<int>(j)) = it->second;
      }
    }
    report.rank = jac.rank();
    if (report.rank == static_cast<int>(symbols.size())) {
      report.independent = true;
      return report;
    }
  }
  return report;
}

struct LabeledElement {
  std::string label;
  NCPoly value;
};

// The standard generating family of the center: the claimed-central band of
// tr F(u)^m for each fundamental trace power, plus the Pfaffian band on the
// D series. Rejects reductive bases (the construction is for simple types).
inline std::vector<LabeledElement> center_generators(const TakiffAlgebra& tak,
                                                     const Representation& rep) {
  const LieAlgebraData& alg = tak.base();
  if (alg.is_reductive)
    throw std::invalid_argument("center generator families are defined for simple types only");

  std::vector<int> trace_powers;
  switch (alg.series) {
    case Series::A:
      for (int m = 2; m <= alg.n + 1; ++m) trace_powers.push_back(m);
      break;
    case Series::B:
    case Series::C:
      for (int m = 2; m <= 2 * alg.n; m += 2) trace_powers.push_back(m);
      break;
    case Series::D:
      for (int m = 2; m <= 2 * alg.n - 2; m += 2) trace_powers.push_back(m);
      break;
    case Series::GL:
      throw std::logic_error("unreachable");
  }

  std::vector<LabeledElement> out;
  for (const CentralFamily& fam : theta_families(tak, rep, trace_powers))
    for (int r = fam.band_lo; r <= fam.band_hi; ++r)
      out.push_back({fam.label + "^(" + std::to_string(r) + ")", fam.coeff.at(r)});
  if (alg.series == Series::D) {
    const CentralFamily pf = pfaffian_family(tak, rep);
    for (int r = pf.band_lo; r <= pf.band_hi; ++r)
      out.push_back({pf.label + "^(" + std::to_string(r) + ")", pf.coeff.at(r)});
  }
  return out;
}

}  // namespace takiff
