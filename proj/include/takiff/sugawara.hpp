#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "takiff/takiff_central.hpp"

namespace takiff {

// k_critical = -(ell+1) * h^vee. Needs a simple base (h^vee undefined for
// reductive ones).
inline Rat critical_level(const LieAlgebraData& alg, int ell) {
  if (alg.is_reductive)
    throw std::domain_error("critical level needs h^vee; " + alg.label + " is reductive");
  if (ell < 0) throw std::invalid_argument("truncation order must be nonnegative");
  return Rat(-(ell + 1)) * alg.dual_coxeter;
}

// Centrally extended loop algebra over the truncated current algebra, with
// the central element specialized to a rational level. Vacuum-module vectors
// are elements of the enveloping algebra of the negative-mode half.
class AffineTakiff {
 public:
  AffineTakiff(const LieAlgebraData& base, int ell, Rat level)
      : base_(std::make_shared<LieAlgebraData>(base)),
        ell_(ell),
        level_(std::move(level)),
        env_(TakiffOracle(base_, ell, true, level_)) {
    if (ell < 0) throw std::invalid_argument("truncation order must be nonnegative");
  }

  const LieAlgebraData& base() const { return *base_; }
  std::shared_ptr<const LieAlgebraData> base_ptr() const { return base_; }
  int ell() const { return ell_; }
  const Rat& level() const { return level_; }
  const EnvelopingAlgebra& env() const { return env_; }

 private:
  std::shared_ptr<const LieAlgebraData> base_;
  int ell_;
  Rat level_;
  EnvelopingAlgebra env_;
};

// Vector in the vacuum module at the context's level, represented by an
// element of U(negative modes) applied to the vacuum. Invariant: every
// generator in every monomial has mode < 0.
struct VacuumElement {
  NCPoly value;
};

inline bool is_vacuum_form(const NCPoly& p) {
  for (const auto& [m, c] : p.terms())
    for (GenKey g : m)
      if (gen_mode(g) >= 0) return false;
  return true;
}

inline VacuumElement make_vacuum(NCPoly p) {
  if (!is_vacuum_form(p))
    throw std::invalid_argument("vacuum vector contains a nonnegative mode");
  return VacuumElement{std::move(p)};
}

// Projection to the vacuum module: normally ordered monomials whose last
// letter has nonnegative mode annihilate the vacuum (the order sorts by mode
// first, so "last letter" carries the maximal mode).
inline NCPoly project_vacuum(const NCPoly& p) {
  NCPoly out;
  for (const auto& [m, c] : p.terms()) {
    if (!m.empty() && gen_mode(m.back()) >= 0) continue;
    out.add_term(m, c);
  }
  return out;
}

// Action of an annihilation-side generator (mode >= 0) on a vacuum vector.
inline VacuumElement apply_mode(const AffineTakiff& aff, GenKey g, const VacuumElement& v) {
  if (gen_mode(g) < 0)
    throw std::invalid_argument("apply_mode expects a generator of nonnegative mode");
  aff.env().oracle().check_generator(g);
  return VacuumElement{project_vacuum(aff.env().multiply_gen_left(g, v.value))};
}

struct SugawaraVerdict {
  bool annihilated = false;
  std::optional<GenKey> witness_gen;
  NCPoly residual;
};

// Checks that v is annihilated by the nonnegative-mode half: generator
// families at (degree 0, mode 0), (degree 1, mode 0) and (degree 0, mode 1)
// on simple bases — these generate all of the nonnegative half by brackets —
// and all current degrees at modes 0 and 1 on reductive bases.
inline SugawaraVerdict verify_sugawara(const VacuumElement& v, const AffineTakiff& aff) {
  SugawaraVerdict out;
  std::vector<std::pair<int, int>> fams;  // (deg, mode)
  if (aff.base().is_reductive) {
    for (int r = 0; r <= aff.ell(); ++r) {
      fams.emplace_back(r, 0);
      fams.emplace_back(r, 1);
    }
  } else {
    fams.emplace_back(0, 0);
    if (aff.ell() >= 1) fams.emplace_back(1, 0);
    fams.emplace_back(0, 1);
  }
  for (const auto& [deg, mode] : fams)
    for (int i = 0; i < aff.base().dim; ++i) {
      const GenKey g = gen_key(i, deg, mode);
      const VacuumElement res = apply_mode(aff, g, v);
      if (!res.value.is_zero()) {
        out.annihilated = false;
        out.witness_gen = g;
        out.residual = res.value;
        return out;
      }
    }
  out.annihilated = true;
  return out;
}

// Derivation T with T(X v^r [p]) = -p * X v^r [p-1]; on vacuum vectors this
// is the translation operator of the vacuum module.
inline VacuumElement translate(const AffineTakiff& aff, const VacuumElement& v, int times = 1) {
  if (times < 0) throw std::invalid_argument("translation count must be nonnegative");
  NCPoly cur = v.value;
  for (int s = 0; s < times; ++s) {
    cur = aff.env().derivation(
        [&](GenKey g) {
          const int p = gen_mode(g);
          if (p == 0) return NCPoly();  // only arises off the vacuum half
          return NCPoly::generator(gen_key(gen_basis(g), gen_deg(g), p - 1)).scaled(Rat(-p));
        },
        cur);
  }
  return VacuumElement{std::move(cur)};
}

// Evaluation homomorphism U(negative modes) -> U(truncated current algebra)
// sending X v^r [p] to X v^r; a Lie homomorphism on the negative half (no
// central terms arise there), so it commutes with products.
inline NCPoly erase_modes(const VacuumElement& v, const TakiffAlgebra& finite) {
  NCPoly out;
  for (const auto& [m, c] : v.value.terms()) {
    Mono word;
    word.reserve(m.size());
    for (GenKey g : m) word.push_back(gen_key(gen_basis(g), gen_deg(g), 0));
    out.add_scaled(finite.env().normalize_word(word), c);
  }
  return out;
}

// Theta family: coefficients of tr Fhat(u)^m with Fhat(u) the generator
// matrix at mode -1. Claimed band as in the finite case.
inline CentralFamily sugawara_theta(const AffineTakiff& aff, const Representation& rep, int m) {
  if (m < 0) throw std::invalid_argument("trace power must be nonnegative");
  const int ell = aff.ell();
  CentralFamily fam;
  fam.label = "Theta[m=" + std::to_string(m) + "]";
  fam.power = m;
  fam.band_lo = std::max(0, m * ell - ell);
  fam.band_hi = m * ell;
  const UPoly f = UPoly::f_of_u(aff.base(), rep, ell, -1);
  fam.coeff = f.pow(m, aff.env()).trace();
  detail::keep_band_entries(fam, m * ell);
  return fam;
}

inline std::vector<CentralFamily> sugawara_theta_many(const AffineTakiff& aff,
                                                      const Representation& rep,
                                                      const std::vector<int>& ms) {
  int max_m = 0;
  for (int m : ms) {
    if (m < 0) throw std::invalid_argument("trace power must be nonnegative");
    max_m = std::max(max_m, m);
  }
  const int ell = aff.ell();
  const UPoly f = UPoly::f_of_u(aff.base(), rep, ell, -1);
  std::map<int, std::map<int, NCPoly>> traces;
  UPoly p(rep.N);
  p = p.pow(0, aff.env());
  for (int m = 0; m <= max_m; ++m) {
    if (m > 0) p = p.mul(f, aff.env());
    for (int want : ms)
      if (want == m) traces[m] = p.trace();
  }
  std::vector<CentralFamily> out;
  for (int m : ms) {
    CentralFamily fam;
    fam.label = "Theta[m=" + std::to_string(m) + "]";
    fam.power = m;
    fam.band_lo = std::max(0, m * ell - ell);
    fam.band_hi = m * ell;
    fam.coeff = traces[m];
    detail::keep_band_entries(fam, m * ell);
    out.push_back(std::move(fam));
  }
  return out;
}

// Pfaffian family at mode -1 (D series only).
inline CentralFamily sugawara_pfaffian(const AffineTakiff& aff, const Representation& rep) {
  TakiffAlgebra shadow(aff.base(), aff.ell());  // supplies series/ell metadata
  CentralFamily fam = pfaffian_family(shadow, rep, -1, &aff.env());
  fam.label = "Pi";
  return fam;
}

struct CompletenessReport {
  size_t count = 0;
  int rank = 0;
  bool invariant_ok = false;
  bool independent = false;
  std::vector<std::string> labels;
  std::vector<std::uint64_t> seeds_tried;
  size_t variables = 0;
  std::string witness;  // first invariance failure, if any
};

// Completeness evidence at the critical level: the symbols of the band
// families and their translates T^s (s <= max_s) are (a) invariant under the
// nonnegative half acting on the symbol algebra of the negative half and
// (b) algebraically independent (Jacobian full rank at a random point).
inline CompletenessReport completeness_certificate(const AffineTakiff& aff,
                                                   const Representation& rep, int max_s,
                                                   std::uint64_t seed) {
  if (max_s < 0) throw std::invalid_argument("max_s must be nonnegative");
  const LieAlgebraData& alg = aff.base();
  if (alg.is_reductive)
    throw std::invalid_argument("completeness families are defined for simple types only");

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

  std::vector<LabeledElement> base;
  for (const CentralFamily& fam : sugawara_theta_many(aff, rep, trace_powers))
    for (int r = fam.band_lo; r <= fam.band_hi; ++r)
      base.push_back({fam.label + "^(" + std::to_string(r) + ")", fam.coeff.at(r)});
  if (alg.series == Series::D) {
    const CentralFamily pf = sugawara_pfaffian(aff, rep);
    for (int r = pf.band_lo; r <= pf.band_hi; ++r)
      base.push_back({pf.label + "^(" + std::to_string(r) + ")", pf.coeff.at(r)});
  }

  CompletenessReport report;
  std::vector<NCPoly> vectors;
  for (const LabeledElement& e : base) {
    VacuumElement v = make_vacuum(e.value);
    for (int s = 0; s <= max_s; ++s) {
      if (s > 0) v = translate(aff, v, 1);
      vectors.push_back(v.value);
      report.labels.push_back(s == 0 ? e.label : "T^" + std::to_string(s) + " " + e.label);
    }
  }
  report.count = vectors.size();

  // Infinitesimal invariance of the symbols: the nonnegative half acts on
  // the symbol algebra of the negative half by
  //   Y v^s [q] . X v^r [p] = [Y,X] v^{r+s} [p+q]  (kept only when p+q < 0
  //   and r+s <= ell), and every symbol must be killed.
  report.invariant_ok = true;
  // Vectors reach mode depth -(max_s+1); actions at higher modes kill every
  // variable outright, so this cap checks all nontrivial cases.
  const int mode_cap = max_s + 1;
  for (size_t vi = 0; vi < vectors.size() && report.invariant_ok; ++vi) {
    const CommPoly sym = symbol(vectors[vi]);
    for (int q = 0; q <= mode_cap && report.invariant_ok; ++q)
      for (int s = 0; s <= aff.ell() && report.invariant_ok; ++s)
        for (int j = 0; j < alg.dim; ++j) {
          const CommPoly image = sym.apply_derivation([&](GenKey g) {
            std::vector<std::pair<GenKey, Rat>> img;
            const int r = gen_deg(g), p = gen_mode(g);
            if (s + r > aff.ell() || p + q >= 0) return img;
            for (const auto& [k, c] : alg.bracket(j, gen_basis(g)))
              img.emplace_back(gen_key(k, s + r, p + q), c);
            return img;
          });
          if (!image.is_zero()) {
            report.invariant_ok = false;
            report.witness = "symbol of " + report.labels[vi] + " moved by basis " +
                             alg.basis_names[j] + " deg " + std::to_string(s) + " mode " +
                             std::to_string(q);
            break;
          }
        }
  }

  const IndependenceReport ind = independence_certificate(vectors, seed);
  report.rank = ind.rank;
  report.independent = ind.independent;
  report.seeds_tried = ind.seeds_tried;
  report.variables = ind.variables;
  return report;
}

}  // namespace takiff
