// Straightening engine: PBW normal forms, associativity, derivations,
// memoization, and the bracket oracle for truncated/affine contexts.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <memory>

#include "takiff/takiff.hpp"

using namespace takiff;

namespace {

std::shared_ptr<const LieAlgebraData> shared_algebra(const char* label) {
  return std::make_shared<LieAlgebraData>(build_algebra(label).first);
}

NCPoly mono_poly(std::initializer_list<GenKey> gens, const Rat& c = 1) {
  NCPoly p;
  p.add_term(Mono(gens), c);
  return p;
}

}  // namespace

TEST_CASE("sl2 straightening against hand computations") {
  auto alg = shared_algebra("A1");
  EnvelopingAlgebra env{TakiffOracle(alg, 0)};
  // Basis order: H=0, E12(e)=1, E21(f)=2; keys sort as h < e < f.
  const GenKey h = gen_key(0, 0), e = gen_key(1, 0), f = gen_key(2, 0);

  // f*e = e*f - h.
  NCPoly fe = env.multiply(NCPoly::generator(f), NCPoly::generator(e));
  NCPoly expected = mono_poly({e, f});
  expected.add_term({h}, -1);
  CHECK(fe == expected);

  // e*f is already normally ordered.
  CHECK(env.multiply(NCPoly::generator(e), NCPoly::generator(f)) == mono_poly({e, f}));

  // f*h*e = h*e*f - h*h + 2*e*f - 2*h  (worked out by hand).
  NCPoly fhe = env.normalize_word({f, h, e});
  NCPoly want = mono_poly({h, e, f});
  want.add_term({h, h}, -1);
  want.add_term({e, f}, 2);
  want.add_term({h}, -2);
  CHECK(fhe == want);

  // Repeated letters are legal monomials.
  CHECK(env.normalize_word({e, e}) == mono_poly({e, e}));
  // Normal forms are fixed points.
  for (const auto& [m, c] : fhe.terms()) CHECK(env.normalize_word(m).coeff(m) == 1);
  CHECK(env.multiply(NCPoly::one(), fhe) == fhe);
}

TEST_CASE("PBW spanning monomials in filtration degree two") {
  auto alg = shared_algebra("A1");
  EnvelopingAlgebra env{TakiffOracle(alg, 1)};
  std::vector<GenKey> gens;
  for (int r = 0; r <= 1; ++r)
    for (int i = 0; i < 3; ++i) gens.push_back(gen_key(i, r));
  const int d = static_cast<int>(gens.size());

  std::set<Mono, MonoOrder> monos;
  for (GenKey a : gens)
    for (GenKey b : gens) {
      const NCPoly p = env.normalize_word({a, b});
      for (const auto& [m, c] : p.terms()) {
        CHECK(mono_is_sorted(m));
        CHECK(m.size() <= 2);
        if (m.size() == 2) monos.insert(m);
      }
    }
  // All sorted pairs occur: D*(D+1)/2 of them; with the D singletons that is
  // D + C(D+1,2) spanning monomials of degree <= 2.
  CHECK(static_cast<int>(monos.size()) == d * (d + 1) / 2);
  CHECK(d + static_cast<int>(monos.size()) == d + d * (d + 1) / 2);
}

TEST_CASE("multiplication is associative (fuzzed)") {
  auto alg = shared_algebra("A1");
  EnvelopingAlgebra env{TakiffOracle(alg, 1)};
  std::vector<GenKey> gens;
  for (int r = 0; r <= 1; ++r)
    for (int i = 0; i < 3; ++i) gens.push_back(gen_key(i, r));

  RatSampler sampler(20260815);
  auto rand_poly = [&]() {
    NCPoly p;
    const int terms = sampler.uniform(1, 2);
    for (int t = 0; t < terms; ++t) {
      Mono m;
      const int len = sampler.uniform(0, 2);
      for (int k = 0; k < len; ++k) m.push_back(gens[sampler.uniform(0, 5)]);
      std::sort(m.begin(), m.end());
      p.add_term(m, sampler.small_rational());
    }
    return p;
  };

  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const NCPoly a = rand_poly(), b = rand_poly(), c = rand_poly();
    const NCPoly lhs = env.multiply(env.multiply(a, b), c);
    const NCPoly rhs = env.multiply(a, env.multiply(b, c));
    if (lhs != rhs) {
      INFO("a = " << ncpoly_str(a) << "\nb = " << ncpoly_str(b) << "\nc = " << ncpoly_str(c));
      REQUIRE(lhs == rhs);
    }
    ++checked;
  }
  CHECK(checked == 1000);

  // Distributivity spot check.
  const NCPoly a = rand_poly(), b = rand_poly(), c = rand_poly();
  CHECK(env.multiply(a, b + c) == env.multiply(a, b) + env.multiply(a, c));
}

TEST_CASE("commutators vanish at truncated degree and respect the oracle") {
  auto alg = shared_algebra("A1");
  EnvelopingAlgebra env{TakiffOracle(alg, 1)};
  const GenKey e1 = gen_key(1, 1), f1 = gen_key(2, 1), e0 = gen_key(1, 0), f0 = gen_key(2, 0),
               h1 = gen_key(0, 1);

  // [e v, f v] = [e,f] v^2 = 0 at ell = 1.
  CHECK(env.commutator(NCPoly::generator(e1), NCPoly::generator(f1)).is_zero());
  // [e, f v] = h v.
  CHECK(env.commutator(NCPoly::generator(e0), NCPoly::generator(f1)) ==
        NCPoly::generator(h1));
  // [e, f] = h.
  CHECK(env.commutator(NCPoly::generator(e0), NCPoly::generator(f0)) ==
        NCPoly::generator(gen_key(0, 0)));

  // Degree beyond the truncation order is rejected.
  CHECK_THROWS_AS(env.oracle().bracket(gen_key(1, 2), f0), std::out_of_range);
  // Nonzero modes are rejected in finite contexts.
  CHECK_THROWS_AS(env.oracle().bracket(gen_key(1, 0, 1), f0), std::invalid_argument);
  // Basis index out of range is rejected.
  CHECK_THROWS_AS(env.oracle().bracket(gen_key(17, 0), f0), std::out_of_range);
}

TEST_CASE("affine oracle: central terms at paired modes") {
  auto alg = shared_algebra("A1");
  const Rat k = 5;
  TakiffOracle oracle(alg, 0, true, k);
  const int H = 0, E = 1, F = 2;

  // [e[1], f[-1]] = h[0] + <e,f> k, with <e,f> = tr(EF) = 1.
  auto br = oracle.bracket(gen_key(E, 0, 1), gen_key(F, 0, -1));
  REQUIRE(br.linear.size() == 1);
  CHECK(br.linear[0].first == gen_key(H, 0, 0));
  CHECK(br.linear[0].second == 1);
  CHECK(br.constant == k);

  // [h[1], h[-1]] = <h,h> k = 2k.
  br = oracle.bracket(gen_key(H, 0, 1), gen_key(H, 0, -1));
  CHECK(br.linear.empty());
  CHECK(br.constant == 2 * k);

  // [e[2], f[-2]] = h[0] + 2k; mode factor multiplies the pairing.
  br = oracle.bracket(gen_key(E, 0, 2), gen_key(F, 0, -2));
  CHECK(br.constant == 2 * k);

  // Unbalanced modes have no central part.
  br = oracle.bracket(gen_key(E, 0, 1), gen_key(F, 0, -2));
  CHECK(br.constant == 0);
  REQUIRE(br.linear.size() == 1);
  CHECK(br.linear[0].first == gen_key(H, 0, -1));

  // Antisymmetry including the central part.
  auto ba = oracle.bracket(gen_key(F, 0, -1), gen_key(E, 0, 1));
  CHECK(ba.constant == -k);
  REQUIRE(ba.linear.size() == 1);
  CHECK(ba.linear[0].second == -1);

  // Nonzero current degree on either side kills the central term.
  TakiffOracle deep(alg, 1, true, k);
  br = deep.bracket(gen_key(E, 1, 1), gen_key(F, 0, -1));
  CHECK(br.constant == 0);
  REQUIRE(br.linear.size() == 1);
  CHECK(br.linear[0].first == gen_key(H, 1, 0));

  // Straightening inserts the level constant.
  EnvelopingAlgebra env{TakiffOracle(alg, 0, true, -2)};
  const NCPoly p = env.normalize_word({gen_key(E, 0, 1), gen_key(F, 0, -1)});
  NCPoly want;
  want.add_term({gen_key(F, 0, -1), gen_key(E, 0, 1)}, 1);
  want.add_term({gen_key(H, 0, 0)}, 1);
  want.add_term({}, -2);
  CHECK(p == want);
}

TEST_CASE("derivations: Leibniz rule and malformed-rule rejection") {
  auto alg = shared_algebra("A1");
  EnvelopingAlgebra env{TakiffOracle(alg, 1)};
  std::vector<GenKey> gens;
  for (int r = 0; r <= 1; ++r)
    for (int i = 0; i < 3; ++i) gens.push_back(gen_key(i, r));

  // ad(g) extended as a derivation agrees with the commutator by g.
  RatSampler sampler(99);
  for (int trial = 0; trial < 50; ++trial) {
    const GenKey g = gens[sampler.uniform(0, 5)];
    auto ad_rule = [&](GenKey x) {
      NCPoly out;
      for (const auto& [h, c] : env.oracle().bracket(g, x).linear) out.add_term({h}, c);
      return out;
    };
    NCPoly p;
    for (int t = 0; t < 2; ++t) {
      Mono m;
      const int len = sampler.uniform(1, 3);
      for (int k = 0; k < len; ++k) m.push_back(gens[sampler.uniform(0, 5)]);
      std::sort(m.begin(), m.end());
      p.add_term(m, sampler.small_rational());
    }
    p = env.multiply(NCPoly::one(), p);  // normalize
    CHECK(env.derivation(ad_rule, p) == env.commutator(NCPoly::generator(g), p));
  }

  // A rule returning a quadratic image is rejected.
  auto bad_rule = [&](GenKey) { return mono_poly({gens[0], gens[1]}); };
  CHECK_THROWS_AS(env.derivation(bad_rule, NCPoly::generator(gens[0])), std::domain_error);
  // A rule returning a constant is not linear either.
  auto const_rule = [&](GenKey) { return NCPoly::one(); };
  CHECK_THROWS_AS(env.derivation(const_rule, NCPoly::generator(gens[0])), std::domain_error);
}

TEST_CASE("memoization: cache hits and the environment cap") {
  auto alg = shared_algebra("A1");
  const GenKey h = gen_key(0, 0), e = gen_key(1, 0), f = gen_key(2, 0);

  EnvelopingAlgebra env{TakiffOracle(alg, 0)};
  const NCPoly first = env.normalize_word({f, h, e});
  const auto calls_after_first = env.stats().straighten_calls;
  const NCPoly second = env.normalize_word({f, h, e});
  CHECK(first == second);
  CHECK(env.stats().memo_hits > 0);
  CHECK(env.stats().memo_entries > 0);

  // A capped context computes identical results.
  setenv("TAKIFF_MEMO_LIMIT", "1", 1);
  EnvelopingAlgebra capped{TakiffOracle(alg, 0)};
  CHECK(capped.normalize_word({f, h, e}) == first);
  CHECK(capped.stats().memo_entries <= 1);
  setenv("TAKIFF_MEMO_LIMIT", "junk", 1);
  CHECK_THROWS_AS(EnvelopingAlgebra{TakiffOracle(alg, 0)}, std::invalid_argument);
  unsetenv("TAKIFF_MEMO_LIMIT");
  (void)calls_after_first;
}

TEST_CASE("symbols: top filtration degree as commutative polynomials") {
  auto alg = shared_algebra("A1");
  EnvelopingAlgebra env{TakiffOracle(alg, 0)};
  const GenKey h = gen_key(0, 0), e = gen_key(1, 0), f = gen_key(2, 0);

  // symbol(f*e) = symbol(e*f): ordering corrections are lower degree.
  CHECK(symbol(env.normalize_word({f, e})) == symbol(env.normalize_word({e, f})));
  // Commutators drop filtration degree.
  const NCPoly ef = env.normalize_word({e, f});
  const NCPoly fh = env.normalize_word({f, h});
  const NCPoly c = env.commutator(ef, fh);
  CHECK(c.degree() < ef.degree() + fh.degree());
  // symbol of zero is zero.
  CHECK(symbol(NCPoly::zero()).is_zero());
  // symbol is multiplicative on these examples.
  CHECK(symbol(env.multiply(ef, fh)) == symbol(ef) * symbol(fh));
}

TEST_CASE("commutative polynomial utilities") {
  const GenKey x = gen_key(0, 0), y = gen_key(1, 0);
  const CommPoly p = (CommPoly::var(x) + CommPoly::var(y)).pow(3);
  CHECK(p.term_count() == 4);  // x^3, 3x^2y, 3xy^2, y^3
  CHECK(p.evaluate({{x, Rat(1)}, {y, Rat(1)}}) == 8);

  std::map<GenKey, Rat> pt{{x, Rat(2)}, {y, Rat(-1)}};
  CHECK(p.evaluate(pt) == 1);
  auto grad = p.gradient_at(pt);  // 3(x+y)^2 in each slot
  CHECK(grad[x] == 3);
  CHECK(grad[y] == 3);

  // Gradient at a point with zero coordinates is handled exactly.
  std::map<GenKey, Rat> pt0{{x, Rat(0)}, {y, Rat(5)}};
  const CommPoly q = CommPoly::var(x) * CommPoly::var(x) * CommPoly::var(y);
  auto grad0 = q.gradient_at(pt0);  // d/dx = 2xy = 0; d/dy = x^2 = 0
  CHECK(grad0.empty());
  const CommPoly r = CommPoly::var(x) * CommPoly::var(y);
  auto grad1 = r.gradient_at(pt0);  // d/dx = y = 5; d/dy = x = 0
  CHECK(grad1[x] == 5);
  CHECK(grad1.count(y) == 0);

  // Restriction drops monomials containing excluded variables.
  const CommPoly s = CommPoly::var(x) * CommPoly::var(y) + CommPoly::var(x) * CommPoly::var(x);
  const CommPoly sx = s.restricted([&](GenKey g) { return g == x; });
  CHECK(sx == CommPoly::var(x) * CommPoly::var(x));
}
