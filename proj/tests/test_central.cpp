// Central elements of the truncated current algebra: trace-power coefficient
// families, the noncommutative Pfaffian, centrality verdicts, and algebraic
// independence certificates.

#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <set>
#include <vector>

#include "takiff/takiff.hpp"

using namespace takiff;

namespace {

struct Fixture {
  TakiffAlgebra tak;
  Representation rep;
};

Fixture make(const char* label, int ell) {
  auto [alg, rep] = build_algebra(label);
  return {TakiffAlgebra(alg, ell), std::move(rep)};
}

// Test-local determinant by permutation expansion (Leibniz formula) over
// commutative polynomial entries; independent of any library matrix code.
CommPoly perm_det(const std::vector<std::vector<CommPoly>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  CommPoly det;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    CommPoly term = CommPoly::constant(inv % 2 == 0 ? 1 : -1);
    for (int i = 0; i < n; ++i) term = term * m[i][perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace

TEST_CASE("rank-one trace-power coefficients match the hand computation") {
  Fixture fx = make("A1", 1);
  const GenKey h0 = gen_key(0, 0), e0 = gen_key(1, 0), f0 = gen_key(2, 0);
  const GenKey h1 = gen_key(0, 1), e1 = gen_key(1, 1), f1 = gen_key(2, 1);

  const CentralFamily th2 = theta_family(fx.tak, fx.rep, 2);
  CHECK(th2.power == 2);
  CHECK(th2.band_lo == 1);
  CHECK(th2.band_hi == 2);

  // tr F1^2 = h1 h1 / 2 + 2 e1 f1 (the degree-1 bracket truncates).
  NCPoly top;
  top.add_term({h1, h1}, Rat(1, 2));
  top.add_term({e1, f1}, 2);
  CHECK(th2.coeff.at(2) == top);

  // tr(F0 F1 + F1 F0) = h0 h1 + 2 e0 f1 + 2 f0 e1 (corrections cancel).
  NCPoly mid;
  mid.add_term({h0, h1}, 1);
  mid.add_term({e0, f1}, 2);
  mid.add_term({f0, e1}, 2);
  CHECK(th2.coeff.at(1) == mid);

  // tr F0^2 = h0 h0 / 2 + 2 e0 f0 - h0 after normal ordering.
  NCPoly low;
  low.add_term({h0, h0}, Rat(1, 2));
  low.add_term({e0, f0}, 2);
  low.add_term({h0}, -1);
  CHECK(th2.coeff.at(0) == low);
}

TEST_CASE("trace powers zero and one, and the traceless fundamental") {
  Fixture fx = make("A1", 1);
  const CentralFamily th0 = theta_family(fx.tak, fx.rep, 0);
  CHECK(th0.coeff.at(0) == NCPoly::constant(2));  // tr Id = N
  CHECK(verify_central(th0.coeff.at(0), fx.tak).central);

  // tr F vanishes identically on a simple type (the dual basis is traceless).
  const CentralFamily th1 = theta_family(fx.tak, fx.rep, 1);
  for (const auto& [r, c] : th1.coeff) CHECK(c.is_zero());

  CHECK_THROWS_AS(theta_family(fx.tak, fx.rep, -1), std::invalid_argument);
}

TEST_CASE("band coefficients are central; below-band coefficients are not") {
  Fixture fx = make("A1", 1);
  const CentralFamily th2 = theta_family(fx.tak, fx.rep, 2);
  for (int r = th2.band_lo; r <= th2.band_hi; ++r) {
    const CentralityVerdict v = verify_central(th2.coeff.at(r), fx.tak);
    INFO("coefficient " << r);
    CHECK(v.central);
  }
  // The coefficient just below the band fails with an explicit witness.
  const CentralityVerdict bad = verify_central(th2.coeff.at(th2.band_lo - 1), fx.tak);
  REQUIRE_FALSE(bad.central);
  REQUIRE(bad.witness_gen.has_value());
  CHECK_FALSE(bad.residual.is_zero());
  // The witness generator really fails to commute (recompute directly).
  const NCPoly g = NCPoly::generator(*bad.witness_gen);
  const NCPoly direct = fx.tak.env().commutator(g, th2.coeff.at(th2.band_lo - 1));
  CHECK(direct == bad.residual);
}

TEST_CASE("band sharpness at truncation order two") {
  Fixture fx = make("A1", 2);
  const CentralFamily th2 = theta_family(fx.tak, fx.rep, 2);
  CHECK(th2.band_lo == 2);
  CHECK(th2.band_hi == 4);
  for (int r = th2.band_lo; r <= th2.band_hi; ++r)
    CHECK(verify_central(th2.coeff.at(r), fx.tak).central);
  CHECK_FALSE(verify_central(th2.coeff.at(1), fx.tak).central);
  CHECK_FALSE(verify_central(th2.coeff.at(0), fx.tak).central);
}

TEST_CASE("band sharpness for the even orthogonal case") {
  for (int ell : {1, 2}) {
    DYNAMIC_SECTION("truncation order " << ell) {
      Fixture fx = make("D3", ell);
      const CentralFamily th2 = theta_family(fx.tak, fx.rep, 2);
      for (int r = th2.band_lo; r <= th2.band_hi; ++r)
        CHECK(verify_central(th2.coeff.at(r), fx.tak).central);
      CHECK_FALSE(verify_central(th2.coeff.at(th2.band_lo - 1), fx.tak).central);
    }
  }
}

TEST_CASE("symbols of the center generators have the invariant degrees") {
  struct Row {
    const char* label;
    int ell;
  };
  for (const Row& row : {Row{"A2", 1}, Row{"D3", 1}}) {
    DYNAMIC_SECTION(row.label << " at truncation order " << row.ell) {
      Fixture fx = make(row.label, row.ell);
      const auto gens = center_generators(fx.tak, fx.rep);
      std::vector<int> got;
      for (const auto& g : gens) got.push_back(symbol(g.value).degree());
      std::sort(got.begin(), got.end());
      std::vector<int> want;
      for (int d : invariant_degrees(std::string(1, row.label[0]), fx.tak.base().n))
        for (int copy = 0; copy <= row.ell; ++copy) want.push_back(d);
      std::sort(want.begin(), want.end());
      CHECK(got == want);
    }
  }
}

TEST_CASE("centrality verdicts survive conjugating the representation") {
  Fixture fx = make("A1", 1);
  RatSampler sampler(42);
  const int N = fx.rep.N;
  RatMatrix s(N, N), s_inv(N, N);
  for (;;) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) s.at(i, j) = sampler.small_rational();
    try {
      s_inv = s.inverse();
      break;
    } catch (const std::domain_error&) {
      continue;  // singular sample; redraw
    }
  }
  Representation conj = fx.rep;
  for (auto& m : conj.matrices) m = s * m * s_inv;

  const CentralFamily plain = theta_family(fx.tak, fx.rep, 2);
  const CentralFamily twisted = theta_family(fx.tak, conj, 2);
  for (int r = 0; r <= twisted.band_hi; ++r) {
    const bool want = verify_central(plain.coeff.at(r), fx.tak).central;
    CHECK(verify_central(twisted.coeff.at(r), fx.tak).central == want);
    CHECK(want == (r >= twisted.band_lo));
  }
  // Traces are conjugation-invariant, so the families agree exactly.
  CHECK(twisted.coeff.at(2) == plain.coeff.at(2));
}

TEST_CASE("shared-power family computation agrees with the direct one") {
  Fixture fx = make("A2", 1);
  const auto fams = theta_families(fx.tak, fx.rep, {2, 3});
  REQUIRE(fams.size() == 2);
  const CentralFamily d2 = theta_family(fx.tak, fx.rep, 2);
  const CentralFamily d3 = theta_family(fx.tak, fx.rep, 3);
  CHECK(fams[0].coeff == d2.coeff);
  CHECK(fams[1].coeff == d3.coeff);
  CHECK(fams[0].band_lo == 1);
  CHECK(fams[1].band_hi == 3);
}

TEST_CASE("gl trace coefficients are central at every current degree") {
  Fixture fx = make("gl2", 1);
  const CentralFamily th1 = theta_family(fx.tak, fx.rep, 1);
  CHECK(th1.band_lo == 0);
  CHECK(th1.band_hi == 1);
  for (int r = 0; r <= 1; ++r) {
    REQUIRE_FALSE(th1.coeff.at(r).is_zero());
    CHECK(verify_central(th1.coeff.at(r), fx.tak).central);  // reductive path
  }
  // tr F^(r) = sum_a E_aa at current degree r.
  NCPoly want;
  want.add_term({gen_key(0, 1)}, 1);  // E_00 v
  want.add_term({gen_key(3, 1)}, 1);  // E_11 v
  CHECK(th1.coeff.at(1) == want);
}

TEST_CASE("perfect matchings: canonical order, count, and signs") {
  // Independent sign oracle: parity of bubble-sort swaps.
  auto bubble_sign = [](std::vector<int> s) {
    int swaps = 0;
    for (size_t i = 0; i + 1 < s.size(); ++i)
      for (size_t j = 0; j + 1 < s.size() - i; ++j)
        if (s[j] > s[j + 1]) {
          std::swap(s[j], s[j + 1]);
          ++swaps;
        }
    return swaps % 2 == 0 ? 1 : -1;
  };

  std::vector<std::pair<std::vector<int>, int>> seen;
  for_each_matching(4, [&](const std::vector<int>& seq, int sign) {
    seen.emplace_back(seq, sign);
    CHECK(bubble_sign(seq) == sign);
    for (size_t p = 0; p < seq.size(); p += 2) CHECK(seq[p] < seq[p + 1]);  // pairs ascending
    for (size_t p = 2; p < seq.size(); p += 2) CHECK(seq[p - 2] < seq[p]);  // firsts increasing
  });
  REQUIRE(seen.size() == 3);
  CHECK(seen[0].first == std::vector<int>{0, 1, 2, 3});
  CHECK(seen[0].second == 1);
  CHECK(seen[1].first == std::vector<int>{0, 2, 1, 3});
  CHECK(seen[1].second == -1);
  CHECK(seen[2].first == std::vector<int>{0, 3, 1, 2});
  CHECK(seen[2].second == 1);

  int count6 = 0;
  for_each_matching(6, [&](const std::vector<int>& seq, int sign) {
    ++count6;
    CHECK(bubble_sign(seq) == sign);
  });
  CHECK(count6 == 15);
}

TEST_CASE("Pfaffian family: definition checks on so(4)") {
  Fixture fx = make("D2", 1);
  const CentralFamily pf = pfaffian_family(fx.tak, fx.rep);
  CHECK(pf.label == "pfaffian");
  CHECK(pf.power == 2);
  CHECK(pf.band_lo == 1);
  CHECK(pf.band_hi == 2);
  for (int r = pf.band_lo; r <= pf.band_hi; ++r)
    CHECK(verify_central(pf.coeff.at(r), fx.tak).central);

  // Squared symbol equals the determinant of the symbol matrix: evaluate both
  // u-polynomials at enough exact points to pin them down.
  const int N = fx.rep.N;
  auto symbol_matrix_at = [&](const Rat& u) {
    std::vector<std::vector<CommPoly>> m(N, std::vector<CommPoly>(N));
    for (int r = 0; r <= fx.tak.ell(); ++r) {
      const UMatrix fr = build_F(fx.tak.base(), fx.rep, r, 0);
      Rat upow = 1;
      for (int t = 0; t < r; ++t) upow *= u;
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
          if (!fr.at(a, b).is_zero()) m[a][b] += symbol(fr.at(a, b)).scaled(upow);
    }
    return m;
  };
  for (int r = 0; r <= pf.band_hi; ++r) {
    const NCPoly& c = pf.coeff.at(r);
    if (!c.is_zero()) CHECK(c.degree() == 2);  // filtration degree n exactly
  }
  for (const Rat& u : {Rat(0), Rat(1), Rat(2), Rat(3), Rat(-1), Rat(1, 2)}) {
    CommPoly pf_at;  // sum_r symbol(pf_r) u^r
    Rat upow = 1;
    for (int r = 0; r <= pf.band_hi; ++r) {
      if (!pf.coeff.at(r).is_zero()) pf_at += symbol(pf.coeff.at(r)).scaled(upow);
      upow *= u;
    }
    CHECK(pf_at * pf_at == perm_det(symbol_matrix_at(u)));
  }

  // Only the even orthogonal series has a Pfaffian.
  Fixture a1 = make("A1", 1);
  CHECK_THROWS_AS(pfaffian_family(a1.tak, a1.rep), std::invalid_argument);
  Fixture b2 = make("B2", 0);
  CHECK_THROWS_AS(pfaffian_family(b2.tak, b2.rep), std::invalid_argument);
}

TEST_CASE("center generator families: counts, labels, independence") {
  struct Row {
    const char* label;
    int ell;
    int expect;
  };
  for (const Row& row : {Row{"A2", 1, 4}, Row{"D3", 1, 6}}) {
    DYNAMIC_SECTION(row.label << " at truncation order " << row.ell) {
      Fixture fx = make(row.label, row.ell);
      const auto gens = center_generators(fx.tak, fx.rep);
      CHECK(static_cast<int>(gens.size()) == row.expect);
      const auto degs = invariant_degrees(std::string(1, row.label[0]), fx.tak.base().n);
      CHECK(gens.size() == degs.size() * static_cast<size_t>(row.ell + 1));
      std::set<std::string> labels;
      std::vector<NCPoly> values;
      for (const auto& g : gens) {
        labels.insert(g.label);
        values.push_back(g.value);
        CHECK(verify_central(g.value, fx.tak).central);
      }
      CHECK(labels.size() == gens.size());  // distinct labels
      const IndependenceReport rep = independence_certificate(values, 1);
      CHECK(rep.count == gens.size());
      CHECK(rep.rank == row.expect);
      CHECK(rep.independent);
    }
  }

  Fixture gl = make("gl2", 1);
  CHECK_THROWS_AS(center_generators(gl.tak, gl.rep), std::invalid_argument);
}

TEST_CASE("independence certificates: determinism and failure modes") {
  Fixture fx = make("A1", 1);
  const CentralFamily th2 = theta_family(fx.tak, fx.rep, 2);
  const NCPoly a = th2.coeff.at(1), b = th2.coeff.at(2);

  const IndependenceReport r1 = independence_certificate({a, b}, 7);
  const IndependenceReport r2 = independence_certificate({a, b}, 7);
  CHECK(r1.independent);
  CHECK(r1.rank == r2.rank);
  CHECK(r1.seeds_tried == r2.seeds_tried);
  CHECK(r1.variables == r2.variables);

  // Proportional elements can never certify: three attempts, rank deficit.
  const IndependenceReport dep = independence_certificate({a, a.scaled(2)}, 7);
  CHECK_FALSE(dep.independent);
  CHECK(dep.rank < 2);
  CHECK(dep.seeds_tried.size() == 3);

  // Empty input is trivially independent.
  CHECK(independence_certificate({}, 1).independent);
}
