#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "takiff/ratmatrix.hpp"

namespace takiff {

enum class Series { A, B, C, D, GL };

inline std::string series_name(Series s) {
  switch (s) {
    case Series::A: return "A";
    case Series::B: return "B";
    case Series::C: return "C";
    case Series::D: return "D";
    case Series::GL: return "gl";
  }
  throw std::logic_error("unreachable");
}

// Classical Lie algebra in a fixed documented basis, with exact structure
// constants and the normalized invariant bilinear form (adjoint Casimir
// eigenvalue 2*h^vee on simple types).
struct LieAlgebraData {
  std::string label;
  Series series = Series::A;
  int n = 0;    // rank parameter from the label
  int dim = 0;  // dimension as a Lie algebra
  std::vector<std::string> basis_names;
  // brackets[i*dim+j] = sparse expansion of [b_i, b_j] in the basis.
  std::vector<std::vector<std::pair<int, Rat>>> brackets;
  RatMatrix gram;      // normalized invariant form on basis pairs
  RatMatrix gram_inv;  // cached inverse (dual basis coefficients)
  Rat dual_coxeter;    // h^vee; meaningful only when !is_reductive
  bool is_reductive = false;  // true for gl_n (center present, no h^vee)

  const std::vector<std::pair<int, Rat>>& bracket(int i, int j) const {
    return brackets[static_cast<size_t>(i) * dim + j];
  }
};

// Defining (vector) representation: exact matrices for every basis element,
// plus weight data for the diagonal Cartan when available (type A).
struct Representation {
  int N = 0;
  std::vector<RatMatrix> matrices;
  std::vector<int> cartan_indices;          // indices of Cartan basis elements
  std::vector<std::vector<Rat>> weights;    // weights[a][k]: weight of vector a on Cartan k
};

namespace detail {

inline RatMatrix unit_matrix(int N, int i, int j) {  // E_{ij}, 0-based
  RatMatrix m(N, N);
  m.at(i, j) = 1;
  return m;
}

inline std::string idx_name(const char* head, int i, int j) {
  return std::string(head) + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

}  // namespace detail

// Parses labels like "A2", "D3", "gl4". Throws std::invalid_argument with the
// supported grammar on anything else.
inline std::pair<Series, int> parse_label(const std::string& label) {
  auto fail = [&]() -> std::pair<Series, int> {
    throw std::invalid_argument("unsupported algebra label '" + label +
                                "' (expected A<n>, B<n>, C<n>, D<n> or gl<n>)");
  };
  Series s;
  size_t pos;
  if (label.size() >= 2 && label.compare(0, 2, "gl") == 0) {
    s = Series::GL;
    pos = 2;
  } else if (!label.empty() && label[0] >= 'A' && label[0] <= 'D') {
    s = static_cast<Series>(label[0] - 'A');
    pos = 1;
  } else {
    return fail();
  }
  if (pos >= label.size()) return fail();
  int n = 0;
  for (size_t k = pos; k < label.size(); ++k) {
    if (label[k] < '0' || label[k] > '9') return fail();
    n = n * 10 + (label[k] - '0');
    if (n > 1000) return fail();
  }
  if (n < 1) return fail();
  if (s == Series::D && n < 2)
    throw std::invalid_argument("D1 is degenerate (abelian); use B/C/A series or n >= 2");
  return {s, n};
}

// Invariant degrees of the fundamental invariants per series/rank. For the
// classical series these drive which trace powers (and, for D, the Pfaffian)
// generate the center; the exceptional rows are carried as reference data
// only — no constructions are provided for them.
inline std::vector<int> invariant_degrees(const std::string& series, int n) {
  auto range_step2 = [](int lo, int hi) {
    std::vector<int> v;
    for (int d = lo; d <= hi; d += 2) v.push_back(d);
    return v;
  };
  if (series == "A") {
    std::vector<int> v;
    for (int d = 2; d <= n + 1; ++d) v.push_back(d);
    return v;
  }
  if (series == "B" || series == "C") return range_step2(2, 2 * n);
  if (series == "D") {
    std::vector<int> v = range_step2(2, 2 * n - 2);
    v.push_back(n);  // degree of the Pfaffian invariant
    std::sort(v.begin(), v.end());
    return v;
  }
  if (series == "E" && n == 6) return {2, 5, 6, 8, 9, 12};
  if (series == "E" && n == 7) return {2, 6, 8, 10, 12, 14, 18};
  if (series == "E" && n == 8) return {2, 8, 12, 14, 18, 20, 24, 30};
  if (series == "F" && n == 4) return {2, 6, 8, 12};
  if (series == "G" && n == 2) return {2, 6};
  throw std::invalid_argument("no invariant-degree data for " + series + std::to_string(n));
}

// Adjoint matrices in the structure-constant basis: (ad b_i)_{k,j} = c_{ij}^k.
inline std::vector<RatMatrix> adjoint_matrices(const LieAlgebraData& alg) {
  std::vector<RatMatrix> ad(alg.dim, RatMatrix(alg.dim, alg.dim));
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j)
      for (const auto& [k, c] : alg.bracket(i, j)) ad[i].at(k, j) = c;
  return ad;
}

inline RatMatrix killing_form(const LieAlgebraData& alg) {
  const auto ad = adjoint_matrices(alg);
  RatMatrix k(alg.dim, alg.dim);
  for (int i = 0; i < alg.dim; ++i)
    for (int j = i; j < alg.dim; ++j) {
      Rat t = (ad[i] * ad[j]).trace();
      k.at(i, j) = t;
      k.at(j, i) = t;
    }
  return k;
}

// Eigenvalue of the quadratic Casimir of the stored form on the adjoint
// representation. Requires the action to be an exact scalar; gl_n (center
// acts by 0, simple part by 2n) is rejected with a clear error.
inline Rat adjoint_casimir_eigenvalue(const LieAlgebraData& alg) {
  const auto ad = adjoint_matrices(alg);
  RatMatrix c(alg.dim, alg.dim);
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j) {
      if (alg.gram_inv.at(i, j) == 0) continue;
      c = c + (ad[i] * ad[j]).scaled(alg.gram_inv.at(i, j));
    }
  const Rat lambda = c.at(0, 0);
  if (c != RatMatrix::identity(alg.dim).scaled(lambda))
    throw std::domain_error("adjoint Casimir of " + alg.label +
                            " is not scalar (algebra is not simple)");
  return lambda;
}

// Full structural validation: antisymmetry, Jacobi, the representation being
// a faithful homomorphism, and invariance/symmetry/nondegeneracy of the form.
// Throws std::domain_error naming the first failing witness. Used both after
// construction and after ingesting algebra files.
inline void check_algebra(const LieAlgebraData& alg, const Representation& rep) {
  const int d = alg.dim;
  if (static_cast<int>(alg.basis_names.size()) != d)
    throw std::domain_error("basis_names size differs from dim");
  if (static_cast<int>(rep.matrices.size()) != d)
    throw std::domain_error("representation matrix count differs from dim");
  if (alg.brackets.size() != static_cast<size_t>(d) * d)
    throw std::domain_error("structure constant table has wrong shape");

  auto dense = [&](int i, int j) {
    std::vector<Rat> row(d);
    for (const auto& [k, c] : alg.bracket(i, j)) {
      if (k < 0 || k >= d) throw std::domain_error("structure constant index out of range");
      row[k] += c;
    }
    return row;
  };

  // Antisymmetry.
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      const auto rij = dense(i, j), rji = dense(j, i);
      for (int k = 0; k < d; ++k)
        if (rij[k] + rji[k] != 0)
          throw std::domain_error("antisymmetry fails at [" + alg.basis_names[i] + "," +
                                  alg.basis_names[j] + "] component " + alg.basis_names[k]);
    }

  // Representation is a homomorphism on all pairs (also certifies the Jacobi
  // identity holds in the matrix realization; the abstract Jacobi check below
  // certifies the table itself).
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      RatMatrix lhs = comm(rep.matrices[i], rep.matrices[j]);
      RatMatrix rhs(rep.N, rep.N);
      for (const auto& [k, c] : alg.bracket(i, j)) rhs = rhs + rep.matrices[k].scaled(c);
      if (lhs != rhs)
        throw std::domain_error("representation fails on [" + alg.basis_names[i] + "," +
                                alg.basis_names[j] + "]");
    }

  // Jacobi identity on the structure-constant table.
  auto bracket_into = [&](const std::vector<Rat>& x, int j, std::vector<Rat>& out, const Rat& s) {
    for (int i = 0; i < d; ++i) {
      if (x[i] == 0) continue;
      for (const auto& [k, c] : alg.bracket(i, j)) out[k] += s * x[i] * c;
    }
  };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        std::vector<Rat> acc(d);
        bracket_into(dense(i, j), k, acc, 1);
        bracket_into(dense(j, k), i, acc, 1);
        bracket_into(dense(k, i), j, acc, 1);
        for (int t = 0; t < d; ++t)
          if (acc[t] != 0)
            throw std::domain_error("Jacobi identity fails on (" + alg.basis_names[i] + "," +
                                    alg.basis_names[j] + "," + alg.basis_names[k] + ")");
      }

  // Form: symmetric, nondegenerate (gram_inv exact inverse), invariant.
  if (alg.gram.rows() != d || alg.gram.cols() != d)
    throw std::domain_error("gram matrix has wrong shape");
  if (alg.gram != alg.gram.transpose()) throw std::domain_error("gram matrix is not symmetric");
  if (alg.gram * alg.gram_inv != RatMatrix::identity(d))
    throw std::domain_error("gram_inv is not the inverse of gram");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        Rat s = 0;
        for (const auto& [t, c] : alg.bracket(i, j)) s += c * alg.gram.at(t, k);
        for (const auto& [t, c] : alg.bracket(i, k)) s += c * alg.gram.at(j, t);
        if (s != 0)
          throw std::domain_error("form invariance fails on (" + alg.basis_names[i] + "," +
                                  alg.basis_names[j] + "," + alg.basis_names[k] + ")");
      }

  // h^vee consistency is only meaningful on non-reductive (simple) inputs.
  if (!alg.is_reductive) {
    const Rat lambda = adjoint_casimir_eigenvalue(alg);
    if (lambda != 2 * alg.dual_coxeter)
      throw std::domain_error("adjoint Casimir eigenvalue " + rat_str(lambda) +
                              " does not equal 2*h^vee for " + alg.label);
  }
}

// Builds the algebra and its defining representation for a label.
//
// Basis conventions (all indices 1-based in names):
//   A_n  (sl_{n+1}, N=n+1): H_k = E_{kk}-E_{k+1,k+1} for k=1..n, then E_{ij}
//        (i != j) in row-major order. Form: tr(XY).
//   B_n  (so_{2n+1}, N=2n+1) and D_n (so_{2n}, N=2n): F_{ij} = E_{ij}-E_{ji}
//        for i<j in lexicographic order. Form: tr(XY)/2.
//   C_n  (sp_{2n}, N=2n, symplectic form x^T J y with J = [[0,I],[-I,0]]):
//        A_{ij} = E_{ij}-E_{n+j,n+i} (all i,j), then B_{ij} = E_{i,n+j}+E_{j,n+i}
//        (i<j) and B_{ii} = E_{i,n+i}, then C_{ij} = E_{n+i,j}+E_{n+j,i} (i<j)
//        and C_{ii} = E_{n+i,i}. Form: tr(XY).
//   gl_n (N=n): E_{ij} in row-major order. Form: tr(XY); no h^vee.
//
// The normalization makes the adjoint Casimir eigenvalue equal 2*h^vee on the
// simple series, which check_algebra verifies.
inline std::pair<LieAlgebraData, Representation> build_algebra(const std::string& label) {
  const auto [series, n] = parse_label(label);

  LieAlgebraData alg;
  alg.label = label;
  alg.series = series;
  alg.n = n;
  Representation rep;

  std::vector<RatMatrix> basis;
  Rat kappa = 1;  // gram = kappa * tr(XY) on the defining representation

  switch (series) {
    case Series::A: {
      const int N = n + 1;
      rep.N = N;
      for (int k = 0; k < n; ++k) {
        basis.push_back(detail::unit_matrix(N, k, k) - detail::unit_matrix(N, k + 1, k + 1));
        alg.basis_names.push_back("H" + std::to_string(k + 1));
        rep.cartan_indices.push_back(k);
      }
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          if (i == j) continue;
          basis.push_back(detail::unit_matrix(N, i, j));
          alg.basis_names.push_back(detail::idx_name("E", i + 1, j + 1));
        }
      alg.dual_coxeter = n + 1;
      // Weight of defining vector a on Cartan H_k: delta(a,k) - delta(a,k+1).
      rep.weights.assign(N, std::vector<Rat>(n, Rat(0)));
      for (int a = 0; a < N; ++a)
        for (int k = 0; k < n; ++k) {
          if (a == k) rep.weights[a][k] = 1;
          if (a == k + 1) rep.weights[a][k] = -1;
        }
      break;
    }
    case Series::B:
    case Series::D: {
      const int N = (series == Series::B) ? 2 * n + 1 : 2 * n;
      rep.N = N;
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
          basis.push_back(detail::unit_matrix(N, i, j) - detail::unit_matrix(N, j, i));
          alg.basis_names.push_back(detail::idx_name("F", i + 1, j + 1));
        }
      kappa = Rat(1, 2);
      alg.dual_coxeter = (series == Series::B) ? 2 * n - 1 : 2 * n - 2;
      break;
    }
    case Series::C: {
      const int N = 2 * n;
      rep.N = N;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          basis.push_back(detail::unit_matrix(N, i, j) - detail::unit_matrix(N, n + j, n + i));
          alg.basis_names.push_back(detail::idx_name("A", i + 1, j + 1));
        }
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          RatMatrix m = detail::unit_matrix(N, i, n + j);
          if (i != j) m = m + detail::unit_matrix(N, j, n + i);
          basis.push_back(m);
          alg.basis_names.push_back(detail::idx_name("B", i + 1, j + 1));
        }
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          RatMatrix m = detail::unit_matrix(N, n + i, j);
          if (i != j) m = m + detail::unit_matrix(N, n + j, i);
          basis.push_back(m);
          alg.basis_names.push_back(detail::idx_name("C", i + 1, j + 1));
        }
      alg.dual_coxeter = n + 1;
      break;
    }
    case Series::GL: {
      rep.N = n;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          basis.push_back(detail::unit_matrix(n, i, j));
          alg.basis_names.push_back(detail::idx_name("E", i + 1, j + 1));
        }
      alg.is_reductive = true;
      alg.dual_coxeter = 0;  // undefined; gated by is_reductive
      break;
    }
  }

  alg.dim = static_cast<int>(basis.size());
  rep.matrices = basis;

  // Structure constants via exact expansion of commutators over the basis.
  BasisExpander expander(basis);
  alg.brackets.assign(static_cast<size_t>(alg.dim) * alg.dim, {});
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j) {
      const auto coords = expander.coords(comm(basis[i], basis[j]));
      auto& row = alg.brackets[static_cast<size_t>(i) * alg.dim + j];
      for (int k = 0; k < alg.dim; ++k)
        if (coords[k] != 0) row.emplace_back(k, coords[k]);
    }

  alg.gram = RatMatrix(alg.dim, alg.dim);
  for (int i = 0; i < alg.dim; ++i)
    for (int j = i; j < alg.dim; ++j) {
      Rat t = (basis[i] * basis[j]).trace() * kappa;
      alg.gram.at(i, j) = t;
      alg.gram.at(j, i) = t;
    }
  alg.gram_inv = alg.gram.inverse();

  check_algebra(alg, rep);
  return {std::move(alg), std::move(rep)};
}

}  // namespace takiff
