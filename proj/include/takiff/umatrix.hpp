#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "takiff/commpoly.hpp"
#include "takiff/pbw.hpp"
#include "takiff/tensorop.hpp"

namespace takiff {

// Square matrix with enveloping-algebra entries. Products straighten through
// the supplied context, so entries stay in PBW normal form.
class UMatrix {
 public:
  UMatrix() : n_(0) {}
  explicit UMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n) {}

  static UMatrix identity(int n) {
    UMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = NCPoly::one();
    return m;
  }

  static UMatrix from_matrix(const RatMatrix& s) {
    UMatrix m(s.rows());
    if (s.rows() != s.cols()) throw std::invalid_argument("UMatrix needs a square matrix");
    for (int i = 0; i < s.rows(); ++i)
      for (int j = 0; j < s.cols(); ++j)
        if (s.at(i, j) != 0) m.at(i, j) = NCPoly::constant(s.at(i, j));
    return m;
  }

  int n() const { return n_; }
  NCPoly& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
  const NCPoly& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

  UMatrix mul(const UMatrix& o, const EnvelopingAlgebra& env) const {
    check_same(o);
    UMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        const NCPoly& x = at(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < n_; ++j) {
          const NCPoly& y = o.at(k, j);
          if (y.is_zero()) continue;
          r.at(i, j) += env.multiply(x, y);
        }
      }
    return r;
  }

  UMatrix pow(int m, const EnvelopingAlgebra& env) const {
    if (m < 0) throw std::invalid_argument("negative matrix power");
    UMatrix r = identity(n_);
    for (int i = 0; i < m; ++i) r = r.mul(*this, env);
    return r;
  }

  UMatrix transpose() const {
    UMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  UMatrix operator+(const UMatrix& o) const {
    check_same(o);
    UMatrix r = *this;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(i, j) += o.at(i, j);
    return r;
  }
  UMatrix operator-(const UMatrix& o) const {
    check_same(o);
    UMatrix r = *this;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(i, j) -= o.at(i, j);
    return r;
  }
  UMatrix scaled(const Rat& c) const {
    UMatrix r = *this;
    for (auto& p : r.e_) p *= c;
    return r;
  }

  NCPoly trace() const {
    NCPoly t;
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& p : e_)
      if (!p.is_zero()) return false;
    return true;
  }

  // First nonzero entry, for witnesses.
  std::optional<std::tuple<int, int, NCPoly>> first_nonzero() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (!at(i, j).is_zero()) return std::make_tuple(i, j, at(i, j));
    return std::nullopt;
  }

  bool operator==(const UMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }

 private:
  void check_same(const UMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("UMatrix size mismatch");
  }

  int n_ = 0;
  std::vector<NCPoly> e_;
};

// Operator on the two-fold tensor space with enveloping-algebra entries;
// rows/columns are pairs (i,k) packed as i*N+k.
class U2Tensor {
 public:
  explicit U2Tensor(int N) : N_(N), e_(static_cast<size_t>(N) * N * N * N) {}

  int N() const { return N_; }
  NCPoly& at(int i, int k, int j, int l) { return e_[index(i, k, j, l)]; }
  const NCPoly& at(int i, int k, int j, int l) const { return e_[index(i, k, j, l)]; }

  // F acting on leg 1 or leg 2 (identity on the other leg).
  static U2Tensor embed(const UMatrix& f, int leg) {
    const int N = f.n();
    U2Tensor r(N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const NCPoly& v = f.at(i, j);
        if (v.is_zero()) continue;
        for (int k = 0; k < N; ++k) {
          if (leg == 1)
            r.at(i, k, j, k) = v;
          else if (leg == 2)
            r.at(k, i, k, j) = v;
          else
            throw std::invalid_argument("leg must be 1 or 2");
        }
      }
    return r;
  }

  static U2Tensor from_tensorop(const TensorOp& t) {
    if (t.legs() != 2) throw std::invalid_argument("need a two-leg tensor operator");
    U2Tensor r(t.N());
    std::vector<int> row(2), col(2);
    for (const auto& [rc, v] : t.entries()) {
      t.unpack(rc.first, row);
      t.unpack(rc.second, col);
      r.at(row[0], row[1], col[0], col[1]) = NCPoly::constant(v);
    }
    return r;
  }

  U2Tensor mul(const U2Tensor& o, const EnvelopingAlgebra& env) const {
    check_same(o);
    U2Tensor r(N_);
    const int M = N_ * N_;
    for (int a = 0; a < M; ++a)
      for (int b = 0; b < M; ++b) {
        const NCPoly& x = e_[static_cast<size_t>(a) * M + b];
        if (x.is_zero()) continue;
        for (int c = 0; c < M; ++c) {
          const NCPoly& y = o.e_[static_cast<size_t>(b) * M + c];
          if (y.is_zero()) continue;
          r.e_[static_cast<size_t>(a) * M + c] += env.multiply(x, y);
        }
      }
    return r;
  }

  U2Tensor operator-(const U2Tensor& o) const {
    check_same(o);
    U2Tensor r = *this;
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] -= o.e_[k];
    return r;
  }
  U2Tensor operator+(const U2Tensor& o) const {
    check_same(o);
    U2Tensor r = *this;
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] += o.e_[k];
    return r;
  }

  // Contraction of the second leg: (tr_2 T)_{ij} = sum_k T_{(i,k),(j,k)}.
  UMatrix partial_trace2() const {
    UMatrix r(N_);
    for (int i = 0; i < N_; ++i)
      for (int j = 0; j < N_; ++j)
        for (int k = 0; k < N_; ++k) r.at(i, j) += at(i, k, j, k);
    return r;
  }

  bool is_zero() const {
    for (const auto& p : e_)
      if (!p.is_zero()) return false;
    return true;
  }

  std::optional<std::tuple<int, int, int, int, NCPoly>> first_nonzero() const {
    for (int i = 0; i < N_; ++i)
      for (int k = 0; k < N_; ++k)
        for (int j = 0; j < N_; ++j)
          for (int l = 0; l < N_; ++l)
            if (!at(i, k, j, l).is_zero()) return std::make_tuple(i, k, j, l, at(i, k, j, l));
    return std::nullopt;
  }

 private:
  size_t index(int i, int k, int j, int l) const {
    return ((static_cast<size_t>(i) * N_ + k) * N_ + j) * N_ + l;
  }
  void check_same(const U2Tensor& o) const {
    if (N_ != o.N_) throw std::invalid_argument("U2Tensor size mismatch");
  }

  int N_;
  std::vector<NCPoly> e_;
};

// Generator matrix F at fixed current degree `deg` and loop mode `mode`:
//   simple types:  F_{ab} = -sum_i rho(b_i)_{ab} * b^i  (b^i = dual basis),
//   gl_n:          F_{ab} = E_{ab} directly (basis element with index (a,b)).
inline UMatrix build_F(const LieAlgebraData& alg, const Representation& rep, int deg = 0,
                       int mode = 0) {
  const int N = rep.N;
  UMatrix f(N);
  if (alg.is_reductive) {
    // Basis is E_{ij} row-major, so index of E_{ab} is a*N+b.
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) f.at(a, b) = NCPoly::generator(gen_key(a * N + b, deg, mode));
    return f;
  }
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      NCPoly entry;
      for (int i = 0; i < alg.dim; ++i) {
        const Rat& r = rep.matrices[i].at(a, b);
        if (r == 0) continue;
        for (int j = 0; j < alg.dim; ++j) {
          const Rat& w = alg.gram_inv.at(i, j);
          if (w == 0) continue;
          entry.add_term({gen_key(j, deg, mode)}, -r * w);
        }
      }
      f.at(a, b) = std::move(entry);
    }
  return f;
}

struct PresentationReport {
  bool commutation_ok = false;  // F1 F2 - F2 F1 = Omega F2 - F2 Omega
  bool quadratic_ok = false;    // F^2 - ((F^t)^2)^t = h^vee F
  bool trace_link_ok = false;   // tr_2 (Omega F2 - F2 Omega) P = h^vee F1
  bool quadratic_checked = true;   // false when gated off (reductive input)
  bool trace_link_checked = true;
  std::string witness;  // human-readable first failure, empty if none
  bool ok() const {
    return commutation_ok && (!quadratic_checked || quadratic_ok) &&
           (!trace_link_checked || trace_link_ok);
  }
};

// Verifies the defining matrix relations of the enveloping algebra
// presentation by exact straightening. The h^vee-dependent relations are
// checked on simple types only.
inline PresentationReport verify_presentation(const LieAlgebraData& alg, const Representation& rep,
                                              const EnvelopingAlgebra& env) {
  const int N = rep.N;
  PresentationReport report;

  const UMatrix f = build_F(alg, rep, 0, 0);
  const TensorOp omega_t = casimir_tensor(alg, rep);
  const U2Tensor omega = U2Tensor::from_tensorop(omega_t);
  const U2Tensor f1 = U2Tensor::embed(f, 1);
  const U2Tensor f2 = U2Tensor::embed(f, 2);

  const U2Tensor lhs = f1.mul(f2, env) - f2.mul(f1, env);
  const U2Tensor rhs = omega.mul(f2, env) - f2.mul(omega, env);
  const U2Tensor r1 = lhs - rhs;
  report.commutation_ok = r1.is_zero();
  if (!report.commutation_ok) {
    auto w = r1.first_nonzero();
    auto& [i, k, j, l, p] = *w;
    report.witness = "commutation residual at ((" + std::to_string(i) + "," + std::to_string(k) +
                     "),(" + std::to_string(j) + "," + std::to_string(l) +
                     ")): " + ncpoly_str(p, &alg, false);
  }

  if (alg.is_reductive) {
    report.quadratic_checked = false;
    report.trace_link_checked = false;
    return report;
  }
  const Rat h = alg.dual_coxeter;

  const UMatrix ft = f.transpose();
  const UMatrix r2 = f.mul(f, env) - ft.mul(ft, env).transpose() - f.scaled(h);
  report.quadratic_ok = r2.is_zero();
  if (report.quadratic_ok == false && report.witness.empty()) {
    auto w = r2.first_nonzero();
    auto& [i, j, p] = *w;
    report.witness = "quadratic residual at (" + std::to_string(i) + "," + std::to_string(j) +
                     "): " + ncpoly_str(p, &alg, false);
  }

  const TensorOp p_t = TensorOp::swap_op(N, 2, 0, 1);
  const U2Tensor p12 = U2Tensor::from_tensorop(p_t);
  const U2Tensor core = omega.mul(f2, env) - f2.mul(omega, env);
  const UMatrix r3 = core.mul(p12, env).partial_trace2() - f.scaled(h);
  report.trace_link_ok = r3.is_zero();
  if (report.trace_link_ok == false && report.witness.empty()) {
    auto w = r3.first_nonzero();
    auto& [i, j, p] = *w;
    report.witness = "trace-link residual at (" + std::to_string(i) + "," + std::to_string(j) +
                     "): " + ncpoly_str(p, &alg, false);
  }
  return report;
}

struct ChevalleyReport {
  bool checked = false;  // weight data available
  bool ok = false;
  std::string detail;
};

// Restriction of the symbol of tr F^m to the diagonal Cartan equals
// (-1)^m * sum_a (weight_a)^m, the power sum in the weights of the defining
// representation (weights written in the coordinates dual to the Cartan
// basis). Requires weight data; types without it report unchecked.
inline ChevalleyReport chevalley_check(const LieAlgebraData& alg, const Representation& rep, int m,
                                       const EnvelopingAlgebra& env) {
  ChevalleyReport rep_out;
  if (rep.cartan_indices.empty() || rep.weights.empty()) {
    rep_out.detail = "no weight data for " + alg.label + "; restriction check unavailable";
    return rep_out;
  }
  if (m < 0) throw std::invalid_argument("negative trace power");
  rep_out.checked = true;

  const UMatrix f = build_F(alg, rep, 0, 0);
  const CommPoly sym = symbol(f.pow(m, env).trace());

  std::set<GenKey> cartan_vars;
  for (int idx : rep.cartan_indices) cartan_vars.insert(gen_key(idx, 0, 0));
  const CommPoly lhs =
      sym.restricted([&](GenKey g) { return cartan_vars.count(g) > 0; });

  // Weight linear forms in the same variables: the variable of basis element
  // b_k represents the coordinate along b_k, so the diagonal entry of the
  // restricted symbol matrix is -sum_k weight_a(H_k) * (dual expansion), and
  // the power sum uses the Gram inverse restricted to the Cartan block.
  const int nc = static_cast<int>(rep.cartan_indices.size());
  RatMatrix gram_c(nc, nc);
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      gram_c.at(a, b) = alg.gram.at(rep.cartan_indices[a], rep.cartan_indices[b]);
  const RatMatrix gram_c_inv = gram_c.inverse();

  CommPoly rhs;
  for (int a = 0; a < rep.N; ++a) {
    CommPoly lin;
    for (int j = 0; j < nc; ++j) {
      Rat coef = 0;
      for (int k = 0; k < nc; ++k) coef += rep.weights[a][k] * gram_c_inv.at(k, j);
      if (coef != 0) lin += CommPoly::var(gen_key(rep.cartan_indices[j], 0, 0)).scaled(coef);
    }
    rhs += lin.pow(m);
  }
  if (m % 2 == 1) rhs *= Rat(-1);

  rep_out.ok = (lhs == rhs);
  if (!rep_out.ok)
    rep_out.detail = "restricted symbol " + commpoly_str(lhs, &alg, false) + " vs power sum " +
                     commpoly_str(rhs, &alg, false);
  return rep_out;
}

}  // namespace takiff
