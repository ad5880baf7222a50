#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "takiff/lie.hpp"

namespace takiff {

// Sparse operator on (C^N)^{tensor m} with exact rational entries. Row and
// column multi-indices (i_1..i_m) are packed big-endian (leg 1 most
// significant) into 64-bit integers; an ordered map keeps iteration and
// serialization deterministic.
class TensorOp {
 public:
  TensorOp() : N_(0), legs_(0) {}
  TensorOp(int N, int legs) : N_(N), legs_(legs) {
    if (N < 1 || legs < 1) throw std::invalid_argument("tensor operator needs N >= 1, legs >= 1");
    std::int64_t cap = 1;
    for (int a = 0; a < legs; ++a) {
      cap *= N;
      if (cap > (std::int64_t(1) << 40)) throw std::invalid_argument("tensor space too large");
    }
  }

  static TensorOp identity(int N, int legs) {
    TensorOp t(N, legs);
    std::int64_t total = t.total_dim();
    for (std::int64_t p = 0; p < total; ++p) t.data_[{p, p}] = 1;
    return t;
  }

  // Permutation operator P swapping legs a and b (0-based) on `legs` legs.
  static TensorOp swap_op(int N, int legs, int a, int b) {
    TensorOp t(N, legs);
    std::vector<int> idx(legs, 0);
    std::int64_t total = t.total_dim();
    for (std::int64_t p = 0; p < total; ++p) {
      t.unpack(p, idx);
      std::swap(idx[a], idx[b]);
      t.data_[{t.pack(idx), p}] = 1;
    }
    return t;
  }

  int N() const { return N_; }
  int legs() const { return legs_; }
  std::int64_t total_dim() const {
    std::int64_t d = 1;
    for (int a = 0; a < legs_; ++a) d *= N_;
    return d;
  }

  const std::map<std::pair<std::int64_t, std::int64_t>, Rat>& entries() const { return data_; }

  void set(const std::vector<int>& row, const std::vector<int>& col, const Rat& v) {
    if (static_cast<int>(row.size()) != legs_ || static_cast<int>(col.size()) != legs_)
      throw std::invalid_argument("multi-index arity mismatch");
    add_entry(pack(row), pack(col), v - get(row, col));
  }

  Rat get(const std::vector<int>& row, const std::vector<int>& col) const {
    auto it = data_.find({pack(row), pack(col)});
    return it == data_.end() ? Rat(0) : it->second;
  }

  bool operator==(const TensorOp& o) const {
    return N_ == o.N_ && legs_ == o.legs_ && data_ == o.data_;
  }
  bool operator!=(const TensorOp& o) const { return !(*this == o); }
  bool is_zero() const { return data_.empty(); }

  TensorOp operator+(const TensorOp& o) const {
    check_compatible(o);
    TensorOp r = *this;
    for (const auto& [rc, v] : o.data_) r.add_entry(rc.first, rc.second, v);
    return r;
  }

  TensorOp operator-(const TensorOp& o) const {
    check_compatible(o);
    TensorOp r = *this;
    for (const auto& [rc, v] : o.data_) r.add_entry(rc.first, rc.second, -v);
    return r;
  }

  TensorOp scaled(const Rat& c) const {
    TensorOp r(N_, legs_);
    if (c == 0) return r;
    for (const auto& [rc, v] : data_) r.data_[rc] = v * c;
    return r;
  }

  TensorOp operator*(const TensorOp& o) const {
    check_compatible(o);
    // Index o by row for the sparse composition.
    std::map<std::int64_t, std::vector<std::pair<std::int64_t, Rat>>> by_row;
    for (const auto& [rc, v] : o.data_) by_row[rc.first].emplace_back(rc.second, v);
    TensorOp r(N_, legs_);
    for (const auto& [rc, v] : data_) {
      auto it = by_row.find(rc.second);
      if (it == by_row.end()) continue;
      for (const auto& [c2, v2] : it->second) r.add_entry(rc.first, c2, v * v2);
    }
    return r;
  }

  // Places a k-leg operator onto the given legs (0-based, distinct) of an
  // m-leg space, acting as identity elsewhere.
  TensorOp embed(int m, const std::vector<int>& placement) const {
    if (static_cast<int>(placement.size()) != legs_)
      throw std::invalid_argument("placement arity differs from operator legs");
    for (int a : placement)
      if (a < 0 || a >= m) throw std::invalid_argument("placement leg out of range");
    TensorOp r(N_, m);
    std::vector<bool> used(m, false);
    for (int a : placement) {
      if (used[a]) throw std::invalid_argument("duplicate leg in placement");
      used[a] = true;
    }
    std::vector<int> free_legs;
    for (int a = 0; a < m; ++a)
      if (!used[a]) free_legs.push_back(a);
    std::int64_t free_total = 1;
    for (size_t a = 0; a < free_legs.size(); ++a) free_total *= N_;

    std::vector<int> src_row(legs_), src_col(legs_), row(m), col(m), free_idx(free_legs.size());
    for (const auto& [rc, v] : data_) {
      unpack(rc.first, src_row);
      unpack(rc.second, src_col);
      for (std::int64_t f = 0; f < free_total; ++f) {
        std::int64_t rest = f;
        for (size_t a = free_idx.size(); a-- > 0;) {
          free_idx[a] = static_cast<int>(rest % N_);
          rest /= N_;
        }
        for (int a = 0; a < m; ++a) row[a] = col[a] = 0;
        for (int a = 0; a < legs_; ++a) {
          row[placement[a]] = src_row[a];
          col[placement[a]] = src_col[a];
        }
        for (size_t a = 0; a < free_legs.size(); ++a) {
          row[free_legs[a]] = free_idx[a];
          col[free_legs[a]] = free_idx[a];
        }
        r.add_entry(r.pack(row), r.pack(col), v);
      }
    }
    return r;
  }

  // Contracts leg a (0-based), returning an operator on legs-1 legs.
  TensorOp partial_trace(int a) const {
    if (legs_ < 2) throw std::invalid_argument("partial trace needs at least two legs");
    if (a < 0 || a >= legs_) throw std::invalid_argument("trace leg out of range");
    TensorOp r(N_, legs_ - 1);
    std::vector<int> row(legs_), col(legs_), rrow, rcol;
    for (const auto& [rc, v] : data_) {
      unpack(rc.first, row);
      unpack(rc.second, col);
      if (row[a] != col[a]) continue;
      rrow.clear();
      rcol.clear();
      for (int t = 0; t < legs_; ++t) {
        if (t == a) continue;
        rrow.push_back(row[t]);
        rcol.push_back(col[t]);
      }
      r.add_entry(r.pack(rrow), r.pack(rcol), v);
    }
    return r;
  }

  // Transposes leg a only (swaps its row and column indices).
  TensorOp partial_transpose(int a) const {
    if (a < 0 || a >= legs_) throw std::invalid_argument("transpose leg out of range");
    TensorOp r(N_, legs_);
    std::vector<int> row(legs_), col(legs_);
    for (const auto& [rc, v] : data_) {
      unpack(rc.first, row);
      unpack(rc.second, col);
      std::swap(row[a], col[a]);
      r.add_entry(r.pack(row), r.pack(col), v);
    }
    return r;
  }

  Rat full_trace() const {
    Rat t = 0;
    for (const auto& [rc, v] : data_)
      if (rc.first == rc.second) t += v;
    return t;
  }

  // One-leg view of a plain matrix.
  static TensorOp from_matrix(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("tensor leg from non-square matrix");
    TensorOp t(m.rows(), 1);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (m.at(i, j) != 0) t.data_[{i, j}] = m.at(i, j);
    return t;
  }

  RatMatrix to_matrix() const {
    if (legs_ != 1) throw std::invalid_argument("to_matrix needs a one-leg operator");
    RatMatrix m(N_, N_);
    for (const auto& [rc, v] : data_) m.at(static_cast<int>(rc.first), static_cast<int>(rc.second)) = v;
    return m;
  }

  std::int64_t pack(const std::vector<int>& idx) const {
    std::int64_t p = 0;
    for (int a = 0; a < legs_; ++a) {
      if (idx[a] < 0 || idx[a] >= N_) throw std::out_of_range("tensor index out of range");
      p = p * N_ + idx[a];
    }
    return p;
  }

  void unpack(std::int64_t p, std::vector<int>& idx) const {
    for (int a = legs_; a-- > 0;) {
      idx[a] = static_cast<int>(p % N_);
      p /= N_;
    }
  }

 private:
  void check_compatible(const TensorOp& o) const {
    if (N_ != o.N_ || legs_ != o.legs_) throw std::invalid_argument("tensor operator shape mismatch");
  }

  void add_entry(std::int64_t r, std::int64_t c, const Rat& v) {
    if (v == 0) return;
    auto [it, inserted] = data_.try_emplace({r, c}, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) data_.erase(it);
    }
  }

  int N_, legs_;
  std::map<std::pair<std::int64_t, std::int64_t>, Rat> data_;
};

// Two-leg Casimir operator Omega = sum_i rho(b_i) (x) rho(b^i) with b^i the
// dual basis of the stored form. Throws if the form is degenerate (inverse
// fails upstream) or the representation shape is off.
inline TensorOp casimir_tensor(const LieAlgebraData& alg, const Representation& rep) {
  if (static_cast<int>(rep.matrices.size()) != alg.dim)
    throw std::invalid_argument("representation does not match algebra dimension");
  const int N = rep.N;
  TensorOp omega(N, 2);
  // rho(b^i) = sum_j gram_inv[i][j] rho(b_j).
  for (int i = 0; i < alg.dim; ++i) {
    RatMatrix dual(N, N);
    bool any = false;
    for (int j = 0; j < alg.dim; ++j) {
      if (alg.gram_inv.at(i, j) == 0) continue;
      dual = dual + rep.matrices[j].scaled(alg.gram_inv.at(i, j));
      any = true;
    }
    if (!any) continue;
    const RatMatrix& prim = rep.matrices[i];
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        if (prim.at(a, b) == 0) continue;
        for (int c = 0; c < N; ++c)
          for (int d = 0; d < N; ++d) {
            if (dual.at(c, d) == 0) continue;
            omega.set({a, c}, {b, d}, omega.get({a, c}, {b, d}) + prim.at(a, b) * dual.at(c, d));
          }
      }
  }
  return omega;
}

}  // namespace takiff
