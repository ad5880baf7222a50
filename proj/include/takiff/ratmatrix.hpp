#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "takiff/rational.hpp"

namespace takiff {

// Dense matrix over the exact rationals. Sizes here are small (defining
// representations and Gram matrices), so a plain dense layout with exact
// Gaussian elimination is the right tool.
class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int i, int j) { return a_[index(i, j)]; }
  const Rat& at(int i, int j) const { return a_[index(i, j)]; }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const Rat& x : a_)
      if (x != 0) return false;
    return true;
  }

  RatMatrix operator+(const RatMatrix& o) const {
    check_same_shape(o);
    RatMatrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
  }

  RatMatrix operator-(const RatMatrix& o) const {
    check_same_shape(o);
    RatMatrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
  }

  RatMatrix operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in product");
    RatMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& x = at(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Rat& y = o.at(k, j);
          if (y != 0) r.at(i, j) += x * y;
        }
      }
    return r;
  }

  RatMatrix scaled(const Rat& c) const {
    RatMatrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
    return r;
  }

  RatMatrix transpose() const {
    RatMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Rat trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace of a non-square matrix");
    Rat t = 0;
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  // Exact rank via fraction-preserving Gaussian elimination.
  int rank() const {
    RatMatrix m = *this;
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
      int pivot = -1;
      for (int i = rank; i < rows_; ++i)
        if (m.at(i, col) != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) continue;
      m.swap_rows(rank, pivot);
      const Rat inv = Rat(1) / m.at(rank, col);
      for (int j = col; j < cols_; ++j) m.at(rank, j) *= inv;
      for (int i = 0; i < rows_; ++i) {
        if (i == rank) continue;
        const Rat f = m.at(i, col);
        if (f == 0) continue;
        for (int j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(rank, j);
      }
      ++rank;
    }
    return rank;
  }

  // Exact inverse by Gauss-Jordan; throws std::domain_error on a singular
  // input so callers can surface degeneracy with context.
  RatMatrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
    RatMatrix m = *this;
    RatMatrix inv = identity(rows_);
    for (int col = 0; col < cols_; ++col) {
      int pivot = -1;
      for (int i = col; i < rows_; ++i)
        if (m.at(i, col) != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) throw std::domain_error("singular matrix");
      m.swap_rows(col, pivot);
      inv.swap_rows(col, pivot);
      const Rat piv_inv = Rat(1) / m.at(col, col);
      for (int j = 0; j < cols_; ++j) {
        m.at(col, j) *= piv_inv;
        inv.at(col, j) *= piv_inv;
      }
      for (int i = 0; i < rows_; ++i) {
        if (i == col) continue;
        const Rat f = m.at(i, col);
        if (f == 0) continue;
        for (int j = 0; j < cols_; ++j) {
          m.at(i, j) -= f * m.at(col, j);
          inv.at(i, j) -= f * inv.at(col, j);
        }
      }
    }
    return inv;
  }

 private:
  size_t index(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
      throw std::out_of_range("matrix index (" + std::to_string(i) + "," + std::to_string(j) + ")");
    return static_cast<size_t>(i) * cols_ + j;
  }

  void check_same_shape(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
  }

  int rows_, cols_;
  std::vector<Rat> a_;
};

inline RatMatrix comm(const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; }

// Expands matrices over a fixed linearly independent list of basis matrices.
// Independence is certified on construction (Gram matrix of the flattened
// vectors is nonsingular), and every expansion is re-verified by exact
// reconstruction, so membership failures are detected rather than silently
// projected.
class BasisExpander {
 public:
  explicit BasisExpander(const std::vector<RatMatrix>& basis) : basis_(basis) {
    if (basis.empty()) throw std::invalid_argument("empty basis");
    const int d = static_cast<int>(basis.size());
    RatMatrix s(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        Rat dot = flat_dot(basis[i], basis[j]);
        s.at(i, j) = dot;
        s.at(j, i) = dot;
      }
    try {
      s_inv_ = s.inverse();
    } catch (const std::domain_error&) {
      throw std::invalid_argument("basis matrices are linearly dependent");
    }
  }

  std::vector<Rat> coords(const RatMatrix& m) const {
    const int d = static_cast<int>(basis_.size());
    RatMatrix rhs(d, 1);
    for (int i = 0; i < d; ++i) rhs.at(i, 0) = flat_dot(basis_[i], m);
    RatMatrix sol = s_inv_ * rhs;
    // Membership check: the coordinates must reconstruct m exactly.
    RatMatrix rec(m.rows(), m.cols());
    for (int i = 0; i < d; ++i)
      if (sol.at(i, 0) != 0) rec = rec + basis_[i].scaled(sol.at(i, 0));
    if (rec != m) throw std::domain_error("matrix is not in the span of the basis");
    std::vector<Rat> out(d);
    for (int i = 0; i < d; ++i) out[i] = sol.at(i, 0);
    return out;
  }

 private:
  static Rat flat_dot(const RatMatrix& a, const RatMatrix& b) {
    Rat s = 0;
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) s += a.at(i, j) * b.at(i, j);
    return s;
  }

  std::vector<RatMatrix> basis_;
  RatMatrix s_inv_;
};

}  // namespace takiff
