#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oclus {

// Dense GF(2) row vector backed by 64-bit words.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  size_t size() const { return n_; }
  bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    if (v)
      w_[i >> 6] |= uint64_t(1) << (i & 63);
    else
      w_[i >> 6] &= ~(uint64_t(1) << (i & 63));
  }
  void flip(size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

  BitVec& operator^=(const BitVec& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  size_t popcount() const {
    size_t c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
  }
  // Parity of AND with another vector (dot product mod 2).
  bool dot(const BitVec& o) const {
    uint64_t acc = 0;
    for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
    return __builtin_parityll(acc);
  }
  std::vector<size_t> ones() const {
    std::vector<size_t> r;
    for (size_t i = 0; i < n_; ++i)
      if (get(i)) r.push_back(i);
    return r;
  }
  // Lexicographic compare by lowest-index set bits (for deterministic tie-breaks).
  bool lex_less(const BitVec& o) const {
    for (size_t i = 0; i < n_; ++i) {
      bool a = get(i), b = o.get(i);
      if (a != b) return a;  // earlier set bit sorts first
    }
    return false;
  }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

// Row-major GF(2) matrix with just enough linear algebra for code tables and
// the measurement-record solver: elimination, rank, solve, kernel.
class BitMat {
 public:
  BitMat() = default;
  BitMat(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

  size_t rows() const { return rows_.size(); }
  size_t cols() const { return cols_; }
  BitVec& row(size_t r) { return rows_[r]; }
  const BitVec& row(size_t r) const { return rows_[r]; }
  bool get(size_t r, size_t c) const { return rows_[r].get(c); }
  void set(size_t r, size_t c, bool v) { rows_[r].set(c, v); }
  void append_row(const BitVec& v) {
    if (v.size() != cols_) throw std::invalid_argument("BitMat row size");
    rows_.push_back(v);
  }

  BitVec mul(const BitVec& v) const {
    BitVec out(rows());
    for (size_t r = 0; r < rows(); ++r) out.set(r, rows_[r].dot(v));
    return out;
  }

  BitMat transposed() const {
    BitMat t(cols_, rows());
    for (size_t r = 0; r < rows(); ++r)
      for (size_t c = 0; c < cols_; ++c)
        if (get(r, c)) t.set(c, r, true);
    return t;
  }

  // In-place row echelon; returns pivot columns.
  std::vector<size_t> eliminate() {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows(); ++c) {
      size_t sel = r;
      while (sel < rows() && !rows_[sel].get(c)) ++sel;
      if (sel == rows()) continue;
      std::swap(rows_[r], rows_[sel]);
      for (size_t i = 0; i < rows(); ++i)
        if (i != r && rows_[i].get(c)) rows_[i] ^= rows_[r];
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  size_t rank() const {
    BitMat copy = *this;
    return copy.eliminate().size();
  }

  // Solve M^T x = target over GF(2) where rows of M are the allowed generators;
  // i.e. find a subset of rows XOR-ing to target. Empty optional-like flag via bool.
  bool solve_combination(const BitVec& target, BitVec& coeffs_out) const {
    // Augment each row with its index indicator, eliminate.
    size_t nr = rows(), nc = cols_;
    std::vector<BitVec> work(nr);
    std::vector<BitVec> tag(nr);
    for (size_t r = 0; r < nr; ++r) {
      work[r] = rows_[r];
      tag[r] = BitVec(nr);
      tag[r].set(r, true);
    }
    BitVec t = target, tt(nr);
    size_t r = 0;
    for (size_t c = 0; c < nc && r < nr; ++c) {
      size_t sel = r;
      while (sel < nr && !work[sel].get(c)) ++sel;
      if (sel == nr) continue;
      std::swap(work[r], work[sel]);
      std::swap(tag[r], tag[sel]);
      for (size_t i = 0; i < nr; ++i)
        if (i != r && work[i].get(c)) {
          work[i] ^= work[r];
          tag[i] ^= tag[r];
        }
      if (t.get(c)) {
        t ^= work[r];
        tt ^= tag[r];
      }
      ++r;
    }
    if (t.any()) return false;
    coeffs_out = tt;
    return true;
  }

  // Basis of the row-combination kernel: coefficient vectors k with k·M = 0.
  std::vector<BitVec> combination_kernel() const {
    size_t nr = rows(), nc = cols_;
    std::vector<BitVec> work(nr), tag(nr);
    for (size_t r = 0; r < nr; ++r) {
      work[r] = rows_[r];
      tag[r] = BitVec(nr);
      tag[r].set(r, true);
    }
    size_t r = 0;
    for (size_t c = 0; c < nc && r < nr; ++c) {
      size_t sel = r;
      while (sel < nr && !work[sel].get(c)) ++sel;
      if (sel == nr) continue;
      std::swap(work[r], work[sel]);
      std::swap(tag[r], tag[sel]);
      for (size_t i = 0; i < nr; ++i)
        if (i != r && work[i].get(c)) {
          work[i] ^= work[r];
          tag[i] ^= tag[r];
        }
      ++r;
    }
    std::vector<BitVec> kernel;
    for (size_t i = r; i < nr; ++i) kernel.push_back(tag[i]);
    return kernel;
  }

 private:
  size_t cols_ = 0;
  std::vector<BitVec> rows_;
};

}  // namespace oclus
