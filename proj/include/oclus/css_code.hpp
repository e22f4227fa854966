#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oclus/gf2.hpp"
#include "oclus/pauli.hpp"

namespace oclus {

enum class ErrorKind : uint8_t { X = 0, Z = 1 };

// CSS code with one encoded qubit. Hx rows are X-type stabilizer supports
// (they detect Z errors); Hz rows detect X errors. Both shipped codes use the
// same matrix for Hx and Hz.
struct CssCode {
  std::string name;
  size_t n = 0;
  BitMat Hx, Hz;
  BitVec Lx, Lz;
  size_t t = 0;  // correctable unlocated radius

  const BitMat& checks_for(ErrorKind k) const { return k == ErrorKind::X ? Hz : Hx; }
  const BitVec& logical_for(ErrorKind k) const { return k == ErrorKind::X ? Lx : Lz; }

  BitVec syndrome(ErrorKind k, const BitVec& e) const {
    if (e.size() != n) throw std::invalid_argument("syndrome: pattern length");
    return checks_for(k).mul(e);
  }

  // X-error patterns are equivalent mod rowspace(Hx); a syndrome-0 pattern is a
  // logical exactly when it pairs oddly with the opposite logical support.
  bool logical_class(ErrorKind k, const BitVec& e) const {
    return e.dot(k == ErrorKind::X ? Lz : Lx);
  }
};

// Minimum-weight coset leaders for every syndrome, built by enumerating error
// patterns in weight order. Both shipped codes are perfect, so the table
// fills exactly at weight t.
class SyndromeTable {
 public:
  SyndromeTable() = default;
  SyndromeTable(const CssCode& code, ErrorKind kind) {
    const BitMat& H = code.checks_for(kind);
    n_ = code.n;
    r_ = H.rows();
    table_.assign(size_t(1) << r_, BitVec());
    filled_.assign(size_t(1) << r_, false);
    leader_weight_.assign(size_t(1) << r_, 0);
    size_t remaining = table_.size();
    // weight 0
    table_[0] = BitVec(n_);
    filled_[0] = true;
    --remaining;
    std::vector<size_t> idx;
    for (size_t w = 1; w <= n_ && remaining > 0; ++w) {
      idx.assign(w, 0);
      for (size_t i = 0; i < w; ++i) idx[i] = i;
      while (true) {
        BitVec e(n_);
        for (size_t i : idx) e.set(i, true);
        size_t s = syndrome_index(H.mul(e));
        if (!filled_[s]) {
          filled_[s] = true;
          table_[s] = e;
          leader_weight_[s] = w;
          if (--remaining == 0) break;
        }
        // next combination
        size_t k = w;
        while (k > 0 && idx[k - 1] == n_ - w + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (size_t i = k; i < w; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
    max_weight_ = 0;
    for (size_t s = 0; s < table_.size(); ++s)
      if (filled_[s]) max_weight_ = std::max(max_weight_, leader_weight_[s]);
  }

  static size_t syndrome_index(const BitVec& s) {
    size_t v = 0;
    for (size_t i = 0; i < s.size(); ++i)
      if (s.get(i)) v |= size_t(1) << i;
    return v;
  }

  const BitVec& leader(const BitVec& synd) const { return table_[syndrome_index(synd)]; }
  size_t leader_weight(const BitVec& synd) const { return leader_weight_[syndrome_index(synd)]; }
  bool complete() const {
    for (bool f : filled_)
      if (!f) return false;
    return true;
  }
  size_t max_leader_weight() const { return max_weight_; }
  size_t entries() const { return table_.size(); }

 private:
  size_t n_ = 0, r_ = 0, max_weight_ = 0;
  std::vector<BitVec> table_;
  std::vector<bool> filled_;
  std::vector<size_t> leader_weight_;
};

namespace detail {

inline BitMat hamming7_checks() {
  BitMat H(3, 7);
  for (size_t col = 0; col < 7; ++col) {
    size_t v = col + 1;
    for (size_t bit = 0; bit < 3; ++bit)
      if ((v >> bit) & 1) H.set(bit, col, true);
  }
  return H;
}

// Systematic [23,12] Golay generator from g(x) = x^11+x^10+x^6+x^5+x^4+x^2+1.
// Bits 0..10 are parity positions, 11..22 carry the message.
inline void golay23_matrices(BitMat& G, BitMat& H) {
  const uint32_t g = 0b110001110101;  // degree 11
  auto mod_g = [&](uint32_t poly) {
    for (int d = 22; d >= 11; --d)
      if ((poly >> d) & 1) poly ^= g << (d - 11);
    return poly;
  };
  G = BitMat(12, 23);
  for (size_t i = 0; i < 12; ++i) {
    uint32_t r = mod_g(uint32_t(1) << (11 + i));
    for (size_t j = 0; j < 11; ++j)
      if ((r >> j) & 1) G.set(i, j, true);
    G.set(i, 11 + i, true);
  }
  H = BitMat(11, 23);
  for (size_t j = 0; j < 11; ++j) {
    H.set(j, j, true);
    for (size_t i = 0; i < 12; ++i)
      if (G.get(i, j)) H.set(j, 11 + i, true);
  }
}

// Basis of {v : M v = 0}.
inline std::vector<BitVec> nullspace(const BitMat& M) {
  BitMat W = M;
  auto pivots = W.eliminate();
  std::vector<bool> is_pivot(M.cols(), false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<BitVec> basis;
  for (size_t c = 0; c < M.cols(); ++c) {
    if (is_pivot[c]) continue;
    BitVec v(M.cols());
    v.set(c, true);
    for (size_t r = 0; r < pivots.size(); ++r)
      if (W.get(r, c)) v.set(pivots[r], true);
    basis.push_back(v);
  }
  return basis;
}

// Minimum-weight element of ker(H) outside rowspace(H), lexicographically
// least among minimum-weight candidates. This is the canonical logical.
inline BitVec min_weight_logical(const BitMat& H) {
  auto basis = nullspace(H);
  size_t k = basis.size();
  if (k > 24) throw std::runtime_error("logical search: kernel too large");
  BitVec best;
  bool found = false;
  BitMat rows = H;
  for (uint64_t m = 1; m < (uint64_t(1) << k); ++m) {
    BitVec v(H.cols());
    for (size_t i = 0; i < k; ++i)
      if ((m >> i) & 1) v ^= basis[i];
    BitVec dummy(rows.rows());
    BitVec coeffs;
    if (rows.solve_combination(v, coeffs)) continue;  // in rowspace: not a logical
    if (!found || v.popcount() < best.popcount() ||
        (v.popcount() == best.popcount() && v.lex_less(best)))
      best = v, found = true;
  }
  if (!found) throw std::runtime_error("no logical found");
  return best;
}

}  // namespace detail

inline CssCode load_code(const std::string& name) {
  CssCode c;
  c.name = name;
  if (name == "steane7") {
    c.n = 7;
    c.Hx = detail::hamming7_checks();
    c.Hz = c.Hx;
    c.t = 1;
  } else if (name == "golay23") {
    c.n = 23;
    BitMat G, H;
    detail::golay23_matrices(G, H);
    c.Hx = H;
    c.Hz = H;
    c.t = 3;
  } else {
    throw std::invalid_argument("unknown code name: " + name);
  }
  c.Lx = detail::min_weight_logical(c.Hz);
  c.Lz = c.Lx;
  return c;
}

struct ValidationCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Exhaustive structural validation. Distances come from enumerating the full
// kernel of the check matrix (16 words for Steane, 4096 for Golay).
inline ValidationReport validate(const CssCode& code) {
  ValidationReport rep;
  auto add = [&](const std::string& name, bool pass, std::string det = "") {
    rep.checks.push_back({name, pass, std::move(det)});
  };

  // Hx Hz^T = 0
  bool ortho = true;
  for (size_t i = 0; i < code.Hx.rows(); ++i)
    for (size_t j = 0; j < code.Hz.rows(); ++j)
      if (code.Hx.row(i).dot(code.Hz.row(j))) ortho = false;
  add("Hx.Hz^T = 0", ortho);

  bool lx_comm = true;
  for (size_t j = 0; j < code.Hz.rows(); ++j)
    if (code.Lx.dot(code.Hz.row(j))) lx_comm = false;
  add("Lx commutes with Z checks", lx_comm);
  bool lz_comm = true;
  for (size_t j = 0; j < code.Hx.rows(); ++j)
    if (code.Lz.dot(code.Hx.row(j))) lz_comm = false;
  add("Lz commutes with X checks", lz_comm);
  add("Lx anticommutes with Lz", code.Lx.dot(code.Lz));

  // Minimum weight of logical cosets via kernel enumeration.
  for (ErrorKind kind : {ErrorKind::X, ErrorKind::Z}) {
    const BitMat& H = code.checks_for(kind);
    const BitMat& stab = kind == ErrorKind::X ? code.Hx : code.Hz;
    auto basis = detail::nullspace(H);
    size_t k = basis.size();
    size_t min_logical = code.n + 1;
    for (uint64_t m = 1; m < (uint64_t(1) << k); ++m) {
      BitVec v(code.n);
      for (size_t i = 0; i < k; ++i)
        if ((m >> i) & 1) v ^= basis[i];
      BitVec coeffs;
      if (stab.solve_combination(v, coeffs)) continue;
      min_logical = std::min(min_logical, v.popcount());
    }
    std::ostringstream os;
    os << "min logical weight " << min_logical << ", want " << 2 * code.t + 1;
    add(kind == ErrorKind::X ? "X distance" : "Z distance", min_logical == 2 * code.t + 1,
        os.str());
  }

  // Perfect decodability at radius t: weight<=t patterns have distinct syndromes.
  {
    SyndromeTable tbl(code, ErrorKind::X);
    bool ok = tbl.complete() && tbl.max_leader_weight() <= code.t;
    std::ostringstream os;
    os << "table entries " << tbl.entries() << ", max leader weight " << tbl.max_leader_weight();
    add("syndrome table complete at radius t", ok, os.str());
  }

  return rep;
}

// Plain-text asset: header "n rx rz", then rx rows of Hx, then rz rows of Hz.
inline std::string emit_asset(const CssCode& code) {
  std::ostringstream os;
  os << code.n << ' ' << code.Hx.rows() << ' ' << code.Hz.rows() << '\n';
  auto dump = [&](const BitMat& M) {
    for (size_t r = 0; r < M.rows(); ++r) {
      for (size_t c = 0; c < M.cols(); ++c) os << (M.get(r, c) ? '1' : '0');
      os << '\n';
    }
  };
  dump(code.Hx);
  dump(code.Hz);
  return os.str();
}

inline CssCode parse_asset(std::istream& in, const std::string& name) {
  CssCode c;
  c.name = name;
  size_t rx = 0, rz = 0;
  if (!(in >> c.n >> rx >> rz)) throw std::runtime_error("bad code asset header");
  std::string line;
  std::getline(in, line);
  auto read = [&](size_t rows) {
    BitMat M(rows, c.n);
    for (size_t r = 0; r < rows; ++r) {
      if (!std::getline(in, line) || line.size() < c.n)
        throw std::runtime_error("bad code asset row");
      for (size_t col = 0; col < c.n; ++col) M.set(r, col, line[col] == '1');
    }
    return M;
  };
  c.Hx = read(rx);
  c.Hz = read(rz);
  c.Lx = detail::min_weight_logical(c.Hz);
  c.Lz = c.Lx;
  c.t = (name == "golay23") ? 3 : 1;
  return c;
}

}  // namespace oclus
