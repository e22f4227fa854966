#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "oclus/css_code.hpp"
#include "oclus/gf2.hpp"

namespace oclus {

struct DecodeInput {
  const CssCode* code = nullptr;
  ErrorKind which = ErrorKind::X;
  BitVec syndrome;
  std::vector<size_t> located;
};

struct DecodeOutput {
  BitVec flips;
  bool located_crash = false;
  size_t unlocated_weight = 0;
};

// Maximum-likelihood decoding of mixed located/unlocated errors. Located
// positions carry an error with probability 1/2 independent of value, so they
// are free; likelihood ranking reduces to minimizing the number of flips on
// unlocated positions. We enumerate located assignments in Gray-code order and
// complete each with the table leader, rejecting completions that touch the
// located set (those reappear under a different assignment).
class Decoder {
 public:
  Decoder(const CssCode& code) : code_(code), table_x_(code, ErrorKind::X) {
    // Identical check matrices for both error types on the shipped codes;
    // build the second table only if they differ.
    same_checks_ = matrices_equal(code.Hz, code.Hx);
    if (!same_checks_) table_z_ = SyndromeTable(code, ErrorKind::Z);
  }

  static constexpr size_t kLocatedCap = 12;

  DecodeOutput decode(const DecodeInput& in) const {
    const CssCode& code = *in.code;
    const BitMat& H = code.checks_for(in.which);
    if (in.syndrome.size() != H.rows()) throw std::invalid_argument("decode: syndrome length");
    for (size_t q : in.located)
      if (q >= code.n) throw std::out_of_range("decode: located index");
    const SyndromeTable& table = (in.which == ErrorKind::X || same_checks_) ? table_x_ : table_z_;

    DecodeOutput out;
    if (in.located.size() > kLocatedCap) {
      // Beyond any correction guarantee; declare the block lost outright.
      out.flips = table.leader(in.syndrome);
      out.located_crash = true;
      return out;
    }

    const size_t m = in.located.size();
    // Column syndromes of the located positions, for incremental updates.
    std::vector<BitVec> col(m, BitVec(H.rows()));
    for (size_t i = 0; i < m; ++i)
      for (size_t r = 0; r < H.rows(); ++r) col[i].set(r, H.get(r, in.located[i]));

    BitVec located_mask(code.n);
    for (size_t q : in.located) located_mask.set(q, true);

    BitVec sigma = in.syndrome;
    BitVec assign(code.n);
    bool found = false;
    size_t best_cost = code.n + 1;
    BitVec best_total;
    bool class_seen[2] = {false, false};

    const uint64_t count = uint64_t(1) << m;
    uint64_t gray_prev = 0;
    for (uint64_t k = 0; k < count; ++k) {
      uint64_t gray = k ^ (k >> 1);
      uint64_t diff = gray ^ gray_prev;
      if (diff) {
        size_t bit = __builtin_ctzll(diff);
        assign.flip(in.located[bit]);
        sigma ^= col[bit];
      }
      gray_prev = gray;

      const BitVec& leader = table.leader(sigma);
      bool touches = false;
      for (size_t q : in.located)
        if (leader.get(q)) {
          touches = true;
          break;
        }
      if (touches) continue;
      size_t cost = leader.popcount();
      if (cost > best_cost) continue;
      BitVec total = assign ^ leader;
      bool cls = code.logical_class(in.which, total);
      if (cost < best_cost) {
        best_cost = cost;
        best_total = total;
        class_seen[0] = class_seen[1] = false;
        class_seen[cls] = true;
        found = true;
      } else {
        // Equal-cost tie: remember both classes, keep the lexicographically
        // least flip set as the deterministic representative.
        class_seen[cls] = true;
        if (total.lex_less(best_total)) best_total = total;
      }
    }

    if (!found) {
      // Cannot happen for complete tables, but fail loudly rather than guess.
      throw std::runtime_error("decode: no completion found");
    }
    out.flips = best_total;
    out.unlocated_weight = best_cost;
    out.located_crash = class_seen[0] && class_seen[1];
    return out;
  }

 private:
  static bool matrices_equal(const BitMat& a, const BitMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (size_t r = 0; r < a.rows(); ++r)
      if (!(a.row(r) == b.row(r))) return false;
    return true;
  }

  const CssCode& code_;
  SyndromeTable table_x_;
  SyndromeTable table_z_;
  bool same_checks_ = true;
};

enum class LogicalResidual : uint8_t { None, LogicalX, LogicalZ, LogicalY };

// Noise-free round of correction applied to a residual pattern: decode each
// error type with no located information and report which logical, if any,
// the corrected residual equals.
inline LogicalResidual perfect_decode(const Decoder& dec, const CssCode& code, const BitVec& ex,
                                      const BitVec& ez) {
  DecodeInput ix{&code, ErrorKind::X, code.syndrome(ErrorKind::X, ex), {}};
  DecodeInput iz{&code, ErrorKind::Z, code.syndrome(ErrorKind::Z, ez), {}};
  BitVec cx = ex ^ dec.decode(ix).flips;
  BitVec cz = ez ^ dec.decode(iz).flips;
  bool lx = code.logical_class(ErrorKind::X, cx);
  bool lz = code.logical_class(ErrorKind::Z, cz);
  if (lx && lz) return LogicalResidual::LogicalY;
  if (lx) return LogicalResidual::LogicalX;
  if (lz) return LogicalResidual::LogicalZ;
  return LogicalResidual::None;
}

}  // namespace oclus
