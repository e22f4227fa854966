#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oclus {

// Single-qubit Pauli, phases discarded. Encoded as (x, z) bit pair.
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline Pauli make_pauli(bool x, bool z) {
  return static_cast<Pauli>((x ? 1 : 0) | (z ? 2 : 0));
}
inline bool pauli_x(Pauli p) { return static_cast<uint8_t>(p) & 1; }
inline bool pauli_z(Pauli p) { return static_cast<uint8_t>(p) & 2; }
inline Pauli pauli_mul(Pauli a, Pauli b) {
  return static_cast<Pauli>(static_cast<uint8_t>(a) ^ static_cast<uint8_t>(b));
}
inline char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Z: return 'Z';
    case Pauli::Y: return 'Y';
  }
  return '?';
}

// Tensor product of Paulis over n qubits, stored as x/z bit masks.
// Multiplication is mask XOR; phases are never tracked.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(size_t n) : n_(n), x_((n + 63) / 64, 0), z_((n + 63) / 64, 0) {}

  // Parse a literal over {I,X,Y,Z}; leftmost character is qubit 0.
  static PauliString from_literal(const std::string& s) {
    PauliString p(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
      switch (s[i]) {
        case 'I': break;
        case 'X': p.set_x(i, true); break;
        case 'Z': p.set_z(i, true); break;
        case 'Y': p.set_x(i, true); p.set_z(i, true); break;
        default: throw std::invalid_argument("bad Pauli literal char");
      }
    }
    return p;
  }

  std::string to_literal() const {
    std::string s(n_, 'I');
    for (size_t i = 0; i < n_; ++i) s[i] = pauli_char(at(i));
    return s;
  }

  size_t size() const { return n_; }

  bool x(size_t i) const { return bit(x_, i); }
  bool z(size_t i) const { return bit(z_, i); }
  void set_x(size_t i, bool v) { set_bit(x_, i, v); }
  void set_z(size_t i, bool v) { set_bit(z_, i, v); }

  Pauli at(size_t i) const { return make_pauli(x(i), z(i)); }
  void set(size_t i, Pauli p) {
    set_x(i, pauli_x(p));
    set_z(i, pauli_z(p));
  }
  void mul_at(size_t i, Pauli p) {
    if (pauli_x(p)) set_x(i, !x(i));
    if (pauli_z(p)) set_z(i, !z(i));
  }

  PauliString& operator*=(const PauliString& o) {
    check_len(o);
    for (size_t w = 0; w < x_.size(); ++w) {
      x_[w] ^= o.x_[w];
      z_[w] ^= o.z_[w];
    }
    return *this;
  }
  friend PauliString operator*(PauliString a, const PauliString& b) { return a *= b; }

  bool operator==(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }

  bool identity() const {
    for (size_t w = 0; w < x_.size(); ++w)
      if (x_[w] | z_[w]) return false;
    return true;
  }

  // 1 iff the symplectic product a.x·b.z + a.z·b.x is odd.
  bool anticommutes(const PauliString& o) const {
    check_len(o);
    uint64_t acc = 0;
    for (size_t w = 0; w < x_.size(); ++w) acc ^= (x_[w] & o.z_[w]) ^ (z_[w] & o.x_[w]);
    return __builtin_parityll(acc);
  }

  size_t weight() const {
    size_t c = 0;
    for (size_t w = 0; w < x_.size(); ++w) c += __builtin_popcountll(x_[w] | z_[w]);
    return c;
  }

  std::vector<size_t> support() const {
    std::vector<size_t> s;
    for (size_t i = 0; i < n_; ++i)
      if (x(i) || z(i)) s.push_back(i);
    return s;
  }

  // CZ between qubits a and b: X_a picks up Z_b and vice versa.
  void conjugate_cz(size_t a, size_t b) {
    if (a == b || a >= n_ || b >= n_) throw std::out_of_range("conjugate_cz index");
    if (x(a)) set_z(b, !z(b));
    if (x(b)) set_z(a, !z(a));
  }

 private:
  void check_len(const PauliString& o) const {
    if (n_ != o.n_) throw std::invalid_argument("PauliString length mismatch");
  }
  static bool bit(const std::vector<uint64_t>& v, size_t i) {
    return (v[i >> 6] >> (i & 63)) & 1;
  }
  static void set_bit(std::vector<uint64_t>& v, size_t i, bool b) {
    if (b)
      v[i >> 6] |= uint64_t(1) << (i & 63);
    else
      v[i >> 6] &= ~(uint64_t(1) << (i & 63));
  }

  size_t n_ = 0;
  std::vector<uint64_t> x_, z_;
};

using PauliFrame = PauliString;

inline PauliString multiply(const PauliString& a, const PauliString& b) { return a * b; }
inline bool commutes(const PauliString& a, const PauliString& b) { return !a.anticommutes(b); }

}  // namespace oclus
