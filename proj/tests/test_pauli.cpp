#include "doctest.h"
#include "oclus/pauli.hpp"
#include "oclus/rng.hpp"

using namespace oclus;

TEST_CASE("multiplication on disjoint and overlapping supports") {
  auto a = PauliString::from_literal("XI");
  auto b = PauliString::from_literal("IZ");
  CHECK((a * b).to_literal() == "XZ");

  auto x = PauliString::from_literal("X");
  CHECK((x * x).to_literal() == "I");

  auto z = PauliString::from_literal("Z");
  CHECK((x * z).to_literal() == "Y");
}

TEST_CASE("length mismatch rejected") {
  PauliString a(2), b(3);
  CHECK_THROWS(a * b);
  CHECK_THROWS((void)a.anticommutes(b));
}

TEST_CASE("commutation via symplectic parity") {
  auto X = PauliString::from_literal("X");
  auto Z = PauliString::from_literal("Z");
  CHECK(X.anticommutes(Z));
  CHECK(!X.anticommutes(X));
  auto xz = PauliString::from_literal("XZ");
  auto zx = PauliString::from_literal("ZX");
  CHECK(!xz.anticommutes(zx));  // two anticommuting pairs cancel
}

TEST_CASE("cz conjugation rules") {
  auto p = PauliString::from_literal("XI");
  p.conjugate_cz(0, 1);
  CHECK(p.to_literal() == "XZ");

  p = PauliString::from_literal("ZI");
  p.conjugate_cz(0, 1);
  CHECK(p.to_literal() == "ZI");

  p = PauliString::from_literal("YI");
  p.conjugate_cz(0, 1);
  CHECK(p.to_literal() == "YZ");

  CHECK_THROWS(p.conjugate_cz(0, 0));
  CHECK_THROWS(p.conjugate_cz(0, 5));
}

TEST_CASE("group properties on random strings") {
  Rng rng(7);
  const size_t n = 40;
  auto random_string = [&] {
    PauliString p(n);
    for (size_t i = 0; i < n; ++i) p.set(i, static_cast<Pauli>(rng.below(4)));
    return p;
  };
  for (int it = 0; it < 200; ++it) {
    auto a = random_string(), b = random_string(), c = random_string();
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * a).identity());
    CHECK(a.anticommutes(b) == b.anticommutes(a));
    // bilinear over mask XOR
    bool lhs = (a * b).anticommutes(c);
    bool rhs = a.anticommutes(c) ^ b.anticommutes(c);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("cz conjugation is an involution") {
  Rng rng(11);
  for (int it = 0; it < 100; ++it) {
    PauliString p(8);
    for (size_t i = 0; i < 8; ++i) p.set(i, static_cast<Pauli>(rng.below(4)));
    PauliString q = p;
    q.conjugate_cz(2, 5);
    q.conjugate_cz(2, 5);
    CHECK(p == q);
  }
}

TEST_CASE("literal round trip") {
  std::string lit = "IXZYIXZY";
  CHECK(PauliString::from_literal(lit).to_literal() == lit);
  CHECK_THROWS(PauliString::from_literal("IXQ"));
}
