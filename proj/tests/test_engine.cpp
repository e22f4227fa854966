#include <array>
#include <cmath>
#include <map>

#include "doctest.h"
#include "oclus/cluster_engine.hpp"
#include "oclus/rng.hpp"

using namespace oclus;

namespace {
double binom_sigma(double p, double n) { return std::sqrt(p * (1 - p) / n); }
}  // namespace

TEST_CASE("noiseless bell pair is clean") {
  Rng rng(1);
  ClusterSim sim(rng);
  auto [a, b] = sim.new_bell_pair(NoiseParams(0, 0));
  CHECK(sim.live(a));
  CHECK(sim.live(b));
  CHECK(!sim.err_x(a));
  CHECK(!sim.err_z(a));
  CHECK(sim.neighbors(a) == std::vector<NodeId>{b});
  CHECK(sim.resources().bell_pairs == 1);
}

TEST_CASE("two-qubit depolarization hits each non-identity pauli at eps/15") {
  const double eps = 0.15;
  const int N = 1000000;
  Rng rng(42);
  std::map<int, int> counts;
  for (int i = 0; i < N; ++i) {
    ClusterSim sim(rng);
    auto [a, b] = sim.new_bell_pair(NoiseParams(eps, 0));
    int key = (sim.err_x(a) ? 1 : 0) | (sim.err_z(a) ? 2 : 0) | (sim.err_x(b) ? 4 : 0) |
              (sim.err_z(b) ? 8 : 0);
    counts[key]++;
  }
  const double p = eps / 15;
  const double tol = 3 * binom_sigma(p, N);
  for (int key = 1; key < 16; ++key) {
    double freq = counts[key] / double(N);
    CHECK(std::abs(freq - p) < tol);
  }
  CHECK(std::abs(counts[0] / double(N) - (1 - eps)) < 3 * binom_sigma(1 - eps, N));
}

TEST_CASE("loss marks qubits independently") {
  const double gamma = 0.5;
  const int N = 1000000;
  Rng rng(7);
  int lost_a = 0, lost_b = 0, lost_both = 0;
  for (int i = 0; i < N; ++i) {
    ClusterSim sim(rng);
    auto [a, b] = sim.new_bell_pair(NoiseParams(0, gamma));
    bool la = sim.lost(a), lb = sim.lost(b);
    lost_a += la;
    lost_b += lb;
    lost_both += la && lb;
  }
  double fa = lost_a / double(N), fb = lost_b / double(N), fab = lost_both / double(N);
  CHECK(std::abs(fa - gamma) < 3 * binom_sigma(gamma, N));
  CHECK(std::abs(fb - gamma) < 3 * binom_sigma(gamma, N));
  // independence: joint within 3 sigma of product of marginals
  CHECK(std::abs(fab - fa * fb) < 3 * binom_sigma(gamma * gamma, N));
}

TEST_CASE("fusion success rate is one half, independent of noise and errors") {
  const int N = 100000;
  for (auto noise : {NoiseParams(0, 0), NoiseParams(0.3, 0)}) {
    Rng rng(13);
    int success = 0;
    for (int i = 0; i < N; ++i) {
      ClusterSim sim(rng);
      auto [a1, b1] = sim.new_bell_pair(noise);
      auto [a2, b2] = sim.new_bell_pair(noise);
      sim.apply(b1, Pauli::X);  // input errors must not bias the coin
      auto r = sim.fusion_gate(b1, b2, noise);
      success += r.outcome == FusionOutcome::Success;
    }
    CHECK(std::abs(success / double(N) - 0.5) < 0.005);
  }
}

TEST_CASE("fusion error propagation: X on either input lands on merged node") {
  Rng rng(3);
  for (int attempt = 0; attempt < 64; ++attempt) {
    ClusterSim sim(rng);
    auto [a1, b1] = sim.new_bell_pair(NoiseParams(0, 0));
    auto [a2, b2] = sim.new_bell_pair(NoiseParams(0, 0));
    sim.apply(b1, Pauli::X);
    auto r = sim.fusion_gate(b1, b2, NoiseParams(0, 0));
    if (r.outcome != FusionOutcome::Success) continue;
    CHECK(sim.err_x(r.merged));
    CHECK(!sim.err_z(r.merged));
    // merged node holds the union of both neighbor sets
    CHECK(sim.neighbors(r.merged).size() == 2);
    return;
  }
  FAIL("no fusion success in 64 coin flips");
}

TEST_CASE("certain loss always detected at the gate") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    ClusterSim sim(rng);
    auto [a1, b1] = sim.new_bell_pair(NoiseParams(0, 0));
    auto [a2, b2] = sim.new_bell_pair(NoiseParams(0, 0));
    auto r = sim.fusion_gate(b1, b2, NoiseParams(0, 1.0));
    CHECK(r.outcome == FusionOutcome::LossDetected);
    CHECK(sim.consumed(b1));
    CHECK(sim.consumed(b2));
  }
}

TEST_CASE("measurement outcome errors follow anticommutation") {
  Rng rng(9);
  NoiseParams quiet(0, 0);

  ClusterSim sim(rng);
  auto [a, b] = sim.new_bell_pair(quiet);
  CHECK(!sim.measure(a, Basis::X, quiet).outcome_error);

  ClusterSim sim2(rng);
  auto [a2, b2] = sim2.new_bell_pair(quiet);
  sim2.apply(a2, Pauli::Z);
  auto r = sim2.measure(ClusterSim::MeasurementSpec{a2, Basis::X, {{b2, Pauli::X}}}, quiet);
  CHECK(r.outcome_error);
  CHECK(sim2.err_x(b2));  // byproduct rule fired

  ClusterSim sim3(rng);
  auto [a3, b3] = sim3.new_bell_pair(quiet);
  sim3.apply(a3, Pauli::X);
  CHECK(!sim3.measure(a3, Basis::X, quiet).outcome_error);
}

TEST_CASE("z measurement kicks z onto former neighbors on outcome error") {
  Rng rng(17);
  NoiseParams quiet(0, 0);
  ClusterSim sim(rng);
  auto [a, b] = sim.new_bell_pair(quiet);
  sim.apply(a, Pauli::X);
  auto r = sim.measure(a, Basis::Z, quiet);
  CHECK(r.outcome_error);
  CHECK(sim.err_z(b));

  // without the X the neighbor stays clean
  ClusterSim sim2(rng);
  auto [a2, b2] = sim2.new_bell_pair(quiet);
  auto r2 = sim2.measure(a2, Basis::Z, quiet);
  CHECK(!r2.outcome_error);
  CHECK(!sim2.err_z(b2));
}

TEST_CASE("measuring a lost node reports loss") {
  Rng rng(23);
  ClusterSim sim(rng);
  auto [a, b] = sim.new_bell_pair(NoiseParams(0, 1.0));
  auto r = sim.measure(a, Basis::X, NoiseParams(0, 0));
  CHECK(r.loss_detected);
  CHECK_THROWS(sim.measure(a, Basis::X, NoiseParams(0, 0)));
}

namespace {

// Scripted mini-protocol: three bell pairs fused into a chain, then a wire of
// X measurements through it. Structure driven by one seed; injections
// supplied from outside. Returns outcome-error bits plus the final error on
// the surviving node.
struct ScriptResult {
  std::vector<bool> bits;
  bool ex, ez;
};

ScriptResult run_script(uint64_t seed, const std::vector<std::pair<int, Pauli>>& injections) {
  Rng rng(seed);
  ClusterSim sim(rng);
  NoiseParams quiet(0, 0);
  auto [a1, b1] = sim.new_bell_pair(quiet);
  auto [a2, b2] = sim.new_bell_pair(quiet);
  auto [a3, b3] = sim.new_bell_pair(quiet);
  sim.fusion_gate(b1, a2, quiet);
  sim.fusion_gate(b2, a3, quiet);
  std::vector<NodeId> alive;
  for (NodeId n = 0; n < sim.node_count(); ++n)
    if (sim.live(n)) alive.push_back(n);
  for (auto [site, p] : injections) sim.apply(alive[site % alive.size()], p);

  ScriptResult out{};
  for (size_t i = 0; i + 1 < alive.size(); ++i)
    out.bits.push_back(sim.measure(alive[i], Basis::X, quiet).outcome_error);
  NodeId last = alive.back();
  out.ex = sim.err_x(last);
  out.ez = sim.err_z(last);
  return out;
}

}  // namespace

TEST_CASE("zero-noise transparency for scripted protocols") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    auto r = run_script(seed, {});
    for (bool b : r.bits) CHECK(!b);
    CHECK(!r.ex);
    CHECK(!r.ez);
  }
}

TEST_CASE("error propagation is linear over injected error sets") {
  Rng pick(31);
  for (uint64_t seed = 0; seed < 40; ++seed) {
    std::vector<std::pair<int, Pauli>> s1, s2;
    for (int i = 0; i < 3; ++i) {
      s1.push_back({int(pick.below(6)), static_cast<Pauli>(1 + pick.below(3))});
      s2.push_back({int(pick.below(6)), static_cast<Pauli>(1 + pick.below(3))});
    }
    auto r1 = run_script(seed, s1);
    auto r2 = run_script(seed, s2);
    auto su = s1;
    su.insert(su.end(), s2.begin(), s2.end());
    auto ru = run_script(seed, su);
    REQUIRE(r1.bits.size() == r2.bits.size());
    REQUIRE(r1.bits.size() == ru.bits.size());
    for (size_t i = 0; i < ru.bits.size(); ++i) CHECK(ru.bits[i] == (r1.bits[i] ^ r2.bits[i]));
    CHECK(ru.ex == (r1.ex ^ r2.ex));
    CHECK(ru.ez == (r1.ez ^ r2.ez));
  }
}

TEST_CASE("memory step applies loss then depolarization to live nodes") {
  const int N = 200000;
  Rng rng(77);
  int lost = 0, flipped = 0;
  for (int i = 0; i < N; ++i) {
    ClusterSim sim(rng);
    NodeId n = sim.add_node();
    sim.memory_step(NoiseParams(0.3, 0.1));
    if (sim.lost(n))
      ++lost;
    else if (sim.err_x(n) || sim.err_z(n))
      ++flipped;
  }
  CHECK(std::abs(lost / double(N) - 0.1) < 3 * binom_sigma(0.1, N));
  double p_flip = 0.9 * 0.3;
  CHECK(std::abs(flipped / double(N) - p_flip) < 3 * binom_sigma(p_flip, N));
}
