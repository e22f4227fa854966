#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oclus/cluster_engine.hpp"

namespace oclus {

struct Microcluster {
  NodeId root = kNoNode;
  std::vector<NodeId> leaves;
  uint64_t bell_pairs_consumed = 0;
  uint64_t timesteps = 0;
};

// Star builder: repeated root-root fusion of smaller stars, postselecting on
// success and on no detected loss. Failures never touch anything outside the
// structure under construction. Memory noise is applied per merge level to
// the surviving nodes, which is what a batched parallel build would give them.
class MicroclusterFactory {
 public:
  MicroclusterFactory(ClusterSim& sim, NoiseParams noise, uint32_t attempt_budget = 64)
      : sim_(sim), noise_(noise), budget_(attempt_budget) {}

  std::optional<Microcluster> build(size_t k) {
    if (k < 1) throw std::invalid_argument("microcluster needs k >= 1");
    attempts_left_ = budget_;
    uint64_t bp0 = sim_.resources().bell_pairs;
    auto star = make_star(k);
    if (!star) return std::nullopt;
    Microcluster mc;
    mc.root = star->root;
    mc.leaves = star->leaves;
    mc.bell_pairs_consumed = sim_.resources().bell_pairs - bp0;
    mc.timesteps = 1 + ceil_log2(k);
    return mc;
  }

 private:
  struct Star {
    NodeId root;
    std::vector<NodeId> leaves;
  };

  static uint64_t ceil_log2(size_t k) {
    uint64_t l = 0;
    size_t v = 1;
    while (v < k) v <<= 1, ++l;
    return l;
  }

  // Split off the top power of two and merge the remainder on, retrying any
  // failed merge with freshly built halves.
  std::optional<Star> make_star(size_t k) {
    if (k == 1) {
      auto [root, leaf] = sim_.new_bell_pair(noise_);
      return Star{root, {leaf}};
    }
    size_t hi = size_t(1) << (63 - __builtin_clzll(k - 1));  // largest power < k, or k/2
    if ((k & (k - 1)) == 0) hi = k / 2;
    size_t lo = k - hi;
    while (true) {
      auto a = make_star(hi);
      if (!a) return std::nullopt;
      auto b = make_star(lo);
      if (!b) return std::nullopt;
      auto m = merge(*a, *b);
      if (m) return m;
      if (attempts_left_ == 0) return std::nullopt;
    }
  }

  std::optional<Star> merge(const Star& a, const Star& b) {
    if (attempts_left_ == 0) return std::nullopt;
    --attempts_left_;
    auto r = sim_.fusion_gate(a.root, b.root, noise_);
    if (r.outcome != FusionOutcome::Success) {
      discard_leaves(a.leaves);
      discard_leaves(b.leaves);
      return std::nullopt;
    }
    Star s{r.merged, a.leaves};
    s.leaves.insert(s.leaves.end(), b.leaves.begin(), b.leaves.end());
    for (NodeId n : s.leaves) sim_.memory_noise(n, noise_);
    sim_.memory_noise(s.root, noise_);
    return s;
  }

  void discard_leaves(const std::vector<NodeId>& leaves) {
    for (NodeId n : leaves)
      if (!sim_.consumed(n)) sim_.measure(n, Basis::Z, NoiseParams(0, 0));
  }

  ClusterSim& sim_;
  NoiseParams noise_;
  uint32_t budget_;
  uint32_t attempts_left_ = 0;
};

struct ParallelFusionResult {
  bool fused = false;
  NodeId bond = kNoNode;       // merged node joining the two sides
  bool located_event = false;  // data-side randomization happened
  bool fake = false;           // every attempt failed; proceeded as success
  size_t attempts = 0;
};

// Attempt fusion pairwise until one succeeds; unused leaves are measured out
// in Z. When the a-side carries encoded data, total failure (and any detected
// loss touching the data side) becomes a located event: frame randomized,
// event logged, graph updated as though the bond existed.
inline ParallelFusionResult parallel_fusion(ClusterSim& sim, NodeId a_root,
                                            std::vector<NodeId> a_leaves, NodeId b_root,
                                            std::vector<NodeId> b_leaves, bool a_is_data,
                                            const NoiseParams& noise) {
  if (a_leaves.empty() || b_leaves.empty() || a_leaves.size() != b_leaves.size())
    throw std::invalid_argument("parallel_fusion: equal-length nonempty leaf lists");

  ParallelFusionResult out;
  bool data_loss_touched = false;
  size_t used = 0;
  for (size_t i = 0; i < a_leaves.size() && !out.fused; ++i) {
    ++used;
    auto r = sim.fusion_gate(a_leaves[i], b_leaves[i], noise);
    switch (r.outcome) {
      case FusionOutcome::Success:
        out.fused = true;
        out.bond = r.merged;
        break;
      case FusionOutcome::LossDetected:
        // Both photons of the pair are gone; the data-side leaf carried
        // entanglement with its root, so the root's state is no longer clean.
        if (a_is_data) data_loss_touched = true;
        break;
      case FusionOutcome::Failure:
        break;
    }
  }
  out.attempts = used;

  auto cleanup = [&](const std::vector<NodeId>& leaves, bool data_side) {
    for (NodeId n : leaves) {
      if (sim.consumed(n)) continue;
      auto r = sim.measure(n, Basis::Z, noise);
      if (r.loss_detected && data_side) data_loss_touched = true;
    }
  };
  cleanup(a_leaves, a_is_data);
  cleanup(b_leaves, false);

  if (!out.fused) {
    if (!a_is_data) return out;  // caller retries or discards
    out.fake = true;
    out.fused = true;
    sim.log_located(a_root, LocatedCause::FusionFailure);
    out.located_event = true;
    NodeId m = sim.add_node();
    sim.add_bond(m, a_root);
    sim.add_bond(m, b_root);
    out.bond = m;
  }
  if (a_is_data && data_loss_touched) {
    if (!out.located_event) sim.log_located(a_root, LocatedCause::Loss);
    out.located_event = true;
  }
  if (a_is_data && out.located_event) sim.apply_uniform_random(a_root);
  return out;
}

}  // namespace oclus
