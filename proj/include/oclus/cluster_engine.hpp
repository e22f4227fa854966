#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "oclus/pauli.hpp"
#include "oclus/rng.hpp"

namespace oclus {

struct NoiseParams {
  double epsilon = 0.0;  // depolarizing probability per operation
  double gamma = 0.0;    // photon loss probability per qubit per time step

  NoiseParams() = default;
  NoiseParams(double e, double g) : epsilon(e), gamma(g) {
    if (e < 0 || e > 1 || g < 0 || g > 1) throw std::invalid_argument("noise params in [0,1]");
  }
};

using NodeId = uint32_t;
constexpr NodeId kNoNode = 0xffffffff;

enum class NodeStatus : uint8_t { Live, Lost, Consumed };

enum class FusionOutcome : uint8_t { Success, Failure, LossDetected };

struct FusionResult {
  FusionOutcome outcome;
  NodeId merged = kNoNode;
  NodeId consumed[2] = {kNoNode, kNoNode};
};

enum class Basis : uint8_t { X, Z };

struct MeasureResult {
  bool loss_detected = false;
  bool outcome_error = false;
};

enum class LocatedCause : uint8_t { FusionFailure, Loss };

struct LocatedEvent {
  NodeId data_root;
  LocatedCause cause;
};

struct Resources {
  uint64_t bell_pairs = 0;
  uint64_t timesteps = 0;
  uint64_t fusions = 0;
};

// Error-tracking simulation of a fusion-built cluster. Only deviations from
// the ideal reference are stored: one literal Pauli per node plus the bond
// structure. Fusion merges XOR error masks; measurements report whether the
// accumulated error anticommutes with the measured basis.
class ClusterSim {
 public:
  explicit ClusterSim(Rng& rng, std::ostream* trace = nullptr) : rng_(&rng), trace_(trace) {}

  size_t node_count() const { return nodes_.size(); }
  bool live(NodeId n) const { return nodes_[n].status == NodeStatus::Live; }
  bool lost(NodeId n) const { return nodes_[n].status == NodeStatus::Lost; }
  bool consumed(NodeId n) const { return nodes_[n].status == NodeStatus::Consumed; }
  bool err_x(NodeId n) const { return nodes_[n].ex; }
  bool err_z(NodeId n) const { return nodes_[n].ez; }
  const std::vector<NodeId>& neighbors(NodeId n) const { return nodes_[n].adj; }
  const Resources& resources() const { return res_; }

  NodeId add_node() {
    nodes_.push_back({});
    return NodeId(nodes_.size() - 1);
  }

  // Fabrication hook for noiseless reference inputs; bonds otherwise only
  // appear through fusion.
  void add_bond(NodeId a, NodeId b) {
    check_usable(a), check_usable(b);
    if (a == b) throw std::invalid_argument("self bond");
    nodes_[a].adj.push_back(b);
    nodes_[b].adj.push_back(a);
  }

  void apply(NodeId n, Pauli p) {
    if (pauli_x(p)) nodes_[n].ex ^= 1;
    if (pauli_z(p)) nodes_[n].ez ^= 1;
  }

  // An X correction arriving on the flow at v: the literal X plus a Z on every
  // current bond partner. Z corrections are literal.
  void apply_arriving(NodeId v, Pauli p) {
    if (pauli_x(p)) {
      nodes_[v].ex ^= 1;
      for (NodeId w : nodes_[v].adj)
        if (!consumed(w)) nodes_[w].ez ^= 1;
    }
    if (pauli_z(p)) nodes_[v].ez ^= 1;
  }

  void apply_uniform_random(NodeId n) {
    uint64_t r = rng_->below(4);
    nodes_[n].ex ^= r & 1;
    nodes_[n].ez ^= (r >> 1) & 1;
  }

  std::pair<NodeId, NodeId> new_bell_pair(const NoiseParams& noise) {
    NodeId a = add_node(), b = add_node();
    add_bond(a, b);
    ++res_.bell_pairs;
    two_qubit_depolarize(a, b, noise.epsilon);
    loss_roll(a, noise.gamma);
    loss_roll(b, noise.gamma);
    if (trace_) *trace_ << "bell " << a << ' ' << b << '\n';
    return {a, b};
  }

  FusionResult fusion_gate(NodeId a, NodeId b, const NoiseParams& noise) {
    check_usable(a), check_usable(b);
    if (a == b) throw std::invalid_argument("fusion on one node");
    ++res_.fusions;
    loss_roll(a, noise.gamma);
    loss_roll(b, noise.gamma);
    if (lost(a) || lost(b)) {
      remove_detected_loss(a);
      remove_detected_loss(b);
      if (trace_) *trace_ << "fuse " << a << ' ' << b << " loss\n";
      return {FusionOutcome::LossDetected, kNoNode, {a, b}};
    }
    two_qubit_depolarize(a, b, noise.epsilon);
    if (rng_->bernoulli(0.5)) {
      NodeId m = add_node();
      nodes_[m].ex = nodes_[a].ex ^ nodes_[b].ex;
      nodes_[m].ez = nodes_[a].ez ^ nodes_[b].ez;
      for (NodeId v : nodes_[a].adj)
        if (v != b) rewire(v, a, m);
      for (NodeId v : nodes_[b].adj)
        if (v != a) rewire(v, b, m);
      nodes_[a] = Node{false, false, NodeStatus::Consumed, {}};
      nodes_[b] = Node{false, false, NodeStatus::Consumed, {}};
      cancel_duplicate_bonds(m);
      if (trace_) *trace_ << "fuse " << a << ' ' << b << " -> " << m << '\n';
      return {FusionOutcome::Success, m, {a, b}};
    }
    // Failure measures both inputs in the computational basis.
    computational_measure_out(a);
    computational_measure_out(b);
    if (trace_) *trace_ << "fuse " << a << ' ' << b << " fail\n";
    return {FusionOutcome::Failure, kNoNode, {a, b}};
  }

  struct ByproductTarget {
    NodeId node;
    Pauli op;
  };
  struct MeasurementSpec {
    NodeId node;
    Basis basis;
    std::vector<ByproductTarget> byproduct_rule;
  };

  MeasureResult measure(const MeasurementSpec& spec, const NoiseParams& noise) {
    NodeId n = spec.node;
    check_usable(n);
    loss_roll(n, noise.gamma);
    if (lost(n)) {
      remove_detected_loss(n);
      if (trace_) *trace_ << "measure " << n << " loss\n";
      return {true, false};
    }
    single_depolarize(n, noise.epsilon);
    bool o = (spec.basis == Basis::X) ? nodes_[n].ez : nodes_[n].ex;
    auto adj = nodes_[n].adj;  // copy before detaching
    detach(n);
    nodes_[n].status = NodeStatus::Consumed;
    if (o) {
      if (spec.basis == Basis::Z)
        for (NodeId v : adj)
          if (!consumed(v)) nodes_[v].ez ^= 1;
      for (const auto& t : spec.byproduct_rule) apply_arriving(t.node, t.op);
    }
    if (trace_)
      *trace_ << "measure " << (spec.basis == Basis::X ? 'X' : 'Z') << ' ' << n << " o=" << o
              << '\n';
    return {false, o};
  }

  MeasureResult measure(NodeId n, Basis b, const NoiseParams& noise) {
    return measure(MeasurementSpec{n, b, {}}, noise);
  }

  // Fusion onto the encoded data. Success behaves exactly like fusion_gate.
  // Failure or detected loss randomizes the data root's frame, records a
  // located event, and proceeds as if the bond had been created.
  FusionResult fuse_onto_data(NodeId data_leaf, NodeId other, NodeId data_root,
                              const NoiseParams& noise) {
    auto nbrs_a = nodes_[data_leaf].adj;
    auto nbrs_b = nodes_[other].adj;
    auto r = fusion_gate(data_leaf, other, noise);
    if (r.outcome == FusionOutcome::Success) return r;
    LocatedCause cause = r.outcome == FusionOutcome::Failure ? LocatedCause::FusionFailure
                                                             : LocatedCause::Loss;
    apply_uniform_random(data_root);
    located_log_.push_back({data_root, cause});
    NodeId m = add_node();
    for (NodeId v : nbrs_a)
      if (v != other && !consumed(v)) add_bond(m, v);
    for (NodeId v : nbrs_b)
      if (v != data_leaf && !consumed(v)) add_bond(m, v);
    cancel_duplicate_bonds(m);
    r.merged = m;
    if (trace_) *trace_ << "fake-bond " << m << " (located on " << data_root << ")\n";
    return r;
  }

  const std::vector<LocatedEvent>& located_log() const { return located_log_; }
  void log_located(NodeId data_root, LocatedCause cause) {
    located_log_.push_back({data_root, cause});
  }
  void clear_located_log() { located_log_.clear(); }

  // One memory time step over every live node: loss then depolarization.
  void memory_step(const NoiseParams& noise) {
    ++res_.timesteps;
    for (NodeId n = 0; n < nodes_.size(); ++n) {
      if (!live(n)) continue;
      loss_roll(n, noise.gamma);
      if (live(n)) single_depolarize(n, noise.epsilon);
    }
  }
  void count_timesteps(uint64_t k) { res_.timesteps += k; }

  // Memory noise on a single node, for structures built level-by-level while
  // the rest of the trial idles on its own schedule.
  void memory_noise(NodeId n, const NoiseParams& noise) {
    if (!live(n)) return;
    loss_roll(n, noise.gamma);
    if (live(n)) single_depolarize(n, noise.epsilon);
  }

 private:
  struct Node {
    bool ex = false, ez = false;
    NodeStatus status = NodeStatus::Live;
    std::vector<NodeId> adj;
  };

  void check_usable(NodeId n) const {
    if (n >= nodes_.size() || consumed(n)) throw std::logic_error("operation on consumed node");
  }

  void loss_roll(NodeId n, double gamma) {
    if (live(n) && rng_->bernoulli(gamma)) nodes_[n].status = NodeStatus::Lost;
  }

  void single_depolarize(NodeId n, double eps) {
    if (!live(n) || !rng_->bernoulli(eps)) return;
    uint64_t r = 1 + rng_->below(3);
    nodes_[n].ex ^= r & 1;
    nodes_[n].ez ^= (r >> 1) & 1;
  }

  void two_qubit_depolarize(NodeId a, NodeId b, double eps) {
    if (!rng_->bernoulli(eps)) return;
    uint64_t r = 1 + rng_->below(15);  // one of the 15 non-identity pairs
    nodes_[a].ex ^= r & 1;
    nodes_[a].ez ^= (r >> 1) & 1;
    nodes_[b].ex ^= (r >> 2) & 1;
    nodes_[b].ez ^= (r >> 3) & 1;
  }

  // Computational-basis measurement used by fusion failure: the outcome error
  // is the X component and toggles a Z on each surviving neighbor.
  void computational_measure_out(NodeId n) {
    bool o = nodes_[n].ex;
    auto adj = nodes_[n].adj;
    detach(n);
    nodes_[n].status = NodeStatus::Consumed;
    if (o)
      for (NodeId v : adj)
        if (!consumed(v)) nodes_[v].ez ^= 1;
  }

  // A detected loss traces the qubit out: one shared coin decides the Z kick
  // on all former neighbors.
  void remove_detected_loss(NodeId n) {
    if (consumed(n)) return;
    bool coin = rng_->bernoulli(0.5);
    auto adj = nodes_[n].adj;
    detach(n);
    nodes_[n].status = NodeStatus::Consumed;
    if (coin)
      for (NodeId v : adj)
        if (!consumed(v)) nodes_[v].ez ^= 1;
  }

  void detach(NodeId n) {
    for (NodeId v : nodes_[n].adj) {
      auto& a = nodes_[v].adj;
      a.erase(std::remove(a.begin(), a.end(), n), a.end());
    }
    nodes_[n].adj.clear();
  }

  void rewire(NodeId v, NodeId from, NodeId to) {
    for (auto& w : nodes_[v].adj)
      if (w == from) w = to;
    nodes_[to].adj.push_back(v);
  }

  // Paired CZ bonds cancel; a merge that inherits the same partner twice
  // ends up unbonded from it.
  void cancel_duplicate_bonds(NodeId m) {
    auto& a = nodes_[m].adj;
    std::sort(a.begin(), a.end());
    std::vector<NodeId> keep;
    for (size_t i = 0; i < a.size();) {
      size_t j = i;
      while (j < a.size() && a[j] == a[i]) ++j;
      if ((j - i) % 2) keep.push_back(a[i]);
      if ((j - i) > 1) {
        auto& other = nodes_[a[i]].adj;
        size_t drop = (j - i) - ((j - i) % 2);
        for (size_t k = 0; k < drop; ++k)
          other.erase(std::find(other.begin(), other.end(), m));
      }
      i = j;
    }
    a = keep;
  }

  std::vector<Node> nodes_;
  Rng* rng_;
  std::ostream* trace_;
  Resources res_;
  std::vector<LocatedEvent> located_log_;
};

}  // namespace oclus
