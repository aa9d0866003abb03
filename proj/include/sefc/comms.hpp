#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "sefc/config.hpp"
#include "sefc/errors.hpp"
#include "sefc/rng.hpp"
#include "sefc/types.hpp"

namespace sefc {

// Symmetric, irreflexive neighbor lists, indexed by position in the state
// vector. Edge rule: D(i,j) <= comm_range, boundary inclusive.
struct Adjacency {
  std::vector<std::vector<int>> neighbors;

  bool adjacent(int i, int j) const {
    const auto& n = neighbors[static_cast<std::size_t>(i)];
    return std::find(n.begin(), n.end(), j) != n.end();
  }
  int degree(int i) const { return static_cast<int>(neighbors[static_cast<std::size_t>(i)].size()); }
};

// Pairwise range test over all states; dead nodes (alive mask false) have no
// edges. Neighbor lists come out sorted by index.
inline Adjacency compute_adjacency(const std::vector<UavState>& states, double comm_range,
                                   const std::vector<bool>* alive = nullptr) {
  const int n = static_cast<int>(states.size());
  Adjacency adj;
  adj.neighbors.assign(static_cast<std::size_t>(n), {});
  auto is_alive = [&](int i) { return alive == nullptr || (*alive)[static_cast<std::size_t>(i)]; };
  for (int i = 0; i < n; ++i) {
    if (!is_alive(i)) continue;
    for (int j = i + 1; j < n; ++j) {
      if (!is_alive(j)) continue;
      if (distance(states[static_cast<std::size_t>(i)].position,
                   states[static_cast<std::size_t>(j)].position) <= comm_range) {
        adj.neighbors[static_cast<std::size_t>(i)].push_back(j);
        adj.neighbors[static_cast<std::size_t>(j)].push_back(i);
      }
    }
  }
  return adj;
}

enum class RadioOp { kTx, kRx };

// First-order radio cost. TX pays electronics plus amplifier (distance^2);
// RX pays electronics only.
inline double energy_cost(RadioOp op, double bits, double dist, const EnergyModel& model) {
  if (op == RadioOp::kTx) return model.e_elec * bits + model.e_amp * bits * dist * dist;
  return model.e_elec * bits;
}

// One round of every alive node broadcasting `bits`: the sender pays TX at its
// farthest neighbor's distance (0 m with no neighbors), each neighbor pays RX.
// Returns joules per node index.
inline std::vector<double> broadcast_charges(const std::vector<UavState>& states,
                                             const Adjacency& adj, const std::vector<bool>& alive,
                                             double bits, const EnergyModel& model) {
  const std::size_t n = states.size();
  std::vector<double> charges(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    double far = 0.0;
    for (int j : adj.neighbors[i]) {
      far = std::max(far, distance(states[i].position, states[static_cast<std::size_t>(j)].position));
      charges[static_cast<std::size_t>(j)] += energy_cost(RadioOp::kRx, bits, 0.0, model);
    }
    charges[i] += energy_cost(RadioOp::kTx, bits, far, model);
  }
  return charges;
}

namespace detail {

struct Hop {
  NodeId from;
  NodeId to;
};

// Builds the full hop list: up the parent chain to the source's CH, greedy
// geographic forwarding over the CH overlay, then down the reversed parent
// chain to the destination. Empty optional when no overlay path exists.
inline std::optional<std::vector<Hop>> build_route(NodeId src, NodeId dst,
                                                   const ClusterForest& forest,
                                                   const std::vector<UavState>& states,
                                                   const std::vector<bool>& alive,
                                                   const std::map<NodeId, int>& index_of,
                                                   double comm_range) {
  auto pos = [&](NodeId id) { return states[static_cast<std::size_t>(index_of.at(id))].position; };
  auto ok = [&](NodeId id) { return alive[static_cast<std::size_t>(index_of.at(id))]; };

  std::vector<Hop> hops;

  // Intra-cluster upstream: src -> parent -> ... -> its CH.
  NodeId cur = src;
  while (!forest.is_ch(cur)) {
    auto it = forest.parent.find(cur);
    if (it == forest.parent.end()) return std::nullopt;  // orphaned entry
    hops.push_back({cur, it->second});
    cur = it->second;
  }
  const NodeId ch_src = cur;
  auto root_it = forest.cluster_of.find(dst);
  if (root_it == forest.cluster_of.end()) return std::nullopt;
  const NodeId ch_dst = root_it->second;

  if (ch_src != ch_dst) {
    // CH overlay. Two heads are linked when within range of each other or
    // bridged by a member that hears both (lowest id bridge wins).
    std::vector<NodeId> heads;
    for (const auto& [id, r] : forest.role)
      if (r == Role::kCh && ok(id)) heads.push_back(id);
    const Vec3 goal = pos(ch_dst);

    NodeId at = ch_src;
    while (at != ch_dst) {
      const double here = distance(pos(at), goal);
      NodeId best = kNoNode;
      NodeId best_bridge = kNoNode;
      double best_dist = here;
      for (NodeId h : heads) {
        if (h == at) continue;
        NodeId bridge = kNoNode;
        if (distance(pos(at), pos(h)) > comm_range) {
          for (const auto& [id, r] : forest.role) {
            if (r == Role::kCh || !ok(id)) continue;
            if (distance(pos(at), pos(id)) <= comm_range &&
                distance(pos(id), pos(h)) <= comm_range) {
              bridge = id;
              break;  // role map is id-ordered, first hit is the lowest id
            }
          }
          if (bridge == kNoNode) continue;
        }
        const double d = distance(pos(h), goal);
        if (d < best_dist || (d == best_dist && best != kNoNode && h < best)) {
          best = h;
          best_bridge = bridge;
          best_dist = d;
        }
      }
      if (best == kNoNode) return std::nullopt;  // greedy dead end
      if (best_bridge != kNoNode) {
        hops.push_back({at, best_bridge});
        hops.push_back({best_bridge, best});
      } else {
        hops.push_back({at, best});
      }
      at = best;
    }
  }

  // Downstream: reverse of dst's parent chain.
  std::vector<Hop> down;
  cur = dst;
  while (!forest.is_ch(cur)) {
    auto it = forest.parent.find(cur);
    if (it == forest.parent.end()) return std::nullopt;
    down.push_back({it->second, cur});
    cur = it->second;
  }
  if (cur != ch_dst) return std::nullopt;  // stale cluster_of entry
  hops.insert(hops.end(), down.rbegin(), down.rend());
  return hops;
}

}  // namespace detail

// Pushes one packet from src to dst through the cluster structure. Every
// physical hop needs both endpoints alive and in range; each attempt is lost
// independently with loss_prob and adds per_hop_latency, retried up to
// max_retransmissions. Energy charges TX to the sender and RX to the receiver
// per attempt. Draws exactly one uniform per attempt.
inline DeliveryOutcome route_packet(NodeId src, NodeId dst, const ClusterForest& forest,
                                    const std::vector<UavState>& states,
                                    const std::vector<bool>& alive, const RadioConfig& radio,
                                    const EnergyModel& energy, RngStream& rng) {
  std::map<NodeId, int> index_of;
  for (std::size_t i = 0; i < states.size(); ++i) index_of[states[i].id] = static_cast<int>(i);
  if (index_of.count(src) == 0 || !forest.contains(src))
    throw LookupError("route_packet: unknown source node " + std::to_string(src));
  if (index_of.count(dst) == 0 || !forest.contains(dst))
    throw LookupError("route_packet: unknown destination node " + std::to_string(dst));
  if (src == dst) throw Error("route_packet: src and dst must differ");

  DeliveryOutcome out;
  const auto route = detail::build_route(src, dst, forest, states, alive, index_of, radio.comm_range);
  if (!route) return out;

  auto state_of = [&](NodeId id) -> const UavState& {
    return states[static_cast<std::size_t>(index_of.at(id))];
  };
  for (const auto& hop : *route) {
    const bool from_ok = alive[static_cast<std::size_t>(index_of.at(hop.from))];
    const bool to_ok = alive[static_cast<std::size_t>(index_of.at(hop.to))];
    const double d = distance(state_of(hop.from).position, state_of(hop.to).position);
    if (!from_ok || !to_ok || d > radio.comm_range) return out;  // stale link

    bool passed = false;
    for (int attempt = 0; attempt <= radio.max_retransmissions; ++attempt) {
      out.delay += radio.per_hop_latency;
      out.energy_spent[hop.from] +=
          energy_cost(RadioOp::kTx, static_cast<double>(radio.data_bits), d, energy);
      out.energy_spent[hop.to] +=
          energy_cost(RadioOp::kRx, static_cast<double>(radio.data_bits), 0.0, energy);
      const bool lost = rng.uniform01() < radio.loss_prob;
      if (!lost) {
        passed = true;
        out.retransmissions += attempt;
        break;
      }
    }
    if (!passed) {
      out.retransmissions += radio.max_retransmissions;
      return out;  // hop exhausted its retries
    }
    ++out.hops;
  }
  out.delivered = true;
  return out;
}

}  // namespace sefc
