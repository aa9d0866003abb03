#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sefc/errors.hpp"
#include "sefc/vec3.hpp"

namespace sefc {

using NodeId = std::int64_t;
inline constexpr NodeId kNoNode = -1;

enum class Role { kCh, kCm, kBkch };

enum class Algorithm { kSefc, kPicaLite, kOscaLite };

inline const char* role_name(Role r) {
  switch (r) {
    case Role::kCh: return "CH";
    case Role::kCm: return "CM";
    case Role::kBkch: return "BKCH";
  }
  return "?";
}

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kSefc: return "SEFC";
    case Algorithm::kPicaLite: return "PICA_LITE";
    case Algorithm::kOscaLite: return "OSCA_LITE";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "SEFC") return Algorithm::kSefc;
  if (s == "PICA_LITE") return Algorithm::kPicaLite;
  if (s == "OSCA_LITE") return Algorithm::kOscaLite;
  throw ParseError("algorithm: unknown value \"" + s + "\" (expected SEFC, PICA_LITE or OSCA_LITE)");
}

// One UAV at a tick: identity, 3D kinematics and residual energy.
struct UavState {
  NodeId id = kNoNode;
  Vec3 position;      // m
  Vec3 velocity;      // m/s
  Vec3 acceleration;  // m/s^2
  double energy = 0;  // J, >= 0
};

// What a node knows about a one-hop neighbor from the advertisement round.
struct NeighborRecord {
  NodeId neighbor_id = kNoNode;
  Vec3 position;
  Vec3 velocity;
  Vec3 acceleration;
  double energy = 0;
  double distance = 0;  // m, equals the positional distance
  double osf = 0;       // filled after the stability broadcast
};

// Normalized pairwise speed/acceleration/energy differences, each in [0, 1].
struct PairwiseDiffs {
  double sd = 0;
  double ad = 0;
  double ed = 0;
};

// Parent-pointer forest produced by a clustering round. Roots are CHs; every
// other node reaches its root through the parent chain.
struct ClusterForest {
  std::map<NodeId, Role> role;
  std::map<NodeId, NodeId> parent;      // absent for CHs
  std::map<NodeId, NodeId> cluster_of;  // node -> root CH id
  std::map<NodeId, NodeId> bkch_of;     // CH -> backup id, at most one per CH

  bool operator==(const ClusterForest&) const = default;

  bool contains(NodeId id) const { return role.count(id) != 0; }
  bool is_ch(NodeId id) const {
    auto it = role.find(id);
    return it != role.end() && it->second == Role::kCh;
  }
  std::vector<NodeId> cluster_heads() const {
    std::vector<NodeId> out;
    for (const auto& [id, r] : role)
      if (r == Role::kCh) out.push_back(id);
    return out;
  }
  std::vector<NodeId> members_of(NodeId ch) const {
    std::vector<NodeId> out;
    for (const auto& [id, root] : cluster_of)
      if (root == ch && id != ch) out.push_back(id);
    return out;
  }
};

// Result of pushing one packet through the network.
struct DeliveryOutcome {
  bool delivered = false;
  double delay = 0;         // s, accumulated latency over every attempt
  int hops = 0;             // completed physical hops
  int retransmissions = 0;  // retries beyond each hop's first attempt
  std::map<NodeId, double> energy_spent;  // J per participating node
};

struct HandoverEvent {
  NodeId old_ch = kNoNode;
  NodeId new_ch = kNoNode;
  double t = 0;
};

struct ReclusterEvent {
  std::vector<NodeId> cluster_heads;  // clusters ordered for re-formation
  double t = 0;
};

// Contiguous interval a node held one role.
struct RoleTenure {
  NodeId node = kNoNode;
  Role role = Role::kCm;
  double t_start = 0;
  double t_end = 0;
};

// A node's cluster root changed. old_cluster == kNoNode for the first assignment.
struct MemberChange {
  NodeId node = kNoNode;
  NodeId old_cluster = kNoNode;
  NodeId new_cluster = kNoNode;
  double t = 0;
};

}  // namespace sefc
