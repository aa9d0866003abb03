#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sefc/comms.hpp"
#include "sefc/config.hpp"
#include "sefc/types.hpp"

namespace sefc {

inline constexpr double kOsfTieMargin = 1e-12;

// Knobs of one clustering round.
struct ClusteringParams {
  MedWeights med_weights;
  OsfWeights osf_weights;
  double med_threshold = 0.5;
  double direction_cos_threshold = 0.707;
  int degree_ref = 10;
};

inline ClusteringParams clustering_params(const SimConfig& cfg) {
  return {cfg.med_weights, cfg.osf_weights, cfg.med_threshold, cfg.direction_cos_threshold,
          cfg.degree_ref};
}

// Beacon snapshot of node i's one-hop neighborhood.
inline std::vector<NeighborRecord> neighbor_records(const std::vector<UavState>& states,
                                                    const Adjacency& adj, int i) {
  std::vector<NeighborRecord> out;
  const UavState& self = states[static_cast<std::size_t>(i)];
  for (int j : adj.neighbors[static_cast<std::size_t>(i)]) {
    const UavState& s = states[static_cast<std::size_t>(j)];
    NeighborRecord r;
    r.neighbor_id = s.id;
    r.position = s.position;
    r.velocity = s.velocity;
    r.acceleration = s.acceleration;
    r.energy = s.energy;
    r.distance = distance(self.position, s.position);
    out.push_back(r);
  }
  return out;
}

// Normalized speed, acceleration and energy-surplus differences against each
// neighbor. Normalizers are the per-node maxima over the whole neighbor list;
// a zero normalizer makes every corresponding ratio 0. Energy counts only
// neighbors with more residual energy (negative surplus clamps to 0).
inline std::map<NodeId, PairwiseDiffs> pairwise_diffs(const UavState& self,
                                                      const std::vector<NeighborRecord>& neighbors) {
  const double s_i = norm(self.velocity);
  const double a_i = norm(self.acceleration);

  double sd_max = 0, ad_max = 0, ed_max = 0;
  for (const auto& n : neighbors) {
    sd_max = std::max(sd_max, std::fabs(s_i - norm(n.velocity)));
    ad_max = std::max(ad_max, std::fabs(a_i - norm(n.acceleration)));
    ed_max = std::max(ed_max, std::max(0.0, n.energy - self.energy));
  }

  std::map<NodeId, PairwiseDiffs> out;
  for (const auto& n : neighbors) {
    PairwiseDiffs d;
    d.sd = sd_max > 0 ? std::fabs(s_i - norm(n.velocity)) / sd_max : 0.0;
    d.ad = ad_max > 0 ? std::fabs(a_i - norm(n.acceleration)) / ad_max : 0.0;
    d.ed = ed_max > 0 ? std::max(0.0, n.energy - self.energy) / ed_max : 0.0;
    out[n.neighbor_id] = d;
  }
  return out;
}

// MED(i,j) = c1*SD + c2*AD + c3*(1 - ED). Low MED means a similar, well
// provisioned neighbor.
inline double med(const PairwiseDiffs& d, const MedWeights& w) {
  return w.c1 * d.sd + w.c2 * d.ad + w.c3 * (1.0 - d.ed);
}

// Keeps neighbors with MED strictly below the threshold that also fly within
// the direction cone. A standstill node (zero velocity) on either side passes
// the direction test.
inline std::vector<NodeId> similarity_set(const UavState& self,
                                          const std::vector<NeighborRecord>& neighbors,
                                          const std::map<NodeId, double>& meds,
                                          double med_threshold, double direction_cos_threshold) {
  std::vector<NodeId> out;
  const double v_self = norm(self.velocity);
  for (const auto& n : neighbors) {
    if (meds.at(n.neighbor_id) >= med_threshold) continue;
    const double v_nbr = norm(n.velocity);
    if (v_self >= 1e-12 && v_nbr >= 1e-12) {
      const double cos = dot(self.velocity, n.velocity) / (v_self * v_nbr);
      if (cos < direction_cos_threshold) continue;
    }
    out.push_back(n.neighbor_id);
  }
  return out;
}

// Overall stability factor over the retained similarity set: average kinematic
// similarity, average energy surplus, spatial centrality and clamped degree.
// Empty set scores 0.
inline double osf(const std::vector<NodeId>& retained, const std::map<NodeId, PairwiseDiffs>& diffs,
                  const std::map<NodeId, double>& distances, const OsfWeights& w, int degree_ref) {
  const double deg = static_cast<double>(retained.size());
  if (retained.empty()) return 0.0;

  double d_max = 0;
  for (NodeId j : retained) d_max = std::max(d_max, distances.at(j));

  double sd_sum = 0, ad_sum = 0, ed_sum = 0, d_sum = 0;
  for (NodeId j : retained) {
    const PairwiseDiffs& d = diffs.at(j);
    sd_sum += 1.0 - d.sd;
    ad_sum += 1.0 - d.ad;
    ed_sum += d.ed;
    d_sum += 1.0 - (d_max > 0 ? distances.at(j) / d_max : 0.0);
  }
  const double degree_term = std::min(deg / static_cast<double>(degree_ref), 1.0);
  return w.alpha * (sd_sum / deg) + w.beta * (ad_sum / deg) + w.gamma * (ed_sum / deg) +
         w.delta * (d_sum / deg) + w.epsilon * degree_term;
}

// Outcome of the parent-selection step.
struct ParentDecision {
  bool self_ch = true;
  NodeId parent = kNoNode;
};

// Picks the similarity-set neighbor with the highest OSF strictly above the
// node's own (tie between candidates -> lower id). No such neighbor: the node
// elects itself cluster head.
inline ParentDecision select_parent(double self_osf, const std::map<NodeId, double>& candidates) {
  ParentDecision out;
  double best = self_osf + kOsfTieMargin;
  for (const auto& [id, cand_osf] : candidates) {
    if (cand_osf > best) {  // id-ascending iteration makes ties keep the lower id
      best = cand_osf;
      out.self_ch = false;
      out.parent = id;
    }
  }
  return out;
}

// Backup head: the member with the highest OSF (ties -> lower id), or nothing
// for an empty member set.
inline std::optional<NodeId> elect_bkch(const std::vector<NodeId>& one_hop_members,
                                        const std::map<NodeId, double>& osfs) {
  std::optional<NodeId> best;
  for (NodeId m : one_hop_members) {
    if (!best || osfs.at(m) > osfs.at(*best) ||
        (osfs.at(m) == osfs.at(*best) && m < *best)) {
      best = m;
    }
  }
  return best;
}

// Per-node intermediate products of one round.
struct NodeClusterInfo {
  std::map<NodeId, PairwiseDiffs> diffs;
  std::map<NodeId, double> meds;
  std::map<NodeId, double> distances;
  std::vector<NodeId> retained;
  double osf = 0;
};

inline std::vector<NodeClusterInfo> compute_node_info(const std::vector<UavState>& states,
                                                      const Adjacency& adj,
                                                      const ClusteringParams& p) {
  std::vector<NodeClusterInfo> info(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const UavState& self = states[i];
    const auto records = neighbor_records(states, adj, static_cast<int>(i));
    NodeClusterInfo& ni = info[i];
    ni.diffs = pairwise_diffs(self, records);
    for (const auto& r : records) {
      ni.meds[r.neighbor_id] = med(ni.diffs.at(r.neighbor_id), p.med_weights);
      ni.distances[r.neighbor_id] = r.distance;
    }
    ni.retained = similarity_set(self, records, ni.meds, p.med_threshold,
                                 p.direction_cos_threshold);
    ni.osf = osf(ni.retained, ni.diffs, ni.distances, p.osf_weights, p.degree_ref);
  }
  return info;
}

// One full clustering round: beacon snapshot, MED filtering, OSF, stability
// broadcast, parent selection, roles and backup heads.
inline ClusterForest form_clusters(const std::vector<UavState>& states, const Adjacency& adj,
                                   const ClusteringParams& p,
                                   std::vector<NodeClusterInfo>* info_out = nullptr) {
  const std::size_t n = states.size();
  const auto info = compute_node_info(states, adj, p);

  std::map<NodeId, double> osf_by_id;
  std::map<NodeId, std::size_t> index_of;
  for (std::size_t i = 0; i < n; ++i) {
    osf_by_id[states[i].id] = info[i].osf;
    index_of[states[i].id] = i;
  }

  ClusterForest forest;
  for (std::size_t i = 0; i < n; ++i) {
    std::map<NodeId, double> candidates;
    for (NodeId j : info[i].retained) candidates[j] = osf_by_id.at(j);
    const ParentDecision pd = select_parent(info[i].osf, candidates);
    const NodeId id = states[i].id;
    if (pd.self_ch) {
      forest.role[id] = Role::kCh;
    } else {
      forest.role[id] = Role::kCm;
      forest.parent[id] = pd.parent;
    }
  }

  // Roots, memoized along each strictly-increasing-OSF chain.
  for (const auto& [id, r] : forest.role) {
    if (forest.cluster_of.count(id)) continue;
    std::vector<NodeId> chain;
    NodeId cur = id;
    while (forest.role.at(cur) != Role::kCh && forest.cluster_of.count(cur) == 0) {
      chain.push_back(cur);
      cur = forest.parent.at(cur);
    }
    const NodeId root = forest.role.at(cur) == Role::kCh ? cur : forest.cluster_of.at(cur);
    forest.cluster_of[cur] = root;
    for (NodeId c : chain) forest.cluster_of[c] = root;
  }

  // Backup heads among each CH's one-hop in-cluster members.
  for (const auto& [id, r] : forest.role) {
    if (r != Role::kCh) continue;
    const std::size_t ci = index_of.at(id);
    std::vector<NodeId> members;
    for (int j : adj.neighbors[ci]) {
      const NodeId jid = states[static_cast<std::size_t>(j)].id;
      if (forest.cluster_of.at(jid) == id) members.push_back(jid);
    }
    if (const auto b = elect_bkch(members, osf_by_id)) {
      forest.bkch_of[id] = *b;
    }
  }
  for (const auto& [ch, b] : forest.bkch_of) forest.role[b] = Role::kBkch;

  if (info_out) *info_out = info;
  return forest;
}

// Structural-invariant check; returns one message per violation. OSF
// monotonicity along parent chains is only enforceable right after formation,
// so it runs only when an OSF table is supplied.
inline std::vector<std::string> forest_violations(const ClusterForest& f,
                                                  const std::vector<UavState>& states,
                                                  const Adjacency& adj,
                                                  const std::map<NodeId, double>* osf_by_id = nullptr) {
  std::vector<std::string> out;
  std::map<NodeId, std::size_t> index_of;
  for (std::size_t i = 0; i < states.size(); ++i) index_of[states[i].id] = i;
  auto complain = [&](const std::string& msg) { out.push_back(msg); };

  const std::size_t n = f.role.size();
  for (const auto& [id, r] : f.role) {
    const bool has_parent = f.parent.count(id) != 0;
    if (r == Role::kCh && has_parent) complain("CH " + std::to_string(id) + " has a parent");
    if (r != Role::kCh && !has_parent) complain("non-CH " + std::to_string(id) + " lacks a parent");

    // Walk to the root; must terminate at a CH in <= n steps.
    NodeId cur = id;
    std::size_t steps = 0;
    while (f.role.count(cur) && f.role.at(cur) != Role::kCh && steps <= n) {
      const auto it = f.parent.find(cur);
      if (it == f.parent.end()) break;
      if (osf_by_id) {
        const double po = osf_by_id->at(it->second);
        const double co = osf_by_id->at(cur);
        if (!(po > co))
          complain("parent edge " + std::to_string(cur) + "->" + std::to_string(it->second) +
                   " does not increase OSF");
      }
      cur = it->second;
      ++steps;
    }
    if (steps > n || f.role.count(cur) == 0 || f.role.at(cur) != Role::kCh) {
      complain("parent chain from " + std::to_string(id) + " does not reach a CH");
    } else if (f.cluster_of.count(id) == 0 || f.cluster_of.at(id) != cur) {
      complain("cluster_of " + std::to_string(id) + " is not its chain root");
    }
  }

  for (const auto& [ch, b] : f.bkch_of) {
    if (!f.is_ch(ch)) complain("bkch_of key " + std::to_string(ch) + " is not a CH");
    if (f.role.count(b) == 0 || f.role.at(b) != Role::kBkch)
      complain("backup " + std::to_string(b) + " does not hold the BKCH role");
    if (f.cluster_of.count(b) == 0 || f.cluster_of.at(b) != ch)
      complain("backup " + std::to_string(b) + " is outside cluster " + std::to_string(ch));
    if (index_of.count(ch) && index_of.count(b) &&
        !adj.adjacent(static_cast<int>(index_of.at(ch)), static_cast<int>(index_of.at(b))))
      complain("backup " + std::to_string(b) + " is not one hop from CH " + std::to_string(ch));
  }
  for (const auto& [id, r] : f.role) {
    if (r != Role::kBkch) continue;
    const NodeId ch = f.cluster_of.count(id) ? f.cluster_of.at(id) : kNoNode;
    if (ch == kNoNode || f.bkch_of.count(ch) == 0 || f.bkch_of.at(ch) != id)
      complain("BKCH role on " + std::to_string(id) + " without a matching bkch_of entry");
  }
  return out;
}

}  // namespace sefc
