#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "sefc/errors.hpp"
#include "sefc/types.hpp"
#include "sefc/vec3.hpp"

namespace sefc {

inline constexpr double kWeightSumTolerance = 1e-9;

// MED coefficients, c1 + c2 + c3 = 1.
struct MedWeights {
  double c1 = 0.4;
  double c2 = 0.3;
  double c3 = 0.3;
};

// OSF coefficients, sum = 1.
struct OsfWeights {
  double alpha = 0.25;
  double beta = 0.15;
  double gamma = 0.25;
  double delta = 0.20;
  double epsilon = 0.15;
};

enum class MobilityModel { kGaussMarkov, kRandomWaypoint };

inline const char* mobility_model_name(MobilityModel m) {
  return m == MobilityModel::kGaussMarkov ? "GAUSS_MARKOV" : "RANDOM_WAYPOINT";
}

inline MobilityModel parse_mobility_model(const std::string& s) {
  if (s == "GAUSS_MARKOV") return MobilityModel::kGaussMarkov;
  if (s == "RANDOM_WAYPOINT") return MobilityModel::kRandomWaypoint;
  throw ParseError("mobility.model: unknown value \"" + s +
                   "\" (expected GAUSS_MARKOV or RANDOM_WAYPOINT)");
}

struct MobilitySpec {
  MobilityModel model = MobilityModel::kGaussMarkov;
  double max_speed = 60.0;      // m/s
  double max_accel = 15.0;      // m/s^2
  double gm_alpha = 0.85;       // memory in [0, 1]
  double gm_mean_speed = 30.0;  // m/s
  double rwp_pause = 2.0;       // s
};

// Abstract radio: range, per-hop latency, independent loss, message sizes.
struct RadioConfig {
  double comm_range = 350.0;      // m
  double per_hop_latency = 0.002; // s
  double loss_prob = 0.05;        // in [0, 1)
  int max_retransmissions = 3;
  std::int64_t beacon_bits = 1024;
  std::int64_t data_bits = 4096;
};

// First-order radio energy: TX = e_elec*bits + e_amp*bits*d^2, RX = e_elec*bits.
struct EnergyModel {
  double e_elec = 5e-8;          // J/bit
  double e_amp = 1e-10;          // J/bit/m^2
  double idle_power = 0.05;      // W, drained every tick from alive nodes
  double initial_energy = 2000;  // J per node at spawn
};

struct TrafficSpec {
  int flows = 10;
  double packet_interval = 1.0;     // s, >= tick_dt
  std::int64_t payload_bits = 4096; // carried as packet metadata
};

// Ground station: fixed position, limited range, deterministic duty pattern.
struct GsConfig {
  Vec3 position{750.0, 750.0, 0.0};
  double range = 600.0;          // m
  double duty_cycle = 0.5;       // fraction of maintenance checks serviced
  double check_interval = 10.0;  // s
};

struct BaselineParams {
  double safe_distance = 30.0;   // m, PICA link-safety floor
  double pica_w_mobility = 0.5;
  double pica_w_energy = 0.5;
  double osca_w_degree = 0.5;
  double osca_w_energy = 0.5;
};

// Frozen parameters of one run. Immutable after validation.
struct SimConfig {
  int n_uavs = 40;
  Box3 arena;
  double sim_duration = 300.0;  // s
  double tick_dt = 0.1;         // s
  MedWeights med_weights;
  OsfWeights osf_weights;
  double med_threshold = 0.5;             // in (0, 1]
  double direction_cos_threshold = 0.707; // in [-1, 1]
  int degree_ref = 10;                    // degree normalizer
  double clustering_interval = 5.0;       // s
  MobilitySpec mobility;
  RadioConfig radio;
  EnergyModel energy_model;
  TrafficSpec traffic;
  GsConfig gs;
  BaselineParams baselines;
  double handover_margin = 0.10;
  double recluster_threshold = 0.30;
  Algorithm algorithm = Algorithm::kSefc;
  std::uint64_t seed = 1;

  std::int64_t total_ticks() const { return std::llround(sim_duration / tick_dt); }
  std::int64_t ticks_per(double interval_s) const {
    const std::int64_t k = std::llround(interval_s / tick_dt);
    return k < 1 ? 1 : k;
  }
};

namespace detail {

inline std::string fmt_value(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline void require(bool ok, const std::string& field, const std::string& rule, double value) {
  if (!ok) throw ValidationError(field + ": " + rule + " (got " + fmt_value(value) + ")");
}

inline void require_simplex(double sum, const std::string& field) {
  if (std::fabs(sum - 1.0) > kWeightSumTolerance)
    throw ValidationError(field + ": weights must sum to 1 (got " + fmt_value(sum) + ")");
}

}  // namespace detail

// Checks every config invariant; returns the config unchanged when all hold.
// Idempotent. Throws ValidationError naming the offending field and value.
inline SimConfig validate_config(const SimConfig& c) {
  using detail::require;
  using detail::require_simplex;

  if (c.n_uavs < 1)
    throw ValidationError("n_uavs: at least one UAV required (got " +
                          std::to_string(c.n_uavs) + ")");
  require(c.arena.max.x > c.arena.min.x && c.arena.max.y > c.arena.min.y &&
              c.arena.max.z > c.arena.min.z,
          "arena", "max must exceed min on every axis", 0);
  require(all_finite(c.arena.min) && all_finite(c.arena.max), "arena", "bounds must be finite", 0);
  require(c.sim_duration >= 0, "sim_duration", "must be >= 0", c.sim_duration);
  require(c.tick_dt > 0, "tick_dt", "must be > 0", c.tick_dt);
  require(c.clustering_interval >= c.tick_dt, "clustering_interval", "must be >= tick_dt",
          c.clustering_interval);

  require(c.med_weights.c1 >= 0 && c.med_weights.c2 >= 0 && c.med_weights.c3 >= 0, "med_weights",
          "coefficients must be >= 0", 0);
  require_simplex(c.med_weights.c1 + c.med_weights.c2 + c.med_weights.c3, "med_weights");
  const OsfWeights& w = c.osf_weights;
  require(w.alpha >= 0 && w.beta >= 0 && w.gamma >= 0 && w.delta >= 0 && w.epsilon >= 0,
          "osf_weights", "coefficients must be >= 0", 0);
  require_simplex(w.alpha + w.beta + w.gamma + w.delta + w.epsilon, "osf_weights");

  require(c.med_threshold > 0 && c.med_threshold <= 1, "med_threshold", "must be in (0, 1]",
          c.med_threshold);
  require(c.direction_cos_threshold >= -1 && c.direction_cos_threshold <= 1,
          "direction_cos_threshold", "must be in [-1, 1]", c.direction_cos_threshold);
  require(c.degree_ref >= 1, "degree_ref", "must be >= 1", c.degree_ref);

  require(c.mobility.max_speed > 0, "mobility.max_speed", "must be > 0", c.mobility.max_speed);
  require(c.mobility.max_accel > 0, "mobility.max_accel", "must be > 0", c.mobility.max_accel);
  require(c.mobility.gm_alpha >= 0 && c.mobility.gm_alpha <= 1, "mobility.gm_alpha",
          "must be in [0, 1]", c.mobility.gm_alpha);
  require(c.mobility.gm_mean_speed >= 0, "mobility.gm_mean_speed", "must be >= 0",
          c.mobility.gm_mean_speed);
  require(c.mobility.rwp_pause >= 0, "mobility.rwp_pause", "must be >= 0", c.mobility.rwp_pause);

  require(c.radio.comm_range > 0, "comm_range", "must be > 0", c.radio.comm_range);
  require(c.radio.per_hop_latency >= 0, "radio.per_hop_latency", "must be >= 0",
          c.radio.per_hop_latency);
  require(c.radio.loss_prob >= 0 && c.radio.loss_prob < 1, "radio.loss_prob", "must be in [0, 1)",
          c.radio.loss_prob);
  require(c.radio.max_retransmissions >= 0, "radio.max_retransmissions", "must be >= 0",
          c.radio.max_retransmissions);
  require(c.radio.beacon_bits >= 0, "radio.beacon_bits", "must be >= 0",
          static_cast<double>(c.radio.beacon_bits));
  require(c.radio.data_bits >= 0, "radio.data_bits", "must be >= 0",
          static_cast<double>(c.radio.data_bits));

  require(c.energy_model.e_elec >= 0, "energy_model.e_elec", "must be >= 0", c.energy_model.e_elec);
  require(c.energy_model.e_amp >= 0, "energy_model.e_amp", "must be >= 0", c.energy_model.e_amp);
  require(c.energy_model.idle_power >= 0, "energy_model.idle_power", "must be >= 0",
          c.energy_model.idle_power);
  require(c.energy_model.initial_energy > 0, "energy_model.initial_energy", "must be > 0",
          c.energy_model.initial_energy);

  require(c.traffic.flows >= 0, "traffic.flows", "must be >= 0", c.traffic.flows);
  require(c.traffic.packet_interval >= c.tick_dt, "traffic.packet_interval", "must be >= tick_dt",
          c.traffic.packet_interval);
  require(c.traffic.payload_bits >= 0, "traffic.payload_bits", "must be >= 0",
          static_cast<double>(c.traffic.payload_bits));

  require(c.gs.range > 0, "gs.range", "must be > 0", c.gs.range);
  require(c.gs.duty_cycle >= 0 && c.gs.duty_cycle <= 1, "gs.duty_cycle", "must be in [0, 1]",
          c.gs.duty_cycle);
  require(c.gs.check_interval >= c.tick_dt, "gs.check_interval", "must be >= tick_dt",
          c.gs.check_interval);
  require(all_finite(c.gs.position), "gs.position", "must be finite", 0);

  require(c.handover_margin >= 0, "handover_margin", "must be >= 0", c.handover_margin);
  require(c.recluster_threshold >= 0, "recluster_threshold", "must be >= 0",
          c.recluster_threshold);

  require(c.baselines.safe_distance >= 0, "baselines.safe_distance", "must be >= 0",
          c.baselines.safe_distance);
  require(c.baselines.pica_w_mobility >= 0 && c.baselines.pica_w_energy >= 0, "baselines",
          "PICA weights must be >= 0", 0);
  require_simplex(c.baselines.pica_w_mobility + c.baselines.pica_w_energy, "baselines.pica_w");
  require(c.baselines.osca_w_degree >= 0 && c.baselines.osca_w_energy >= 0, "baselines",
          "OSCA weights must be >= 0", 0);
  require_simplex(c.baselines.osca_w_degree + c.baselines.osca_w_energy, "baselines.osca_w");

  return c;
}

inline SimConfig default_config() { return SimConfig{}; }

}  // namespace sefc
