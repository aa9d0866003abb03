#pragma once

#include <cmath>
#include <vector>

#include "sefc/config.hpp"
#include "sefc/errors.hpp"
#include "sefc/rng.hpp"
#include "sefc/types.hpp"

namespace sefc {

// Model memory the engine keeps per node. GAUSS_MARKOV ignores it; the random
// waypoint model stores the leg target and the remaining pause.
struct MobilityMemory {
  Vec3 waypoint;
  double leg_speed = 0;
  double pause_left = 0;
  bool has_waypoint = false;
};

// (v_next - v_prev) / dt. Supplies the acceleration carried in beacons.
inline Vec3 derive_acceleration(const Vec3& v_prev, const Vec3& v_next, double dt) {
  if (dt <= 0) throw Error("derive_acceleration: degenerate step, dt must be > 0");
  return (v_next - v_prev) / dt;
}

namespace detail {

// Folds one coordinate into [lo, hi] by mirroring; flips the matching velocity
// component once per odd number of wall crossings.
inline void reflect_axis(double& p, double& v, double& v_prev, double lo, double hi) {
  const double span = hi - lo;
  double rel = p - lo;
  const double period = 2.0 * span;
  double m = std::fmod(rel, period);
  if (m < 0) m += period;
  if (m <= span) {
    p = lo + m;
  } else {
    p = lo + (period - m);
    v = -v;
    v_prev = -v_prev;
  }
}

// Specular reflection at every arena face. v_prev is reflected identically so
// the reported acceleration stays bounded across a bounce.
inline void reflect_into_box(Vec3& pos, Vec3& vel, Vec3& v_prev, const Box3& box) {
  reflect_axis(pos.x, vel.x, v_prev.x, box.min.x, box.max.x);
  reflect_axis(pos.y, vel.y, v_prev.y, box.min.y, box.max.y);
  reflect_axis(pos.z, vel.z, v_prev.z, box.min.z, box.max.z);
}

inline Vec3 gauss_markov_velocity(const Vec3& v, const MobilitySpec& spec, RngStream& rng) {
  // Mean velocity points along the current heading, so speed reverts to
  // gm_mean_speed while the heading diffuses. Draw order: heading (only for a
  // standstill node), then the three noise components.
  Vec3 heading;
  if (norm(v) < 1e-12) {
    heading = normalized(rng.normal3());
  } else {
    heading = v / norm(v);
  }
  const Vec3 noise = rng.normal3();
  const double a = spec.gm_alpha;
  const double sigma = spec.gm_mean_speed * 0.5;
  return v * a + heading * ((1.0 - a) * spec.gm_mean_speed) +
         noise * (sigma * std::sqrt(std::max(0.0, 1.0 - a * a)));
}

inline Vec3 waypoint_velocity(const UavState& s, const MobilitySpec& spec, const Box3& arena,
                              double dt, RngStream& rng, MobilityMemory& mem) {
  if (mem.pause_left > 0) {
    mem.pause_left = std::max(0.0, mem.pause_left - dt);
    return {0, 0, 0};
  }
  if (!mem.has_waypoint) {
    mem.waypoint = {rng.uniform(arena.min.x, arena.max.x), rng.uniform(arena.min.y, arena.max.y),
                    rng.uniform(arena.min.z, arena.max.z)};
    mem.leg_speed = rng.uniform(0.1, 1.0) * spec.max_speed;
    mem.has_waypoint = true;
  }
  const Vec3 to_wp = mem.waypoint - s.position;
  const double dist = norm(to_wp);
  if (dist <= std::max(1.0, mem.leg_speed * dt)) {
    mem.has_waypoint = false;
    mem.pause_left = spec.rwp_pause;
    return {0, 0, 0};
  }
  return to_wp * (mem.leg_speed / dist);
}

}  // namespace detail

// Advances one node by dt. Honors the speed cap, the acceleration cap (applied
// to the velocity innovation) and arena containment via specular reflection.
// Pure in (state, spec, arena, dt, rng stream, memory); dt == 0 is a no-op.
inline UavState step_kinematics(const UavState& state, const MobilitySpec& spec, const Box3& arena,
                                double dt, RngStream& rng, MobilityMemory* memory = nullptr) {
  if (dt == 0) return state;
  if (dt < 0) throw Error("step_kinematics: dt must be >= 0");

  Vec3 target;
  if (spec.model == MobilityModel::kGaussMarkov) {
    target = detail::gauss_markov_velocity(state.velocity, spec, rng);
  } else {
    static MobilityMemory scratch;  // callers without memory get stateless legs
    MobilityMemory& mem = memory ? *memory : scratch;
    target = detail::waypoint_velocity(state, spec, arena, dt, rng, mem);
  }

  const Vec3 innovation = clamp_norm(target - state.velocity, spec.max_accel * dt);
  Vec3 vel = clamp_norm(state.velocity + innovation, spec.max_speed);
  Vec3 pos = state.position + vel * dt;
  Vec3 v_prev = state.velocity;
  detail::reflect_into_box(pos, vel, v_prev, arena);

  UavState out = state;
  out.position = pos;
  out.velocity = vel;
  out.acceleration = derive_acceleration(v_prev, vel, dt);
  return out;
}

// Uniform placement over the arena; Gauss-Markov nodes start at the mean speed
// along a random heading, waypoint nodes start at rest. One stream per node.
inline std::vector<UavState> spawn_states(const SimConfig& cfg, std::vector<RngStream>& streams) {
  std::vector<UavState> states;
  states.reserve(static_cast<std::size_t>(cfg.n_uavs));
  streams.clear();
  streams.reserve(static_cast<std::size_t>(cfg.n_uavs));
  for (int i = 0; i < cfg.n_uavs; ++i) {
    streams.emplace_back(derive_seed(cfg.seed, StreamDomain::kMobility,
                                     static_cast<std::uint64_t>(i)));
    RngStream& rng = streams.back();
    UavState s;
    s.id = i;
    s.position = {rng.uniform(cfg.arena.min.x, cfg.arena.max.x),
                  rng.uniform(cfg.arena.min.y, cfg.arena.max.y),
                  rng.uniform(cfg.arena.min.z, cfg.arena.max.z)};
    if (cfg.mobility.model == MobilityModel::kGaussMarkov) {
      const Vec3 dir = normalized(rng.normal3());
      s.velocity = dir * std::min(cfg.mobility.gm_mean_speed, cfg.mobility.max_speed);
    }
    s.energy = cfg.energy_model.initial_energy;
    states.push_back(s);
  }
  return states;
}

}  // namespace sefc
