#ifndef FOGFED_MOBILITY_HPP_
#define FOGFED_MOBILITY_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <type_traits>
#include <variant>

#include "fogfed/geometry.hpp"

namespace fogfed {

// Constant velocity; reflects off arena walls.
struct LinearMotion
{
  Velocity velocity;
};

struct CircularMotion
{
  Position center;
  double radius = 1.0;            // m
  double angular_velocity = 0.0;  // rad/s
};

// Travel to a uniformly drawn waypoint at a uniformly drawn speed, pause, repeat.
struct RandomWaypoint
{
  double min_speed = 1.0;  // m/s
  double max_speed = 5.0;  // m/s
  double pause = 10.0;     // s
};

using MobilityModel = std::variant<LinearMotion, CircularMotion, RandomWaypoint>;

struct MobilityState
{
  Position position;
  Velocity velocity;       // linear: current heading after reflections
  double angle = 0.0;      // circular: phase in radians
  Position waypoint;       // random waypoint: current target
  double speed = 0.0;      // random waypoint: current leg speed
  double pause_left = 0.0; // random waypoint: remaining pause
  bool has_waypoint = false;
};

inline bool valid_model(const MobilityModel& model)
{
  return std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, LinearMotion>) {
          return std::isfinite(m.velocity.vx) && std::isfinite(m.velocity.vy);
        } else if constexpr (std::is_same_v<M, CircularMotion>) {
          return m.radius > 0.0 && std::isfinite(m.angular_velocity);
        } else {
          return m.min_speed >= 0.0 && m.max_speed >= m.min_speed && m.pause >= 0.0;
        }
      },
      model);
}

namespace detail {

// Folds a coordinate back into [0, length] as if reflected by walls at 0 and length.
// Returns true when the number of reflections is odd (heading component flips).
inline bool reflect_into(double& coord, double length)
{
  const double k = std::floor(coord / length);
  const double r = coord - k * length;
  const bool odd = std::fmod(std::abs(k), 2.0) == 1.0;
  coord = odd ? length - r : r;
  coord = std::clamp(coord, 0.0, length);
  return odd;
}

}  // namespace detail

// Initial state for a device starting at `start`. Circular motion snaps onto its circle.
inline MobilityState initial_state(const MobilityModel& model, Position start)
{
  MobilityState s;
  s.position = start;
  if (const auto* lin = std::get_if<LinearMotion>(&model)) {
    s.velocity = lin->velocity;
  } else if (const auto* circ = std::get_if<CircularMotion>(&model)) {
    s.angle = std::atan2(start.y - circ->center.y, start.x - circ->center.x);
    s.position = {circ->center.x + circ->radius * std::cos(s.angle),
                  circ->center.y + circ->radius * std::sin(s.angle)};
  }
  return s;
}

template <typename Rng>
MobilityState advance(MobilityState state, const MobilityModel& model, double dt, const Arena& arena, Rng& rng)
{
  if (!(dt > 0.0)) {
    return state;
  }
  if (std::holds_alternative<LinearMotion>(model)) {
    double x = state.position.x + state.velocity.vx * dt;
    double y = state.position.y + state.velocity.vy * dt;
    if (detail::reflect_into(x, arena.size)) {
      state.velocity.vx = -state.velocity.vx;
    }
    if (detail::reflect_into(y, arena.size)) {
      state.velocity.vy = -state.velocity.vy;
    }
    state.position = {x, y};
    return state;
  }
  if (const auto* circ = std::get_if<CircularMotion>(&model)) {
    state.angle = std::remainder(state.angle + circ->angular_velocity * dt, 2.0 * std::numbers::pi);
    state.position = {circ->center.x + circ->radius * std::cos(state.angle),
                      circ->center.y + circ->radius * std::sin(state.angle)};
    return state;
  }

  const auto& rwp = std::get<RandomWaypoint>(model);
  std::uniform_real_distribution<double> coord(0.0, arena.size);
  std::uniform_real_distribution<double> leg_speed(rwp.min_speed, rwp.max_speed);
  double remaining = dt;
  // Each pass either exhausts `remaining` or finishes a pause or leg; bounded for zero-length legs.
  for (int guard = 0; remaining > 0.0 && guard < 64; ++guard) {
    if (state.pause_left > 0.0) {
      const double used = std::min(state.pause_left, remaining);
      state.pause_left -= used;
      remaining -= used;
      continue;
    }
    if (!state.has_waypoint) {
      state.waypoint = {coord(rng), coord(rng)};
      state.speed = leg_speed(rng);
      state.has_waypoint = true;
    }
    if (state.speed <= 0.0) {
      break;
    }
    const double gap = distance(state.position, state.waypoint);
    const double reach = state.speed * remaining;
    if (reach >= gap) {
      state.position = state.waypoint;
      remaining -= gap / state.speed;
      state.has_waypoint = false;
      state.pause_left = rwp.pause;
    } else {
      const double f = reach / gap;
      state.position = {std::clamp(state.position.x + (state.waypoint.x - state.position.x) * f, 0.0, arena.size),
                        std::clamp(state.position.y + (state.waypoint.y - state.position.y) * f, 0.0, arena.size)};
      remaining = 0.0;
    }
  }
  return state;
}

}  // namespace fogfed

#endif  // FOGFED_MOBILITY_HPP_
