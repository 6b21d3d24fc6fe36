#ifndef FOGFED_GEOMETRY_HPP_
#define FOGFED_GEOMETRY_HPP_

#include <cmath>

namespace fogfed {

// Planar position in meters.
struct Position
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

struct Velocity
{
  double vx = 0.0;  // m/s
  double vy = 0.0;  // m/s

  double speed() const { return std::hypot(vx, vy); }
};

// Square arena [0, size]^2.
struct Arena
{
  double size = 1000.0;

  bool contains(const Position& p) const
  {
    return std::isfinite(p.x) && std::isfinite(p.y) && p.x >= 0.0 && p.y >= 0.0 && p.x <= size && p.y <= size;
  }
};

inline double distance(const Position& a, const Position& b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace fogfed

#endif  // FOGFED_GEOMETRY_HPP_
