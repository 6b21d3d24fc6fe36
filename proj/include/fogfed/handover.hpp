#ifndef FOGFED_HANDOVER_HPP_
#define FOGFED_HANDOVER_HPP_

#include <optional>
#include <span>

#include "fogfed/topology.hpp"

namespace fogfed {

struct HandoverEvent
{
  enum class Kind { none, switched, lost };

  Kind kind = Kind::none;
  std::optional<NodeId> from;
  std::optional<NodeId> to;  // set for `switched`; `from` is empty on first attach
};

// Re-associates the device with its nearest in-range access point.
inline HandoverEvent handover(const Position& where, double radio_range, std::optional<NodeId> previous_ap,
                              std::span<const AccessPoint> aps)
{
  const auto now = nearest_access_point(where, radio_range, aps);
  if (now == previous_ap) {
    return {};
  }
  if (!now) {
    return {HandoverEvent::Kind::lost, previous_ap, std::nullopt};
  }
  return {HandoverEvent::Kind::switched, previous_ap, now};
}

inline HandoverEvent handover(const MobileDevice& d, std::optional<NodeId> previous_ap, std::span<const AccessPoint> aps)
{
  return handover(d.position, d.radio_range, previous_ap, aps);
}

}  // namespace fogfed

#endif  // FOGFED_HANDOVER_HPP_
