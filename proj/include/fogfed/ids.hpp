#ifndef FOGFED_IDS_HPP_
#define FOGFED_IDS_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace fogfed {

// Typed integer identifier. Ids of different tags do not convert into each other.
template <typename Tag>
struct StrongId
{
  std::uint32_t value = 0;

  constexpr StrongId() = default;
  constexpr explicit StrongId(std::uint32_t v) : value(v) {}

  constexpr auto operator<=>(const StrongId&) const = default;

  friend std::ostream& operator<<(std::ostream& os, StrongId id) { return os << id.value; }
};

struct NodeTag {};
struct LocationTag {};

// Vertex of the federation graph: device, fog node, broker, access point or cloud sink.
// All vertices share one id space.
using NodeId = StrongId<NodeTag>;
using LocationId = StrongId<LocationTag>;

}  // namespace fogfed

template <typename Tag>
struct std::hash<fogfed::StrongId<Tag>>
{
  std::size_t operator()(fogfed::StrongId<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};

#endif  // FOGFED_IDS_HPP_
