#ifndef FOGFED_RNG_HPP_
#define FOGFED_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace fogfed {

using Rng = std::mt19937_64;

// Splits one run seed into independent named streams. Each (name, index) pair maps to
// its own generator, so adding a consumer never shifts the draws of another.
class RngStreams
{
public:
  explicit RngStreams(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  Rng stream(std::string_view name, std::uint64_t index = 0) const
  {
    const std::uint64_t tag = fnv1a(name);
    std::seed_seq seq{lo(seed_), hi(seed_), lo(tag), hi(tag), lo(index), hi(index)};
    return Rng(seq);
  }

private:
  static std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
  static std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

  static constexpr std::uint64_t fnv1a(std::string_view s)
  {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::uint64_t seed_;
};

}  // namespace fogfed

#endif  // FOGFED_RNG_HPP_
