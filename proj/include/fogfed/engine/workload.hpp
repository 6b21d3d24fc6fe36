#ifndef FOGFED_ENGINE_WORKLOAD_HPP_
#define FOGFED_ENGINE_WORKLOAD_HPP_

#include <limits>
#include <random>
#include <vector>

namespace fogfed {

// Exponential gap with the given rate; infinite when the rate is zero.
template <typename Rng>
double next_interarrival(double rate, Rng& rng)
{
  if (!(rate > 0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  std::exponential_distribution<double> gap(rate);
  return gap(rng);
}

// Arrival instants in (0, horizon] for a Poisson source.
template <typename Rng>
std::vector<double> generate_arrivals(double rate, double horizon, Rng& rng)
{
  std::vector<double> times;
  for (double t = next_interarrival(rate, rng); t <= horizon; t += next_interarrival(rate, rng)) {
    times.push_back(t);
  }
  return times;
}

enum class Delivery { delivered, dropped };

template <typename Rng>
Delivery apply_packet_loss(Rng& rng, double per)
{
  std::bernoulli_distribution lost(per);
  return lost(rng) ? Delivery::dropped : Delivery::delivered;
}

struct SizeClass
{
  double size = 1.0;
  double weight = 1.0;

  friend bool operator==(const SizeClass&, const SizeClass&) = default;
};

}  // namespace fogfed

#endif  // FOGFED_ENGINE_WORKLOAD_HPP_
