#ifndef FOGFED_ENGINE_LOAD_ESTIMATOR_HPP_
#define FOGFED_ENGINE_LOAD_ESTIMATOR_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fogfed {

// Exponentially weighted arrival-rate estimate per key (location or node index), updated
// once per fixed window from that window's arrival count.
class LoadEstimator
{
public:
  LoadEstimator(std::size_t keys, double window, double alpha)
    : window_(window), alpha_(alpha), window_end_(window), counts_(keys, 0.0), rates_(keys, 0.0)
  {
    if (!(window > 0.0)) {
      throw std::invalid_argument("LoadEstimator: window must be positive");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw std::invalid_argument("LoadEstimator: alpha must be in (0, 1]");
    }
  }

  double window() const { return window_; }
  double alpha() const { return alpha_; }
  double window_end() const { return window_end_; }

  void record(std::size_t key, double count = 1.0) { counts_.at(key) += count; }

  // Closes every window that ended at or before `now`.
  void advance_to(double now)
  {
    while (now >= window_end_) {
      for (std::size_t k = 0; k < rates_.size(); ++k) {
        const double observed = counts_[k] / window_;
        rates_[k] = alpha_ * observed + (1.0 - alpha_) * rates_[k];
        counts_[k] = 0.0;
      }
      window_end_ += window_;
    }
  }

  double rate(std::size_t key) const { return rates_.at(key); }

private:
  double window_;
  double alpha_;
  double window_end_;
  std::vector<double> counts_;
  std::vector<double> rates_;
};

inline double estimate_load(LoadEstimator& est, std::size_t key, double now)
{
  est.advance_to(now);
  return est.rate(key);
}

}  // namespace fogfed

#endif  // FOGFED_ENGINE_LOAD_ESTIMATOR_HPP_
