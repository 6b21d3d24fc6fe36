#ifndef FOGFED_ENGINE_EVENT_QUEUE_HPP_
#define FOGFED_ENGINE_EVENT_QUEUE_HPP_

#include <cstdint>
#include <queue>
#include <string>
#include <vector>

#include "fogfed/errors.hpp"

namespace fogfed {

enum class EventKind : std::uint8_t {
  request_arrival,   // device emits a request
  service_start,     // request reaches its fog node
  service_complete,  // fog node or cloud finishes a request
  mobility_tick,
  metrics_tick,
  lease_refresh,     // load estimator window boundary
};

struct Event
{
  double time = 0.0;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::request_arrival;
  std::uint32_t subject = 0;   // device or node index, depending on kind
  std::uint64_t request = 0;   // request index where relevant
};

// Min-heap on (time, sequence). Sequence numbers are assigned on push.
class EventQueue
{
public:
  void push(double time, EventKind kind, std::uint32_t subject = 0, std::uint64_t request = 0)
  {
    if (time < now_) {
      throw EngineError("event scheduled in the past: " + std::to_string(time) + " < " + std::to_string(now_));
    }
    heap_.push(Event{time, next_seq_++, kind, subject, request});
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  const Event& top() const { return heap_.top(); }
  double now() const { return now_; }

  Event pop()
  {
    Event e = heap_.top();
    heap_.pop();
    if (e.time < now_ || (e.time == now_ && e.sequence < last_seq_at_now_)) {
      throw EngineError("event queue order corrupted");
    }
    if (e.time > now_) {
      now_ = e.time;
    }
    last_seq_at_now_ = e.sequence;
    return e;
  }

private:
  struct Later
  {
    bool operator()(const Event& a, const Event& b) const
    {
      return a.time != b.time ? a.time > b.time : a.sequence > b.sequence;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t last_seq_at_now_ = 0;
  double now_ = 0.0;
};

}  // namespace fogfed

#endif  // FOGFED_ENGINE_EVENT_QUEUE_HPP_
