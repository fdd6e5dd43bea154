#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>

namespace plci {

struct TimeoutError : std::runtime_error {
  TimeoutError() : std::runtime_error("query timed out") {}
};

// Cooperative deadline passed into the d-separation search and the oracle
// enumeration loop; both poll it at coarse intervals.
struct Deadline {
  std::optional<std::chrono::steady_clock::time_point> at;

  static Deadline none() { return {}; }
  static Deadline after(std::chrono::milliseconds ms) {
    return {std::chrono::steady_clock::now() + ms};
  }
  bool expired() const {
    return at && std::chrono::steady_clock::now() > *at;
  }
  void check() const {
    if (expired()) throw TimeoutError();
  }
};

}  // namespace plci
