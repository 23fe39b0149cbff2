// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

#include "pocmt/types.hpp"

namespace pocmt {

/// Two-timescale clock: consensus epochs grouped into coarser human windows
/// of `epochs_per_window` epochs each. A partial final window is allowed;
/// its boundary update fires at the last epoch of the horizon.
class Timeline {
 public:
  Timeline(std::int64_t epochs_per_window, std::int64_t horizon_epochs)
      : epochs_per_window_(epochs_per_window), horizon_epochs_(horizon_epochs) {
    if (epochs_per_window < 1) {
      throw std::invalid_argument("timeline: epochs_per_window must be >= 1");
    }
    if (horizon_epochs < 1) {
      throw std::invalid_argument("timeline: horizon_epochs must be >= 1");
    }
  }

  Window window_of(Epoch t) const {
    check(t);
    return t / epochs_per_window_;
  }

  /// True iff epoch t+1 starts a new window; window-level updates fire after
  /// processing epoch t.
  bool is_window_boundary(Epoch t) const {
    check(t);
    return (t + 1) % epochs_per_window_ == 0;
  }

  /// is_window_boundary plus the partial final window at the horizon edge.
  bool fires_window_update(Epoch t) const {
    return is_window_boundary(t) || t == horizon_epochs_ - 1;
  }

  Epoch window_start(Window d) const { return d * epochs_per_window_; }

  std::int64_t window_count() const {
    return (horizon_epochs_ + epochs_per_window_ - 1) / epochs_per_window_;
  }

  std::int64_t epochs_per_window() const { return epochs_per_window_; }
  std::int64_t horizon_epochs() const { return horizon_epochs_; }

 private:
  void check(Epoch t) const {
    if (t < 0 || t >= horizon_epochs_) {
      throw std::out_of_range("timeline: epoch outside horizon");
    }
  }

  std::int64_t epochs_per_window_;
  std::int64_t horizon_epochs_;
};

}  // namespace pocmt
