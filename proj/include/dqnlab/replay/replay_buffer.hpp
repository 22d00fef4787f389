#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dqnlab/env/environment.hpp"

namespace dqnlab::replay {

using env::Rng;
using env::Transition;

/// Fixed-capacity FIFO ring of transitions with uniform sampling (with
/// replacement).
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  void push(Transition t);

  /// n draws, each uniform over the stored transitions. Throws
  /// std::logic_error on an empty buffer.
  std::vector<Transition> sample(std::size_t n, Rng& rng) const;

  /// Slot indices for n uniform draws (oldest entry is index 0).
  std::vector<std::size_t> sample_indices(std::size_t n, Rng& rng) const;

  /// i-th oldest stored transition.
  const Transition& at(std::size_t i) const;

  /// Contents from oldest to newest.
  std::vector<Transition> contents() const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // slot of the oldest entry once full
  std::vector<Transition> items_;
};

}  // namespace dqnlab::replay
