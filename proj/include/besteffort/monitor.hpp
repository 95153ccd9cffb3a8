#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "besteffort/goal.hpp"

namespace besteffort {

using MemoryId = std::uint32_t;

/// Deterministic tracker of the prefix information a goal depends on.
///
/// After reading the colors of a finite word w the monitor is in memory m,
/// and for every continuation ℓ:  goal(w·ℓ) == residual(m)(ℓ).
/// Every tracker is monotone, so the memory graph is acyclic apart from
/// self-loops; once a play settles in memory m its verdict is limit(m)
/// applied to the colors seen infinitely often.
class Monitor {
 public:
  std::size_t size() const { return residuals_.size(); }
  MemoryId initial() const { return 0; }
  MemoryId next(MemoryId m, Color c) const;

  const Goal& goal() const { return goal_; }
  const Goal& residual(MemoryId m) const { return residuals_[m]; }
  const Goal& limit(MemoryId m) const { return limits_[m]; }
  const std::vector<Color>& universe() const { return universe_; }

  /// Tracker contents, e.g. "first=1 ev(3)=seen count(1,2)=1".
  std::string describe(MemoryId m) const;

  /// Memories ordered so that every transition goes forward (or stays).
  std::vector<MemoryId> topological_order() const;

 private:
  friend Monitor compile_monitor(const Goal& goal, std::vector<Color> universe);

  Goal goal_ = Goal::truth(true);
  std::vector<Color> universe_;
  std::vector<Goal> trackers_;
  std::vector<std::vector<std::uint32_t>> values_;
  std::vector<std::vector<MemoryId>> next_;
  std::vector<Goal> residuals_;
  std::vector<Goal> limits_;
};

/// Product of per-atom trackers, restricted to memories reachable over
/// `universe`. first(): recorded first color; ev(): seen bit; count(c,k):
/// counter saturating at k; safe(): violated bit; the limit atoms need none.
Monitor compile_monitor(const Goal& goal, std::vector<Color> universe);

}  // namespace besteffort
