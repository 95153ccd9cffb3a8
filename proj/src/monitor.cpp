#include "besteffort/monitor.hpp"

#include <algorithm>
#include <map>

namespace besteffort {

namespace {

bool is_prefix_atom(const Goal& g) {
  using K = Goal::Kind;
  return g.kind() == K::First || g.kind() == K::Ev || g.kind() == K::Safe || g.kind() == K::Count;
}

void collect_trackers(const Goal& g, std::vector<Goal>& out) {
  if (is_prefix_atom(g)) {
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    return;
  }
  if (g.is_atom()) return;
  collect_trackers(g.lhs(), out);
  if (g.kind() != Goal::Kind::Not) collect_trackers(g.rhs(), out);
}

// Tracker values: first: 0 = nothing read, c+1 = first color c;
// ev/safe: 0/1; count: number of occurrences saturated at the bound.
std::uint32_t step(const Goal& tracker, std::uint32_t value, Color c) {
  using K = Goal::Kind;
  switch (tracker.kind()) {
    case K::First: return value == 0 ? c + 1 : value;
    case K::Ev: return value || c == tracker.color();
    case K::Safe: return value || tracker.allowed().count(c) == 0;
    case K::Count: return c == tracker.color() ? std::min(value + 1, tracker.bound()) : value;
    default: return value;
  }
}

// `at_limit`: the memory never changes again, so unresolved eventualities
// failed and unresolved safety held.
Goal substitute(const Goal& g, const std::vector<Goal>& trackers, const std::vector<std::uint32_t>& values,
                bool at_limit) {
  using K = Goal::Kind;
  if (is_prefix_atom(g)) {
    const auto i = static_cast<std::size_t>(std::find(trackers.begin(), trackers.end(), g) - trackers.begin());
    const auto v = values[i];
    switch (g.kind()) {
      case K::First:
        if (v == 0) return at_limit ? Goal::truth(false) : g;
        return Goal::truth(v - 1 == g.color());
      case K::Ev:
        if (v) return Goal::truth(true);
        return at_limit ? Goal::truth(false) : g;
      case K::Safe:
        if (v) return Goal::truth(false);
        return at_limit ? Goal::truth(true) : g;
      case K::Count:
        if (v >= g.bound()) return Goal::truth(true);
        if (at_limit) return Goal::truth(false);
        return v == 0 ? g : Goal::count(g.color(), g.bound() - v);
      default: break;
    }
  }
  switch (g.kind()) {
    case K::And:
      return Goal::conj(substitute(g.lhs(), trackers, values, at_limit),
                        substitute(g.rhs(), trackers, values, at_limit));
    case K::Or:
      return Goal::disj(substitute(g.lhs(), trackers, values, at_limit),
                        substitute(g.rhs(), trackers, values, at_limit));
    case K::Not: return Goal::negate(substitute(g.operand(), trackers, values, at_limit));
    default: return g;
  }
}

}  // namespace

Monitor compile_monitor(const Goal& goal, std::vector<Color> universe) {
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

  Monitor mon;
  mon.goal_ = goal;
  mon.universe_ = universe;
  collect_trackers(goal, mon.trackers_);

  std::map<std::vector<std::uint32_t>, MemoryId> index;
  mon.values_.push_back(std::vector<std::uint32_t>(mon.trackers_.size(), 0));
  index.emplace(mon.values_.front(), 0);
  for (MemoryId m = 0; m < mon.values_.size(); ++m) {
    std::vector<MemoryId> row;
    for (auto c : universe) {
      auto vals = mon.values_[m];
      for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = step(mon.trackers_[i], vals[i], c);
      auto [it, inserted] = index.emplace(vals, static_cast<MemoryId>(mon.values_.size()));
      if (inserted) mon.values_.push_back(vals);
      row.push_back(it->second);
    }
    mon.next_.push_back(std::move(row));
  }
  for (const auto& vals : mon.values_) {
    mon.residuals_.push_back(simplify(substitute(goal, mon.trackers_, vals, false)));
    mon.limits_.push_back(simplify(substitute(goal, mon.trackers_, vals, true)));
  }
  return mon;
}

MemoryId Monitor::next(MemoryId m, Color c) const {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), c);
  if (it == universe_.end() || *it != c) throw Error("monitor: color " + std::to_string(c) + " outside universe");
  return next_[m][static_cast<std::size_t>(it - universe_.begin())];
}

std::string Monitor::describe(MemoryId m) const {
  if (trackers_.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < trackers_.size(); ++i) {
    if (i) out += ' ';
    const auto& t = trackers_[i];
    const auto v = values_[m][i];
    out += t.to_string() + "=";
    switch (t.kind()) {
      case Goal::Kind::First: out += v == 0 ? "?" : std::to_string(v - 1); break;
      case Goal::Kind::Ev: out += v ? "seen" : "unseen"; break;
      case Goal::Kind::Safe: out += v ? "violated" : "ok"; break;
      default: out += std::to_string(v); break;
    }
  }
  return out;
}

std::vector<MemoryId> Monitor::topological_order() const {
  // Tracker values only grow, so sorting by the value vector is topological.
  std::vector<MemoryId> order(size());
  for (MemoryId m = 0; m < size(); ++m) order[m] = m;
  std::sort(order.begin(), order.end(), [&](MemoryId a, MemoryId b) {
    std::uint32_t sa = 0, sb = 0;
    for (auto v : values_[a]) sa += v > 0;
    for (auto v : values_[b]) sb += v > 0;
    if (sa != sb) return sa < sb;
    return values_[a] < values_[b];
  });
  return order;
}

}  // namespace besteffort
