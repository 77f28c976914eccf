#include "aspcost/plangraph.hpp"

#include <algorithm>

#include <json.hpp>

namespace aspcost {
namespace {

bool intersects(const FluentSet& a, const FluentSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

struct ExpansionAction {
  const FluentSet* pre;
  const FluentSet* add;
  const FluentSet* del;
  FluentSet noop;  // storage for implicit no-ops
};

class MutexMatrix {
 public:
  explicit MutexMatrix(std::size_t n) : n_(n), bits_(n * n, false) {}
  bool get(std::size_t a, std::size_t b) const { return bits_[a * n_ + b]; }
  void set(std::size_t a, std::size_t b) {
    bits_[a * n_ + b] = true;
    bits_[b * n_ + a] = true;
  }
  bool operator==(const MutexMatrix& o) const { return bits_ == o.bits_; }

 private:
  std::size_t n_;
  std::vector<bool> bits_;
};

}  // namespace

PlanningGraph PlanningGraph::build(const GroundProblem& problem) {
  PlanningGraph g;
  const std::size_t nf = problem.fluent_count();
  const std::size_t na = problem.action_count();
  g.fluent_count_ = nf;
  g.fluent_level_.assign(nf, kUnreachable);
  g.action_level_.assign(na, kUnreachable);

  std::vector<ExpansionAction> acts;
  acts.reserve(na + nf);
  for (const auto& a : problem.actions()) acts.push_back({&a.pre, &a.add, &a.del, {}});
  if (!problem.has_preserving_actions()) {
    for (std::size_t f = 0; f < nf; ++f) {
      acts.push_back({nullptr, nullptr, nullptr, FluentSet{static_cast<FluentId>(f)}});
    }
    for (std::size_t i = na; i < acts.size(); ++i) {
      acts[i].pre = &acts[i].noop;
      acts[i].add = &acts[i].noop;
      acts[i].del = nullptr;
    }
  }
  static const FluentSet kEmpty;
  auto del_of = [&](std::size_t i) -> const FluentSet& { return acts[i].del ? *acts[i].del : kEmpty; };

  std::vector<bool> present(nf, false);
  for (FluentId f : problem.init()) {
    present[f] = true;
    g.fluent_level_[f] = 0;
  }
  MutexMatrix fmutex(nf);
  std::vector<std::size_t> act_level(acts.size(), kUnreachable);

  auto snapshot = [&](const MutexMatrix& m) {
    std::vector<std::uint64_t> keys;
    for (std::size_t f = 0; f < nf; ++f) {
      if (!present[f]) continue;
      for (std::size_t h = f + 1; h < nf; ++h) {
        if (present[h] && m.get(f, h)) keys.push_back(static_cast<std::uint64_t>(f) * nf + h);
      }
    }
    return keys;
  };
  g.mutex_by_level_.push_back(snapshot(fmutex));

  std::vector<std::size_t> layer_actions;
  for (std::size_t level = 0;; ++level) {
    // Actions applicable at this level.
    layer_actions.clear();
    for (std::size_t i = 0; i < acts.size(); ++i) {
      const auto& pre = *acts[i].pre;
      bool ok = std::all_of(pre.begin(), pre.end(), [&](FluentId f) { return present[f]; });
      for (std::size_t x = 0; ok && x < pre.size(); ++x) {
        for (std::size_t y = x + 1; ok && y < pre.size(); ++y) ok = !fmutex.get(pre[x], pre[y]);
      }
      if (!ok) continue;
      layer_actions.push_back(i);
      if (act_level[i] == kUnreachable) act_level[i] = level;
    }

    const std::size_t m = layer_actions.size();
    MutexMatrix amutex(m);
    for (std::size_t x = 0; x < m; ++x) {
      const auto& a = acts[layer_actions[x]];
      for (std::size_t y = x + 1; y < m; ++y) {
        const auto& b = acts[layer_actions[y]];
        bool mx = intersects(del_of(layer_actions[x]), *b.pre) ||
                  intersects(del_of(layer_actions[x]), *b.add) ||
                  intersects(del_of(layer_actions[y]), *a.pre) ||
                  intersects(del_of(layer_actions[y]), *a.add);
        for (std::size_t p = 0; !mx && p < a.pre->size(); ++p) {
          for (std::size_t q = 0; !mx && q < b.pre->size(); ++q) {
            mx = fmutex.get((*a.pre)[p], (*b.pre)[q]);
          }
        }
        if (mx) amutex.set(x, y);
      }
    }

    // Next fluent layer and its mutexes.
    std::vector<bool> next_present(nf, false);
    std::vector<std::vector<std::size_t>> producers(nf);
    for (std::size_t x = 0; x < m; ++x) {
      for (FluentId f : *acts[layer_actions[x]].add) {
        next_present[f] = true;
        producers[f].push_back(x);
      }
    }
    MutexMatrix next_mutex(nf);
    for (std::size_t f = 0; f < nf; ++f) {
      if (!next_present[f]) continue;
      for (std::size_t h = f + 1; h < nf; ++h) {
        if (!next_present[h]) continue;
        bool all_mutex = true;
        for (std::size_t a : producers[f]) {
          for (std::size_t b : producers[h]) {
            if (a == b || !amutex.get(a, b)) {
              all_mutex = false;
              break;
            }
          }
          if (!all_mutex) break;
        }
        if (all_mutex) next_mutex.set(f, h);
      }
    }

    const bool stable = next_present == present && next_mutex == fmutex;
    if (stable) {
      g.leveled_off_ = level;
      // Persistent relations at the fixpoint.
      for (std::size_t f = 0; f < nf; ++f) {
        for (std::size_t h = f + 1; h < nf; ++h) {
          if (present[f] && present[h] && fmutex.get(f, h)) {
            g.persistent_mutex_.emplace_back(static_cast<FluentId>(f), static_cast<FluentId>(h));
          }
        }
      }
      for (std::size_t x = 0; x < m; ++x) {
        const std::size_t ia = layer_actions[x];
        if (ia >= na) continue;
        const auto& a = acts[ia];
        for (std::size_t y = x + 1; y < m; ++y) {
          const std::size_t ib = layer_actions[y];
          if (ib >= na) continue;
          const auto& b = acts[ib];
          bool mx = intersects(del_of(ia), *b.pre) || intersects(del_of(ib), *a.pre);
          for (std::size_t p = 0; !mx && p < a.pre->size(); ++p) {
            for (std::size_t q = 0; !mx && q < b.pre->size(); ++q) {
              mx = fmutex.get((*a.pre)[p], (*b.pre)[q]);
            }
          }
          if (mx) g.action_mutex_.emplace_back(static_cast<ActionId>(ia), static_cast<ActionId>(ib));
        }
      }
      break;
    }
    present = std::move(next_present);
    fmutex = std::move(next_mutex);
    for (std::size_t f = 0; f < nf; ++f) {
      if (present[f] && g.fluent_level_[f] == kUnreachable) g.fluent_level_[f] = level + 1;
    }
    g.mutex_by_level_.push_back(snapshot(fmutex));
  }
  for (std::size_t i = 0; i < na; ++i) g.action_level_[i] = act_level[i];
  return g;
}

bool PlanningGraph::mutex(FluentId f, FluentId g, std::size_t level) const {
  if (f == g) return false;
  if (f > g) std::swap(f, g);
  const auto& keys = mutex_by_level_[std::min(level, mutex_by_level_.size() - 1)];
  return std::binary_search(keys.begin(), keys.end(), static_cast<std::uint64_t>(f) * fluent_count_ + g);
}

std::string PlanningGraph::to_json(const GroundProblem& problem) const {
  using nlohmann::json;
  auto level_value = [](std::size_t l) { return l == kUnreachable ? json(nullptr) : json(l); };
  json doc;
  doc["leveled_off"] = leveled_off_;
  json fluents = json::array();
  for (std::size_t f = 0; f < fluent_level_.size(); ++f) {
    fluents.push_back({{"name", problem.fluent_name(static_cast<FluentId>(f))},
                       {"level", level_value(fluent_level_[f])}});
  }
  json actions = json::array();
  for (std::size_t a = 0; a < action_level_.size(); ++a) {
    actions.push_back({{"name", problem.action(static_cast<ActionId>(a)).name},
                       {"level", level_value(action_level_[a])}});
  }
  json levels = json::array();
  for (const auto& keys : mutex_by_level_) {
    json pairs = json::array();
    for (auto k : keys) {
      pairs.push_back({problem.fluent_name(static_cast<FluentId>(k / fluent_count_)),
                       problem.fluent_name(static_cast<FluentId>(k % fluent_count_))});
    }
    levels.push_back({{"mutex", std::move(pairs)}});
  }
  json mutex = json::array();
  for (auto [f, g] : persistent_mutex_) mutex.push_back({problem.fluent_name(f), problem.fluent_name(g)});
  json mutex_act = json::array();
  for (auto [a, b] : action_mutex_) mutex_act.push_back({problem.action(a).name, problem.action(b).name});
  doc["fluents"] = std::move(fluents);
  doc["actions"] = std::move(actions);
  doc["levels"] = std::move(levels);
  doc["mutex"] = std::move(mutex);
  doc["mutex_act"] = std::move(mutex_act);
  return doc.dump(2);
}

std::optional<std::size_t> first_goal_layer(const PlanningGraph& graph, const FluentSet& goals) {
  std::size_t start = 0;
  for (FluentId f : goals) {
    const auto l = graph.fluent_level(f);
    if (l == PlanningGraph::kUnreachable) return std::nullopt;
    start = std::max(start, l);
  }
  for (std::size_t level = start; level <= std::max(start, graph.leveled_off()); ++level) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < goals.size(); ++i) {
      for (std::size_t j = i + 1; ok && j < goals.size(); ++j) ok = !graph.mutex(goals[i], goals[j], level);
    }
    if (ok) return level;
  }
  return std::nullopt;
}

}  // namespace aspcost
