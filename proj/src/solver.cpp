#include "t2p/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <queue>
#include <unordered_map>

namespace t2p {

namespace {

// A node is either "ready to close or extend the current step" (its state
// is event-completed) or an unexpanded goal checkpoint at a step boundary
// (raw, pre-completion state — the state the goal is evaluated on).
struct Node {
  State state;
  std::uint32_t step = 0;
  std::uint32_t total_actions = 0;
  std::vector<std::uint16_t> used; // sorted action indices used this step
  bool at_step_start = true;       // raw state, before event completion
  std::int64_t parent = -1;
  std::int32_t via_action = -1; // action index applied to reach this node
};

struct Key {
  std::size_t state_hash;
  State state;
  std::vector<std::uint16_t> used;
  bool at_step_start;

  bool operator==(const Key &o) const {
    return at_step_start == o.at_step_start && used == o.used &&
           state == o.state;
  }
};

struct KeyHash {
  std::size_t operator()(const Key &k) const {
    std::size_t h = k.state_hash ^ (k.at_step_start ? 0x9e3779b9u : 0u);
    for (auto u : k.used)
      h = h * 1000003u + u;
    return h;
  }
};

std::uint64_t default_budget() {
  if (const char *env = std::getenv("TEMPO2PLUS_NODE_BUDGET")) {
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0)
      return v;
  }
  return 200000;
}

} // namespace

SolveResult solve(const PlusProblem &p, const SolverOptions &options) {
  auto t0 = std::chrono::steady_clock::now();
  if (options.horizon < 0)
    throw SolverError("horizon must be non-negative");
  if (!(options.delta > Rational(0)))
    throw SolverError("delta must be positive");
  if (p.actions.size() > 0xFFFF)
    throw SolverError("too many actions for the desk solver");

  PlusValidatorOptions completion = options.validator;
  completion.delta = options.delta;
  completion.check_confluence = false;

  const std::size_t per_step_cap =
      options.max_actions_per_step > 0
          ? static_cast<std::size_t>(options.max_actions_per_step)
          : p.actions.size();
  std::uint64_t budget =
      options.node_budget > 0 ? options.node_budget : default_budget();

  SolveResult result;
  std::deque<Node> nodes;
  // Priority: (step, total_actions, insertion order) — deterministic and
  // shortest-makespan-first.
  struct QueueEntry {
    std::uint32_t step;
    std::uint32_t total_actions;
    std::uint64_t seq;
    std::int64_t node;
  };
  auto cmp = [](const QueueEntry &a, const QueueEntry &b) {
    if (a.step != b.step)
      return a.step > b.step;
    if (a.total_actions != b.total_actions)
      return a.total_actions > b.total_actions;
    return a.seq > b.seq;
  };
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, decltype(cmp)>
      frontier(cmp);
  std::unordered_map<Key, std::int64_t, KeyHash> visited;
  std::uint64_t seq = 0;

  auto complete = [&](const State &s) {
    CompletionResult done = event_completion(s, p.events, completion);
    if (done.diverged)
      throw SolverError("event completion diverged during search: " +
                        done.detail);
    return done.state;
  };

  auto push = [&](Node node) {
    Key key{node.state.hash(), node.state, node.used, node.at_step_start};
    auto [it, fresh] = visited.emplace(std::move(key),
                                       static_cast<std::int64_t>(nodes.size()));
    if (!fresh) {
      ++result.stats.duplicates;
      return;
    }
    nodes.push_back(std::move(node));
    const Node &stored = nodes.back();
    frontier.push(QueueEntry{stored.step, stored.total_actions, seq++,
                             static_cast<std::int64_t>(nodes.size() - 1)});
    ++result.stats.generated;
  };

  auto reconstruct = [&](std::int64_t index) {
    std::vector<PlusPlanStep> steps;
    for (std::int64_t i = index; i >= 0; i = nodes[i].parent) {
      if (nodes[i].via_action >= 0)
        steps.push_back(PlusPlanStep{
            options.delta * Rational(static_cast<long long>(nodes[i].step)),
            p.actions[static_cast<std::size_t>(nodes[i].via_action)].name});
      if (nodes[i].parent < 0)
        break;
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
  };

  Node root;
  root.state = p.init;
  root.at_step_start = true;
  push(std::move(root));

  while (!frontier.empty()) {
    if (result.stats.expanded >= budget) {
      result.status = SolveStatus::BudgetExceeded;
      result.stats.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      return result;
    }
    QueueEntry entry = frontier.top();
    frontier.pop();
    const std::int64_t index = entry.node;
    ++result.stats.expanded;

    if (nodes[index].at_step_start) {
      bool is_goal = false;
      try {
        is_goal = evaluate(nodes[index].state, p.goal);
      } catch (const EvalError &) {
        // A goal that cannot be evaluated in this state is simply not
        // satisfied here.
      }
      if (is_goal) {
        Rational makespan = options.delta * Rational(static_cast<long long>(nodes[index].step));
        PlusPlan plan = PlusPlan::of(reconstruct(index), makespan);
        PlusValidatorOptions check = options.validator;
        check.delta = options.delta;
        PlusValidationReport report = validate_plus(p, plan, check);
        if (!report.valid)
          throw SolverError(
              "solver produced a plan its own validator rejects: " +
              (report.failure ? report.failure->detail : std::string("?")));
        result.status = SolveStatus::Found;
        result.plan = std::move(plan);
        result.stats.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        return result;
      }
      Node in_step;
      const Node &cur = nodes[index];
      in_step.state = complete(cur.state);
      in_step.step = cur.step;
      in_step.total_actions = cur.total_actions;
      in_step.at_step_start = false;
      in_step.parent = index;
      push(std::move(in_step));
      continue;
    }

    // Extend the superdense sequence with one unused applicable action.
    if (nodes[index].used.size() < per_step_cap) {
      for (std::uint16_t ai = 0; ai < p.actions.size(); ++ai) {
        const Node &cur = nodes[index];
        if (std::binary_search(cur.used.begin(), cur.used.end(), ai))
          continue;
        const InstantAction &a = p.actions[ai];
        bool applicable = false;
        try {
          applicable = evaluate(cur.state, a.pre);
        } catch (const EvalError &) {
          applicable = false;
        }
        if (!applicable)
          continue;
        Node next;
        try {
          next.state = complete(apply(cur.state, a));
        } catch (const EvalError &) {
          continue; // effect not evaluable here: dead branch
        }
        next.step = cur.step;
        next.total_actions = cur.total_actions + 1;
        next.used = cur.used;
        next.used.insert(std::lower_bound(next.used.begin(), next.used.end(),
                                          ai),
                         ai);
        next.at_step_start = false;
        next.parent = index;
        next.via_action = ai;
        push(std::move(next));
      }
    }

    // Close the step: advance time by one delta.
    if (nodes[index].step < static_cast<std::uint32_t>(options.horizon)) {
      const Node &cur = nodes[index];
      Node next;
      try {
        next.state = integrate_processes(cur.state, p.processes,
                                         options.delta);
      } catch (const EvalError &) {
        continue; // cannot advance time from this state
      }
      next.step = cur.step + 1;
      next.total_actions = cur.total_actions;
      next.at_step_start = true;
      next.parent = index;
      push(std::move(next));
    }
  }

  result.status = SolveStatus::Exhausted;
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

} // namespace t2p
