#pragma once

#include <cstdint>
#include <vector>

#include "arena/env.hpp"
#include "arena/net.hpp"

namespace arena {

// Flat policy-rollout search: simulate complete games with both seats
// sampling from the masked policy, tally wins per first action, pick the
// action with the most winning rollouts. No tree expansion or value
// bootstrapping.

struct RolloutTally {
  std::vector<int> visits_total;    // per action index
  std::vector<int> visits_winning;  // rollouts the root mover won
  int n_rollouts = 0;
};

enum class RolloutWinner { Mover, Opponent, Draw };

// One simulated game from `state` (not modified). The rollout honors the
// remaining move-cap budget and scores capped games as draws.
RolloutWinner rollout(const PolicyNet<float>& policy, const Environment& state,
                      SplitMix64& rng);

// Runs n_rollouts rollouts with per-rollout PRNG streams derived from
// (seed, rollout index), so the tally is independent of execution order.
// Returns the action with the highest winning count; ties break to the
// lowest index; if no rollout won, falls back to the masked-policy argmax.
ActionIndex select_action(const PolicyNet<float>& policy,
                          const Environment& state, int n_rollouts,
                          uint64_t seed, RolloutTally* tally_out = nullptr);

}  // namespace arena
