#include "arena/mcts.hpp"

#include <algorithm>

#include "arena/ppo.hpp"

namespace arena {

namespace {

ActionIndex sample_masked(const PolicyNet<float>& net, const Observation& obs,
                          const std::vector<ActionIndex>& valid,
                          SplitMix64& rng, NetOutput<float>& out,
                          NetActivations<float>& act) {
  net_forward(net, obs, out, act);
  std::vector<float> probs = masked_distribution(out.logits, valid);
  double u = rng.next_double();
  double cum = 0.0;
  for (ActionIndex a : valid) {
    cum += probs[a];
    if (u < cum) return a;
  }
  return valid.back();
}

struct RolloutResult {
  RolloutWinner winner;
  ActionIndex first_action;
};

RolloutResult run_rollout(const PolicyNet<float>& policy,
                          const Environment& state, SplitMix64& rng) {
  if (state.done()) throw ContractError("rollout from a terminated state");
  auto env = state.clone();
  Player root_mover = env->current_player();
  int budget = std::max(1, env->spec().move_cap - env->move_count());
  NetOutput<float> out;
  NetActivations<float> act;

  ActionIndex first = -1;
  for (int step = 0; step < budget; ++step) {
    ActionIndex a =
        sample_masked(policy, env->observe(), env->valid_moves(), rng, out, act);
    if (first < 0) first = a;
    StepOutcome o = env->step(a);
    if (o.terminated) {
      bool mover_won = o.reward > 0;
      bool root_moved = env->current_player() == root_mover;
      return {root_moved == mover_won ? RolloutWinner::Mover
                                      : RolloutWinner::Opponent,
              first};
    }
    if (o.truncated) return {RolloutWinner::Draw, first};
  }
  return {RolloutWinner::Draw, first};
}

}  // namespace

RolloutWinner rollout(const PolicyNet<float>& policy, const Environment& state,
                      SplitMix64& rng) {
  return run_rollout(policy, state, rng).winner;
}

ActionIndex select_action(const PolicyNet<float>& policy,
                          const Environment& state, int n_rollouts,
                          uint64_t seed, RolloutTally* tally_out) {
  if (state.done()) throw ContractError("select_action on a terminated state");
  int n_actions = state.spec().action_space_size;
  RolloutTally tally;
  tally.visits_total.assign(n_actions, 0);
  tally.visits_winning.assign(n_actions, 0);
  tally.n_rollouts = n_rollouts;

  SplitMix64 base(seed);
  for (int k = 0; k < n_rollouts; ++k) {
    SplitMix64 stream = base.fork(static_cast<uint64_t>(k));
    RolloutResult r = run_rollout(policy, state, stream);
    tally.visits_total[r.first_action] += 1;
    if (r.winner == RolloutWinner::Mover) tally.visits_winning[r.first_action] += 1;
  }

  ActionIndex best = -1;
  int best_wins = 0;
  for (int a = 0; a < n_actions; ++a) {
    if (tally.visits_winning[a] > best_wins) {
      best_wins = tally.visits_winning[a];
      best = a;
    }
  }
  if (best < 0) {
    // No winning rollout anywhere: fall back to the masked-policy argmax.
    NetOutput<float> out;
    NetActivations<float> act;
    net_forward(policy, state.observe(), out, act);
    std::vector<ActionIndex> valid = state.valid_moves();
    std::vector<float> probs = masked_distribution(out.logits, valid);
    best = valid[0];
    for (ActionIndex a : valid)
      if (probs[a] > probs[best]) best = a;
  }
  if (tally_out) *tally_out = std::move(tally);
  return best;
}

}  // namespace arena
