#include "arena/train.hpp"

#include <cmath>
#include <deque>
#include <numeric>

namespace arena {

double epsilon_at(int64_t t, const TrainingSchedule& schedule) {
  if (t < 0 || t > schedule.total_timesteps)
    throw ContractError("epsilon_at: timestep outside the schedule");
  double frac = static_cast<double>(t) /
                static_cast<double>(schedule.total_timesteps);
  return schedule.epsilon_start +
         frac * (schedule.epsilon_end - schedule.epsilon_start);
}

OpponentChoice sample_opponent(const CheckpointPool& pool, int64_t t,
                               const TrainingSchedule& schedule,
                               SplitMix64& rng) {
  if (t < schedule.checkpoint_interval || pool.entries.empty())
    return {true, -1};
  int idx = static_cast<int>(rng.next_below(pool.entries.size()));
  return {false, idx};
}

namespace {

// Sample an action for a frozen policy (no exploration).
ActionIndex policy_sample(const PolicyNet<float>& net, const Observation& obs,
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

}  // namespace

TrainResult train(const GameSpec& spec, const EnvFactory& factory,
                  const TrainOptions& options) {
  const TrainingSchedule& schedule = options.schedule;
  if (schedule.checkpoint_interval < 1 ||
      schedule.total_timesteps % schedule.checkpoint_interval != 0)
    throw ContractError("checkpoint_interval must divide total_timesteps");

  SplitMix64 root(options.seed);
  SplitMix64 init_rng = root.fork(1);
  SplitMix64 episode_rng = root.fork(2);   // env seeds and seat assignment
  SplitMix64 action_rng = root.fork(3);    // learner sampling + epsilon
  SplitMix64 opponent_rng = root.fork(4);  // opponent pool draws and moves
  SplitMix64 shuffle_rng = root.fork(5);   // minibatch shuffling

  PolicyNet<float> net;
  net.init_shapes(spec.observation_dim, spec.action_space_size);
  net.init_params(init_rng);
  AdamState<float> adam;
  adam.init(net.param_count());

  RolloutBuffer<float> buffer;
  buffer.init(spec.observation_dim, spec.action_space_size,
              options.ppo.rollout_length);

  TrainResult result;
  // Opponent selection keeps a pointer into the pool across an episode, and
  // checkpoints can be taken mid-episode; fix the capacity so appends never
  // reallocate.
  result.pool.entries.reserve(
      static_cast<size_t>(schedule.total_timesteps /
                          schedule.checkpoint_interval));
  int64_t t = 0;
  std::deque<float> recent_rewards;

  NetOutput<float> out;
  NetActivations<float> act;
  NetOutput<float> opp_out;
  NetActivations<float> opp_act;

  auto take_checkpoint = [&](int64_t at) {
    Checkpoint ckpt{at, net};
    result.pool.entries.push_back(ckpt);
    if (options.on_checkpoint) options.on_checkpoint(result.pool.entries.back());
  };

  auto record_episode_reward = [&](float r) {
    recent_rewards.push_back(r);
    if (recent_rewards.size() > 100) recent_rewards.pop_front();
    ++result.episodes;
  };

  auto run_update = [&]() {
    ppo_update(net, adam, buffer, options.ppo, shuffle_rng);
    buffer.clear();
    ++result.updates;
    if (options.on_log) {
      double mean_r = 0.0;
      if (!recent_rewards.empty())
        mean_r = std::accumulate(recent_rewards.begin(), recent_rewards.end(),
                                 0.0) /
                 static_cast<double>(recent_rewards.size());
      options.on_log(t, mean_r, epsilon_at(t, schedule));
    }
  };

  while (t < schedule.total_timesteps) {
    // New episode. Checkpoints taken at step boundaries are already in the
    // pool before this draw.
    uint64_t env_seed = episode_rng.next_u64();
    Player learner_seat =
        episode_rng.next_below(2) == 0 ? Player::P1 : Player::P2;
    OpponentChoice opp = sample_opponent(result.pool, t, schedule, opponent_rng);
    const PolicyNet<float>* opp_net =
        opp.random_agent ? nullptr
                         : &result.pool.entries[opp.checkpoint_index].params;

    auto env = wrap_move_cap(factory(env_seed), spec.move_cap);
    Observation obs = env->observe();

    // Pending learner transition, finalized once the opponent's reply (or a
    // terminal/truncation event) fixes its reward and done flag.
    bool have_pending = false;
    Observation pend_obs;
    ActionIndex pend_action = 0;
    float pend_logprob = 0.0f, pend_value = 0.0f;
    std::vector<ActionIndex> pend_valid;

    auto push_pending = [&](float reward, bool done) {
      buffer.push(pend_obs.data(), pend_action, pend_logprob, reward,
                  pend_value, done, pend_valid);
      have_pending = false;
      if (done) record_episode_reward(reward);
      if (buffer.full()) {
        if (done) {
          buffer.bootstrap_value = 0.0f;
        } else {
          // Mid-episode cut: bootstrap with V of the learner's next state.
          net_forward(net, env->observe(), out, act);
          buffer.bootstrap_value = out.value;
        }
        run_update();
      }
    };

    bool episode_over = false;
    while (!episode_over) {
      // Opponent moves until it is the learner's turn or the episode ends.
      while (!episode_over && env->current_player() != learner_seat) {
        std::vector<ActionIndex> valid = env->valid_moves();
        ActionIndex a =
            opp_net == nullptr
                ? valid[opponent_rng.next_below(valid.size())]
                : policy_sample(*opp_net, env->observe(), valid, opponent_rng,
                                opp_out, opp_act);
        StepOutcome o = env->step(a);
        obs = o.observation;
        if (o.terminated) {
          // Mover was the opponent: its reward negated is the learner's.
          if (have_pending) push_pending(o.reward > 0 ? -1.0f : 1.0f, true);
          episode_over = true;
        } else if (o.truncated) {
          ++result.truncated_episodes;
          if (have_pending) push_pending(0.0f, true);
          episode_over = true;
        }
      }
      if (episode_over || t >= schedule.total_timesteps) break;

      // The opponent's reply kept the game going; the learner's previous
      // transition is a plain intermediate step.
      if (have_pending) push_pending(0.0f, false);

      // Learner acts; with masking off it samples over the full action
      // space and owns the -10 consequences.
      std::vector<ActionIndex> valid = env->valid_moves();
      if (!options.mask_invalid) {
        valid.resize(spec.action_space_size);
        std::iota(valid.begin(), valid.end(), 0);
      }
      net_forward(net, obs, out, act);
      std::vector<float> probs = masked_distribution(out.logits, valid);
      ActionIndex a;
      double eps = epsilon_at(t, schedule);
      if (action_rng.next_double() < eps) {
        a = valid[action_rng.next_below(valid.size())];
      } else {
        double u = action_rng.next_double();
        double cum = 0.0;
        a = valid.back();
        for (ActionIndex va : valid) {
          cum += probs[va];
          if (u < cum) {
            a = va;
            break;
          }
        }
      }
      pend_obs = obs;
      pend_action = a;
      pend_logprob = masked_log_prob(out.logits, valid, a);
      pend_value = out.value;
      pend_valid = valid;
      have_pending = true;

      StepOutcome o = env->step(a);
      obs = o.observation;
      ++t;
      if (t % schedule.checkpoint_interval == 0) take_checkpoint(t);

      if (o.terminated) {
        if (o.reward == -10.0f) ++result.invalid_action_episodes;
        push_pending(o.reward, true);
        episode_over = true;
      } else if (o.truncated) {
        ++result.truncated_episodes;
        push_pending(0.0f, true);
        episode_over = true;
      }
      if (t >= schedule.total_timesteps) {
        // End of training mid-episode: the final transition has no resolved
        // outcome and is dropped with the rest of the partial buffer.
        have_pending = false;
        episode_over = true;
      }
    }
  }

  result.truncation_flagged =
      result.episodes > 0 &&
      static_cast<double>(result.truncated_episodes) /
              static_cast<double>(result.episodes) >
          options.truncation_flag_threshold;
  return result;
}

}  // namespace arena
