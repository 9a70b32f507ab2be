#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arena/games.hpp"
#include "arena/mcts.hpp"
#include "helpers/fixture_envs.hpp"
#include "helpers/oracles.hpp"

using namespace arena;

namespace {

PolicyNet<float> uniform_net(int obs_dim, int n_actions) {
  PolicyNet<float> net;
  net.init_shapes(obs_dim, n_actions);  // zero weights -> uniform policy
  return net;
}

}  // namespace

TEST_CASE("forced-win fixture: the winning action is always selected") {
  fixtures::ForcedWinEnv env;
  env.reset(0);
  PolicyNet<float> net = uniform_net(1, 2);
  for (uint64_t seed = 0; seed < 100; ++seed) {
    RolloutTally tally;
    ActionIndex a = select_action(net, env, 100, seed, &tally);
    REQUIRE(a == 0);
    REQUIRE(tally.visits_total[0] + tally.visits_total[1] == 100);
    REQUIRE(tally.visits_winning[0] == tally.visits_total[0]);
    REQUIRE(tally.visits_winning[1] == 0);
  }
}

TEST_CASE("reach27 at total 26: only add-1 wins the rollout count") {
  auto env = make_reach27();
  env->step(8);
  env->step(8);
  env->step(7);  // total 26
  PolicyNet<float> net = uniform_net(29, 9);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    ActionIndex a = select_action(net, *env, 100, seed);
    REQUIRE(a == 0);  // add 1 -> 27
  }
}

TEST_CASE("tally conservation across games and policies") {
  SplitMix64 rng(10);
  for (const char* id : {"reach27", "lightout", "crossover", "palindrome"}) {
    auto env = build_env(id, 5);
    PolicyNet<float> net;
    net.init_shapes(env->spec().observation_dim, env->spec().action_space_size);
    SplitMix64 prng(rng.next_u64());
    net.init_params(prng);
    RolloutTally tally;
    select_action(net, *env, 100, rng.next_u64(), &tally);
    int total = 0, winning = 0;
    for (size_t a = 0; a < tally.visits_total.size(); ++a) {
      total += tally.visits_total[a];
      REQUIRE(tally.visits_winning[a] <= tally.visits_total[a]);
      winning += tally.visits_winning[a];
    }
    REQUIRE(total == 100);
    REQUIRE(winning <= 100);
  }
}

TEST_CASE("identical seeds reproduce tallies and selections") {
  auto env = make_lightout();
  PolicyNet<float> net = uniform_net(7, 13);
  RolloutTally t1, t2;
  ActionIndex a1 = select_action(net, *env, 100, 12345, &t1);
  ActionIndex a2 = select_action(net, *env, 100, 12345, &t2);
  CHECK(a1 == a2);
  CHECK(t1.visits_total == t2.visits_total);
  CHECK(t1.visits_winning == t2.visits_winning);
}

TEST_CASE("rollout winners from forced positions") {
  // One move from a forced win: any policy rolls out to a mover win.
  auto env = make_divide_at(2);
  PolicyNet<float> net = uniform_net(15, 15);
  SplitMix64 rng(3);
  for (int k = 0; k < 50; ++k)
    CHECK(rollout(net, *env, rng) == RolloutWinner::Mover);

  // A capped environment rolls out to a draw.
  auto never = wrap_move_cap(std::make_unique<fixtures::NeverEndingEnv>(), 5);
  never->reset(0);
  PolicyNet<float> net1 = uniform_net(1, 1);
  CHECK(rollout(net1, *never, rng) == RolloutWinner::Draw);

  auto finished = make_divide_at(2);
  finished->step(0);
  CHECK_THROWS_AS(select_action(net, *finished, 10, 0), ContractError);
}

TEST_CASE("uniform-policy rollouts track the exact random-play value") {
  // Dynamic program gives the mover's exact win probability under uniform
  // random play from a fresh Reach 27; 10^4 rollouts must land within 3
  // standard errors. Draws are impossible inside the cap.
  double p = oracles::reach27_random_play_value(0);
  auto env = make_reach27();
  PolicyNet<float> net = uniform_net(29, 9);
  SplitMix64 rng(2024);
  int n = 10'000;
  int wins = 0;
  for (int k = 0; k < n; ++k) {
    RolloutWinner w = rollout(net, *env, rng);
    REQUIRE(w != RolloutWinner::Draw);
    wins += w == RolloutWinner::Mover;
  }
  double observed = static_cast<double>(wins) / n;
  double sigma = std::sqrt(p * (1.0 - p) / n);
  CHECK(std::abs(observed - p) < 3.0 * sigma);
}

TEST_CASE("zero-win tallies fall back to the masked-policy argmax") {
  // Palindrome from XXOO: every move loses, so no rollout can win for the
  // mover; selection must return the policy argmax, lowest index on ties.
  auto env = make_palindrome();
  env->step(1);
  env->step(1);
  env->step(3);
  env->step(3);
  PolicyNet<float> net = uniform_net(22, 4);
  RolloutTally tally;
  ActionIndex a = select_action(net, *env, 100, 7, &tally);
  CHECK(a == 0);  // uniform policy, tie-break to the lowest index
  for (int w : tally.visits_winning) CHECK(w == 0);
}

TEST_CASE("visit counts follow the sampling policy") {
  fixtures::ForcedWinEnv env;
  env.reset(0);
  PolicyNet<float> net = uniform_net(1, 2);
  net.policy.b[1] = 3.0f;  // bias first-action sampling toward index 1
  RolloutTally tally;
  ActionIndex a = select_action(net, env, 100, 3, &tally);
  CHECK(tally.visits_total[1] > tally.visits_total[0]);
  CHECK(a == 0);  // index 1 loses immediately, so 0 carries all the wins
}
