#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arena/games.hpp"
#include "helpers/oracles.hpp"

using namespace arena;

// Golden game values, produced by the independent rule-level oracles and
// frozen here; the engine-level minimax must keep reproducing them. Any
// change to legality or termination in the environments breaks these.

TEST_CASE("reach27 oracle: losing totals are exactly {7, 17}") {
  CHECK(oracles::reach27_losing_totals() == std::vector<int>{7, 17});
  CHECK(oracles::reach27_mover_wins(0));
}

TEST_CASE("reach27 engine value matches the oracle at every total") {
  // Walk the engine to each reachable total and compare the minimax value
  // with the retrograde oracle.
  for (int total = 0; total <= 26; ++total) {
    auto env = make_reach27();
    // Drive to `total` with 9s then the remainder (engine validates totals).
    int t = 0;
    while (t + 9 <= total) {
      env->step(8);
      t += 9;
    }
    if (t < total) env->step(total - t - 1);
    CAPTURE(total);
    REQUIRE_FALSE(env->done());
    CHECK(oracles::engine_first_wins(*env) ==
          oracles::reach27_mover_wins(total));
  }
}

TEST_CASE("lightout oracle: Kayles Grundy table and the 7-light value") {
  std::vector<int> grundy;
  for (int n = 1; n <= 7; ++n) grundy.push_back(oracles::kayles_grundy(n));
  CHECK(grundy == std::vector<int>{1, 2, 3, 1, 4, 3, 2});
  CHECK(oracles::kayles_grundy(7) == 2);  // nonzero: first player wins
}

TEST_CASE("lightout engine value equals the Grundy verdict") {
  auto env = make_lightout();
  CHECK(oracles::engine_first_wins(*env) == (oracles::kayles_grundy(7) != 0));
}

TEST_CASE("divide oracle: minimax equals total-multiplicity parity") {
  // All 50-smooth n up to 64 (53, 59, 61 excluded: prime factors above 50).
  for (long long n = 2; n <= 64; ++n) {
    int omega = oracles::divide_omega(n);
    if (omega < 0) continue;
    auto env = make_divide_at(n);
    CAPTURE(n);
    CHECK(oracles::engine_first_wins(*env) == (omega % 2 == 1));
  }
  CHECK(oracles::divide_omega(30) == 3);  // the worked example: P1 wins
  CHECK(oracles::engine_first_wins(*make_divide_at(30)));
}

TEST_CASE("orderchallenge: independent and engine minimax agree (P1 wins)") {
  bool oracle_value = oracles::order_first_wins();
  CHECK(oracle_value == true);  // frozen golden value
  CHECK(oracles::engine_first_wins(*make_orderchallenge()) == oracle_value);
}

TEST_CASE("isolation: independent and engine minimax agree (P1 wins)") {
  bool oracle_value = oracles::isolation_mover_wins(0);
  CHECK(oracle_value == true);  // frozen golden value
  CHECK(oracles::engine_first_wins(*make_isolation()) == oracle_value);
}

TEST_CASE("palindrome: independent and engine minimax agree (P2 wins)") {
  bool oracle_value = oracles::palindrome_mover_wins("");
  CHECK(oracle_value == false);  // frozen golden value: second player wins
  CHECK(oracles::engine_first_wins(*make_palindrome()) == oracle_value);
}

TEST_CASE("reach27 random-play value for the DP oracle") {
  // Exact dynamic program over totals; used by the MCTS rollout test.
  double v = oracles::reach27_random_play_value(0);
  CHECK(v == doctest::Approx(0.493502471173).epsilon(1e-9));
}
