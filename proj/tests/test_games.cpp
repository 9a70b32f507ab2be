#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arena/games.hpp"
#include "arena/rng.hpp"

using namespace arena;

namespace {

// Drives a sequence of actions, returning the last outcome.
StepOutcome play(Environment& env, const std::vector<ActionIndex>& actions) {
  StepOutcome out;
  for (ActionIndex a : actions) out = env.step(a);
  return out;
}

}  // namespace

TEST_CASE("reach27: exact hit wins, overshoot loses") {
  auto env = make_reach27();
  // total 18 via 9+9, then P1 adds 9 -> 27.
  StepOutcome out = play(*env, {8, 8, 8});
  CHECK(out.reward == 1.0f);
  CHECK(out.terminated);

  env = make_reach27();
  // 9+9+7 = 25, then add 3 -> 28: mover loses.
  out = play(*env, {8, 8, 6, 2});
  CHECK(out.reward == -1.0f);
  CHECK(out.terminated);
}

TEST_CASE("reach27: all nine adds stay legal below 27") {
  auto env = make_reach27();
  CHECK(env->valid_moves() ==
        std::vector<ActionIndex>{0, 1, 2, 3, 4, 5, 6, 7, 8});
  play(*env, {8, 8, 7});  // total 26
  CHECK(env->valid_moves().size() == 9);
}

TEST_CASE("reach27: fresh render shows Total: 0") {
  auto env = make_reach27();
  CHECK(env->render().find("Total: 0") != std::string::npos);
}

TEST_CASE("lightout: last light wins, pairs need positional adjacency") {
  auto env = make_lightout();
  // Turn off pairs (1,2), (3,4), (5,6) -> only light 7 on.
  play(*env, {7, 9, 11});
  CHECK(env->valid_moves() == std::vector<ActionIndex>{6});
  StepOutcome out = env->step(6);
  CHECK(out.reward == 1.0f);
  CHECK(out.terminated);

  env = make_lightout();
  // Leave lights 2,3 on: off(1), pair(4,5), pair(6,7).
  play(*env, {0, 10, 12});
  CHECK(env->valid_moves() == std::vector<ActionIndex>{1, 2, 8});
  out = env->step(8);  // pair (2,3)
  CHECK(out.reward == 1.0f);
  CHECK(out.terminated);
}

TEST_CASE("lightout: gaps break pair adjacency") {
  auto env = make_lightout();
  // Turn off lights 2,4,6 -> on: 1,3,5,7 with no adjacent pair.
  play(*env, {1, 3, 5});
  for (ActionIndex a : env->valid_moves()) CHECK(a < 7);
}

TEST_CASE("divide: legality tracks divisibility") {
  auto env = make_divide_at(12);
  CHECK(env->valid_moves() == std::vector<ActionIndex>{0, 1});  // 2 and 3
  StepOutcome out = env->step(1);                               // 12/3 = 4
  CHECK_FALSE(out.terminated);
  CHECK(env->render().find("N: 4") != std::string::npos);

  env = make_divide_at(2);
  out = env->step(0);
  CHECK(out.reward == 1.0f);
  CHECK(out.terminated);
}

TEST_CASE("divide: seeded draws are products of small primes") {
  SplitMix64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto env = make_divide(rng.next_u64());
    // Count legal first moves; every factor must sit in {2,3,5,7,11,13}.
    for (ActionIndex a : env->valid_moves()) CHECK(a <= 5);
    // The observation exposes exponents; total multiplicity is 3..6.
    Observation obs = env->observe();
    float total = 0.0f;
    for (float e : obs) total += e * 6.0f;
    CHECK(total >= 3.0f);
    CHECK(total <= 6.0f);
  }
}

TEST_CASE("number-duel: successful attack captures the defense pick") {
  auto env = make_number_duel();
  // P1 attacks with 3 (index 2), P2 defends with 2 (index 1): 3 > 2.
  StepOutcome out = play(*env, {2, 1});
  CHECK_FALSE(out.terminated);
  std::string board = env->render();
  // Defender P2 lost its 2; attacker keeps 3.
  CHECK(board.find("P1 numbers: {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}") !=
        std::string::npos);
  CHECK(board.find("P2 numbers: {1, 3, 4, 5, 6, 7, 8, 9, 10}") !=
        std::string::npos);
}

TEST_CASE("number-duel: ties capture the attacker's number") {
  auto env = make_number_duel();
  StepOutcome out = play(*env, {1, 1});  // attack 2 vs defense 2
  CHECK_FALSE(out.terminated);
  std::string board = env->render();
  CHECK(board.find("P1 numbers: {1, 3, 4, 5, 6, 7, 8, 9, 10}") !=
        std::string::npos);
  CHECK(board.find("P2 numbers: {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}") !=
        std::string::npos);
}

TEST_CASE("number-duel: roles alternate by round, defender moves twice") {
  auto env = make_number_duel();
  CHECK(env->render().find("Current role: Attacker") != std::string::npos);
  env->step(2);
  CHECK(env->render().find("Current role: Defender") != std::string::npos);
  CHECK(env->current_player() == Player::P2);
  env->step(1);
  // Round 2: previous defender P2 now attacks.
  CHECK(env->current_player() == Player::P2);
  CHECK(env->render().find("Current role: Attacker") != std::string::npos);
}

TEST_CASE("number-duel: both on their last number, defender wins the tie") {
  auto env = make_number_duel_n(1);
  StepOutcome out = play(*env, {0, 0});
  CHECK(out.reward == 1.0f);  // defender (P2) is the mover and wins
  CHECK(out.terminated);
  CHECK(env->current_player() == Player::P2);
}

TEST_CASE("number-duel: observation hides the pending attack") {
  auto n5 = make_number_duel_n(5);
  CHECK(n5->observe().size() == 11);  // 2N+1 for N=5
  auto env = make_number_duel();
  Observation before = env->observe();
  env->step(4);
  Observation after = env->observe();  // defender's view
  // Defender sees full sets and role flag 0; nothing about the pick of 5.
  CHECK(after.size() == 21);
  for (int i = 0; i < 20; ++i) CHECK(after[i] == 1.0f);
  CHECK(after[20] == 0.0f);
  CHECK(before[20] == 1.0f);
}

TEST_CASE("crossover: capture by landing, win by invasion") {
  auto env = make_crossover();
  // P1-C 2->4 (action 5: piece C two steps), P2-C 8->6 (action 5),
  // P1-B 1->3? Use: P1-A idle; follow the capture scenario:
  // P1 moves C to 4, P2 moves C to 6, P1 moves C 4->6?? own dest rules:
  // P1-C at 4 moving 2 lands on P2-C at 6: capture.
  play(*env, {5, 5});
  StepOutcome out = env->step(5);
  CHECK_FALSE(out.terminated);
  std::string board = env->render();
  CHECK(board.find("6: P1-C") != std::string::npos);
  // P2-C captured: only P2-A and P2-B remain.
  CHECK(board.find("P2-C") == std::string::npos);
}

TEST_CASE("crossover: entering opponent territory wins") {
  auto env = make_crossover();
  // P1-C: 2->4->6->8 (territory win) while P2 shuffles A 10->9->8? 9->8 is
  // occupied by own C... use P2-B 9->7->5 instead.
  play(*env, {5, 3});   // P1-C to 4, P2-B 9->7
  play(*env, {5});      // P1-C to 6
  play(*env, {3});      // P2-B 7->5
  StepOutcome out = env->step(5);  // P1-C 6->8: P2 territory
  CHECK(out.reward == 1.0f);
  CHECK(out.terminated);
}

TEST_CASE("crossover: capturing all pieces wins") {
  // P2 walks its C piece down the line capturing P1 pieces after P1 stacks
  // them forward; simpler: fuzz until an elimination win occurs and check
  // the env flagged a terminal with winner = mover.
  SplitMix64 rng(40);
  bool saw_elimination = false;
  for (int e = 0; e < 2000 && !saw_elimination; ++e) {
    auto env = make_crossover(rng.next_u64());
    while (!env->done()) {
      std::vector<ActionIndex> valid = env->valid_moves();
      StepOutcome out = env->step(valid[rng.next_below(valid.size())]);
      if (out.terminated) {
        std::string board = env->render();
        bool p1_gone = board.find("P1-") == std::string::npos;
        bool p2_gone = board.find("P2-") == std::string::npos;
        if (p1_gone || p2_gone) saw_elimination = true;
        break;
      }
    }
  }
  CHECK(saw_elimination);
}

TEST_CASE("crossover: observations are mirrored per seat") {
  auto env = make_crossover();
  Observation p1 = env->observe();
  // P1 pieces at 0,1,2 -> +1 at indices 0..2; P2 at 8..10 -> -1.
  CHECK(p1[0] == 1.0f);
  CHECK(p1[1] == 1.0f);
  CHECK(p1[2] == 1.0f);
  CHECK(p1[8] == -1.0f);
  CHECK(p1[10] == -1.0f);
  env->step(0);  // P1-A 0->1? occupied by P1-B! action 0 invalid...
  CHECK(env->done());
}

TEST_CASE("crossover: own-piece blocking shapes valid moves") {
  auto env = make_crossover();
  // At the start P1-A (0) cannot move: squares 1,2 hold P1-B, P1-C.
  std::vector<ActionIndex> valid = env->valid_moves();
  CHECK(std::find(valid.begin(), valid.end(), 0) == valid.end());
  CHECK(std::find(valid.begin(), valid.end(), 1) == valid.end());
  // P1-B can move 2 (to 3) but not 1 (to 2, own C).
  CHECK(std::find(valid.begin(), valid.end(), 2) == valid.end());
  CHECK(std::find(valid.begin(), valid.end(), 3) != valid.end());
  // P1-C free for both steps.
  CHECK(std::find(valid.begin(), valid.end(), 4) != valid.end());
  CHECK(std::find(valid.begin(), valid.end(), 5) != valid.end());
  // After mirroring, P2 faces the same indices on its first move.
  env->step(5);
  CHECK(env->valid_moves() == std::vector<ActionIndex>{3, 4, 5});
}

TEST_CASE("primeclaim: primes score, composites gift the divisor sum") {
  auto env = make_primeclaim();
  env->step(6);  // P1 claims 7
  std::string board = env->render();
  CHECK(board.find("Scores: P1 = 7, P2 = 0") != std::string::npos);
  env->step(11);  // P2 claims 12: +12 self, +16 gift to P1
  board = env->render();
  CHECK(board.find("Scores: P1 = 23, P2 = 12") != std::string::npos);
  env->step(0);  // P1 claims 1: +1, no gift
  board = env->render();
  CHECK(board.find("Scores: P1 = 24, P2 = 12") != std::string::npos);
}

TEST_CASE("primeclaim: full games score consistently and P1 picks last") {
  SplitMix64 rng(17);
  for (int e = 0; e < 200; ++e) {
    auto env = make_primeclaim(rng.next_u64());
    int p1 = 0, p2 = 0;
    bool p1_to_move = true;
    StepOutcome out;
    int picks = 0;
    auto divisor_sum = [](int v) {
      int s = 0;
      for (int d = 1; d < v; ++d)
        if (v % d == 0) s += d;
      return s;
    };
    auto is_prime = [](int v) {
      if (v < 2) return false;
      for (int d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
      return true;
    };
    while (!env->done()) {
      std::vector<ActionIndex> valid = env->valid_moves();
      ActionIndex a = valid[rng.next_below(valid.size())];
      int v = a + 1;
      (p1_to_move ? p1 : p2) += v;
      if (v > 1 && !is_prime(v)) (p1_to_move ? p2 : p1) += divisor_sum(v);
      out = env->step(a);
      ++picks;
      p1_to_move = !p1_to_move;
      if (out.terminated) break;
    }
    REQUIRE(picks == 25);
    // Mover of the final pick is P1 (picks 1,3,...,25); reward must agree
    // with the recomputed scores, ties to the last picker (P1).
    bool p1_wins = p1 > p2 || (p1 == p2);
    REQUIRE(out.reward == (p1_wins ? 1.0f : -1.0f));
  }
}

TEST_CASE("isolation: claims block neighbors") {
  auto env = make_isolation();
  env->step(6);
  std::vector<ActionIndex> valid = env->valid_moves();
  CHECK(std::find(valid.begin(), valid.end(), 5) == valid.end());
  CHECK(std::find(valid.begin(), valid.end(), 6) == valid.end());
  CHECK(std::find(valid.begin(), valid.end(), 7) == valid.end());
  CHECK(std::find(valid.begin(), valid.end(), 4) != valid.end());
}

TEST_CASE("isolation: the final claim wins") {
  auto env = make_isolation();
  // Claims at 0,2,4,6,8,10 leave only 12 claimable.
  play(*env, {0, 2, 4, 6, 8, 10});
  CHECK(env->valid_moves() == std::vector<ActionIndex>{12});
  StepOutcome out = env->step(12);
  CHECK(out.reward == 1.0f);
  CHECK(out.terminated);
}

TEST_CASE("palindrome: immediate palindromes lose") {
  auto env = make_palindrome();
  // X, then O on right -> "XO", then X on right -> "XOX": mover loses.
  StepOutcome out = play(*env, {1, 3, 1});
  CHECK(out.reward == -1.0f);
  CHECK(out.terminated);
}

TEST_CASE("palindrome: safe extensions continue the game") {
  auto env = make_palindrome();
  // "X" -> "XX" -> "XXO" -> "XXOO" are all palindrome-free.
  StepOutcome out = play(*env, {1, 1, 3, 3});
  CHECK_FALSE(out.terminated);
  CHECK(env->render().find("XXOO") != std::string::npos);
}

TEST_CASE("palindrome: XXOO is a dead end, every extension loses") {
  // Enumerating substrings through the new symbol: OXXOO contains OXXO,
  // XXOOX contains XOOX, XXOOO contains OOO, XXXOO contains XXX.
  for (ActionIndex a : {0, 1, 2, 3}) {
    auto env = make_palindrome();
    play(*env, {1, 1, 3, 3});
    StepOutcome out = env->step(a);
    CAPTURE(a);
    CHECK(out.reward == -1.0f);
    CHECK(out.terminated);
  }
}

TEST_CASE("palindrome: every playable line ends within 5 moves") {
  // Binary strings of length 5 always contain a palindrome of length >= 3,
  // so the 11-symbol victory is unreachable and games stay short.
  SplitMix64 rng(23);
  for (int e = 0; e < 2000; ++e) {
    auto env = make_palindrome(rng.next_u64());
    int moves = 0;
    while (!env->done()) {
      std::vector<ActionIndex> valid = env->valid_moves();
      StepOutcome out = env->step(valid[rng.next_below(valid.size())]);
      ++moves;
      if (out.terminated) break;
    }
    REQUIRE(moves <= 5);
  }
}

TEST_CASE("orderchallenge: picks must exceed own last from the shared pool") {
  auto env = make_orderchallenge();
  env->step(8);  // P1 opens with 9
  // P2 may pick anything from the pool (its last is 0) except the used 9.
  CHECK(env->valid_moves() ==
        std::vector<ActionIndex>{0, 1, 2, 3, 4, 5, 6, 7});
  StepOutcome out = env->step(0);  // P2 picks 1; P1 now has no pick > 9
  CHECK(out.reward == 1.0f);       // P2 wins immediately
  CHECK(out.terminated);
}

TEST_CASE("orderchallenge: shared pool removal binds both players") {
  auto env = make_orderchallenge();
  env->step(4);  // P1 takes 5
  std::vector<ActionIndex> valid = env->valid_moves();
  CHECK(std::find(valid.begin(), valid.end(), 4) == valid.end());
  env->step(5);  // P2 takes 6
  // P1 must now exceed 5: only 7,8,9 remain above it.
  CHECK(env->valid_moves() == std::vector<ActionIndex>{6, 7, 8});
}

TEST_CASE("digitdilemma: ends with a digit comparison, ties to P2") {
  auto env = make_digitdilemma_line("91");
  StepOutcome out = play(*env, {0, 0});  // P1 takes 9, P2 takes 1
  CHECK(out.reward == -1.0f);  // mover at the end is P2, whose 1 < 9
  CHECK(out.terminated);

  env = make_digitdilemma_line("44");
  out = play(*env, {0, 0});
  CHECK(out.reward == 1.0f);  // tie goes to the second mover, who moved last
  CHECK(out.terminated);
}

TEST_CASE("digitdilemma: both strings reach 10 digits on the full line") {
  SplitMix64 rng(31);
  auto env = make_digitdilemma(777);
  int moves = 0;
  while (!env->done()) {
    std::vector<ActionIndex> valid = env->valid_moves();
    CHECK(valid == std::vector<ActionIndex>{0, 1});
    env->step(valid[rng.next_below(valid.size())]);
    ++moves;
  }
  CHECK(moves == 20);
  std::string board = env->render();
  CHECK(board.find("Line: (empty)") != std::string::npos);
}
