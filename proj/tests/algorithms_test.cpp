#include "oblivisort/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oblivisort/contract.hpp"
#include "oblivisort/metrics.hpp"
#include "oblivisort/obliviousness.hpp"
#include "oblivisort/rng.hpp"
#include "oblivisort/trace.hpp"

namespace {

using namespace oblivisort;

double harmonic(int m) {
  double h = 0.0;
  for (int k = 1; k <= m; ++k) h += 1.0 / k;
  return h;
}

TEST(SpinRound, TwoElementsAlwaysPairUp) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed);
    auto a = tag_keys(std::vector<std::int64_t>{2, 1});
    Trace t;
    t.wires = 2;
    const auto stats = spin_round(a, rng, &t);
    EXPECT_EQ(stats.comparisons, 2u);
    ASSERT_EQ(t.ops.size(), 2u);
    for (const auto& op : t.ops)
      EXPECT_EQ(op, (std::pair<std::uint32_t, std::uint32_t>{1, 2}));
    EXPECT_TRUE(elements_sorted(a));
  }
}

TEST(SpinRound, SortedInputMakesNoSwaps) {
  RngStream rng(5);
  auto a = sorted_input(8);
  const auto stats = spin_round(a, rng);
  EXPECT_EQ(stats.comparisons, 8u);
  EXPECT_EQ(stats.swaps, 0u);
  EXPECT_TRUE(elements_sorted(a));
}

TEST(SpinRound, NeedsTwoElements) {
  RngStream rng(5);
  auto a = sorted_input(1);
  EXPECT_THROW(spin_round(a, rng), contract_error);
}

TEST(SpinRound, ChargesExactlyNComparisons) {
  RngStream rng(64);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_in_range(rng, 2, 300));
    auto a = random_permutation(n, rng);
    const auto stats = spin_round(a, rng);
    EXPECT_EQ(stats.comparisons, n);
    EXPECT_LE(stats.swaps, stats.comparisons);
  }
}

// On the paired input (2,1,4,3,...) a fixed unresolved inversion gets two
// independent 1/(n-1) chances per round, so it resolves with probability
// exactly 2/(n-1) - 1/(n-1)^2. Monte-Carlo estimate over 10^4 single rounds
// at n = 16 must land within 3 sigma of that value.
TEST(SpinRound, InversionResolutionProbability) {
  constexpr int kTrials = 10000;
  constexpr std::size_t kN = 16;
  const double p = 2.0 / (kN - 1) - 1.0 / ((kN - 1.0) * (kN - 1.0));
  RngStream rng(2718);
  int resolved = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    auto a = adversarial_input(kN);
    spin_round(a, rng);
    // the watched inversion is the pair originally at positions 1 and 2
    resolved += a[0].key == 1 && a[1].key == 2;
  }
  const double estimate = static_cast<double>(resolved) / kTrials;
  const double sigma = std::sqrt(p * (1.0 - p) / kTrials);
  EXPECT_NEAR(estimate, p, 3.0 * sigma);
}

TEST(SpinSort, SingleElementIsAlreadyDone) {
  RngStream rng(0);
  auto a = sorted_input(1);
  const auto report = spin_the_bottle_sort(a, rng);
  EXPECT_EQ(report.comparisons, 0u);
  EXPECT_EQ(report.rounds, 0u);
  EXPECT_TRUE(report.sorted);
}

TEST(SpinSort, CheckSortedAlwaysFinishesSorted) {
  RngStream rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_in_range(rng, 2, 48));
    auto a = random_permutation(n, rng);
    const auto report = spin_the_bottle_sort(a, rng);
    EXPECT_TRUE(report.sorted);
    EXPECT_TRUE(elements_sorted(a));
    EXPECT_EQ(report.final_inversions, 0u);
    EXPECT_EQ(report.comparisons, report.rounds * n);
    EXPECT_LE(report.swaps, report.comparisons);
    EXPECT_EQ(a, oracle_sort(a));
  }
}

TEST(SpinSort, ZeroBudgetDoesNothing) {
  RngStream rng(3);
  auto a = reverse_input(6);
  const auto report =
      spin_the_bottle_sort(a, rng, TerminationMode::fixed_budget(0));
  EXPECT_EQ(report.comparisons, 0u);
  EXPECT_FALSE(report.sorted);
  EXPECT_EQ(report.initial_inversions, 15u);
  EXPECT_EQ(report.final_inversions, 15u);
}

TEST(SpinSort, FixedBudgetRunsExactlyBudgetedRounds) {
  RngStream rng(3);
  auto a = reverse_input(10);
  const auto report =
      spin_the_bottle_sort(a, rng, TerminationMode::fixed_budget(7));
  EXPECT_EQ(report.rounds, 7u);
  EXPECT_EQ(report.comparisons, 70u);
}

TEST(SpinSort, FixedBudgetTraceIgnoresKeys) {
  const auto budget = default_spin_budget(32);
  Trace first, second;
  {
    RngStream rng(11);
    auto a = random_permutation(32, rng);
    RngStream sort_rng(99);
    spin_the_bottle_sort(a, sort_rng, TerminationMode::fixed_budget(budget),
                         &first);
  }
  {
    auto a = reverse_input(32);
    RngStream sort_rng(99);
    spin_the_bottle_sort(a, sort_rng, TerminationMode::fixed_budget(budget),
                         &second);
  }
  EXPECT_EQ(first, second);
  EXPECT_EQ(first.ops.size(), budget * 32);
}

// Mean comparisons over 30 seeds on the paired adversarial input at n = 64
// within a factor 2 of n(n-1)H_{n/4}/2 - n^2/2.
TEST(SpinSort, AdversarialMeanNearLowerBoundFormula) {
  constexpr std::size_t kN = 64;
  constexpr int kSeeds = 30;
  double total = 0.0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    RngStream rng(9000 + static_cast<std::uint64_t>(seed));
    auto a = adversarial_input(kN);
    total += static_cast<double>(spin_the_bottle_sort(a, rng).comparisons);
  }
  const double mean = total / kSeeds;
  const double bound =
      kN * (kN - 1.0) * harmonic(kN / 4) / 2.0 - kN * kN / 2.0;
  EXPECT_GE(mean, bound / 2.0);
  EXPECT_LE(mean, bound * 2.0);
}

TEST(SpinSort, InversionsNeverIncreaseAcrossRounds) {
  // compare-exchange can only remove inversions, so per-round inversion
  // counts are nonincreasing for every seed, hence also in the mean
  constexpr std::size_t kN = 64;
  constexpr int kSeeds = 100;
  std::vector<std::vector<std::uint64_t>> profiles;
  for (int seed = 0; seed < kSeeds; ++seed) {
    RngStream input_rng(500 + static_cast<std::uint64_t>(seed));
    auto a = random_permutation(kN, input_rng);
    RngStream rng(1000 + static_cast<std::uint64_t>(seed));
    std::vector<std::uint64_t> inversions{inversion_total(a)};
    while (inversions.back() > 0) {
      spin_round(a, rng);
      inversions.push_back(inversion_total(a));
    }
    for (std::size_t j = 1; j < inversions.size(); ++j)
      ASSERT_LE(inversions[j], inversions[j - 1]);
    profiles.push_back(std::move(inversions));
  }
  std::size_t longest = 0;
  for (const auto& profile : profiles) longest = std::max(longest, profile.size());
  double prev_mean = 0.0;
  for (std::size_t j = 0; j < longest; ++j) {
    double mean = 0.0;
    for (const auto& profile : profiles)
      mean += static_cast<double>(j < profile.size() ? profile[j] : 0);
    mean /= kSeeds;
    if (j > 0) {
      EXPECT_LE(mean, prev_mean);
    }
    prev_mean = mean;
  }
}

TEST(AnnealingPass, UnitWindowIsDeterministicBubblePass) {
  RngStream rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_in_range(rng, 2, 24));
    const auto input = random_permutation(n, rng);

    auto via_pass = input;
    RngStream pass_rng(1);  // consumed but every window has one cell
    annealing_pass(via_pass, 1, 1, pass_rng);

    auto manual = input;
    for (std::size_t i = 1; i + 1 <= n; ++i) compare_exchange(manual, i, i + 1);
    for (std::size_t i = n; i >= 2; --i) compare_exchange(manual, i - 1, i);
    EXPECT_EQ(via_pass, manual);
  }
}

TEST(AnnealingPass, SingleAdjacentInversionExample) {
  RngStream rng(77);
  auto a = tag_keys(std::vector<std::int64_t>{2, 1, 3, 4, 5, 6, 7, 8});
  const auto stats = annealing_pass(a, 1, 1, rng);
  EXPECT_TRUE(elements_sorted(a));
  EXPECT_EQ(stats.comparisons, 14u);
  EXPECT_EQ(stats.swaps, 1u);
}

TEST(AnnealingPass, StructuralCountIgnoresKeys) {
  for (std::uint64_t seed = 40; seed < 44; ++seed) {
    RngStream input_rng(seed);
    auto random = random_permutation(16, input_rng);
    auto reversed = reverse_input(16);
    RngStream rng_a(seed), rng_b(seed);
    EXPECT_EQ(annealing_pass(random, 16, 4, rng_a).comparisons, 120u);
    EXPECT_EQ(annealing_pass(reversed, 16, 4, rng_b).comparisons, 120u);
  }
}

TEST(AnnealingPass, StructuralCountAcrossParameters) {
  RngStream rng(123);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_in_range(rng, 2, 80));
    const auto temperature =
        static_cast<std::uint64_t>(uniform_in_range(rng, 1, 2 * static_cast<std::int64_t>(n)));
    const auto repetitions = static_cast<std::uint64_t>(uniform_in_range(rng, 1, 5));
    auto a = random_permutation(n, rng);
    const auto stats = annealing_pass(a, temperature, repetitions, rng);
    EXPECT_EQ(stats.comparisons, 2 * (n - 1) * repetitions);
    EXPECT_LE(stats.swaps, stats.comparisons);
  }
}

TEST(AnnealingPass, Contracts) {
  RngStream rng(1);
  auto a = sorted_input(4);
  EXPECT_THROW(annealing_pass(a, 0, 1, rng), contract_error);
  EXPECT_THROW(annealing_pass(a, 1, 0, rng), contract_error);
  auto single = sorted_input(1);
  EXPECT_THROW(annealing_pass(single, 1, 1, rng), contract_error);
}

TEST(AnnealingSort, TerminatorOnlyScheduleIsANoOp) {
  AnnealingSchedule terminator_only;
  terminator_only.entries = {{0, 0}};
  RngStream rng(5);
  auto a = reverse_input(8);
  const auto before = a;
  const auto report = annealing_sort(a, terminator_only, rng);
  EXPECT_EQ(report.comparisons, 0u);
  EXPECT_EQ(a, before);
  EXPECT_FALSE(report.sorted);
}

TEST(AnnealingSort, TrivialArraysCostNothing) {
  // 2 (n-1) sum(r) is zero when n < 2, so no pass runs
  RngStream rng(5);
  const auto schedule = practical_schedule(16);
  std::vector<TaggedElement> empty;
  auto report = annealing_sort(empty, schedule, rng);
  EXPECT_EQ(report.comparisons, 0u);
  EXPECT_TRUE(report.sorted);
  auto one = sorted_input(1);
  report = annealing_sort(one, schedule, rng);
  EXPECT_EQ(report.comparisons, 0u);
  EXPECT_EQ(report.rounds, 0u);
  EXPECT_TRUE(report.sorted);
}

TEST(AnnealingSort, RejectsInvalidSchedule) {
  AnnealingSchedule bad;
  bad.entries = {{2, 1}, {4, 1}, {0, 0}};
  RngStream rng(5);
  auto a = reverse_input(8);
  EXPECT_THROW(annealing_sort(a, bad, rng), contract_error);
}

TEST(AnnealingSort, ComparisonsEqualScheduleCostExactly) {
  RngStream rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_in_range(rng, 2, 200));
    const auto c_rep = static_cast<std::uint64_t>(uniform_in_range(rng, 1, 5));
    const auto tail = static_cast<std::uint64_t>(uniform_in_range(rng, 0, 9));
    const auto schedule = practical_schedule(n, c_rep, tail);
    auto a = random_permutation(n, rng);
    const auto report = annealing_sort(a, schedule, rng);
    EXPECT_EQ(report.comparisons, schedule_cost(schedule, n));
    EXPECT_EQ(a, oracle_sort(a));  // permutation preserved
  }
}

TEST(AnnealingSort, PracticalPresetSortsTypicalInputs) {
  RngStream rng(606);
  for (const std::size_t n : {2u, 3u, 16u, 100u, 256u}) {
    auto a = random_permutation(n, rng);
    const auto report = annealing_sort(a, practical_schedule(n), rng);
    EXPECT_TRUE(report.sorted) << "n=" << n;
    EXPECT_TRUE(elements_sorted(a));
  }
}

TEST(AnnealingSort, TraceDependsOnlyOnSeedAndSchedule) {
  const auto schedule = practical_schedule(64);
  std::vector<std::vector<TaggedElement>> inputs;
  RngStream input_rng(3);
  for (int k = 0; k < 5; ++k) inputs.push_back(random_permutation(64, input_rng));
  const auto result =
      obliviousness_check(AnnealConfig{schedule}, 424242, inputs);
  EXPECT_TRUE(result.identical);
}

TEST(Obliviousness, RejectsCheckSortedSpin) {
  std::vector<std::vector<TaggedElement>> inputs{sorted_input(8)};
  EXPECT_THROW(
      obliviousness_check(SpinConfig{TerminationMode::check_sorted()}, 1, inputs),
      contract_error);
}

TEST(Obliviousness, SingleInputIsTriviallyIdentical) {
  std::vector<std::vector<TaggedElement>> inputs{reverse_input(8)};
  const auto result = obliviousness_check(
      SpinConfig{TerminationMode::fixed_budget(4)}, 1, inputs);
  EXPECT_TRUE(result.identical);
}

TEST(Obliviousness, MismatchedLengthsAreRejected) {
  std::vector<std::vector<TaggedElement>> inputs{sorted_input(8), sorted_input(9)};
  EXPECT_THROW(obliviousness_check(SpinConfig{TerminationMode::fixed_budget(4)},
                                   1, inputs),
               contract_error);
}

TEST(GuessSort, SortedInputStopsAtFirstScan) {
  RngStream rng(8);
  auto a = sorted_input(12);
  const auto report = guess_sort(a, rng, 1 << 20);
  EXPECT_LE(report.comparisons, 12u);
  EXPECT_TRUE(report.sorted);
}

TEST(GuessSort, ZeroBudgetLeavesArrayUnsorted) {
  RngStream rng(8);
  auto a = reverse_input(12);
  const auto report = guess_sort(a, rng, 0);
  EXPECT_EQ(report.comparisons, 0u);
  EXPECT_FALSE(report.sorted);
}

TEST(GuessSort, EventuallySortsSmallArrays) {
  RngStream rng(808);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_permutation(8, rng);
    const auto report = guess_sort(a, rng, ~std::uint64_t{0});
    EXPECT_TRUE(report.sorted);
    EXPECT_TRUE(elements_sorted(a));
  }
}

TEST(GuessSort, NeedsTwoElements) {
  RngStream rng(8);
  auto a = sorted_input(1);
  EXPECT_THROW(guess_sort(a, rng, 100), contract_error);
}

TEST(BubbleSort, ReverseArrayCostsFullPasses) {
  auto a = reverse_input(8);
  const auto report = bubble_sort(a);
  // 7 sorting passes plus one clean pass, 7 comparisons each
  EXPECT_EQ(report.comparisons, 56u);
  EXPECT_EQ(report.rounds, 8u);
  EXPECT_TRUE(report.sorted);
}

TEST(BubbleSort, SortedInputTakesOneCleanPass) {
  auto a = sorted_input(9);
  const auto report = bubble_sort(a);
  EXPECT_EQ(report.rounds, 1u);
  EXPECT_EQ(report.swaps, 0u);
  EXPECT_EQ(report.comparisons, 8u);
}

TEST(OracleSort, ProducesNondecreasingKeyOriginOrder) {
  const auto a = tag_keys(std::vector<std::int64_t>{3, 1, 3, 2, 1});
  const auto sorted = oracle_sort(a);
  EXPECT_EQ(keys_of(sorted), (std::vector<std::int64_t>{1, 1, 2, 3, 3}));
  EXPECT_EQ(sorted[0].origin, 2u);  // ties keep origin order
  EXPECT_EQ(sorted[1].origin, 5u);
  EXPECT_EQ(sorted[3].origin, 1u);
  EXPECT_EQ(sorted[4].origin, 3u);
}

TEST(Reports, SortedFlagTracksFinalInversions) {
  RngStream rng(55);
  auto a = random_permutation(20, rng);
  const auto before = a;
  const auto report =
      spin_the_bottle_sort(a, rng, TerminationMode::fixed_budget(1));
  EXPECT_EQ(report.sorted, report.final_inversions == 0);
  EXPECT_EQ(report.n, 20u);
  EXPECT_EQ(report.initial_inversions, inversion_total(before));
  EXPECT_EQ(report.final_inversions, inversion_total(a));
}

TEST(DefaultSpinBudget, MatchesClosedForm) {
  EXPECT_EQ(default_spin_budget(1), 0u);
  // ceil(4*256 + 2*256*ln 256) = ceil(1024 + 2839.131...) = 3864
  EXPECT_EQ(default_spin_budget(256), 3864u);
}

}  // namespace
