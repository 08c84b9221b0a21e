#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hapmatch/errors.hpp"
#include "hapmatch/matching.hpp"
#include "oracles.hpp"

using namespace hapmatch;
using hapmatch::oracle::hap_weakly_better;
using hapmatch::oracle::naive_blocking_count;

namespace {

PreferenceProfile profile_of(std::vector<std::vector<UavId>> haps, std::vector<std::vector<HapId>> uavs) {
  PreferenceProfile p;
  p.hap_prefs = std::move(haps);
  p.uav_prefs = std::move(uavs);
  return p;
}

// h0:[u0,u1], h1:[u0,u1], u0:[h1,h0], u1:[h0,h1]
PreferenceProfile crossed_two_by_two() { return profile_of({{0, 1}, {0, 1}}, {{1, 0}, {0, 1}}); }

// HAP i ranks UAVs rotated by i; UAV j ranks HAPs rotated by j + 1.
PreferenceProfile latin_square_three() {
  return profile_of({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}});
}

Matching from_pairs(std::size_t n, std::size_t m, std::vector<std::pair<HapId, UavId>> pairs) {
  Matching out(n, m);
  for (auto [h, u] : pairs) out.assign(u, h);
  return out;
}

}  // namespace

TEST(MatchingType, AssignTracksLoads) {
  Matching m(2, 3);
  m.assign(0, 1);
  m.assign(1, 1);
  EXPECT_EQ(m.load(1), 2u);
  EXPECT_EQ(m.size(), 2u);
  m.assign(1, 0);
  EXPECT_EQ(m.load(1), 1u);
  EXPECT_EQ(m.load(0), 1u);
  m.unassign(0);
  EXPECT_EQ(m.size(), 1u);
  EXPECT_EQ(m.uavs_of(0), (std::vector<UavId>{1}));
  EXPECT_THROW(validate(from_pairs(1, 2, {{0, 0}, {0, 1}}), std::vector<int>{1}), ContractViolation);
}

TEST(GaleShapley, SingleAgents) {
  const auto m = gale_shapley(profile_of({{0}}, {{0}}), std::vector<int>{1});
  EXPECT_EQ(m, from_pairs(1, 1, {{0, 0}}));
}

TEST(GaleShapley, CapacityAbsorbsAll) {
  const auto m = gale_shapley(profile_of({{1, 0}}, {{0}, {0}}), std::vector<int>{2});
  EXPECT_EQ(m, from_pairs(1, 2, {{0, 0}, {0, 1}}));
}

TEST(GaleShapley, CrossedPreferences) {
  const auto m = gale_shapley(crossed_two_by_two(), std::vector<int>{1, 1});
  EXPECT_EQ(m, from_pairs(2, 2, {{1, 0}, {0, 1}}));
}

TEST(GaleShapley, GoldenTraceWithSwap) {
  std::ostringstream trace;
  GaleShapleyOptions options;
  options.trace = &trace;
  GaleShapleyStats stats;
  gale_shapley(crossed_two_by_two(), std::vector<int>{1, 1}, &stats, options);
  EXPECT_EQ(trace.str(),
            "PROPOSE 0 0\n"
            "ACCEPT 0 0\n"
            "PROPOSE 1 0\n"
            "SWAP 0 0 1\n"
            "PROPOSE 0 1\n"
            "ACCEPT 0 1\n");
  EXPECT_EQ(stats.proposals, 3u);
  EXPECT_EQ(stats.swaps, 1u);
  EXPECT_EQ(stats.rejections, 0u);
}

TEST(GaleShapley, GoldenTraceWithReject) {
  std::ostringstream trace;
  GaleShapleyOptions options;
  options.trace = &trace;
  gale_shapley(profile_of({{0, 1}, {0, 1}}, {{0, 1}, {0, 1}}), std::vector<int>{1, 1}, nullptr, options);
  EXPECT_EQ(trace.str(),
            "PROPOSE 0 0\n"
            "ACCEPT 0 0\n"
            "PROPOSE 1 0\n"
            "REJECT 1 0\n"
            "PROPOSE 1 1\n"
            "ACCEPT 1 1\n");
}

TEST(GaleShapley, MalformedInputs) {
  EXPECT_THROW(gale_shapley(profile_of({{0, 0}}, {{0}, {0}}), std::vector<int>{1}), ContractViolation);
  EXPECT_THROW(gale_shapley(profile_of({{0}}, {{0}}), std::vector<int>{0}), ContractViolation);
  EXPECT_THROW(gale_shapley(profile_of({{0}}, {{0}}), std::vector<int>{1, 1}), ContractViolation);
}

TEST(GaleShapley, LatinSquareGivesEveryHapItsTopChoice) {
  const auto m = gale_shapley(latin_square_three(), std::vector<int>{1, 1, 1});
  EXPECT_EQ(m, from_pairs(3, 3, {{0, 0}, {1, 1}, {2, 2}}));
}

TEST(GaleShapley, RandomInstancesAreStableFullAndBounded) {
  Rng rng(2718);
  for (int i = 0; i < 300; ++i) {
    const auto inst = oracle::random_instance(rng, 20, 5, 50);
    const std::size_t n = inst.profile.n_haps();
    const std::size_t m = inst.profile.m_uavs();
    GaleShapleyStats stats;
    GaleShapleyOptions options;
    bool capacity_ok = true;
    options.on_step = [&](const Matching& partial) {
      for (HapId h = 0; h < n; ++h) capacity_ok &= static_cast<int>(partial.load(h)) <= inst.capacities[h];
    };
    const Matching result = gale_shapley(inst.profile, inst.capacities, &stats, options);
    const long long total = std::accumulate(inst.capacities.begin(), inst.capacities.end(), 0LL);

    ASSERT_TRUE(capacity_ok);
    ASSERT_TRUE(find_blocking_pairs(result, inst.profile, inst.capacities).empty());
    ASSERT_EQ(naive_blocking_count(result, inst.profile, inst.capacities), 0u);
    ASSERT_EQ(result.size(), std::min<std::size_t>(static_cast<std::size_t>(total), m));
    ASSERT_LE(stats.proposals, n * m);
  }
}

TEST(GaleShapley, DeterministicForSameProfile) {
  Rng rng(5);
  const auto inst = oracle::random_instance(rng, 20, 5, 50);
  EXPECT_EQ(gale_shapley(inst.profile, inst.capacities), gale_shapley(inst.profile, inst.capacities));
}

TEST(RandomMatching, SinglePairRegardlessOfSeed) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(random_matching(rng, 1, std::vector<int>{1}, 1), from_pairs(1, 1, {{0, 0}}));
  }
}

TEST(RandomMatching, PigeonholeOnCapacity) {
  Rng rng(3);
  const auto m = random_matching(rng, 2, std::vector<int>{2, 3}, 10);
  EXPECT_EQ(m.size(), 5u);
  EXPECT_EQ(m.load(0), 2u);
  EXPECT_EQ(m.load(1), 3u);
}

TEST(RandomMatching, SameSeedSameAssignment) {
  const std::vector<int> caps(30, 5);
  Rng a(99), b(99), c(100);
  const auto ma = random_matching(a, 30, caps, 120);
  EXPECT_EQ(ma, random_matching(b, 30, caps, 120));
  EXPECT_NE(ma, random_matching(c, 30, caps, 120));
}

TEST(RandomMatching, AlwaysValidAndFull) {
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 20));
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, 60));
    std::vector<int> caps(n);
    for (int& c : caps) c = static_cast<int>(rng.uniform_int(1, 5));
    const auto result = random_matching(rng, n, caps, m);
    ASSERT_NO_THROW(validate(result, caps));
    const long long total = std::accumulate(caps.begin(), caps.end(), 0LL);
    ASSERT_EQ(result.size(), std::min<std::size_t>(static_cast<std::size_t>(total), m));
  }
}

TEST(RandomMatching, SpreadsOverHaps) {
  // 4 HAPs with ample capacity: each should receive about a quarter of 40000 UAVs.
  Rng rng(12);
  const auto m = random_matching(rng, 4, std::vector<int>(4, 100000), 40000);
  for (HapId h = 0; h < 4; ++h) EXPECT_NEAR(static_cast<double>(m.load(h)), 10000.0, 400.0);
}

TEST(BlockingPairs, OtherPerfectMatchingOfCrossedInstance) {
  const auto bp = find_blocking_pairs(from_pairs(2, 2, {{0, 0}, {1, 1}}), crossed_two_by_two(), std::vector<int>{1, 1});
  ASSERT_EQ(bp.size(), 1u);
  EXPECT_EQ(bp[0], (BlockingPair{1, 0, BlockingReason::uav_prefers, BlockingReason::hap_prefers_over_worst}));
}

TEST(BlockingPairs, EmptyMatchingBlocksEveryPair) {
  const auto bp = find_blocking_pairs(Matching(2, 2), crossed_two_by_two(), std::vector<int>{1, 1});
  ASSERT_EQ(bp.size(), 4u);
  for (const auto& p : bp) {
    EXPECT_EQ(p.uav_reason, BlockingReason::uav_unmatched);
    EXPECT_EQ(p.hap_reason, BlockingReason::hap_has_free_slot);
  }
}

TEST(BlockingPairs, GaleShapleyOutputHasNone) {
  EXPECT_TRUE(find_blocking_pairs(gale_shapley(crossed_two_by_two(), std::vector<int>{1, 1}), crossed_two_by_two(),
                                  std::vector<int>{1, 1})
                  .empty());
}

TEST(BlockingPairs, AgreesWithDefinitionOnRandomMatchings) {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const auto inst = oracle::random_instance(rng, 6, 3, 12);
    const auto m = random_matching(rng, inst.profile.n_haps(), inst.capacities, inst.profile.m_uavs());
    ASSERT_EQ(find_blocking_pairs(m, inst.profile, inst.capacities).size(),
              naive_blocking_count(m, inst.profile, inst.capacities));
  }
}

TEST(BlockingPairs, RejectsOverCapacityMatching) {
  EXPECT_THROW(find_blocking_pairs(from_pairs(2, 2, {{0, 0}, {0, 1}}), crossed_two_by_two(), std::vector<int>{1, 1}),
               ContractViolation);
}

TEST(EnumerateStable, SingleAgents) {
  const auto all = enumerate_stable_matchings(profile_of({{0}}, {{0}}), std::vector<int>{1});
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], from_pairs(1, 1, {{0, 0}}));
}

TEST(EnumerateStable, CrossedInstanceHasUniqueStableMatching) {
  const auto all = enumerate_stable_matchings(crossed_two_by_two(), std::vector<int>{1, 1});
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], gale_shapley(crossed_two_by_two(), std::vector<int>{1, 1}));
}

TEST(EnumerateStable, LatinSquareHasThreeAndGaleShapleyIsHapOptimal) {
  const auto profile = latin_square_three();
  const std::vector<int> caps{1, 1, 1};
  const auto all = enumerate_stable_matchings(profile, caps);
  // Brute force over the 3! perfect matchings: identity, shift by one, shift by two.
  ASSERT_EQ(all.size(), 3u);
  EXPECT_NE(std::find(all.begin(), all.end(), from_pairs(3, 3, {{0, 1}, {1, 2}, {2, 0}})), all.end());
  EXPECT_NE(std::find(all.begin(), all.end(), from_pairs(3, 3, {{0, 2}, {1, 0}, {2, 1}})), all.end());
  const auto gs = gale_shapley(profile, caps);
  EXPECT_NE(std::find(all.begin(), all.end(), gs), all.end());
  for (const auto& other : all) EXPECT_TRUE(hap_weakly_better(gs, other, profile));
}

TEST(EnumerateStable, GuardRejectsLargeInstances) {
  Rng rng(1);
  EXPECT_THROW(enumerate_stable_matchings(oracle::random_profile(rng, 2, 9), std::vector<int>{1, 1}), SizeError);
  EXPECT_THROW(enumerate_stable_matchings(oracle::random_profile(rng, 3, 4), std::vector<int>{3, 3, 3}), SizeError);
}

TEST(EnumerateStable, OracleAgreementOnSmallInstances) {
  Rng rng(4242);
  for (int i = 0; i < 50; ++i) {
    const auto inst = oracle::random_small_instance(rng);
    const auto all = enumerate_stable_matchings(inst.profile, inst.capacities);
    ASSERT_FALSE(all.empty());
    const auto gs = gale_shapley(inst.profile, inst.capacities);
    ASSERT_NE(std::find(all.begin(), all.end(), gs), all.end());
    for (const auto& other : all) {
      ASSERT_EQ(naive_blocking_count(other, inst.profile, inst.capacities), 0u);
      ASSERT_TRUE(hap_weakly_better(gs, other, inst.profile));
    }
  }
}
