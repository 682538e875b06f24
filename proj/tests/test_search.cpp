#include <gtest/gtest.h>

#include <cmath>

#include "capbound/search.hpp"
#include "test_util.hpp"

using namespace capbound;

namespace {

SearchConfig loose() {
  SearchConfig c;
  c.dim_in = 2;
  c.dim_out = 2;
  c.dim_env = 2;
  c.iterations = 20;
  c.barrier_weight = 0.0;
  c.coherent_info_min = -2.0;
  c.ppt_eps = 1.0;
  c.q1_restarts = 3;
  c.num_seeds = 2;
  c.threads = 1;
  return c;
}

}  // namespace

TEST(SearchConfig, Validation) {
  SearchConfig c = loose();
  c.dim_out = 1;
  c.dim_env = 1;
  EXPECT_THROW(c.validate(), ConfigError);
  c = loose();
  c.ppt_eps = -0.1;
  EXPECT_THROW(c.validate(), ConfigError);
  c = loose();
  c.iterations = 0;
  EXPECT_THROW(search(c), ConfigError);
}

TEST(Search, ZeroPptToleranceRejectsEverything) {
  SearchConfig c = loose();
  c.ppt_eps = 0.0;
  c.coherent_info_min = 1e-4;
  c.barrier_weight = 1e-3;
  std::vector<SearchRecord> seen;
  const auto ranked = search(c, {}, [&](const SearchRecord& r) { seen.push_back(r); });
  EXPECT_TRUE(ranked.empty());
  ASSERT_EQ(seen.size(), 2u);
  for (const auto& r : seen) {
    EXPECT_FALSE(r.accepted);
    EXPECT_FALSE(r.hit);
    EXPECT_FALSE(r.reason.empty());
    EXPECT_TRUE(std::isinf(r.score()));
  }
}

TEST(Search, AcceptedRecordsRescoreAndAreSound) {
  const SearchConfig c = loose();
  const auto ranked = search(c);
  ASSERT_FALSE(ranked.empty());
  for (size_t i = 0; i < ranked.size(); ++i) {
    const SearchRecord& r = ranked[i];
    ASSERT_TRUE(r.accepted);
    ASSERT_TRUE(r.channel.has_value());
    const SearchScores s = rescore(r, c);
    EXPECT_NEAR(s.ppt_dist_n, r.scores.ppt_dist_n, 1e-6);
    EXPECT_NEAR(s.ppt_dist_nc, r.scores.ppt_dist_nc, 1e-6);
    EXPECT_NEAR(s.q_upper_n, r.scores.q_upper_n, 1e-6);
    EXPECT_NEAR(s.q_upper_nc, r.scores.q_upper_nc, 1e-6);
    EXPECT_NEAR(s.coh_info_lb, r.scores.coh_info_lb, 1e-6);
    EXPECT_GE(r.scores.q_upper_n, r.scores.coh_info_lb - 1e-5);
    if (i > 0) EXPECT_LE(ranked[i - 1].score(), r.score());
  }
}

TEST(Search, JsonRoundTrip) {
  const auto ranked = search(loose());
  ASSERT_FALSE(ranked.empty());
  const SearchRecord& r = ranked.front();
  const Json j = record_to_json(r);
  const SearchRecord back = record_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(back.start, r.start);
  EXPECT_EQ(back.iteration, r.iteration);
  EXPECT_EQ(back.accepted, r.accepted);
  EXPECT_EQ(back.hit, r.hit);
  EXPECT_EQ(back.reason, r.reason);
  EXPECT_EQ(back.scores.q_upper_n, r.scores.q_upper_n);
  ASSERT_TRUE(back.channel.has_value());
  for (int k = 0; k < r.channel->dim_env(); ++k)
    EXPECT_LT(test::max_abs_diff(back.channel->kraus()[k], r.channel->kraus()[k]), 1e-15);
  EXPECT_EQ(record_to_json(back).dump(), j.dump());
}

TEST(Search, DeterministicAcrossThreadCounts) {
  SearchConfig a = loose();
  SearchConfig b = loose();
  b.threads = 2;
  const auto ra = search(a);
  const auto rb = search(b);
  ASSERT_EQ(ra.size(), rb.size());
  for (size_t i = 0; i < ra.size(); ++i) EXPECT_EQ(record_to_json(ra[i]).dump(), record_to_json(rb[i]).dump());
}

TEST(Search, ResumeSkipsFinishedTasks) {
  const SearchConfig c = loose();
  std::vector<SearchRecord> all;
  const auto full = search(c, {}, [&](const SearchRecord& r) { all.push_back(r); });
  ASSERT_EQ(all.size(), 2u);
  std::vector<SearchRecord> fresh;
  const auto resumed = search(c, {all[0]}, [&](const SearchRecord& r) { fresh.push_back(r); });
  ASSERT_EQ(fresh.size(), 1u);
  EXPECT_EQ(fresh[0].seed, all[1].seed);
  ASSERT_EQ(resumed.size(), full.size());
  for (size_t i = 0; i < full.size(); ++i) EXPECT_EQ(record_to_json(resumed[i]).dump(), record_to_json(full[i]).dump());
}

TEST(Verdict, ErasureHalfIsNotBiPpt) {
  const BipptVerdict v = bippt_verdict(channels::erasure(2, 0.5));
  EXPECT_FALSE(v.bippt);
  EXPECT_NEAR(v.p_upper_certified, 2.0 * std::log2(1.5), 1e-5);
  EXPECT_NEAR(v.antidegradable_eps, 0.0, 1e-6);
  EXPECT_FALSE(v.new_candidate);
}

TEST(Verdict, EntanglementBreakingPairIsBiPpt) {
  const BipptVerdict v = bippt_verdict(channels::completely_depolarizing(2));
  EXPECT_TRUE(v.ppt_n);
  EXPECT_TRUE(v.ppt_nc == v.bippt);
}
