#include "supercrystal/supercrystal.hpp"

#include <gtest/gtest.h>

using namespace supercrystal;

TEST(Parse, IntegerLists) {
  EXPECT_EQ(parse_int_list("1,-1,1,7,5"), (std::vector<Int>{1, -1, 1, 7, 5}));
  EXPECT_EQ(parse_int_list(" -3 , 4"), (std::vector<Int>{-3, 4}));
  EXPECT_TRUE(parse_int_list("").empty());
  EXPECT_THROW(parse_int_list("1,,2"), std::invalid_argument);
  EXPECT_THROW(parse_int_list("1,x"), std::invalid_argument);
  EXPECT_THROW(parse_int_list("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_int_list("1,"), std::invalid_argument);
}

TEST(Parse, Parities) {
  EXPECT_EQ(parse_parities("1,1,0,0,0"), (std::vector<int>{1, 1, 0, 0, 0}));
  EXPECT_THROW(parse_parities("1,2"), std::invalid_argument);
  EXPECT_THROW(parse_parities(""), std::invalid_argument);
}

TEST(Json, ContextAndWeightRoundTrip) {
  auto ctx = build_context(3, 2, {1, 1, 0, 0, 0}, 3);
  auto j = context_to_json(ctx);
  EXPECT_EQ(j.dump(), R"({"p":3,"parities":[1,1,0,0,0]})");
  auto back = context_from_json(j);
  EXPECT_EQ(back.parities(), ctx.parities());
  EXPECT_EQ(back.p(), 3);
  EXPECT_EQ(back.theta(), ctx.theta());

  Weight w{1, -1, 1, 7, 5};
  EXPECT_EQ(weight_to_json(w).dump(), "[1,-1,1,7,5]");
  EXPECT_EQ(weight_from_json(json::parse("[1,-1,1,7,5]")), w);
  EXPECT_THROW(context_from_json(json::parse(R"({"p":4,"parities":[1,0]})")), std::invalid_argument);
}

TEST(Json, AffineRoundTrip) {
  auto ctx = build_context(3, 2, {1, 1, 0, 0, 0}, 3);
  Weight w{1, -1, 1, 7, 5};
  auto x = wt_of(ctx, w);
  EXPECT_EQ(affine_to_json(x).dump(), R"({"delta":-3,"lambda":[3,-1,-2]})");
  EXPECT_EQ(affine_from_json(affine_to_json(x), 3), x);
  EXPECT_EQ(format_affine(x), "3L0 - L1 - 2L2 - 3d");

  auto ctx0 = build_context(3, 2, {1, 1, 0, 0, 0}, 0);
  auto x0 = wt_of(ctx0, w);
  EXPECT_EQ(affine_to_json(x0).dump(), R"({"gamma":{"1":-1,"6":1,"9":1}})");
  EXPECT_EQ(affine_from_json(affine_to_json(x0), 0), x0);
  EXPECT_EQ(format_affine(x0), "-g1 + g6 + g9");
  EXPECT_EQ(format_affine(AffineWeight(5)), "0");
  EXPECT_THROW(affine_from_json(json::parse(R"({"delta":0,"lambda":[1,2]})"), 3), std::invalid_argument);
}

TEST(Json, GraphRoundTripAndDot) {
  auto ctx = build_context(3, 2, {1, 1, 0, 0, 0}, 3);
  auto g = crystal_component(ctx, Weight{1, -1, 1, 7, 5}, 2);
  auto back = graph_from_json(graph_to_json(g));
  EXPECT_EQ(back.nodes, g.nodes);
  ASSERT_EQ(back.edges.size(), g.edges.size());
  EXPECT_EQ(graph_to_dot(back), graph_to_dot(g));

  auto g1 = crystal_component(ctx, Weight{1, -1, 1, 7, 5}, 1);
  EXPECT_EQ(graph_to_dot(g1),
            "digraph crystal {\n"
            "  n0 [label=\"(1,-1,1,7,5)\"];\n"
            "  n1 [label=\"(1,-1,1,7,6)\"];\n"
            "  n2 [label=\"(0,-1,1,7,5)\"];\n"
            "  n3 [label=\"(1,-1,1,6,5)\"];\n"
            "  n0 -> n1 [label=\"r=0,f\"];\n"
            "  n0 -> n2 [label=\"r=1,e\"];\n"
            "  n0 -> n3 [label=\"r=2,e\"];\n"
            "}\n");
  EXPECT_THROW(graph_from_json(json::parse(R"({"nodes":[[0]],"edges":[{"from":0,"to":0,"r":0,"dir":"x"}]})")),
               std::invalid_argument);
}

TEST(Json, BlocksSchema) {
  auto ctx = build_context(3, 2, {1, 1, 0, 0, 0}, 3);
  auto blocks = partition_blocks(ctx, {Weight{1, -1, 1, 7, 5}, Weight{0, 0, 0, 0, 0}});
  auto j = blocks_to_json(blocks);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["weights"].dump(), "[[1,-1,1,7,5]]");
  EXPECT_EQ(j[0]["wt"].dump(), R"({"delta":-3,"lambda":[3,-1,-2]})");
}

TEST(Verify, CounterexamplesAreMinimised) {
  PropertyResult pr{"demo"};
  auto ctx3 = build_context(2, 1, {0, 1, 0}, 0);
  auto ctx2 = build_context(1, 1, {0, 1}, 0);
  pr.check(false, [&] { return make_ce(ctx3, Weight{0, 0, 0}, "a"); });
  pr.check(false, [&] { return make_ce(ctx2, Weight{3, 0}, "b"); });
  pr.check(false, [&] { return make_ce(ctx2, Weight{-1, 1}, "c"); });
  pr.check(true, [&] { return make_ce(ctx2, Weight{0, 0}, "never"); });
  EXPECT_EQ(pr.checked, 4u);
  EXPECT_EQ(pr.failed, 3u);
  ASSERT_TRUE(pr.counterexample);
  EXPECT_EQ(pr.counterexample->detail, "c");
  EXPECT_EQ(format_counterexample(*pr.counterexample), "parities=0,1 p=0 weight=-1,1 : c");
}

TEST(Verify, SuiteRegistry) {
  EXPECT_EQ(suite_names().size(), 7u);
  EXPECT_THROW(run_suite("nonsense", SweepConfig{}), std::invalid_argument);
  SweepConfig cfg;
  cfg.max_rank = 2;
  cfg.window = 2;
  cfg.primes = {3};
  auto rep = run_suite("oracle-equivalence", cfg);
  EXPECT_TRUE(rep.passed());
  EXPECT_NE(format_report(rep).find("PASS  oracle-equivalence"), std::string::npos);
  EXPECT_EQ(report_to_json(rep)["passed"], true);
}

TEST(Verify, SweepEnumeration) {
  SweepConfig cfg;
  EXPECT_EQ(sweep_parities(cfg, 2, 4).size(), 4u + 8u + 16u);
  cfg.parities = std::vector<int>{1, 0, 0};
  EXPECT_EQ(sweep_parities(cfg, 2, 4).size(), 1u);
  EXPECT_TRUE(sweep_parities(cfg, 4, 5).empty());
  std::size_t n = 0;
  for_each_weight(3, 2, [&](const Weight&) { ++n; });
  EXPECT_EQ(n, 125u);
}
