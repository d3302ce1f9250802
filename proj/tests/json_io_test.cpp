#include <gtest/gtest.h>

#include "proflq/catalog.hpp"
#include "proflq/json_io.hpp"
#include "test_support.hpp"

using namespace proflq;
using proflq::io::Json;

TEST(JsonRead, ModulesAndMaps) {
  const auto m = io::parse_module(Json::parse(R"({"m": 12, "factors": [2, 6]})"));
  EXPECT_EQ(m.factors(), (std::vector<std::int64_t>{2, 6}));
  const auto n = io::parse_module(Json::parse(R"({"m": 12, "factors": [12, 3]})"));
  EXPECT_EQ(n.order(), 36);
  EXPECT_TRUE(is_isomorphic(n, FiniteModule(FiniteRing(12), {3, 12})));
  EXPECT_THROW(io::parse_module(Json::parse(R"({"m": 12, "factors": [5]})")), InvalidArgument);
  EXPECT_THROW(io::parse_module(Json::parse(R"({"factors": [2]})")), InvalidArgument);

  const auto f = io::parse_map(Json::parse(R"({"source": {"m": 4, "factors": [4]}, "target": {"m": 4, "factors": [2]}, "matrix": [[1]]})"));
  EXPECT_TRUE(is_surjective(f));
  EXPECT_FALSE(is_injective(f));
  EXPECT_THROW(io::parse_map(Json::parse(R"({"source": {"m": 4, "factors": [4]}, "target": {"m": 4, "factors": [2]}, "matrix": [[1, 0]]})")),
               InvalidArgument);
  // A source given by the context must match the literal.
  EXPECT_THROW(io::parse_map(Json::parse(R"({"source": {"m": 4, "factors": [4]}, "matrix": [[1]]})"), FiniteModule(FiniteRing(4), {2}),
                             FiniteModule(FiniteRing(4), {2})),
               InvalidArgument);
}

TEST(JsonRead, EtaleSpacesAndTowers) {
  const auto e = io::parse_etale(Json::parse(R"({"base": ["a", "b"], "fibers": {"b": {"m": 4, "factors": [4]}, "a": {"m": 4, "factors": [2]}}})"));
  EXPECT_EQ(e.base(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(e.fiber("a").order(), 2);
  EXPECT_EQ(e.fiber("b").order(), 4);
  EXPECT_THROW(io::parse_etale(Json::parse(R"({"base": ["a"], "fibers": {"b": {"m": 4, "factors": [2]}}})")), InvalidArgument);
  EXPECT_THROW(io::parse_etale(Json::parse(R"({"base": ["a", "b"], "fibers": {"a": {"m": 4, "factors": [2]}, "b": {"m": 6, "factors": [2]}}})")),
               InvalidArgument);

  const auto t = io::parse_space_tower(Json::parse(
      R"({"levels": [["a"], ["a0", "a1"], ["x", "y", "z"]], "transitions": [{"a0": "a", "a1": "a"}, {"x": "a1", "y": "a0", "z": "a1"}]})"));
  EXPECT_EQ(t.depth(), 2u);
  EXPECT_EQ(t.transition_images(1), (std::vector<std::size_t>{1, 0, 1}));
  EXPECT_THROW(io::parse_space_tower(Json::parse(R"({"levels": [["a"], ["a0", "a1"]], "transitions": [{"a0": "a"}]})")),
               InvalidArgument);
  EXPECT_THROW(io::parse_space_tower(Json::parse(R"({"levels": [["a"], ["a0"]], "transitions": [{"a0": "b"}]})")), InvalidArgument);

  const auto pro = io::parse_etale_tower(Json::parse(R"({
    "kind": "pro",
    "base": {"levels": [["a"], ["a0", "a1"]], "transitions": [{"a0": "a", "a1": "a"}]},
    "levels": [
      {"base": ["a"], "fibers": {"a": {"m": 4, "factors": [4]}}},
      {"base": ["a0", "a1"], "fibers": {"a0": {"m": 4, "factors": [4]}, "a1": {"m": 4, "factors": [2, 4]}}}],
    "transitions": [{"a0": {"matrix": [[1]]}, "a1": {"matrix": [[0, 1]]}}]})"));
  EXPECT_EQ(coproduct_pro_direct(pro).tower.level(1).order(), 32);
  // The zero map is not surjective, so it is not a pro transition.
  EXPECT_THROW(io::parse_etale_tower(Json::parse(R"({
    "kind": "pro",
    "base": {"levels": [["a"], ["a0"]], "transitions": [{"a0": "a"}]},
    "levels": [{"base": ["a"], "fibers": {"a": {"m": 4, "factors": [4]}}}, {"base": ["a0"], "fibers": {"a0": {"m": 4, "factors": [4]}}}],
    "transitions": [{"a0": {"matrix": [[0]]}}]})")),
               InvalidArgument);

  const auto pi = io::parse_tower_map(Json::parse(R"({
    "source": {"levels": [["u"], ["u0", "u1"]], "transitions": [{"u0": "u", "u1": "u"}]},
    "target": {"levels": [["s"], ["s0"]], "transitions": [{"s0": "s"}]},
    "maps": [{"u": "s"}, {"u0": "s0", "u1": "s0"}]})"));
  EXPECT_EQ(pi.images(1), (std::vector<std::size_t>{0, 0}));
}

TEST(JsonRead, GroupsAndElements) {
  const auto s3 = io::parse_group(Json::parse(R"({"name": "S3", "perm_generators": [[2, 1, 3], [2, 3, 1]]})"));
  EXPECT_EQ(s3.order(), 6u);
  EXPECT_EQ(s3.name(), "S3");
  EXPECT_TRUE(are_isomorphic(s3, catalog::symmetric3()));
  EXPECT_EQ(io::parse_group(Json::parse(R"j({"catalog": "SL(2,3)"})j")).order(), 24u);
  EXPECT_EQ(io::parse_group(Json::parse(R"({"cyclic": 5})")).order(), 5u);
  EXPECT_EQ(io::parse_group(Json::parse(R"({"table": [[0, 1], [1, 0]]})")).order(), 2u);
  EXPECT_THROW(io::parse_group(Json::parse(R"({"table": [[0, 1], [0, 1]]})")), InvalidArgument);
  EXPECT_THROW(io::parse_group(Json::parse(R"({"catalog": "nope"})")), InvalidArgument);
  EXPECT_THROW(io::parse_group(Json::parse(R"({"perm_generators": [[2, 3, 4, 5, 1], [2, 1, 3, 4, 5]]})"), {60}), BudgetExceeded);

  // Elements by index or by a padded one-line permutation.
  const auto s4 = io::parse_group(Json::parse(R"({"perm_generators": [[2, 3, 4, 1], [2, 1, 3, 4]]})"));
  const std::size_t t = io::parse_element(Json::parse("[2, 1]"), s4);
  EXPECT_EQ(s4.label(t), "(1 2)");
  EXPECT_EQ(io::parse_element(Json::parse("[2, 1, 3, 4]"), s4), t);
  EXPECT_EQ(io::parse_element(Json::parse("3"), s4), 3u);
  EXPECT_THROW(io::parse_element(Json::parse("24"), s4), InvalidArgument);
  EXPECT_THROW(io::parse_element(Json::parse("[2, 1]"), catalog_group("Q8")), InvalidArgument);
}

TEST(JsonRead, HomsAgreeWithPointwiseInclusion) {
  const auto f = io::parse_hom(Json::parse(R"({
    "source": {"perm_generators": [[2, 3, 1, 4], [2, 1, 4, 3]]},
    "target": {"perm_generators": [[2, 3, 4, 1], [2, 1, 3, 4]]},
    "inclusion": true})"));
  EXPECT_EQ(f.source().order(), 12u);
  EXPECT_TRUE(f.is_injective());
  for (std::size_t a = 0; a < f.source().order(); ++a) EXPECT_EQ(f.target().permutations()[f(a)], f.source().permutations()[a]);

  // The quotient D4 -> C2 killing the rotations, from generator images.
  const auto q = io::parse_hom(Json::parse(R"({
    "source": {"perm_generators": [[2, 3, 4, 1], [3, 2, 1, 4]]},
    "target": {"cyclic": 2},
    "generator_images": {"generators": [[2, 3, 4, 1], [3, 2, 1, 4]], "images": [0, 1]}})"));
  EXPECT_EQ(q.kernel().size(), 4u);
  EXPECT_EQ(q(io::parse_element(Json::parse("[2, 3, 4, 1]"), q.source())), 0u);
  EXPECT_EQ(q(io::parse_element(Json::parse("[2, 1, 4, 3]"), q.source())), 1u);
  EXPECT_THROW(io::parse_hom(Json::parse(R"({
    "source": {"cyclic": 4}, "target": {"cyclic": 2},
    "generator_images": {"generators": [1], "images": [0, 1]}})")),
               InvalidArgument);
  // C4 -> C3 sending the generator to 1 is not a homomorphism.
  EXPECT_THROW(io::parse_hom(Json::parse(R"({"source": {"cyclic": 4}, "target": {"cyclic": 3}, "generator_images": {"generators": [1], "images": [1]}})")),
               InvalidArgument);
}

TEST(JsonRead, GroupTowersAndThreads) {
  const auto c = io::parse_group_tower(Json::parse(R"({"cyclic_p_adic": {"p": 2, "depth": 2}})"));
  EXPECT_EQ(c.level(2).order(), 8u);
  EXPECT_EQ(io::truncate(c, 1).depth(), 1u);
  const auto k = io::parse_group_tower(Json::parse(R"({"constant": {"catalog": "S3"}, "depth": 3})"));
  EXPECT_EQ(k.depth(), 3u);
  const auto t = io::parse_group_tower(Json::parse(R"({"levels": [{"cyclic": 2}, {"cyclic": 4}], "transitions": [[0, 1, 0, 1]]})"));
  EXPECT_EQ(t.transition(0)(3), 1u);
  EXPECT_THROW(io::parse_group_tower(Json::parse(R"({"levels": [{"cyclic": 4}, {"cyclic": 2}], "transitions": [[0, 1]]})")),
               InvalidArgument);

  const auto x = io::parse_element_thread(Json::parse(R"({"elements": [1, 3]})"), t);
  EXPECT_EQ(x, (std::vector<std::size_t>{1, 3}));
  const auto s = io::parse_subgroup_thread(Json::parse(R"({"subgroups": [[], [2]]})"), t);
  EXPECT_EQ(s[1], (Subgroup{0, 2}));
}

TEST(JsonWrite, CanonicalAndDeterministic) {
  const auto m = FiniteModule(FiniteRing(12), {2, 6});
  EXPECT_EQ(io::to_json(m).dump(), R"({"factors":[2,6],"m":12,"order":12})");
  EXPECT_EQ(io::big(BigInt(1) << 70), Json("1180591620717411303424"));
  const auto rc = rep_classes({2, 1}, catalog::symmetric3());
  EXPECT_EQ(io::to_json(rc).dump(), io::to_json(rep_classes({2, 1}, catalog::symmetric3())).dump());
  const Json j = io::to_json(rc);
  EXPECT_EQ(j["class_count"], 2);
  EXPECT_EQ(j["classes"][1]["orbit_size"], 3);
  EXPECT_EQ(j["classes"][1]["centralizer_order"], 2);
  const std::string table = io::to_table(Json{{"b", Json{{"c", 1}}}, {"a", Json::array({1, 2})}});
  EXPECT_EQ(table, "a = [1,2]\nb.c = 1\n");
}
