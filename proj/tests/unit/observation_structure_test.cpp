#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "lck/observation_structure.hpp"
#include "support/gen.hpp"

using namespace lck;

TEST_CASE("agent sets are sorted and duplicate free") {
  AgentSet s(std::vector<std::string>{"b", "a", "a"});
  CHECK(s.items() == std::vector<std::string>{"a", "b"});
  CHECK(s.size() == 2);
  CHECK(s.contains("a"));
  CHECK_FALSE(s.contains("c"));
  CHECK(s.joined() == "a,b");
  CHECK(AgentSet().empty());
  CHECK(AgentSet::of({"a"}).subset_of(s));
  CHECK(AgentSet().subset_of(s));
  CHECK_FALSE(s.subset_of(AgentSet::of({"a"})));
  CHECK(s == AgentSet::of({"a", "b"}));
}

TEST_CASE("subset enumeration is ordered by size then members") {
  // Frozen against a by-hand enumeration.
  AgentSet two = AgentSet::of({"b", "a"});
  std::vector<AgentSet> expected2{AgentSet(), AgentSet::of({"a"}), AgentSet::of({"b"}),
                                 AgentSet::of({"a", "b"})};
  CHECK(subsets_of(two) == expected2);

  AgentSet three = AgentSet::of({"c", "a", "b"});
  std::vector<AgentSet> expected3{
      AgentSet(),
      AgentSet::of({"a"}),
      AgentSet::of({"b"}),
      AgentSet::of({"c"}),
      AgentSet::of({"a", "b"}),
      AgentSet::of({"a", "c"}),
      AgentSet::of({"b", "c"}),
      AgentSet::of({"a", "b", "c"}),
  };
  CHECK(subsets_of(three) == expected3);
}

TEST_CASE("joint observations are cartesian products in agent order") {
  ObservationStructure c1 = testgen::make_c1();
  ObservationStructure c2 = testgen::make_c2();

  const auto& full1 = c1.joint_observations(c1.full_group());
  REQUIRE(full1.size() == 1);
  CHECK(full1[0].key() == "(oa,ob)");

  const auto& full2 = c2.joint_observations(c2.full_group());
  REQUIRE(full2.size() == 2);
  CHECK(full2[0].key() == "(oa,ob1)");
  CHECK(full2[1].key() == "(oa,ob2)");
  CHECK(full2 == c2.full_observations());

  const auto& only_b = c2.joint_observations(AgentSet::of({"b"}));
  REQUIRE(only_b.size() == 2);
  CHECK(only_b[0].key() == "(ob1)");
  CHECK(only_b[1].group() == AgentSet::of({"b"}));

  const auto& empty = c2.joint_observations(AgentSet());
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].empty());

  CHECK_THROWS_AS(c2.joint_observations(AgentSet::of({"z"})), Error);
}

TEST_CASE("full observation count is the product of the observation sets") {
  ObservationStructure c2 = testgen::make_c2();
  std::size_t product = 1;
  for (const auto& agent : c2.agents()) product *= c2.observations(agent).size();
  CHECK(c2.full_observations().size() == product);
}

TEST_CASE("extensions collect full observations agreeing on the group") {
  ObservationStructure c2 = testgen::make_c2();
  JointObservation oa(std::vector<std::pair<std::string, std::string>>{{"a", "oa"}});

  auto ext = c2.extension_set(oa);
  REQUIRE(ext.size() == 2);
  CHECK(ext[0].key() == "(oa,ob1)");
  CHECK(ext[1].key() == "(oa,ob2)");

  auto full = c2.full_observations()[0];
  auto self = c2.extension_set(full);
  REQUIRE(self.size() == 1);
  CHECK(self[0] == full);

  auto all = c2.extension_set(JointObservation());
  CHECK(all.size() == 2);

  const auto& idx = c2.extension_indices(oa);
  REQUIRE(idx.size() == 2);
  CHECK(c2.full_observations()[idx[0]] == ext[0]);
  CHECK(c2.full_observations()[idx[1]] == ext[1]);
}

TEST_CASE("composition folds the distinct values") {
  ObservationStructure c1 = testgen::make_c1();
  CHECK(c1.compose_results({"0", "1"}) == "1");
  CHECK(c1.compose_results({"1"}) == "1");
  CHECK(c1.compose_results({"0", "0", "1"}) == "1");
  CHECK(c1.compose_results({"1", "0"}) == c1.compose_results({"0", "1"}));
  CHECK_THROWS_AS(c1.compose_results({}), DomainError);
  CHECK_THROWS_AS(c1.compose_results({"2"}), DomainError);

  ObservationStructure mn(
      {"a"}, {{"a", {"oa"}}}, {"0", "1"}, ComposeOp::Min);
  CHECK(mn.compose_results({"0", "1"}) == "0");

  ObservationStructure un(
      {"a"}, {{"a", {"oa"}}}, {"0", "1", "01"}, ComposeOp::Union);
  CHECK(un.compose_results({"0", "1"}) == "01");
  CHECK(un.compose_results({"01", "1"}) == "01");
  CHECK(un.compose_results({"0"}) == "0");
}

TEST_CASE("composition satisfies the partition condition on every subset") {
  // Independent check: composing blockwise then composing the block results
  // equals composing directly, for every split of every subset of R.
  auto check_structure = [](const ObservationStructure& st) {
    const auto& results = st.results();
    const std::size_t n = results.size();
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
      std::vector<std::string> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t(1) << i)) subset.push_back(results[i]);
      std::string direct = st.compose_results(subset);
      for (std::size_t split = 1; split < (std::size_t(1) << subset.size()) - 1; ++split) {
        std::vector<std::string> left, right;
        for (std::size_t i = 0; i < subset.size(); ++i)
          ((split >> i) & 1 ? left : right).push_back(subset[i]);
        if (left.empty() || right.empty()) continue;
        CHECK(st.compose_results({st.compose_results(left), st.compose_results(right)}) ==
              direct);
      }
    }
  };
  check_structure(testgen::make_c1());
  check_structure(ObservationStructure({"a"}, {{"a", {"oa"}}}, {"0", "1"}, ComposeOp::Min));
  check_structure(
      ObservationStructure({"a"}, {{"a", {"oa"}}}, {"0", "1", "01"}, ComposeOp::Union));
}

TEST_CASE("structure validation rejects malformed signatures") {
  CHECK_THROWS_AS(ObservationStructure({}, {}, {"0"}, ComposeOp::Max), Error);
  CHECK_THROWS_AS(ObservationStructure({"a"}, {{"a", {}}}, {"0"}, ComposeOp::Max), Error);
  CHECK_THROWS_AS(ObservationStructure({"a"}, {}, {"0"}, ComposeOp::Max), Error);
  CHECK_THROWS_AS(ObservationStructure({"a"}, {{"a", {"oa"}}}, {}, ComposeOp::Max), Error);
  CHECK_THROWS_AS(
      ObservationStructure({"a"}, {{"a", {"oa"}}, {"z", {"oz"}}}, {"0"}, ComposeOp::Max),
      Error);
  // Union of "0" and "1" is "01", which is not a result here.
  CHECK_THROWS_AS(ObservationStructure({"a"}, {{"a", {"oa"}}}, {"0", "1"}, ComposeOp::Union),
                  Error);
}

TEST_CASE("config json round trips") {
  ObservationStructure c2 = testgen::make_c2();
  ObservationStructure back = ObservationStructure::from_json_text(c2.to_json_text());
  CHECK(back.agents() == c2.agents());
  CHECK(back.results() == c2.results());
  CHECK(back.full_observations() == c2.full_observations());
  CHECK(back.observations("b") == c2.observations("b"));

  CHECK_THROWS_AS(ObservationStructure::from_json_text("{"), Error);
  CHECK_THROWS_AS(ObservationStructure::from_json_text("[]"), Error);
  CHECK_THROWS_AS(ObservationStructure::from_json_text(R"({"agents": ["a"]})"), Error);
  CHECK_THROWS_AS(ObservationStructure::from_json_text(R"({
    "agents": ["a"], "observations": {"a": ["oa"]}, "results": ["0"],
    "compose": "median"
  })"),
                  Error);
  CHECK_THROWS_AS(ObservationStructure::from_json_file("/nonexistent/c.json"), Error);
}

TEST_CASE("result and observation indexing") {
  ObservationStructure c2 = testgen::make_c2();
  CHECK(c2.result_index("0") == 0);
  CHECK(c2.result_index("1") == 1);
  CHECK(c2.has_result("1"));
  CHECK_FALSE(c2.has_result("2"));
  CHECK(c2.full_observation_index(c2.full_observations()[1]) == 1);
  CHECK(c2.has_agent("b"));
  CHECK_FALSE(c2.has_agent("c"));
  CHECK(c2.full_group() == AgentSet::of({"a", "b"}));
  CHECK(c2.group_subsets() == subsets_of(c2.full_group()));
}
