#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "lck/corpus.hpp"
#include "lck/engine.hpp"
#include "lck/model.hpp"
#include "lck/parser.hpp"
#include "support/gen.hpp"

using namespace lck;

namespace {

JointObservation joint(std::vector<std::pair<std::string, std::string>> parts) {
  return JointObservation(std::move(parts));
}

std::map<std::string, FormulaPtr> by_name(const std::vector<CorpusEntry>& entries) {
  std::map<std::string, FormulaPtr> out;
  for (const auto& e : entries) out[e.name] = e.formula;
  return out;
}

}  // namespace

TEST_CASE("corpus sizes follow the structure combinatorics") {
  // Independent count. Propositional: 3. H4..H7 per group: 16. H8 per nested
  // pair: 9. H9: 1. Per nonempty group g with joint observations J(g) and
  // results R: H10 one, H11 |J||R|(|R|-1), H12 |J||R|, H13 |R|^|J|, H14 per
  // observation |R|^|ext|.
  auto expected = [](const ObservationStructure& st) {
    std::size_t total = 3 + 4 * subsets_of(st.full_group()).size() + 1;
    std::size_t nested = 0;
    for (const AgentSet& small : subsets_of(st.full_group()))
      for (const AgentSet& big : subsets_of(st.full_group()))
        if (small.subset_of(big)) ++nested;
    total += nested;
    auto power = [](std::size_t base, std::size_t exp) {
      std::size_t out = 1;
      while (exp--) out *= base;
      return out;
    };
    for (const AgentSet& g : subsets_of(st.full_group())) {
      if (g.empty()) continue;
      const auto& joints = st.joint_observations(g);
      const std::size_t r = st.results().size();
      total += 1;
      total += joints.size() * r * (r - 1);
      total += joints.size() * r;
      total += power(r, joints.size());
      for (const JointObservation& e : joints) total += power(r, st.extension_indices(e).size());
    }
    return total;
  };

  ObservationStructure c1 = testgen::make_c1();
  ObservationStructure c2 = testgen::make_c2();
  auto corpus1 = hilbert_corpus(c1);
  auto corpus2 = hilbert_corpus(c2);
  CHECK(corpus1.size() == expected(c1));
  CHECK(corpus2.size() == expected(c2));
  CHECK(corpus1.size() == 56);
  CHECK(corpus2.size() == 74);

  std::set<std::string> names;
  for (const auto& e : corpus2) {
    CHECK(e.formula != nullptr);
    CHECK(names.insert(e.name).second);
  }
}

TEST_CASE("corpus names identify the instantiation") {
  auto corpus = by_name(hilbert_corpus(testgen::make_c2()));
  for (const char* name : {
           "H1",
           "H2",
           "H3",
           "H4{}",
           "H4{a,b}",
           "H5{a}",
           "H6{b}",
           "H7{}",
           "H8{}<={a,b}",
           "H8{a}<={a}",
           "H8{a}<={a,b}",
           "H9",
           "H10{b}",
           "H11{a}(oa)^0!=1",
           "H12{b}(ob2)^1",
           "H13{a}[(oa)^0]",
           "H13{b}[(ob1)^0,(ob2)^1]",
           "H14{a}(oa)[(oa,ob1)^0,(oa,ob2)^1]",
           "H14{a,b}(oa,ob2)[(oa,ob2)^0]",
       }) {
    CAPTURE(name);
    CHECK(corpus.count(name) == 1);
  }
  CHECK(corpus.count("H8{a,b}<={a}") == 0);
  CHECK(corpus.count("H10{}") == 0);
}

TEST_CASE("selected entries match their schemata") {
  ObservationStructure c2 = testgen::make_c2();
  auto corpus = by_name(hilbert_corpus(c2));
  FormulaPtr p = Formula::atom("p");
  FormulaPtr q = Formula::atom("q");
  AgentSet a = AgentSet::of({"a"});

  CHECK(equal(corpus["H1"], Formula::implies(p, Formula::implies(q, p))));
  CHECK(equal(corpus["H5{a}"], Formula::implies(Formula::know(a, p), p)));
  CHECK(equal(corpus["H9"], Formula::implies(p, Formula::know(c2.full_group(), p))));
  CHECK(equal(corpus["H8{a}<={a,b}"],
              Formula::implies(Formula::know(a, p), Formula::know(c2.full_group(), p))));

  FormulaPtr oa0 = Formula::obs_atom(joint({{"a", "oa"}}), "0");
  FormulaPtr oa1 = Formula::obs_atom(joint({{"a", "oa"}}), "1");
  CHECK(equal(corpus["H11{a}(oa)^0!=1"], Formula::implies(oa0, Formula::negate(oa1))));
  CHECK(equal(corpus["H12{a}(oa)^0"], Formula::implies(oa0, Formula::know(a, oa0))));
  CHECK(equal(corpus["H10{a}"], Formula::disj(oa0, oa1)));

  CHECK(equal(corpus["H13{a}[(oa)^0]"],
              Formula::implies(Formula::conj(oa0, Formula::know(a, p)),
                               Formula::know(AgentSet(), Formula::implies(oa0, p)))));

  // Observed 0 and 1 on the two full observations compose to max = 1.
  FormulaPtr full0 = Formula::obs_atom(JointObservation({{"a", "oa"}, {"b", "ob1"}}), "0");
  FormulaPtr full1 = Formula::obs_atom(JointObservation({{"a", "oa"}, {"b", "ob2"}}), "1");
  CHECK(equal(corpus["H14{a}(oa)[(oa,ob1)^0,(oa,ob2)^1]"],
              Formula::implies(Formula::conj(full0, full1), oa1)));
}

TEST_CASE("every corpus formula survives a print and parse round trip") {
  ObservationStructure c2 = testgen::make_c2();
  for (const auto& e : hilbert_corpus(c2)) {
    CAPTURE(e.name);
    CHECK(equal(parse_formula(print_formula(*e.formula), c2), e.formula));
  }
}

TEST_CASE("corpus samples prove and validate") {
  ObservationStructure c2 = testgen::make_c2();
  auto corpus = by_name(hilbert_corpus(c2));
  for (const char* name : {"H4{a}", "H8{}<={b}", "H13{a}[(oa)^1]",
                           "H14{b}(ob1)[(oa,ob1)^0]", "H10{a,b}"}) {
    CAPTURE(name);
    Sequent s;
    s.add_succedent({"s", corpus[name]});
    CHECK(prove(s, c2).provable);
    CHECK(check_validity(corpus[name], c2, {"p", "q", "r"}));
  }
}
