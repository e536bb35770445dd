#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "lck/formula.hpp"
#include "support/gen.hpp"

using namespace lck;

namespace {

FormulaPtr p() { return Formula::atom("p"); }
FormulaPtr q() { return Formula::atom("q"); }

JointObservation oa() {
  return JointObservation(std::vector<std::pair<std::string, std::string>>{{"a", "oa"}});
}

// Polarity walk written independently of the shipped counter: an occurrence
// of K with exactly `group` counts when the flip parity marks it negative.
int slow_negative_count(const FormulaPtr& f, const AgentSet& group, bool negative) {
  if (!f) return 0;
  switch (f->kind()) {
    case Kind::Atom:
    case Kind::ObsAtom:
    case Kind::Top:
    case Kind::Bottom:
      return 0;
    case Kind::Not:
      return slow_negative_count(f->left(), group, !negative);
    case Kind::And:
    case Kind::Or:
      return slow_negative_count(f->left(), group, negative) +
             slow_negative_count(f->right(), group, negative);
    case Kind::Implies:
      return slow_negative_count(f->left(), group, !negative) +
             slow_negative_count(f->right(), group, negative);
    case Kind::Know:
      return (negative && f->group() == group ? 1 : 0) +
             slow_negative_count(f->left(), group, negative);
  }
  return 0;
}

}  // namespace

TEST_CASE("printing uses minimal parentheses") {
  CHECK(print_formula(*Formula::know(AgentSet::of({"a"}), p())) == "K{a} p");
  CHECK(print_formula(*Formula::know(AgentSet(), p())) == "K{} p");
  CHECK(print_formula(*Formula::implies(p(), Formula::negate(p()))) == "p -> ~p");
  CHECK(print_formula(*Formula::obs_atom(oa(), "1")) == "obs{a}(oa)^1");
  CHECK(print_formula(*Formula::negate(Formula::conj(p(), q()))) == "~(p & q)");
  CHECK(print_formula(*Formula::conj(Formula::disj(p(), q()), Formula::atom("r"))) ==
        "(p | q) & r");
  CHECK(print_formula(*Formula::implies(p(), Formula::implies(q(), p()))) == "p -> q -> p");
  CHECK(print_formula(*Formula::implies(Formula::implies(p(), q()), p())) == "(p -> q) -> p");
  CHECK(print_formula(*Formula::conj(p(), Formula::disj(q(), p()))) == "p & (q | p)");
  CHECK(print_formula(*Formula::negate(Formula::know(AgentSet::of({"a"}), p()))) == "~K{a} p");
  CHECK(print_formula(*Formula::know(AgentSet::of({"b", "a"}), Formula::conj(p(), q()))) ==
        "K{a,b} (p & q)");
}

TEST_CASE("complexity counts connectives only") {
  CHECK(formula_complexity(*p()) == 0);
  CHECK(formula_complexity(*Formula::obs_atom(oa(), "0")) == 0);
  CHECK(formula_complexity(*Formula::negate(p())) == 1);
  CHECK(formula_complexity(*Formula::implies(Formula::know(AgentSet::of({"a"}), p()), p())) ==
        2);
}

TEST_CASE("structural comparison is a total order with pointer fast path") {
  FormulaPtr shared = Formula::conj(p(), q());
  CHECK(compare(shared, shared) == 0);
  CHECK(equal(Formula::implies(p(), q()), Formula::implies(p(), q())));
  CHECK_FALSE(equal(Formula::implies(p(), q()), Formula::implies(q(), p())));

  ObservationStructure c2 = testgen::make_c2();
  testgen::FormulaGen gen(c2, {.atoms = {"p", "q"}, .max_depth = 3}, 7);
  std::vector<FormulaPtr> fs;
  for (int i = 0; i < 40; ++i) fs.push_back(gen.formula());
  for (const auto& x : fs)
    for (const auto& y : fs) {
      CHECK(compare(x, y) == -compare(y, x));
      if (compare(x, y) == 0) CHECK(print_formula(*x) == print_formula(*y));
    }
  std::sort(fs.begin(), fs.end(),
            [](const FormulaPtr& x, const FormulaPtr& y) { return compare(x, y) < 0; });
  for (std::size_t i = 1; i < fs.size(); ++i) CHECK(compare(fs[i - 1], fs[i]) <= 0);
}

TEST_CASE("sequents store sorted duplicate-free members") {
  Sequent s;
  LabelledFormula sp{"s", p()};
  CHECK(s.add_antecedent(sp));
  CHECK_FALSE(s.add_antecedent({"s", Formula::atom("p")}));
  CHECK(s.antecedent().size() == 1);
  CHECK(s.add_antecedent({"s", q()}));
  CHECK(s.add_antecedent({"a", q()}));
  CHECK(s.antecedent().front().label == "a");

  RelationalAtom rel{"s", AgentSet::of({"a"}), "t"};
  CHECK(s.add_relation(rel));
  CHECK_FALSE(s.add_relation(rel));
  CHECK(s.has_relation(rel));
  CHECK(s.add_succedent({"t", p()}));

  CHECK(s.labels() == std::vector<std::string>{"a", "s", "t"});
  CHECK(s.contains_label("t"));
  CHECK_FALSE(s.contains_label("u"));

  CHECK(s.remove_antecedent(sp));
  CHECK_FALSE(s.remove_antecedent(sp));
  CHECK_FALSE(s.has_antecedent(sp));
  CHECK(s.has_succedent({"t", Formula::atom("p")}));

  Sequent t = s;
  CHECK(t == s);
  t.add_succedent({"u", q()});
  CHECK_FALSE(t == s);
  CHECK(t.labels() == std::vector<std::string>{"a", "s", "t", "u"});

  CHECK(s.atom_names() == std::vector<std::string>{"p", "q"});
}

TEST_CASE("sequent printing") {
  ObservationStructure c2 = testgen::make_c2();
  Sequent s;
  s.add_relation({"s", AgentSet::of({"a"}), "t"});
  s.add_antecedent({"s", p()});
  s.add_succedent({"t", q()});
  CHECK(print_sequent(s) == "s ~{a} t, s: p |- t: q");

  Sequent right_only;
  right_only.add_succedent({"s", p()});
  CHECK(print_sequent(right_only) == "|- s: p");

  Sequent left_only;
  left_only.add_antecedent({"s", p()});
  CHECK(print_sequent(left_only) == "s: p |-");

  CHECK(print_relational_atom({"s", AgentSet::of({"b", "a"}), "t"}) == "s ~{a,b} t");
  CHECK(print_labelled_formula({"s", Formula::know(AgentSet(), p())}) == "s: K{} p");
}

TEST_CASE("negative knowledge occurrences follow sequent polarity") {
  AgentSet a = AgentSet::of({"a"});

  Sequent pos;
  pos.add_succedent({"s", Formula::know(a, p())});
  CHECK(negative_k_occurrences(pos, a) == 0);

  Sequent neg;
  neg.add_antecedent({"s", Formula::know(a, p())});
  neg.add_succedent({"s", q()});
  CHECK(negative_k_occurrences(neg, a) == 1);

  Sequent two;
  two.add_succedent({"s", Formula::negate(Formula::know(a, p()))});
  two.add_succedent({"s", Formula::implies(Formula::know(a, q()), Formula::atom("r"))});
  CHECK(negative_k_occurrences(two, a) == 2);

  Sequent nested;
  nested.add_antecedent({"s", Formula::know(a, p())});
  nested.add_succedent({"s", Formula::know(a, Formula::know(a, p()))});
  CHECK(negative_k_occurrences(nested, a) == 1);

  Sequent other_group;
  other_group.add_antecedent({"s", Formula::know(AgentSet::of({"b"}), p())});
  CHECK(negative_k_occurrences(other_group, a) == 0);
  CHECK(negative_k_occurrences(other_group, AgentSet::of({"b"})) == 1);
}

TEST_CASE("negative occurrence counter agrees with an independent walk") {
  ObservationStructure c2 = testgen::make_c2();
  testgen::FormulaGen gen(c2, {.atoms = {"p", "q"}, .max_depth = 4}, 11);
  for (int i = 0; i < 300; ++i) {
    FormulaPtr f = gen.formula();
    for (const AgentSet& g : c2.group_subsets()) {
      CHECK(negative_k_occurrences(*f, g, true) == slow_negative_count(f, g, true));
      CHECK(negative_k_occurrences(*f, g, false) == slow_negative_count(f, g, false));
    }
  }

  testgen::SequentGen sgen(c2, {.atoms = {"p", "q"}, .max_depth = 3}, 13);
  for (int i = 0; i < 100; ++i) {
    Sequent s = sgen.sequent();
    int total = 0;
    for (const AgentSet& g : c2.group_subsets()) {
      int expected = 0;
      for (const auto& lf : s.antecedent()) expected += slow_negative_count(lf.formula, g, true);
      for (const auto& lf : s.succedent()) expected += slow_negative_count(lf.formula, g, false);
      CHECK(negative_k_occurrences(s, g) == expected);
      total += expected;
    }
    CHECK(negative_k_occurrences_all(s) == total);
  }
}
