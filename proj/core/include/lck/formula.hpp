#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lck/observation_structure.hpp"

namespace lck {

enum class Kind { Atom, ObsAtom, Top, Bottom, Not, And, Or, Implies, Know };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula tree. Subtrees are shared; every accessor is only
/// meaningful for the kinds listed next to it.
class Formula {
 public:
  static FormulaPtr atom(std::string name);
  /// Observation atoms carry a nonempty-group joint observation; the empty
  /// group is rejected (the calculus never introduces one and the concrete
  /// syntax has no way to write one).
  static FormulaPtr obs_atom(JointObservation obs, std::string result);
  static FormulaPtr top();
  static FormulaPtr bottom();
  static FormulaPtr negate(FormulaPtr body);
  static FormulaPtr conj(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr disj(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr implies(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr know(AgentSet group, FormulaPtr body);

  Kind kind() const { return kind_; }
  const std::string& atom_name() const { return text_; }      // Atom
  const JointObservation& observation() const { return obs_; } // ObsAtom
  const std::string& result() const { return text_; }          // ObsAtom
  const AgentSet& group() const { return group_; }             // ObsAtom, Know
  const FormulaPtr& left() const { return left_; }   // Not, Know body, binary lhs
  const FormulaPtr& right() const { return right_; } // binary rhs

 private:
  explicit Formula(Kind kind) : kind_(kind) {}
  static FormulaPtr binary(Kind kind, FormulaPtr lhs, FormulaPtr rhs);

  Kind kind_;
  std::string text_;
  JointObservation obs_;
  AgentSet group_;
  FormulaPtr left_;
  FormulaPtr right_;
};

/// Structural total order; 0 iff structurally equal. Shared subtrees compare
/// equal by pointer without descending.
int compare(const Formula& x, const Formula& y);
int compare(const FormulaPtr& x, const FormulaPtr& y);
bool equal(const FormulaPtr& x, const FormulaPtr& y);

/// Connective count; atoms, observation atoms, top and bottom count 0.
int formula_complexity(const Formula& f);

/// Minimal parenthesization: ~ and K bind tightest, then &, then |, then ->
/// (right-associative). parse_formula(print_formula(f)) == f.
std::string print_formula(const Formula& f);

struct LabelledFormula {
  std::string label;
  FormulaPtr formula;
};

int compare(const LabelledFormula& x, const LabelledFormula& y);
bool operator<(const LabelledFormula& x, const LabelledFormula& y);
bool operator==(const LabelledFormula& x, const LabelledFormula& y);

struct RelationalAtom {
  std::string left;
  AgentSet group;
  std::string right;

  auto operator<=>(const RelationalAtom&) const = default;
};

/// "s ~{a,b} t"
std::string print_relational_atom(const RelationalAtom& r);
/// "s: K{a} p"
std::string print_labelled_formula(const LabelledFormula& f);

/// Antecedent/succedent as canonically sorted duplicate-free vectors;
/// relational atoms live only on the left. Sorted storage keeps printing,
/// rule selection and membership tests ("be not in Gamma") deterministic
/// and cheap.
class Sequent {
 public:
  Sequent() = default;
  Sequent(Sequent&&) = default;
  Sequent& operator=(Sequent&&) = default;
  // Copies shed the label cache: copies exist to be mutated into premises.
  Sequent(const Sequent& other)
      : relations_(other.relations_),
        antecedent_(other.antecedent_),
        succedent_(other.succedent_) {}
  Sequent& operator=(const Sequent& other) {
    relations_ = other.relations_;
    antecedent_ = other.antecedent_;
    succedent_ = other.succedent_;
    labels_cache_.clear();
    labels_valid_ = false;
    return *this;
  }

  const std::vector<RelationalAtom>& relations() const { return relations_; }
  const std::vector<LabelledFormula>& antecedent() const { return antecedent_; }
  const std::vector<LabelledFormula>& succedent() const { return succedent_; }

  bool add_relation(RelationalAtom r);
  bool add_antecedent(LabelledFormula f);
  bool add_succedent(LabelledFormula f);
  bool remove_antecedent(const LabelledFormula& f);
  bool remove_succedent(const LabelledFormula& f);

  bool has_relation(const RelationalAtom& r) const;
  bool has_antecedent(const LabelledFormula& f) const;
  bool has_succedent(const LabelledFormula& f) const;

  /// Every label of every member, sorted and duplicate-free. The reference
  /// is invalidated by the next mutation.
  const std::vector<std::string>& labels() const;
  /// Every atomic proposition name anywhere in the sequent.
  std::vector<std::string> atom_names() const;
  bool contains_label(const std::string& label) const;

  bool operator==(const Sequent& other) const {
    return relations_ == other.relations_ && antecedent_ == other.antecedent_ &&
           succedent_ == other.succedent_;
  }

 private:
  std::vector<RelationalAtom> relations_;
  std::vector<LabelledFormula> antecedent_;
  std::vector<LabelledFormula> succedent_;
  mutable std::vector<std::string> labels_cache_;
  mutable bool labels_valid_ = false;
};

/// "s ~{a} t, s: K{a} p |- t: p"; an empty side stays empty.
std::string print_sequent(const Sequent& seq);

/// Negative-polarity occurrences of K over exactly `group`: negative at the
/// top of the antecedent, positive in the succedent; polarity flips under ~
/// and left of ->; K bodies keep polarity. Relational atoms contribute 0.
int negative_k_occurrences(const Sequent& seq, const AgentSet& group);
int negative_k_occurrences(const Formula& f, const AgentSet& group, bool negative);

/// Aggregate variant counting every knowledge operator regardless of group.
int negative_k_occurrences_all(const Sequent& seq);

}  // namespace lck
