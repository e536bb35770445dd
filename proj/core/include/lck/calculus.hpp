#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lck/formula.hpp"
#include "lck/observation_structure.hpp"

namespace lck {

enum class RuleId {
  NegL,
  NegR,
  OrL,
  OrR,
  AndL,
  AndR,
  ImpL,
  ImpR,
  KIL,
  KIR,
  KNL,
  KNR,
  OE,
  OYR,
  CR,
  SubP,
  SubO,
  Ref,
  Trans,
  Eucl,
  Mon,
};

/// Notation string used in proof output ("~=>", "=>K_I", "Sub(p)=>", ...).
const char* rule_name(RuleId id);

struct AxiomMatch {
  // 1: atom on both sides; 2: observation atom on both sides;
  // 3: contradictory results for one observation in the antecedent.
  int kind = 0;
  std::vector<LabelledFormula> principal;
  std::string text() const;
};

std::optional<AxiomMatch> is_axiom(const Sequent& seq);

/// Record of left-K applications: principal pairs (K-formula, relational
/// atom) that already fired on this branch.
using TableLK = std::set<std::pair<LabelledFormula, RelationalAtom>>;

/// Record of right-K applications, keyed by group and body formula. Tracks
/// which labels already expanded the key and the chain links from each fresh
/// label back to the label it was created for.
struct TableRK {
  struct Key {
    AgentSet group;
    FormulaPtr body;
  };
  struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
      if (a.group != b.group) return a.group < b.group;
      return compare(a.body, b.body) < 0;
    }
  };
  struct Entry {
    std::set<std::string> expanded;
    std::map<std::string, std::string> parent;  // fresh label -> principal label
  };

  std::map<Key, Entry, KeyLess> entries;
  std::map<AgentSet, int> max_by_group;  // n(K_I) + 1 from the root sequent
  int default_max = 1;
  bool aggregate = false;  // use one bound, summed over all groups
  int aggregate_max = 1;

  int max_for(const AgentSet& group) const;
  std::size_t chain_link_count() const;
};

/// Links from `label` back to its chain root under the given key.
int chain_depth(const TableRK& table, const AgentSet& group, const FormulaPtr& body,
                const std::string& label);

struct LoopTables {
  TableLK lk;
  TableRK rk;
};

struct RuleInstance {
  RuleId rule{};
  std::vector<LabelledFormula> principal_formulas;
  std::vector<RelationalAtom> principal_relations;
  std::string label;                        // Ref target; OYR label
  AgentSet group;                           // rule group I (Mon: the smaller set)
  JointObservation observation;             // OYR split observation; CR target
  std::string fresh_label;                  // KIR
  std::optional<LabelledFormula> derived;   // formula the premise adds
  std::optional<RelationalAtom> introduced; // relational atom the premise adds
  std::string principal_text() const;
};

/// Every applicable rule instance in the procedure's priority order:
/// non-branching propositional, branching propositional, left K, right K,
/// result splitting, then the relational/observational block. Within one
/// rule, instances follow the sequent's canonical member order.
std::vector<RuleInstance> applicable_instances(const Sequent& seq, const LoopTables& tables,
                                               const ObservationStructure& structure);

/// First instance in that order, if any.
std::optional<RuleInstance> first_instance(const Sequent& seq, const LoopTables& tables,
                                           const ObservationStructure& structure);

/// Premises of one rule application. Branching propositional rules return 2,
/// result splitting |R|, everything else 1.
std::vector<Sequent> apply_rule(const RuleInstance& inst, const Sequent& seq,
                                const ObservationStructure& structure);

/// First unused label of the form w0, w1, ...
std::string fresh_label(const Sequent& seq);

}  // namespace lck
