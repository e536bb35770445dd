#include "lck/engine.hpp"

#include <chrono>
#include <set>

#include "json.hpp"

namespace lck {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Proved: return "proved";
    case Verdict::NotProved: return "not proved";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct LimitReached {};

void check_formula(const FormulaPtr& f, const ObservationStructure& structure) {
  switch (f->kind()) {
    case Kind::Top:
    case Kind::Bottom:
      throw Error("malformed sequent: truth constants have no concrete syntax");
    case Kind::Atom:
      return;
    case Kind::ObsAtom:
      if (!structure.valid_observation(f->observation())) {
        throw Error("malformed sequent: unknown observation " + f->observation().key());
      }
      if (!structure.has_result(f->result())) {
        throw Error("malformed sequent: unknown result '" + f->result() + "'");
      }
      return;
    case Kind::Know:
      for (const std::string& agent : f->group()) {
        if (!structure.has_agent(agent)) {
          throw Error("malformed sequent: unknown agent '" + agent + "'");
        }
      }
      check_formula(f->left(), structure);
      return;
    case Kind::Not:
      check_formula(f->left(), structure);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      check_formula(f->left(), structure);
      check_formula(f->right(), structure);
      return;
  }
}

void collect_know_groups(const FormulaPtr& f, std::set<AgentSet>& out) {
  switch (f->kind()) {
    case Kind::Know:
      out.insert(f->group());
      collect_know_groups(f->left(), out);
      return;
    case Kind::Not:
      collect_know_groups(f->left(), out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      collect_know_groups(f->left(), out);
      collect_know_groups(f->right(), out);
      return;
    default:
      return;
  }
}

bool mentions_observational(const FormulaPtr& f) {
  switch (f->kind()) {
    case Kind::ObsAtom:
    case Kind::Know:
      return true;
    case Kind::Not:
      return mentions_observational(f->left());
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      return mentions_observational(f->left()) || mentions_observational(f->right());
    default:
      return false;
  }
}

std::map<AgentSet, int> chain_bounds(const Sequent& root) {
  std::set<AgentSet> groups;
  for (const LabelledFormula& lf : root.antecedent()) collect_know_groups(lf.formula, groups);
  for (const LabelledFormula& lf : root.succedent()) collect_know_groups(lf.formula, groups);
  std::map<AgentSet, int> bounds;
  for (const AgentSet& g : groups) bounds[g] = negative_k_occurrences(root, g) + 1;
  return bounds;
}

class Search {
 public:
  Search(const ObservationStructure& structure, const SearchLimits& limits)
      : structure_(structure),
        limits_(limits),
        start_(std::chrono::steady_clock::now()) {}

  std::unique_ptr<ProofNode> run(Sequent seq, LoopTables tables, std::uint64_t base_depth,
                                 bool& provable) {
    struct SpineStep {
      Sequent seq;
      std::shared_ptr<const RuleInstance> inst;
    };
    std::vector<SpineStep> spine;
    std::unique_ptr<ProofNode> current;

    while (true) {
      tick(base_depth + spine.size());
      if (std::optional<AxiomMatch> ax = is_axiom(seq)) {
        current = std::make_unique<ProofNode>();
        current->rule = "Axiom(" + std::to_string(ax->kind) + ")";
        current->principal = ax->text();
        current->sequent = std::move(seq);
        provable = true;
        note_leaf(tables);
        break;
      }
      std::optional<RuleInstance> inst_opt = first_instance(seq, tables, structure_);
      if (!inst_opt) inst_opt = saturation_split(seq);
      if (!inst_opt) {
        current = std::make_unique<ProofNode>();
        current->rule = "Open";
        current->sequent = std::move(seq);
        provable = false;
        note_leaf(tables);
        break;
      }
      auto inst = std::make_shared<const RuleInstance>(std::move(*inst_opt));
      std::vector<Sequent> premises = apply_rule(*inst, seq, structure_);
      if (premises.size() == 1) {
        record(*inst, tables);
        spine.push_back({std::move(seq), inst});
        seq = std::move(premises.front());
        continue;
      }
      auto node = std::make_unique<ProofNode>();
      node->sequent = std::move(seq);
      node->rule = rule_name(inst->rule);
      node->principal = inst->principal_text();
      node->instance = inst;
      bool all = true;
      const std::uint64_t child_depth = base_depth + spine.size() + 1;
      for (Sequent& prem : premises) {
        bool sub = false;
        node->premises.push_back(run(std::move(prem), tables, child_depth, sub));
        all = all && sub;
      }
      provable = all;
      current = std::move(node);
      break;
    }

    while (!spine.empty()) {
      SpineStep step = std::move(spine.back());
      spine.pop_back();
      auto parent = std::make_unique<ProofNode>();
      parent->sequent = std::move(step.seq);
      parent->rule = rule_name(step.inst->rule);
      parent->principal = step.inst->principal_text();
      parent->instance = std::move(step.inst);
      parent->premises.push_back(std::move(current));
      current = std::move(parent);
    }
    return current;
  }

  ProofStats stats;

 private:
  void tick(std::uint64_t depth) {
    ++stats.nodes;
    if (depth > stats.depth) stats.depth = depth;
    if (limits_.max_nodes != 0 && stats.nodes > limits_.max_nodes) throw LimitReached{};
    if (limits_.max_millis != 0) {
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start_);
      if (static_cast<std::uint64_t>(elapsed.count()) > limits_.max_millis) throw LimitReached{};
    }
  }

  void note_leaf(const LoopTables& tables) {
    if (tables.lk.size() > stats.table_lk_size) stats.table_lk_size = tables.lk.size();
    const std::size_t chains = tables.rk.chain_link_count();
    if (chains > stats.table_rk_chains) stats.table_rk_chains = chains;
  }

  static void record(const RuleInstance& inst, LoopTables& tables) {
    if (inst.rule == RuleId::KIL || inst.rule == RuleId::KNL) {
      tables.lk.insert({inst.principal_formulas.front(), inst.principal_relations.front()});
    } else if (inst.rule == RuleId::KIR) {
      const LabelledFormula& p = inst.principal_formulas.front();
      TableRK::Entry& entry =
          tables.rk.entries[TableRK::Key{inst.group, p.formula->left()}];
      entry.expanded.insert(p.label);
      entry.parent[inst.fresh_label] = p.label;
    }
  }

  // A saturated sequent whose verdict can still hinge on outcome tables gets
  // the first unsplit (label, full observation) pair split case by case.
  // Sequents without knowledge operators, observation atoms or cross-label
  // relational content are settled purely propositionally and stay as they
  // are.
  std::optional<RuleInstance> saturation_split(const Sequent& seq) const {
    bool observational = false;
    for (const LabelledFormula& lf : seq.antecedent()) {
      if (mentions_observational(lf.formula)) {
        observational = true;
        break;
      }
    }
    if (!observational) {
      for (const LabelledFormula& lf : seq.succedent()) {
        if (mentions_observational(lf.formula)) {
          observational = true;
          break;
        }
      }
    }
    if (!observational) {
      for (const RelationalAtom& rel : seq.relations()) {
        if (!rel.group.empty() && rel.left != rel.right) {
          observational = true;
          break;
        }
      }
    }
    if (!observational) return std::nullopt;
    for (const std::string& s : seq.labels()) {
      for (const JointObservation& e : structure_.full_observations()) {
        bool covered = false;
        for (const std::string& r : structure_.results()) {
          if (seq.has_antecedent({s, Formula::obs_atom(e, r)})) {
            covered = true;
            break;
          }
        }
        if (!covered) {
          RuleInstance inst;
          inst.rule = RuleId::OYR;
          inst.label = s;
          inst.group = structure_.full_group();
          inst.observation = e;
          return inst;
        }
      }
    }
    return std::nullopt;
  }

  const ObservationStructure& structure_;
  SearchLimits limits_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

void validate_sequent(const Sequent& seq, const ObservationStructure& structure) {
  for (const RelationalAtom& rel : seq.relations()) {
    if (rel.left.empty() || rel.right.empty()) throw Error("malformed sequent: empty label");
    for (const std::string& agent : rel.group) {
      if (!structure.has_agent(agent)) {
        throw Error("malformed sequent: unknown agent '" + agent + "'");
      }
    }
  }
  for (const LabelledFormula& lf : seq.antecedent()) {
    if (lf.label.empty()) throw Error("malformed sequent: empty label");
    check_formula(lf.formula, structure);
  }
  for (const LabelledFormula& lf : seq.succedent()) {
    if (lf.label.empty()) throw Error("malformed sequent: empty label");
    check_formula(lf.formula, structure);
  }
}

LoopTables init_tables(const Sequent& root, bool aggregate_chain_bound) {
  LoopTables tables;
  tables.rk.max_by_group = chain_bounds(root);
  tables.rk.aggregate = aggregate_chain_bound;
  tables.rk.aggregate_max = negative_k_occurrences_all(root) + 1;
  return tables;
}

ProofResult prove(const Sequent& root, const ObservationStructure& structure,
                  const SearchLimits& limits) {
  validate_sequent(root, structure);
  const auto start = std::chrono::steady_clock::now();
  Search search(structure, limits);
  ProofResult result;
  try {
    bool provable = false;
    result.tree =
        search.run(root, init_tables(root, limits.aggregate_chain_bound), 0, provable);
    result.provable = provable;
    result.verdict = provable ? Verdict::Proved : Verdict::NotProved;
  } catch (const LimitReached&) {
    result.provable = false;
    result.verdict = Verdict::Inconclusive;
    auto node = std::make_unique<ProofNode>();
    node->sequent = root;
    node->rule = "Open";
    result.tree = std::move(node);
  }
  result.stats = search.stats;
  result.stats.elapsed_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
  return result;
}

namespace {

struct Auditor {
  std::vector<std::string> violations;
  std::map<AgentSet, int> bounds;
  int default_bound = 1;
  TableLK lk_seen;
  std::map<TableRK::Key, std::map<std::string, std::string>, TableRK::KeyLess> parents;

  int bound_for(const AgentSet& group) const {
    auto it = bounds.find(group);
    return it == bounds.end() ? default_bound : it->second;
  }

  void walk(const ProofNode& node) {
    bool lk_added = false;
    bool rk_added = false;
    std::pair<LabelledFormula, RelationalAtom> lk_key;
    TableRK::Key rk_key;
    std::string fresh;
    if (node.instance) {
      const RuleInstance& inst = *node.instance;
      if (inst.rule == RuleId::KIL || inst.rule == RuleId::KNL) {
        lk_key = {inst.principal_formulas.front(), inst.principal_relations.front()};
        if (!lk_seen.insert(lk_key).second) {
          violations.push_back("left-K principal pair fired twice on one branch: " +
                               inst.principal_text());
        } else {
          lk_added = true;
        }
      } else if (inst.rule == RuleId::KIR) {
        const LabelledFormula& p = inst.principal_formulas.front();
        rk_key = TableRK::Key{inst.group, p.formula->left()};
        std::map<std::string, std::string>& par = parents[rk_key];
        int depth = 1;
        const std::string* cur = &p.label;
        for (auto it = par.find(*cur); it != par.end(); it = par.find(*cur)) {
          ++depth;
          cur = &it->second;
        }
        const int bound = bound_for(inst.group);
        if (depth > bound) {
          violations.push_back("right-K chain for {" + inst.group.joined() + "} reaches " +
                               std::to_string(depth) + ", bound is " + std::to_string(bound));
        }
        fresh = inst.fresh_label;
        par[fresh] = p.label;
        rk_added = true;
      }
    }
    for (const std::unique_ptr<ProofNode>& premise : node.premises) walk(*premise);
    if (lk_added) lk_seen.erase(lk_key);
    if (rk_added) parents[rk_key].erase(fresh);
  }
};

nlohmann::ordered_json node_to_json(const ProofNode& node) {
  nlohmann::ordered_json j;
  j["sequent"] = print_sequent(node.sequent);
  j["rule"] = node.rule;
  j["principal"] = node.principal;
  nlohmann::ordered_json premises = nlohmann::ordered_json::array();
  for (const std::unique_ptr<ProofNode>& premise : node.premises) {
    premises.push_back(node_to_json(*premise));
  }
  j["premises"] = std::move(premises);
  return j;
}

void node_to_text(const ProofNode& node, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  out += print_sequent(node.sequent);
  out += "   [";
  out += node.rule;
  if (!node.principal.empty()) {
    out += " on ";
    out += node.principal;
  }
  out += "]\n";
  for (const std::unique_ptr<ProofNode>& premise : node.premises) {
    node_to_text(*premise, indent + 1, out);
  }
}

}  // namespace

std::vector<std::string> audit_proof(const ProofNode& root) {
  Auditor auditor;
  auditor.bounds = chain_bounds(root.sequent);
  auditor.walk(root);
  return auditor.violations;
}

std::string proof_to_json_text(const ProofNode& root) { return node_to_json(root).dump(2); }

std::string proof_to_text(const ProofNode& root) {
  std::string out;
  node_to_text(root, 0, out);
  return out;
}

}  // namespace lck
