#include "lck/calculus.hpp"

#include <algorithm>

namespace lck {

const char* rule_name(RuleId id) {
  switch (id) {
    case RuleId::NegL: return "~=>";
    case RuleId::NegR: return "=>~";
    case RuleId::OrL: return "v=>";
    case RuleId::OrR: return "=>v";
    case RuleId::AndL: return "&=>";
    case RuleId::AndR: return "=>&";
    case RuleId::ImpL: return "->=>";
    case RuleId::ImpR: return "=>->";
    case RuleId::KIL: return "K_I=>";
    case RuleId::KIR: return "=>K_I";
    case RuleId::KNL: return "K_N=>";
    case RuleId::KNR: return "=>K_N";
    case RuleId::OE: return "OE";
    case RuleId::OYR: return "OYR";
    case RuleId::CR: return "CR";
    case RuleId::SubP: return "Sub(p)=>";
    case RuleId::SubO: return "Sub(o^r)=>";
    case RuleId::Ref: return "Ref";
    case RuleId::Trans: return "Trans";
    case RuleId::Eucl: return "Eucl";
    case RuleId::Mon: return "Mon";
  }
  return "?";
}

std::string AxiomMatch::text() const {
  std::string out;
  for (const LabelledFormula& lf : principal) {
    if (!out.empty()) out += "; ";
    out += print_labelled_formula(lf);
  }
  return out;
}

std::optional<AxiomMatch> is_axiom(const Sequent& seq) {
  const auto& ant = seq.antecedent();
  const auto& suc = seq.succedent();
  std::optional<AxiomMatch> obs_match;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ant.size() && j < suc.size()) {
    const int c = compare(ant[i], suc[j]);
    if (c < 0) {
      ++i;
    } else if (c > 0) {
      ++j;
    } else {
      const Kind k = ant[i].formula->kind();
      if (k == Kind::Atom) return AxiomMatch{1, {ant[i]}};
      if (k == Kind::ObsAtom && !obs_match) obs_match = AxiomMatch{2, {ant[i]}};
      ++i;
      ++j;
    }
  }
  if (obs_match) return obs_match;
  for (std::size_t k = 0; k + 1 < ant.size(); ++k) {
    const LabelledFormula& x = ant[k];
    const LabelledFormula& y = ant[k + 1];
    if (x.label == y.label && x.formula->kind() == Kind::ObsAtom &&
        y.formula->kind() == Kind::ObsAtom &&
        x.formula->observation() == y.formula->observation() &&
        x.formula->result() != y.formula->result()) {
      return AxiomMatch{3, {x, y}};
    }
  }
  return std::nullopt;
}

int TableRK::max_for(const AgentSet& group) const {
  if (aggregate) return aggregate_max;
  auto it = max_by_group.find(group);
  return it == max_by_group.end() ? default_max : it->second;
}

std::size_t TableRK::chain_link_count() const {
  std::size_t total = 0;
  for (const auto& [key, entry] : entries) total += entry.parent.size();
  return total;
}

int chain_depth(const TableRK& table, const AgentSet& group, const FormulaPtr& body,
                const std::string& label) {
  auto it = table.entries.find(TableRK::Key{group, body});
  if (it == table.entries.end()) return 0;
  const auto& parent = it->second.parent;
  int depth = 0;
  const std::string* cur = &label;
  for (auto p = parent.find(*cur); p != parent.end(); p = parent.find(*cur)) {
    ++depth;
    cur = &p->second;
  }
  return depth;
}

std::string RuleInstance::principal_text() const {
  std::vector<std::string> parts;
  for (const LabelledFormula& lf : principal_formulas) parts.push_back(print_labelled_formula(lf));
  for (const RelationalAtom& rel : principal_relations) parts.push_back(print_relational_atom(rel));
  if (parts.empty()) {
    if (rule == RuleId::OYR) {
      parts.push_back(label + ": obs{" + group.joined() + "}" + observation.key());
    } else if (introduced) {
      parts.push_back(print_relational_atom(*introduced));
    }
  }
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

std::string fresh_label(const Sequent& seq) {
  const std::vector<std::string>& labels = seq.labels();
  for (int k = 0;; ++k) {
    std::string candidate = "w" + std::to_string(k);
    if (!std::binary_search(labels.begin(), labels.end(), candidate)) return candidate;
  }
}

namespace {

// Walks choices as an odometer: fn receives one index tuple per call and
// returns true to stop.
template <typename Fn>
bool product(const std::vector<std::vector<std::string>>& choices, Fn&& fn) {
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    if (fn(pick)) return true;
    std::size_t pos = choices.size();
    while (pos > 0) {
      --pos;
      if (++pick[pos] < choices[pos].size()) break;
      pick[pos] = 0;
      if (pos == 0) return false;
    }
    if (choices.empty()) return false;
  }
}

// Emits every applicable instance in priority order; emit returns true to
// stop early. Returns true if stopped.
template <typename Fn>
bool enumerate_instances(const Sequent& seq, const LoopTables& tables,
                         const ObservationStructure& structure, Fn&& emit) {
  const AgentSet& full = structure.full_group();

  auto scan_left = [&](Kind kind, RuleId rule) {
    for (const LabelledFormula& lf : seq.antecedent()) {
      if (lf.formula->kind() != kind) continue;
      RuleInstance inst;
      inst.rule = rule;
      inst.principal_formulas = {lf};
      if (emit(std::move(inst))) return true;
    }
    return false;
  };
  auto scan_right = [&](Kind kind, RuleId rule) {
    for (const LabelledFormula& lf : seq.succedent()) {
      if (lf.formula->kind() != kind) continue;
      RuleInstance inst;
      inst.rule = rule;
      inst.principal_formulas = {lf};
      if (emit(std::move(inst))) return true;
    }
    return false;
  };

  // Non-branching propositional, then branching propositional.
  if (scan_left(Kind::Not, RuleId::NegL)) return true;
  if (scan_right(Kind::Not, RuleId::NegR)) return true;
  if (scan_right(Kind::Or, RuleId::OrR)) return true;
  if (scan_left(Kind::And, RuleId::AndL)) return true;
  if (scan_right(Kind::Implies, RuleId::ImpR)) return true;
  if (scan_left(Kind::Or, RuleId::OrL)) return true;
  if (scan_right(Kind::And, RuleId::AndR)) return true;
  if (scan_left(Kind::Implies, RuleId::ImpL)) return true;

  // Left knowledge rules, gated by the left table.
  for (const LabelledFormula& lf : seq.antecedent()) {
    if (lf.formula->kind() != Kind::Know || lf.formula->group() == full) continue;
    for (const RelationalAtom& rel : seq.relations()) {
      if (rel.left != lf.label || rel.group != lf.formula->group()) continue;
      LabelledFormula derived{rel.right, lf.formula->left()};
      if (seq.has_antecedent(derived)) continue;
      if (tables.lk.count({lf, rel})) continue;
      RuleInstance inst;
      inst.rule = RuleId::KIL;
      inst.principal_formulas = {lf};
      inst.principal_relations = {rel};
      inst.group = lf.formula->group();
      inst.derived = std::move(derived);
      if (emit(std::move(inst))) return true;
    }
  }
  for (const LabelledFormula& lf : seq.antecedent()) {
    if (lf.formula->kind() != Kind::Know || !(lf.formula->group() == full)) continue;
    RelationalAtom diag{lf.label, full, lf.label};
    if (!seq.has_relation(diag)) continue;
    LabelledFormula derived{lf.label, lf.formula->left()};
    if (seq.has_antecedent(derived)) continue;
    if (tables.lk.count({lf, diag})) continue;
    RuleInstance inst;
    inst.rule = RuleId::KNL;
    inst.principal_formulas = {lf};
    inst.principal_relations = {diag};
    inst.group = full;
    inst.derived = std::move(derived);
    if (emit(std::move(inst))) return true;
  }

  // Right knowledge for proper groups, gated by the right table.
  for (const LabelledFormula& lf : seq.succedent()) {
    if (lf.formula->kind() != Kind::Know || lf.formula->group() == full) continue;
    const AgentSet& group = lf.formula->group();
    const FormulaPtr& body = lf.formula->left();
    auto it = tables.rk.entries.find(TableRK::Key{group, body});
    if (it != tables.rk.entries.end() && it->second.expanded.count(lf.label)) continue;
    if (chain_depth(tables.rk, group, body, lf.label) >= tables.rk.max_for(group)) continue;
    std::string fresh = fresh_label(seq);
    RuleInstance inst;
    inst.rule = RuleId::KIR;
    inst.principal_formulas = {lf};
    inst.group = group;
    inst.fresh_label = fresh;
    inst.derived = LabelledFormula{fresh, body};
    inst.introduced = RelationalAtom{lf.label, group, fresh};
    if (emit(std::move(inst))) return true;
  }

  // Observation atoms of the antecedent, indexed by label and observation.
  // Built once steps 2-5 yield nothing; OYR, OE and CR all consult it.
  std::map<std::pair<std::string, JointObservation>, std::set<std::string>> obs_in;
  for (const LabelledFormula& lf : seq.antecedent()) {
    if (lf.formula->kind() != Kind::ObsAtom) continue;
    obs_in[{lf.label, lf.formula->observation()}].insert(lf.formula->result());
  }

  // Result splitting on succedent observation atoms.
  {
    std::set<std::pair<std::string, JointObservation>> seen;
    for (const LabelledFormula& lf : seq.succedent()) {
      if (lf.formula->kind() != Kind::ObsAtom) continue;
      const JointObservation& obs = lf.formula->observation();
      if (!seen.insert({lf.label, obs}).second) continue;
      if (obs_in.count({lf.label, obs})) continue;
      RuleInstance inst;
      inst.rule = RuleId::OYR;
      inst.principal_formulas = {lf};
      inst.label = lf.label;
      inst.group = obs.group();
      inst.observation = obs;
      if (emit(std::move(inst))) return true;
    }
  }

  // Right knowledge for the full group.
  for (const LabelledFormula& lf : seq.succedent()) {
    if (lf.formula->kind() != Kind::Know || !(lf.formula->group() == full)) continue;
    RelationalAtom diag{lf.label, full, lf.label};
    if (!seq.has_relation(diag)) continue;
    LabelledFormula derived{lf.label, lf.formula->left()};
    if (seq.has_succedent(derived)) continue;
    RuleInstance inst;
    inst.rule = RuleId::KNR;
    inst.principal_formulas = {lf};
    inst.principal_relations = {diag};
    inst.group = full;
    inst.derived = std::move(derived);
    if (emit(std::move(inst))) return true;
  }

  // Observational equivalence: matching result tuples at two labels.
  {
    const std::vector<std::string>& labels = seq.labels();
    for (const AgentSet& group : structure.group_subsets()) {
      if (group.empty()) continue;
      const std::vector<JointObservation>& joints = structure.joint_observations(group);
      for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
          const std::string& s = labels[i];
          const std::string& t = labels[j];
          if (seq.has_relation({s, group, t})) continue;
          std::vector<std::vector<std::string>> choices;
          bool complete = true;
          for (const JointObservation& o : joints) {
            auto is_ = obs_in.find({s, o});
            auto it_ = obs_in.find({t, o});
            if (is_ == obs_in.end() || it_ == obs_in.end()) {
              complete = false;
              break;
            }
            std::vector<std::string> rs;
            for (const std::string& r : structure.results()) {
              if (is_->second.count(r) && it_->second.count(r)) rs.push_back(r);
            }
            if (rs.empty()) {
              complete = false;
              break;
            }
            choices.push_back(std::move(rs));
          }
          if (!complete) continue;
          const bool stopped = product(choices, [&](const std::vector<std::size_t>& pick) {
            RuleInstance inst;
            inst.rule = RuleId::OE;
            inst.group = group;
            inst.introduced = RelationalAtom{s, group, t};
            for (std::size_t k = 0; k < joints.size(); ++k) {
              inst.principal_formulas.push_back(
                  {s, Formula::obs_atom(joints[k], choices[k][pick[k]])});
            }
            for (std::size_t k = 0; k < joints.size(); ++k) {
              inst.principal_formulas.push_back(
                  {t, Formula::obs_atom(joints[k], choices[k][pick[k]])});
            }
            return emit(std::move(inst));
          });
          if (stopped) return true;
        }
      }
    }
  }

  // Composed results from full-observation outcomes.
  {
    std::map<std::string, std::map<int, std::set<std::string>>> full_in;
    for (const LabelledFormula& lf : seq.antecedent()) {
      if (lf.formula->kind() != Kind::ObsAtom) continue;
      if (!(lf.formula->group() == full)) continue;
      full_in[lf.label][structure.full_observation_index(lf.formula->observation())].insert(
          lf.formula->result());
    }
    for (const auto& [label, outcomes] : full_in) {
      for (const AgentSet& group : structure.group_subsets()) {
        if (group.empty()) continue;
        for (const JointObservation& e : structure.joint_observations(group)) {
          const std::vector<int>& ext = structure.extension_indices(e);
          std::vector<std::vector<std::string>> choices;
          bool complete = true;
          for (int idx : ext) {
            auto it = outcomes.find(idx);
            if (it == outcomes.end()) {
              complete = false;
              break;
            }
            std::vector<std::string> rs;
            for (const std::string& r : structure.results()) {
              if (it->second.count(r)) rs.push_back(r);
            }
            choices.push_back(std::move(rs));
          }
          if (!complete) continue;
          const std::string& lbl = label;
          const bool stopped = product(choices, [&](const std::vector<std::size_t>& pick) {
            std::vector<std::string> values;
            values.reserve(choices.size());
            for (std::size_t k = 0; k < choices.size(); ++k) values.push_back(choices[k][pick[k]]);
            LabelledFormula derived{lbl, Formula::obs_atom(e, structure.compose_results(values))};
            if (seq.has_antecedent(derived)) return false;
            RuleInstance inst;
            inst.rule = RuleId::CR;
            inst.group = group;
            inst.observation = e;
            inst.derived = std::move(derived);
            for (std::size_t k = 0; k < choices.size(); ++k) {
              inst.principal_formulas.push_back(
                  {lbl, Formula::obs_atom(structure.full_observations()[ext[k]], values[k])});
            }
            return emit(std::move(inst));
          });
          if (stopped) return true;
        }
      }
    }
  }

  // Substitution of atoms and observation atoms along relational atoms.
  for (const LabelledFormula& lf : seq.antecedent()) {
    if (lf.formula->kind() != Kind::Atom) continue;
    for (const RelationalAtom& rel : seq.relations()) {
      if (!(rel.group == full) || rel.right != lf.label) continue;
      LabelledFormula derived{rel.left, lf.formula};
      if (seq.has_antecedent(derived)) continue;
      RuleInstance inst;
      inst.rule = RuleId::SubP;
      inst.principal_formulas = {lf};
      inst.principal_relations = {rel};
      inst.derived = std::move(derived);
      if (emit(std::move(inst))) return true;
    }
  }
  for (const LabelledFormula& lf : seq.antecedent()) {
    if (lf.formula->kind() != Kind::ObsAtom) continue;
    for (const RelationalAtom& rel : seq.relations()) {
      if (rel.group != lf.formula->group() || rel.right != lf.label) continue;
      LabelledFormula derived{rel.left, lf.formula};
      if (seq.has_antecedent(derived)) continue;
      RuleInstance inst;
      inst.rule = RuleId::SubO;
      inst.principal_formulas = {lf};
      inst.principal_relations = {rel};
      inst.derived = std::move(derived);
      if (emit(std::move(inst))) return true;
    }
  }

  // Relational closure: reflexivity, transitivity, euclideanness,
  // monotonicity.
  for (const std::string& s : seq.labels()) {
    for (const AgentSet& group : structure.group_subsets()) {
      RelationalAtom diag{s, group, s};
      if (seq.has_relation(diag)) continue;
      RuleInstance inst;
      inst.rule = RuleId::Ref;
      inst.label = s;
      inst.group = group;
      inst.introduced = diag;
      if (emit(std::move(inst))) return true;
    }
  }
  // Relations are sorted by (left, group, right), so partners sharing a left
  // label (Trans) or a (left, group) prefix (Eucl) sit in contiguous runs.
  const auto& rels = seq.relations();
  const auto left_block = [&rels](const std::string& left) {
    return std::lower_bound(rels.begin(), rels.end(), left,
                            [](const RelationalAtom& x, const std::string& key) {
                              return x.left < key;
                            });
  };
  for (const RelationalAtom& a : rels) {
    for (auto it = left_block(a.right); it != rels.end() && it->left == a.right; ++it) {
      const RelationalAtom& b = *it;
      if (a.group != b.group) continue;
      RelationalAtom intro{a.left, a.group, b.right};
      if (seq.has_relation(intro)) continue;
      RuleInstance inst;
      inst.rule = RuleId::Trans;
      inst.principal_relations = {a, b};
      inst.introduced = intro;
      if (emit(std::move(inst))) return true;
    }
  }
  for (std::size_t lo = 0; lo < rels.size();) {
    std::size_t hi = lo + 1;
    while (hi < rels.size() && rels[hi].left == rels[lo].left && rels[hi].group == rels[lo].group)
      ++hi;
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = lo; j < hi; ++j) {
        if (i == j) continue;
        const RelationalAtom& a = rels[i];
        const RelationalAtom& b = rels[j];
        RelationalAtom intro{a.right, a.group, b.right};
        if (seq.has_relation(intro)) continue;
        RuleInstance inst;
        inst.rule = RuleId::Eucl;
        inst.principal_relations = {a, b};
        inst.introduced = intro;
        if (emit(std::move(inst))) return true;
      }
    }
    lo = hi;
  }
  for (const RelationalAtom& rel : rels) {
    for (const AgentSet& group : structure.group_subsets()) {
      if (!group.subset_of(rel.group) || group == rel.group) continue;
      RelationalAtom intro{rel.left, group, rel.right};
      if (seq.has_relation(intro)) continue;
      RuleInstance inst;
      inst.rule = RuleId::Mon;
      inst.principal_relations = {rel};
      inst.group = group;
      inst.introduced = intro;
      if (emit(std::move(inst))) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<RuleInstance> applicable_instances(const Sequent& seq, const LoopTables& tables,
                                               const ObservationStructure& structure) {
  std::vector<RuleInstance> out;
  enumerate_instances(seq, tables, structure, [&](RuleInstance&& inst) {
    out.push_back(std::move(inst));
    return false;
  });
  return out;
}

std::optional<RuleInstance> first_instance(const Sequent& seq, const LoopTables& tables,
                                           const ObservationStructure& structure) {
  std::optional<RuleInstance> found;
  enumerate_instances(seq, tables, structure, [&](RuleInstance&& inst) {
    found = std::move(inst);
    return true;
  });
  return found;
}

namespace {

void require(bool ok) {
  if (!ok) throw Error("rule instance does not apply to this sequent");
}

const LabelledFormula& sole_principal(const RuleInstance& inst) {
  require(inst.principal_formulas.size() == 1);
  return inst.principal_formulas.front();
}

}  // namespace

std::vector<Sequent> apply_rule(const RuleInstance& inst, const Sequent& seq,
                                const ObservationStructure& structure) {
  switch (inst.rule) {
    case RuleId::NegL: {
      const LabelledFormula& p = sole_principal(inst);
      require(seq.has_antecedent(p) && p.formula->kind() == Kind::Not);
      Sequent prem = seq;
      prem.remove_antecedent(p);
      prem.add_succedent({p.label, p.formula->left()});
      return {std::move(prem)};
    }
    case RuleId::NegR: {
      const LabelledFormula& p = sole_principal(inst);
      require(seq.has_succedent(p) && p.formula->kind() == Kind::Not);
      Sequent prem = seq;
      prem.remove_succedent(p);
      prem.add_antecedent({p.label, p.formula->left()});
      return {std::move(prem)};
    }
    case RuleId::OrL: {
      const LabelledFormula& p = sole_principal(inst);
      require(seq.has_antecedent(p) && p.formula->kind() == Kind::Or);
      Sequent left = seq;
      left.remove_antecedent(p);
      Sequent right = left;
      left.add_antecedent({p.label, p.formula->left()});
      right.add_antecedent({p.label, p.formula->right()});
      return {std::move(left), std::move(right)};
    }
    case RuleId::OrR: {
      const LabelledFormula& p = sole_principal(inst);
      require(seq.has_succedent(p) && p.formula->kind() == Kind::Or);
      Sequent prem = seq;
      prem.remove_succedent(p);
      prem.add_succedent({p.label, p.formula->left()});
      prem.add_succedent({p.label, p.formula->right()});
      return {std::move(prem)};
    }
    case RuleId::AndL: {
      const LabelledFormula& p = sole_principal(inst);
      require(seq.has_antecedent(p) && p.formula->kind() == Kind::And);
      Sequent prem = seq;
      prem.remove_antecedent(p);
      prem.add_antecedent({p.label, p.formula->left()});
      prem.add_antecedent({p.label, p.formula->right()});
      return {std::move(prem)};
    }
    case RuleId::AndR: {
      const LabelledFormula& p = sole_principal(inst);
      require(seq.has_succedent(p) && p.formula->kind() == Kind::And);
      Sequent left = seq;
      left.remove_succedent(p);
      Sequent right = left;
      left.add_succedent({p.label, p.formula->left()});
      right.add_succedent({p.label, p.formula->right()});
      return {std::move(left), std::move(right)};
    }
    case RuleId::ImpL: {
      const LabelledFormula& p = sole_principal(inst);
      require(seq.has_antecedent(p) && p.formula->kind() == Kind::Implies);
      Sequent left = seq;
      left.remove_antecedent(p);
      Sequent right = left;
      left.add_succedent({p.label, p.formula->left()});
      right.add_antecedent({p.label, p.formula->right()});
      return {std::move(left), std::move(right)};
    }
    case RuleId::ImpR: {
      const LabelledFormula& p = sole_principal(inst);
      require(seq.has_succedent(p) && p.formula->kind() == Kind::Implies);
      Sequent prem = seq;
      prem.remove_succedent(p);
      prem.add_antecedent({p.label, p.formula->left()});
      prem.add_succedent({p.label, p.formula->right()});
      return {std::move(prem)};
    }
    case RuleId::KIL:
    case RuleId::KNL: {
      const LabelledFormula& p = sole_principal(inst);
      require(seq.has_antecedent(p) && inst.principal_relations.size() == 1 &&
              seq.has_relation(inst.principal_relations.front()) && inst.derived.has_value() &&
              !seq.has_antecedent(*inst.derived));
      Sequent prem = seq;
      prem.add_antecedent(*inst.derived);
      return {std::move(prem)};
    }
    case RuleId::KIR: {
      const LabelledFormula& p = sole_principal(inst);
      require(seq.has_succedent(p) && inst.derived.has_value() && inst.introduced.has_value() &&
              !seq.contains_label(inst.fresh_label));
      Sequent prem = seq;
      prem.remove_succedent(p);
      prem.add_relation(*inst.introduced);
      prem.add_succedent(*inst.derived);
      return {std::move(prem)};
    }
    case RuleId::KNR: {
      const LabelledFormula& p = sole_principal(inst);
      require(seq.has_succedent(p) && inst.principal_relations.size() == 1 &&
              seq.has_relation(inst.principal_relations.front()) && inst.derived.has_value() &&
              !seq.has_succedent(*inst.derived));
      Sequent prem = seq;
      prem.remove_succedent(p);
      prem.add_succedent(*inst.derived);
      return {std::move(prem)};
    }
    case RuleId::OYR: {
      require(!inst.label.empty() && !inst.observation.empty());
      std::vector<Sequent> prems;
      for (const std::string& r : structure.results()) {
        Sequent prem = seq;
        prem.add_antecedent({inst.label, Formula::obs_atom(inst.observation, r)});
        prems.push_back(std::move(prem));
      }
      return prems;
    }
    case RuleId::OE: {
      require(inst.introduced.has_value() && !seq.has_relation(*inst.introduced));
      for (const LabelledFormula& lf : inst.principal_formulas) require(seq.has_antecedent(lf));
      Sequent prem = seq;
      prem.add_relation(*inst.introduced);
      return {std::move(prem)};
    }
    case RuleId::CR:
    case RuleId::SubP:
    case RuleId::SubO: {
      require(inst.derived.has_value() && !seq.has_antecedent(*inst.derived));
      for (const LabelledFormula& lf : inst.principal_formulas) require(seq.has_antecedent(lf));
      for (const RelationalAtom& rel : inst.principal_relations) require(seq.has_relation(rel));
      Sequent prem = seq;
      prem.add_antecedent(*inst.derived);
      return {std::move(prem)};
    }
    case RuleId::Ref: {
      require(inst.introduced.has_value() && !seq.has_relation(*inst.introduced) &&
              seq.contains_label(inst.label));
      Sequent prem = seq;
      prem.add_relation(*inst.introduced);
      return {std::move(prem)};
    }
    case RuleId::Trans:
    case RuleId::Eucl:
    case RuleId::Mon: {
      require(inst.introduced.has_value() && !seq.has_relation(*inst.introduced));
      for (const RelationalAtom& rel : inst.principal_relations) require(seq.has_relation(rel));
      Sequent prem = seq;
      prem.add_relation(*inst.introduced);
      return {std::move(prem)};
    }
  }
  throw Error("unknown rule");
}

}  // namespace lck
