#include "lck/model.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace lck {

namespace {

std::string compose_indices(const ObservationStructure& structure,
                            const std::vector<std::uint8_t>& outcomes,
                            const std::vector<int>& indices) {
  std::vector<std::string> values;
  values.reserve(indices.size());
  for (int i : indices) values.push_back(structure.results()[outcomes[i]]);
  return structure.compose_results(values);
}

}  // namespace

std::string local_state(const State& state, const AgentSet& group, const JointObservation& e,
                        const ObservationStructure& structure) {
  if (e.group() != group) throw DomainError("observation " + e.key() + " is not over the group");
  return compose_indices(structure, state.outcomes, structure.extension_indices(e));
}

bool observationally_equivalent(const State& s, const State& t, const AgentSet& group,
                                const ObservationStructure& structure) {
  for (const JointObservation& e : structure.joint_observations(group)) {
    if (local_state(s, group, e, structure) != local_state(t, group, e, structure)) return false;
  }
  return true;
}

CorrelationModel::CorrelationModel(const ObservationStructure& structure,
                                   std::vector<State> states,
                                   std::map<std::string, std::vector<bool>> valuation)
    : structure_(&structure), states_(std::move(states)), valuation_(std::move(valuation)) {
  if (states_.empty()) throw DomainError("model needs at least one state");
  const std::size_t width = structure.full_observations().size();
  for (const State& s : states_) {
    if (s.outcomes.size() != width) {
      throw DomainError("state outcome table has wrong size");
    }
    for (std::uint8_t r : s.outcomes) {
      if (r >= structure.results().size()) throw DomainError("state outcome out of range");
    }
  }
  for (const auto& [atom, values] : valuation_) {
    if (values.size() != states_.size()) {
      throw DomainError("valuation for '" + atom + "' has wrong size");
    }
  }
  groups_ = subsets_of(structure.full_group());
  signatures_.resize(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    signatures_[i].resize(groups_.size());
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      for (const JointObservation& e : structure.joint_observations(groups_[g])) {
        const std::string r = compose_indices(structure, states_[i].outcomes,
                                              structure.extension_indices(e));
        signatures_[i][g].push_back(static_cast<std::uint8_t>(structure.result_index(r)));
      }
    }
  }
}

bool CorrelationModel::value(std::size_t state, const std::string& atom) const {
  auto it = valuation_.find(atom);
  if (it == valuation_.end()) return false;
  return it->second[state];
}

bool CorrelationModel::related(std::size_t s, std::size_t t, const AgentSet& group) const {
  if (group.empty()) return true;
  auto it = std::lower_bound(groups_.begin(), groups_.end(), group,
                             [](const AgentSet& a, const AgentSet& b) {
                               if (a.size() != b.size()) return a.size() < b.size();
                               return a.items() < b.items();
                             });
  if (it == groups_.end() || !(*it == group)) throw DomainError("unknown group in relation query");
  const std::size_t g = static_cast<std::size_t>(it - groups_.begin());
  return signatures_[s][g] == signatures_[t][g];
}

std::uint8_t CorrelationModel::local_result(std::size_t state, std::size_t group_index,
                                            std::size_t joint_index) const {
  return signatures_[state][group_index][joint_index];
}

std::vector<std::uint8_t> truth_vector(const CorrelationModel& model, const FormulaPtr& f) {
  const std::size_t n = model.size();
  std::vector<std::uint8_t> out(n, 0);
  switch (f->kind()) {
    case Kind::Atom:
      for (std::size_t i = 0; i < n; ++i) out[i] = model.value(i, f->atom_name());
      return out;
    case Kind::ObsAtom: {
      const ObservationStructure& structure = model.structure();
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = local_state(model.states()[i], f->group(), f->observation(), structure) ==
                 f->result();
      }
      return out;
    }
    case Kind::Top:
      std::fill(out.begin(), out.end(), 1);
      return out;
    case Kind::Bottom:
      return out;
    case Kind::Not: {
      std::vector<std::uint8_t> child = truth_vector(model, f->left());
      for (std::size_t i = 0; i < n; ++i) out[i] = !child[i];
      return out;
    }
    case Kind::And: {
      std::vector<std::uint8_t> a = truth_vector(model, f->left());
      std::vector<std::uint8_t> b = truth_vector(model, f->right());
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] && b[i];
      return out;
    }
    case Kind::Or: {
      std::vector<std::uint8_t> a = truth_vector(model, f->left());
      std::vector<std::uint8_t> b = truth_vector(model, f->right());
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] || b[i];
      return out;
    }
    case Kind::Implies: {
      std::vector<std::uint8_t> a = truth_vector(model, f->left());
      std::vector<std::uint8_t> b = truth_vector(model, f->right());
      for (std::size_t i = 0; i < n; ++i) out[i] = !a[i] || b[i];
      return out;
    }
    case Kind::Know: {
      std::vector<std::uint8_t> body = truth_vector(model, f->left());
      for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t all = 1;
        for (std::size_t j = 0; j < n; ++j) {
          if (model.related(i, j, f->group()) && !body[j]) {
            all = 0;
            break;
          }
        }
        out[i] = all;
      }
      return out;
    }
  }
  throw Error("unreachable formula kind");
}

bool satisfies(const CorrelationModel& model, std::size_t state, const FormulaPtr& f) {
  if (state >= model.size()) throw DomainError("state index out of range");
  switch (f->kind()) {
    case Kind::Atom:
      return model.value(state, f->atom_name());
    case Kind::ObsAtom:
      return local_state(model.states()[state], f->group(), f->observation(),
                         model.structure()) == f->result();
    case Kind::Top:
      return true;
    case Kind::Bottom:
      return false;
    case Kind::Not:
      return !satisfies(model, state, f->left());
    case Kind::And:
      return satisfies(model, state, f->left()) && satisfies(model, state, f->right());
    case Kind::Or:
      return satisfies(model, state, f->left()) || satisfies(model, state, f->right());
    case Kind::Implies:
      return !satisfies(model, state, f->left()) || satisfies(model, state, f->right());
    case Kind::Know:
      for (std::size_t j = 0; j < model.size(); ++j) {
        if (model.related(state, j, f->group()) && !satisfies(model, j, f->left())) return false;
      }
      return true;
  }
  throw Error("unreachable formula kind");
}

std::vector<std::string> validate_model(const CorrelationModel& model) {
  std::vector<std::string> violations;
  const std::size_t n = model.size();
  const std::vector<AgentSet> groups = subsets_of(model.structure().full_group());
  for (const AgentSet& g : groups) {
    const std::string tag = "~{" + g.joined() + "}";
    for (std::size_t i = 0; i < n; ++i) {
      if (!model.related(i, i, g)) violations.push_back(tag + " is not reflexive");
      for (std::size_t j = 0; j < n; ++j) {
        if (model.related(i, j, g) != model.related(j, i, g)) {
          violations.push_back(tag + " is not symmetric");
        }
        for (std::size_t k = 0; k < n; ++k) {
          if (model.related(i, j, g) && model.related(j, k, g) && !model.related(i, k, g)) {
            violations.push_back(tag + " is not transitive");
          }
        }
      }
    }
  }
  for (const AgentSet& small : groups) {
    for (const AgentSet& big : groups) {
      if (!small.subset_of(big)) continue;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (model.related(i, j, big) && !model.related(i, j, small)) {
            violations.push_back("monotonicity fails: ~{" + big.joined() + "} relates " +
                                 std::to_string(i) + "," + std::to_string(j) + " but ~{" +
                                 small.joined() + "} does not");
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && model.related(i, j, model.structure().full_group())) {
        violations.push_back("observability fails: states " + std::to_string(i) + " and " +
                             std::to_string(j) + " are distinct but fully equivalent");
      }
      if (!model.related(i, j, AgentSet{})) {
        violations.push_back("vacuous information fails between states " + std::to_string(i) +
                             " and " + std::to_string(j));
      }
    }
  }
  std::sort(violations.begin(), violations.end());
  violations.erase(std::unique(violations.begin(), violations.end()), violations.end());
  return violations;
}

ExtPtr ExtFormula::make_labelled(LabelledFormula lf) {
  auto node = std::make_shared<ExtFormula>();
  node->kind = Kind::Labelled;
  node->labelled = std::move(lf);
  return node;
}

ExtPtr ExtFormula::make_relational(RelationalAtom atom) {
  auto node = std::make_shared<ExtFormula>();
  node->kind = Kind::Relational;
  node->relational = std::move(atom);
  return node;
}

namespace {
ExtPtr ext_binary(ExtFormula::Kind kind, ExtPtr lhs, ExtPtr rhs) {
  auto node = std::make_shared<ExtFormula>();
  node->kind = kind;
  node->left = std::move(lhs);
  node->right = std::move(rhs);
  return node;
}
}  // namespace

ExtPtr ExtFormula::make_and(ExtPtr lhs, ExtPtr rhs) {
  return ext_binary(Kind::And, std::move(lhs), std::move(rhs));
}
ExtPtr ExtFormula::make_or(ExtPtr lhs, ExtPtr rhs) {
  return ext_binary(Kind::Or, std::move(lhs), std::move(rhs));
}
ExtPtr ExtFormula::make_implies(ExtPtr lhs, ExtPtr rhs) {
  return ext_binary(Kind::Implies, std::move(lhs), std::move(rhs));
}

ExtPtr formula_of_sequent(const Sequent& seq) {
  const std::vector<std::string> labels = seq.labels();
  const std::string anchor = labels.empty() ? "s" : labels.front();
  ExtPtr left;
  for (const RelationalAtom& rel : seq.relations()) {
    ExtPtr item = ExtFormula::make_relational(rel);
    left = left ? ExtFormula::make_and(left, item) : item;
  }
  for (const LabelledFormula& lf : seq.antecedent()) {
    ExtPtr item = ExtFormula::make_labelled(lf);
    left = left ? ExtFormula::make_and(left, item) : item;
  }
  if (!left) left = ExtFormula::make_labelled({anchor, Formula::top()});
  ExtPtr right;
  for (const LabelledFormula& lf : seq.succedent()) {
    ExtPtr item = ExtFormula::make_labelled(lf);
    right = right ? ExtFormula::make_or(right, item) : item;
  }
  if (!right) right = ExtFormula::make_labelled({anchor, Formula::bottom()});
  return ExtFormula::make_implies(left, right);
}

namespace {

std::size_t lookup_state(const std::vector<std::pair<std::string, std::size_t>>& assignment,
                         const std::string& label) {
  auto it = std::lower_bound(assignment.begin(), assignment.end(), label,
                             [](const auto& entry, const std::string& l) {
                               return entry.first < l;
                             });
  if (it == assignment.end() || it->first != label) return 0;
  return it->second;
}

}  // namespace

bool eval_extended(const ExtPtr& f, const CorrelationModel& model,
                   const std::vector<std::pair<std::string, std::size_t>>& assignment) {
  switch (f->kind) {
    case ExtFormula::Kind::Labelled:
      return satisfies(model, lookup_state(assignment, f->labelled.label), f->labelled.formula);
    case ExtFormula::Kind::Relational:
      return model.related(lookup_state(assignment, f->relational.left),
                           lookup_state(assignment, f->relational.right), f->relational.group);
    case ExtFormula::Kind::And:
      return eval_extended(f->left, model, assignment) &&
             eval_extended(f->right, model, assignment);
    case ExtFormula::Kind::Or:
      return eval_extended(f->left, model, assignment) ||
             eval_extended(f->right, model, assignment);
    case ExtFormula::Kind::Implies:
      return !eval_extended(f->left, model, assignment) ||
             eval_extended(f->right, model, assignment);
  }
  throw Error("unreachable extended formula kind");
}

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return UINT64_MAX;
    result *= base;
  }
  return result;
}

std::vector<State> function_space(const ObservationStructure& structure) {
  const std::size_t width = structure.full_observations().size();
  const std::size_t radix = structure.results().size();
  const std::uint64_t count = saturating_pow(radix, width);
  if (count == UINT64_MAX || count > (1u << 20)) {
    throw BudgetError("state-function space too large to enumerate");
  }
  std::vector<State> space;
  space.reserve(count);
  State current;
  current.outcomes.assign(width, 0);
  for (std::uint64_t k = 0; k < count; ++k) {
    space.push_back(current);
    for (std::size_t pos = width; pos-- > 0;) {
      if (++current.outcomes[pos] < radix) break;
      current.outcomes[pos] = 0;
    }
  }
  return space;
}

}  // namespace

std::uint64_t model_space_size(const ObservationStructure& structure, std::size_t atom_count) {
  const std::uint64_t f =
      saturating_pow(structure.results().size(), structure.full_observations().size());
  if (atom_count >= 63) return UINT64_MAX;
  const std::uint64_t per_state = std::uint64_t{1} << atom_count;
  if (per_state >= UINT64_MAX - 1) return UINT64_MAX;
  const std::uint64_t total = saturating_pow(per_state + 1, f);
  return total == UINT64_MAX ? UINT64_MAX : total - 1;
}

ModelEnumerator::ModelEnumerator(const ObservationStructure& structure,
                                 std::vector<std::string> atoms,
                                 const EnumerationBudget& budget)
    : structure_(&structure), atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  if (model_space_size(structure, atoms_.size()) > budget.max_models) {
    throw BudgetError("model space exceeds the enumeration budget");
  }
  space_ = function_space(structure);
  if (space_.size() >= 63) throw BudgetError("state-function space too large to enumerate");
  valuation_count_ = std::uint64_t{1} << atoms_.size();
}

CorrelationModel ModelEnumerator::build() const {
  std::vector<State> states;
  for (std::size_t k = 0; k < space_.size(); ++k) {
    if (subset_mask_ & (std::uint64_t{1} << k)) states.push_back(space_[k]);
  }
  std::map<std::string, std::vector<bool>> valuation;
  std::size_t bit = 0;
  for (const std::string& atom : atoms_) {
    std::vector<bool> values(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      values[i] = (valuation_mask_ >> bit) & 1;
      ++bit;
    }
    valuation.emplace(atom, std::move(values));
  }
  return CorrelationModel(*structure_, std::move(states), std::move(valuation));
}

std::optional<CorrelationModel> ModelEnumerator::next() {
  const std::uint64_t subset_limit = std::uint64_t{1} << space_.size();
  while (subset_mask_ < subset_limit) {
    if (valuation_mask_ < valuation_count_) {
      CorrelationModel model = build();
      ++valuation_mask_;
      ++total_;
      return model;
    }
    ++subset_mask_;
    valuation_mask_ = 0;
    if (subset_mask_ < subset_limit) {
      const std::size_t state_count =
          static_cast<std::size_t>(std::popcount(subset_mask_));
      valuation_count_ = std::uint64_t{1} << (state_count * atoms_.size());
    }
  }
  return std::nullopt;
}

bool check_validity(const FormulaPtr& f, const ObservationStructure& structure,
                    const std::vector<std::string>& atoms, const EnumerationBudget& budget) {
  ModelEnumerator models(structure, atoms, budget);
  while (std::optional<CorrelationModel> model = models.next()) {
    const std::vector<std::uint8_t> truth = truth_vector(*model, f);
    for (std::uint8_t v : truth) {
      if (!v) return false;
    }
  }
  return true;
}

std::optional<Countermodel> find_countermodel(const FormulaPtr& f,
                                              const ObservationStructure& structure,
                                              const std::vector<std::string>& atoms,
                                              const EnumerationBudget& budget) {
  ModelEnumerator models(structure, atoms, budget);
  while (std::optional<CorrelationModel> model = models.next()) {
    const std::vector<std::uint8_t> truth = truth_vector(*model, f);
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (!truth[i]) return Countermodel{std::move(*model), i};
    }
  }
  return std::nullopt;
}

namespace {

struct SequentChecker {
  const Sequent& seq;
  std::vector<std::string> labels;
  std::vector<const Formula*> keys;
  std::vector<const FormulaPtr*> formulas;

  explicit SequentChecker(const Sequent& s) : seq(s), labels(s.labels()) {}

  // Refuting assignment within one model, if any.
  std::optional<std::vector<std::pair<std::string, std::size_t>>> refute(
      const CorrelationModel& model) {
    std::unordered_map<const Formula*, std::vector<std::uint8_t>> truths;
    for (const LabelledFormula& lf : seq.antecedent()) {
      truths.emplace(lf.formula.get(), truth_vector(model, lf.formula));
    }
    for (const LabelledFormula& lf : seq.succedent()) {
      truths.emplace(lf.formula.get(), truth_vector(model, lf.formula));
    }
    const std::size_t n = model.size();
    std::vector<std::size_t> pick(labels.size(), 0);
    while (true) {
      bool refuted = true;
      for (const RelationalAtom& rel : seq.relations()) {
        if (!model.related(pick[label_index(rel.left)], pick[label_index(rel.right)],
                           rel.group)) {
          refuted = false;
          break;
        }
      }
      if (refuted) {
        for (const LabelledFormula& lf : seq.antecedent()) {
          if (!truths.at(lf.formula.get())[pick[label_index(lf.label)]]) {
            refuted = false;
            break;
          }
        }
      }
      if (refuted) {
        for (const LabelledFormula& lf : seq.succedent()) {
          if (truths.at(lf.formula.get())[pick[label_index(lf.label)]]) {
            refuted = false;
            break;
          }
        }
      }
      if (refuted) {
        std::vector<std::pair<std::string, std::size_t>> assignment;
        for (std::size_t i = 0; i < labels.size(); ++i) assignment.emplace_back(labels[i], pick[i]);
        return assignment;
      }
      std::size_t pos = labels.size();
      while (pos > 0) {
        --pos;
        if (++pick[pos] < n) break;
        pick[pos] = 0;
        if (pos == 0) return std::nullopt;
      }
      if (labels.empty()) return std::nullopt;
    }
  }

  std::size_t label_index(const std::string& label) const {
    return static_cast<std::size_t>(
        std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
  }
};

}  // namespace

bool sequent_valid(const Sequent& seq, const ObservationStructure& structure,
                   const EnumerationBudget& budget) {
  return !find_sequent_countermodel(seq, structure, budget).has_value();
}

std::optional<SequentCountermodel> find_sequent_countermodel(const Sequent& seq,
                                                             const ObservationStructure& structure,
                                                             const EnumerationBudget& budget) {
  SequentChecker checker(seq);
  ModelEnumerator models(structure, seq.atom_names(), budget);
  while (std::optional<CorrelationModel> model = models.next()) {
    if (auto assignment = checker.refute(*model)) {
      return SequentCountermodel{std::move(*model), std::move(*assignment)};
    }
  }
  return std::nullopt;
}

std::string model_to_json_text(const CorrelationModel& model) {
  nlohmann::ordered_json doc;
  doc["states"] = nlohmann::ordered_json::array();
  const ObservationStructure& structure = model.structure();
  for (const State& s : model.states()) {
    nlohmann::ordered_json entry = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < structure.full_observations().size(); ++i) {
      entry[structure.full_observations()[i].key()] = structure.results()[s.outcomes[i]];
    }
    doc["states"].push_back(std::move(entry));
  }
  doc["valuation"] = nlohmann::ordered_json::object();
  for (const auto& [atom, values] : model.valuation()) {
    nlohmann::ordered_json column = nlohmann::ordered_json::array();
    for (bool v : values) column.push_back(v);
    doc["valuation"][atom] = std::move(column);
  }
  return doc.dump(2);
}

CorrelationModel model_from_json_text(const std::string& text,
                                      const ObservationStructure& structure) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("model JSON parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("states") || !doc["states"].is_array()) {
    throw Error("model JSON needs a \"states\" array");
  }
  std::vector<State> states;
  for (const auto& entry : doc["states"]) {
    if (!entry.is_object()) throw Error("each state must be an outcome object");
    State s;
    s.outcomes.resize(structure.full_observations().size());
    std::size_t seen = 0;
    for (std::size_t i = 0; i < structure.full_observations().size(); ++i) {
      const std::string key = structure.full_observations()[i].key();
      if (!entry.contains(key)) throw Error("state is missing outcome for " + key);
      if (!entry[key].is_string()) throw Error("outcome for " + key + " must be a result string");
      const std::string r = entry[key].get<std::string>();
      if (!structure.has_result(r)) throw Error("unknown result '" + r + "' in state");
      s.outcomes[i] = static_cast<std::uint8_t>(structure.result_index(r));
      ++seen;
    }
    if (entry.size() != seen) throw Error("state lists an unknown observation");
    states.push_back(std::move(s));
  }
  std::map<std::string, std::vector<bool>> valuation;
  if (doc.contains("valuation")) {
    if (!doc["valuation"].is_object()) throw Error("\"valuation\" must be an object");
    for (const auto& [atom, column] : doc["valuation"].items()) {
      if (!column.is_array()) throw Error("valuation for '" + atom + "' must be an array");
      std::vector<bool> values;
      for (const auto& v : column) {
        if (!v.is_boolean()) throw Error("valuation for '" + atom + "' must hold booleans");
        values.push_back(v.get<bool>());
      }
      valuation.emplace(atom, std::move(values));
    }
  }
  return CorrelationModel(structure, std::move(states), std::move(valuation));
}

CorrelationModel model_from_json_file(const std::string& path,
                                      const ObservationStructure& structure) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json_text(buffer.str(), structure);
}

}  // namespace lck
