#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lck/formula.hpp"
#include "lck/observation_structure.hpp"

namespace lck {

struct BudgetError : Error {
  using Error::Error;
};

/// A state assigns a result to every full joint observation. `outcomes[i]`
/// is the result index (into `structure.results()`) for the observation at
/// `structure.full_observations()[i]`.
struct State {
  std::vector<std::uint8_t> outcomes;

  auto operator<=>(const State&) const = default;
};

/// `s_I(e)`: fold the state's outcomes over the extension of `e` with the
/// structure's composition operation.
std::string local_state(const State& state, const AgentSet& group, const JointObservation& e,
                        const ObservationStructure& structure);

/// Literal local-state comparison: `s_I = t_I`, i.e. equal composed results
/// on every joint observation of the group. For the empty group this
/// compares the fold of each state's full outcome set.
bool observationally_equivalent(const State& s, const State& t, const AgentSet& group,
                                const ObservationStructure& structure);

/// Kripke model over an observation structure: a finite set of states, a
/// valuation, and the observational-equivalence relation family. The empty
/// group's relation is total (vacuous information); every other relation is
/// derived from local states.
class CorrelationModel {
 public:
  CorrelationModel(const ObservationStructure& structure, std::vector<State> states,
                   std::map<std::string, std::vector<bool>> valuation);

  const ObservationStructure& structure() const { return *structure_; }
  const std::vector<State>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const std::map<std::string, std::vector<bool>>& valuation() const { return valuation_; }

  /// Atom truth at a state; atoms absent from the valuation are false.
  bool value(std::size_t state, const std::string& atom) const;

  /// Model relation `∼_I`. Total for the empty group, otherwise local-state
  /// equality.
  bool related(std::size_t s, std::size_t t, const AgentSet& group) const;

  /// Composed result index of `full_observations()[obs]` restricted to the
  /// group's joint observation it extends; used internally and by audits.
  std::uint8_t local_result(std::size_t state, std::size_t group_index,
                            std::size_t joint_index) const;

 private:
  const ObservationStructure* structure_;
  std::vector<State> states_;
  std::map<std::string, std::vector<bool>> valuation_;
  // signatures_[state][group_index] = composed result indices over
  // joint_observations(group), groups indexed per subsets_of(full_group()).
  std::vector<std::vector<std::vector<std::uint8_t>>> signatures_;
  std::vector<AgentSet> groups_;
};

/// Recursive satisfaction at one state.
bool satisfies(const CorrelationModel& model, std::size_t state, const FormulaPtr& f);

/// Truth of `f` at every state of the model at once.
std::vector<std::uint8_t> truth_vector(const CorrelationModel& model, const FormulaPtr& f);

/// Checks the four model conditions (equivalence relations, monotonicity,
/// observability, vacuous information) plus outcome-table shape. Returns a
/// list of violations; empty means the model is well-formed.
std::vector<std::string> validate_model(const CorrelationModel& model);

/// Formulas over the extended syntax of sequents: labelled formulas,
/// relational atoms, and boolean combinations.
struct ExtFormula;
using ExtPtr = std::shared_ptr<const ExtFormula>;

struct ExtFormula {
  enum class Kind { Labelled, Relational, And, Or, Implies };

  Kind kind;
  LabelledFormula labelled{};  // Labelled
  RelationalAtom relational{};  // Relational
  ExtPtr left;
  ExtPtr right;

  static ExtPtr make_labelled(LabelledFormula lf);
  static ExtPtr make_relational(RelationalAtom atom);
  static ExtPtr make_and(ExtPtr lhs, ExtPtr rhs);
  static ExtPtr make_or(ExtPtr lhs, ExtPtr rhs);
  static ExtPtr make_implies(ExtPtr lhs, ExtPtr rhs);
};

/// The sequent's characteristic formula: antecedent conjunction (relational
/// atoms included) implies succedent disjunction. An empty antecedent
/// contributes a labelled truth constant, an empty succedent a labelled
/// falsity constant.
ExtPtr formula_of_sequent(const Sequent& seq);

/// Evaluate an extended formula under a label-to-state assignment.
bool eval_extended(const ExtPtr& f, const CorrelationModel& model,
                   const std::vector<std::pair<std::string, std::size_t>>& assignment);

struct EnumerationBudget {
  std::uint64_t max_models = 100'000'000;
};

/// Number of models `enumerate` yields: sum over nonempty subsets S' of the
/// state-function space of 2^(|S'| * atoms), i.e. (1 + 2^atoms)^F - 1 for a
/// function space of size F. Saturates at uint64 max.
std::uint64_t model_space_size(const ObservationStructure& structure, std::size_t atom_count);

/// Streams every model over the structure: each nonempty subset of the full
/// state-function space crossed with every valuation of the given atoms.
/// Deterministic order: subsets by increasing bitmask over the
/// lexicographically ordered function space, then valuations by bitmask.
class ModelEnumerator {
 public:
  ModelEnumerator(const ObservationStructure& structure, std::vector<std::string> atoms,
                  const EnumerationBudget& budget = {});

  std::optional<CorrelationModel> next();
  std::uint64_t total() const { return total_; }

 private:
  const ObservationStructure* structure_;
  std::vector<std::string> atoms_;
  std::vector<State> space_;
  std::uint64_t subset_mask_ = 1;
  std::uint64_t valuation_mask_ = 0;
  std::uint64_t valuation_count_ = 1;
  std::uint64_t total_ = 0;
  CorrelationModel build() const;
};

/// True iff `f` holds at every state of every enumerated model.
bool check_validity(const FormulaPtr& f, const ObservationStructure& structure,
                    const std::vector<std::string>& atoms, const EnumerationBudget& budget = {});

struct Countermodel {
  CorrelationModel model;
  std::size_t state;
};

/// First model and state refuting `f`, if any.
std::optional<Countermodel> find_countermodel(const FormulaPtr& f,
                                              const ObservationStructure& structure,
                                              const std::vector<std::string>& atoms,
                                              const EnumerationBudget& budget = {});

struct SequentCountermodel {
  CorrelationModel model;
  std::vector<std::pair<std::string, std::size_t>> assignment;
};

/// True iff the sequent's characteristic formula holds in every enumerated
/// model under every assignment of its labels to states.
bool sequent_valid(const Sequent& seq, const ObservationStructure& structure,
                   const EnumerationBudget& budget = {});

std::optional<SequentCountermodel> find_sequent_countermodel(
    const Sequent& seq, const ObservationStructure& structure,
    const EnumerationBudget& budget = {});

/// Model JSON: {"states": [{"(oa,ob1)": "0", ...}, ...],
///              "valuation": {"p": [true, ...], ...}}
std::string model_to_json_text(const CorrelationModel& model);
CorrelationModel model_from_json_text(const std::string& text,
                                      const ObservationStructure& structure);
CorrelationModel model_from_json_file(const std::string& path,
                                      const ObservationStructure& structure);

}  // namespace lck
