#pragma once

#include <compare>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lck {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

/// Sorted, duplicate-free set of agent names. Lexicographic order is the
/// canonical order used everywhere determinism matters. Internally a shared
/// handle to an immutable member list, so copies are cheap and comparisons
/// of the same handle short-circuit.
class AgentSet {
 public:
  AgentSet();
  explicit AgentSet(std::vector<std::string> agents);

  static AgentSet of(std::initializer_list<std::string> agents);

  bool empty() const { return items_->empty(); }
  std::size_t size() const { return items_->size(); }
  bool contains(const std::string& agent) const;
  bool subset_of(const AgentSet& other) const;

  auto begin() const { return items_->begin(); }
  auto end() const { return items_->end(); }
  const std::vector<std::string>& items() const { return *items_; }

  /// Comma-joined members, e.g. "a,b".
  std::string joined() const;

  bool operator==(const AgentSet& other) const {
    return items_ == other.items_ || *items_ == *other.items_;
  }
  std::strong_ordering operator<=>(const AgentSet& other) const {
    if (items_ == other.items_) return std::strong_ordering::equal;
    return *items_ <=> *other.items_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> items_;
};

/// All subsets of `full`, ordered by (size, lexicographic members).
std::vector<AgentSet> subsets_of(const AgentSet& full);

enum class ComposeOp { Max, Min, Union };

const char* compose_op_name(ComposeOp op);
ComposeOp compose_op_from_name(const std::string& name);

/// A tuple of observations, one per agent of some group I.
/// Components are kept sorted by agent name.
class JointObservation {
 public:
  JointObservation() = default;
  explicit JointObservation(std::vector<std::pair<std::string, std::string>> components);

  const std::vector<std::pair<std::string, std::string>>& components() const {
    return components_;
  }
  AgentSet group() const;
  bool empty() const { return components_.empty(); }

  /// "(oa,ob1)" — observations joined in agent order.
  std::string key() const;

  auto operator<=>(const JointObservation&) const = default;

 private:
  std::vector<std::pair<std::string, std::string>> components_;
};

/// The fixed signature (N, O per agent, R, compose) every proof and every
/// model is relative to. Immutable after construction; validation of the
/// composition laws happens at load time.
class ObservationStructure {
 public:
  ObservationStructure(std::vector<std::string> agents,
                       std::map<std::string, std::vector<std::string>> observations,
                       std::vector<std::string> results, ComposeOp op);

  /// Config format: {"agents": [...], "observations": {agent: [...]},
  /// "results": [...], "compose": "max"}.
  static ObservationStructure from_json_text(const std::string& text);
  static ObservationStructure from_json_file(const std::string& path);
  std::string to_json_text() const;

  const std::vector<std::string>& agents() const { return agents_; }
  const AgentSet& full_group() const { return full_group_; }
  bool has_agent(const std::string& agent) const;
  const std::vector<std::string>& observations(const std::string& agent) const;
  const std::vector<std::string>& results() const { return results_; }
  bool has_result(const std::string& r) const;
  int result_index(const std::string& r) const;
  ComposeOp compose_op() const { return op_; }

  /// O_I: the Cartesian product of the group's observation sets, in
  /// canonical (agent-then-observation) order. O_{} is { () }. Cached per
  /// group; the reference stays valid for the structure's lifetime.
  const std::vector<JointObservation>& joint_observations(const AgentSet& group) const;

  /// O_N, cached.
  const std::vector<JointObservation>& full_observations() const {
    return full_observations_;
  }

  /// subsets_of(full_group()), cached.
  const std::vector<AgentSet>& group_subsets() const { return group_subsets_; }

  /// Index of a full observation within full_observations().
  int full_observation_index(const JointObservation& o) const;

  /// All full observations agreeing with `e` on e's group.
  std::vector<JointObservation> extension_set(const JointObservation& e) const;
  /// Same, as indices into full_observations().
  const std::vector<int>& extension_indices(const JointObservation& e) const;

  /// Fold of the composition op over the set of distinct values.
  /// Throws DomainError on an empty input or a value outside R.
  std::string compose_results(const std::vector<std::string>& values) const;

  /// True iff `obs` is a well-formed joint observation for its group here.
  bool valid_observation(const JointObservation& obs) const;

 private:
  void validate() const;
  std::string compose_set(const std::vector<std::string>& sorted_unique) const;

  std::vector<std::string> agents_;
  AgentSet full_group_;
  std::map<std::string, std::vector<std::string>> observations_;
  std::vector<std::string> results_;
  ComposeOp op_;
  std::vector<JointObservation> full_observations_;
  std::vector<AgentSet> group_subsets_;
  mutable std::map<AgentSet, std::vector<JointObservation>> joint_cache_;
  mutable std::map<JointObservation, std::vector<int>> extension_cache_;
};

}  // namespace lck
