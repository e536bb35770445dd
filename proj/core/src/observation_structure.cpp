#include "lck/observation_structure.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lck {

namespace {

const std::shared_ptr<const std::vector<std::string>>& empty_agent_list() {
  static const auto empty = std::make_shared<const std::vector<std::string>>();
  return empty;
}

}  // namespace

AgentSet::AgentSet() : items_(empty_agent_list()) {}

AgentSet::AgentSet(std::vector<std::string> agents) {
  std::sort(agents.begin(), agents.end());
  agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
  if (agents.empty()) {
    items_ = empty_agent_list();
  } else {
    items_ = std::make_shared<const std::vector<std::string>>(std::move(agents));
  }
}

AgentSet AgentSet::of(std::initializer_list<std::string> agents) {
  return AgentSet(std::vector<std::string>(agents));
}

bool AgentSet::contains(const std::string& agent) const {
  return std::binary_search(items_->begin(), items_->end(), agent);
}

bool AgentSet::subset_of(const AgentSet& other) const {
  return std::includes(other.items_->begin(), other.items_->end(), items_->begin(),
                       items_->end());
}

std::string AgentSet::joined() const {
  std::string out;
  const std::vector<std::string>& agents = *items_;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (i) out += ',';
    out += agents[i];
  }
  return out;
}

std::vector<AgentSet> subsets_of(const AgentSet& full) {
  const auto& items = full.items();
  std::vector<AgentSet> out;
  out.reserve(std::size_t(1) << items.size());
  for (std::size_t mask = 0; mask < (std::size_t(1) << items.size()); ++mask) {
    std::vector<std::string> members;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (mask & (std::size_t(1) << i)) members.push_back(items[i]);
    out.emplace_back(std::move(members));
  }
  std::sort(out.begin(), out.end(), [](const AgentSet& x, const AgentSet& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x.items() < y.items();
  });
  return out;
}

const char* compose_op_name(ComposeOp op) {
  switch (op) {
    case ComposeOp::Max: return "max";
    case ComposeOp::Min: return "min";
    case ComposeOp::Union: return "union";
  }
  return "?";
}

ComposeOp compose_op_from_name(const std::string& name) {
  if (name == "max") return ComposeOp::Max;
  if (name == "min") return ComposeOp::Min;
  if (name == "union") return ComposeOp::Union;
  throw Error("unknown compose operation: " + name);
}

JointObservation::JointObservation(
    std::vector<std::pair<std::string, std::string>> components)
    : components_(std::move(components)) {
  std::sort(components_.begin(), components_.end());
  for (std::size_t i = 1; i < components_.size(); ++i)
    if (components_[i - 1].first == components_[i].first)
      throw Error("joint observation repeats agent " + components_[i].first);
}

AgentSet JointObservation::group() const {
  std::vector<std::string> agents;
  agents.reserve(components_.size());
  for (const auto& [agent, obs] : components_) agents.push_back(agent);
  return AgentSet(std::move(agents));
}

std::string JointObservation::key() const {
  std::string out = "(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += ',';
    out += components_[i].second;
  }
  out += ')';
  return out;
}

ObservationStructure::ObservationStructure(
    std::vector<std::string> agents,
    std::map<std::string, std::vector<std::string>> observations,
    std::vector<std::string> results, ComposeOp op)
    : agents_(std::move(agents)),
      observations_(std::move(observations)),
      results_(std::move(results)),
      op_(op) {
  std::sort(agents_.begin(), agents_.end());
  if (std::adjacent_find(agents_.begin(), agents_.end()) != agents_.end())
    throw Error("duplicate agent");
  full_group_ = AgentSet(agents_);
  for (auto& [agent, obs] : observations_) {
    std::sort(obs.begin(), obs.end());
    if (std::adjacent_find(obs.begin(), obs.end()) != obs.end())
      throw Error("duplicate observation for agent " + agent);
  }
  std::sort(results_.begin(), results_.end());
  if (std::adjacent_find(results_.begin(), results_.end()) != results_.end())
    throw Error("duplicate result");
  validate();
  full_observations_ = joint_observations(full_group_);
  group_subsets_ = subsets_of(full_group_);
}

bool ObservationStructure::has_agent(const std::string& agent) const {
  return std::binary_search(agents_.begin(), agents_.end(), agent);
}

const std::vector<std::string>& ObservationStructure::observations(
    const std::string& agent) const {
  auto it = observations_.find(agent);
  if (it == observations_.end()) throw Error("unknown agent: " + agent);
  return it->second;
}

bool ObservationStructure::has_result(const std::string& r) const {
  return std::binary_search(results_.begin(), results_.end(), r);
}

int ObservationStructure::result_index(const std::string& r) const {
  auto it = std::lower_bound(results_.begin(), results_.end(), r);
  if (it == results_.end() || *it != r) throw DomainError("unknown result: " + r);
  return int(it - results_.begin());
}

const std::vector<JointObservation>& ObservationStructure::joint_observations(
    const AgentSet& group) const {
  auto cached = joint_cache_.find(group);
  if (cached != joint_cache_.end()) return cached->second;
  for (const auto& agent : group)
    if (!has_agent(agent)) throw Error("unknown agent: " + agent);
  std::vector<JointObservation> out;
  std::vector<std::pair<std::string, std::string>> current;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == group.size()) {
      out.emplace_back(current);
      return;
    }
    const std::string& agent = group.items()[i];
    for (const auto& obs : observations(agent)) {
      current.emplace_back(agent, obs);
      walk(i + 1);
      current.pop_back();
    }
  };
  walk(0);
  std::sort(out.begin(), out.end());
  return joint_cache_.emplace(group, std::move(out)).first->second;
}

int ObservationStructure::full_observation_index(const JointObservation& o) const {
  auto it = std::lower_bound(full_observations_.begin(), full_observations_.end(), o);
  if (it == full_observations_.end() || !(*it == o))
    throw Error("not a full observation: " + o.key());
  return int(it - full_observations_.begin());
}

std::vector<JointObservation> ObservationStructure::extension_set(
    const JointObservation& e) const {
  if (!valid_observation(e)) throw Error("invalid observation: " + e.key());
  std::vector<JointObservation> out;
  for (const auto& full : full_observations_) {
    bool agrees = true;
    for (const auto& [agent, obs] : e.components()) {
      for (const auto& [fa, fo] : full.components())
        if (fa == agent && fo != obs) agrees = false;
    }
    if (agrees) out.push_back(full);
  }
  return out;
}

const std::vector<int>& ObservationStructure::extension_indices(
    const JointObservation& e) const {
  auto it = extension_cache_.find(e);
  if (it != extension_cache_.end()) return it->second;
  std::vector<int> idx;
  for (const auto& full : extension_set(e)) idx.push_back(full_observation_index(full));
  return extension_cache_.emplace(e, std::move(idx)).first->second;
}

bool ObservationStructure::valid_observation(const JointObservation& obs) const {
  for (const auto& [agent, o] : obs.components()) {
    if (!has_agent(agent)) return false;
    const auto& pool = observations(agent);
    if (!std::binary_search(pool.begin(), pool.end(), o)) return false;
  }
  return true;
}

std::string ObservationStructure::compose_set(
    const std::vector<std::string>& sorted_unique) const {
  switch (op_) {
    case ComposeOp::Max: return sorted_unique.back();
    case ComposeOp::Min: return sorted_unique.front();
    case ComposeOp::Union: {
      std::set<char> merged;
      for (const auto& v : sorted_unique) merged.insert(v.begin(), v.end());
      return std::string(merged.begin(), merged.end());
    }
  }
  throw Error("bad compose op");
}

std::string ObservationStructure::compose_results(
    const std::vector<std::string>& values) const {
  if (values.empty()) throw DomainError("compose of an empty result collection");
  std::vector<std::string> set = values;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  for (const auto& v : set)
    if (!has_result(v)) throw DomainError("unknown result: " + v);
  std::string composed = compose_set(set);
  if (!has_result(composed))
    throw DomainError("composition escapes the result set: " + composed);
  return composed;
}

namespace {

// All ways to split `items` into nonempty blocks.
void partitions(const std::vector<std::string>& items, std::size_t i,
                std::vector<std::vector<std::string>>& blocks,
                const std::function<void(const std::vector<std::vector<std::string>>&)>& fn) {
  if (i == items.size()) {
    fn(blocks);
    return;
  }
  // Recursion below appends and removes blocks, so index rather than
  // iterate: reallocation would invalidate iterators and references.
  const std::size_t existing = blocks.size();
  for (std::size_t b = 0; b < existing; ++b) {
    blocks[b].push_back(items[i]);
    partitions(items, i + 1, blocks, fn);
    blocks[b].pop_back();
  }
  blocks.push_back({items[i]});
  partitions(items, i + 1, blocks, fn);
  blocks.pop_back();
}

}  // namespace

void ObservationStructure::validate() const {
  if (agents_.empty()) throw Error("structure needs at least one agent");
  if (results_.empty()) throw Error("structure needs at least one result");
  for (const auto& agent : agents_) {
    auto it = observations_.find(agent);
    if (it == observations_.end() || it->second.empty())
      throw Error("agent " + agent + " has no observations");
  }
  for (const auto& [agent, obs] : observations_)
    if (!has_agent(agent)) throw Error("observations listed for unknown agent " + agent);

  for (const auto& r : results_)
    if (compose_set({r}) != r)
      throw Error("compose violates the singleton law on result " + r);

  // Partition condition, exhaustive over small result subsets: composing a
  // subset blockwise and then composing the block results must equal
  // composing the subset directly. Subsets are capped at four elements so a
  // large R stays loadable; desk-scale structures are covered completely.
  const std::size_t cap = 4;
  std::vector<std::string> subset;
  std::function<void(std::size_t)> subsets = [&](std::size_t i) {
    if (!subset.empty()) {
      std::string direct = compose_set(subset);
      if (!has_result(direct))
        throw Error("results not closed under compose: " + direct);
      std::vector<std::vector<std::string>> blocks;
      partitions(subset, 0, blocks, [&](const std::vector<std::vector<std::string>>& bs) {
        std::vector<std::string> stage;
        for (const auto& b : bs) {
          std::vector<std::string> sorted = b;
          std::sort(sorted.begin(), sorted.end());
          stage.push_back(compose_set(sorted));
        }
        std::sort(stage.begin(), stage.end());
        stage.erase(std::unique(stage.begin(), stage.end()), stage.end());
        if (compose_set(stage) != direct)
          throw Error("compose violates the partition condition on a subset of R");
      });
    }
    if (i == results_.size() || subset.size() == cap) return;
    for (std::size_t j = i; j < results_.size(); ++j) {
      subset.push_back(results_[j]);
      subsets(j + 1);
      subset.pop_back();
    }
  };
  subsets(0);
}

ObservationStructure ObservationStructure::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad config JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("config must be a JSON object");
  for (const char* key : {"agents", "observations", "results", "compose"})
    if (!j.contains(key)) throw Error(std::string("config missing key: ") + key);

  std::vector<std::string> agents = j.at("agents").get<std::vector<std::string>>();
  std::map<std::string, std::vector<std::string>> observations =
      j.at("observations").get<std::map<std::string, std::vector<std::string>>>();
  std::vector<std::string> results = j.at("results").get<std::vector<std::string>>();
  ComposeOp op = compose_op_from_name(j.at("compose").get<std::string>());
  return ObservationStructure(std::move(agents), std::move(observations),
                              std::move(results), op);
}

ObservationStructure ObservationStructure::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string ObservationStructure::to_json_text() const {
  nlohmann::ordered_json j;
  j["agents"] = agents_;
  nlohmann::ordered_json obs = nlohmann::ordered_json::object();
  for (const auto& agent : agents_) obs[agent] = observations(agent);
  j["observations"] = obs;
  j["results"] = results_;
  j["compose"] = compose_op_name(op_);
  return j.dump(2);
}

}  // namespace lck
