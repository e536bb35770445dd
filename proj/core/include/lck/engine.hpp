#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lck/calculus.hpp"

namespace lck {

struct SearchLimits {
  std::uint64_t max_nodes = 1'000'000;
  std::uint64_t max_millis = 0;  // 0 = no time cap
  // Replace the per-group chain bound with one bound counting negative K
  // occurrences of every group. Coarser, still terminating.
  bool aggregate_chain_bound = false;
};

enum class Verdict { Proved, NotProved, Inconclusive };

std::string verdict_name(Verdict v);

struct ProofNode {
  Sequent sequent;
  std::string rule;  // rule notation, "Axiom(k)", or "Open"
  std::string principal;
  std::vector<std::unique_ptr<ProofNode>> premises;
  std::shared_ptr<const RuleInstance> instance;  // null at leaves
};

struct ProofStats {
  std::uint64_t nodes = 0;
  std::uint64_t depth = 0;
  std::size_t table_lk_size = 0;    // largest left table over all branches
  std::size_t table_rk_chains = 0;  // most chain links over all branches
  double elapsed_ms = 0.0;
};

struct ProofResult {
  Verdict verdict = Verdict::NotProved;
  bool provable = false;
  std::unique_ptr<ProofNode> tree;
  ProofStats stats;
};

/// Empty left table; right table with chain bound n(K_I)+1 per group of the
/// root sequent, where n counts negative-polarity K_I occurrences.
LoopTables init_tables(const Sequent& root, bool aggregate_chain_bound = false);

/// Rejects sequents the search cannot take: unknown agents, observations or
/// results, internal truth constants, empty labels.
void validate_sequent(const Sequent& seq, const ObservationStructure& structure);

/// Backward proof search. Axiom check first; then the rule priority order of
/// `applicable_instances`, looping after every non-branching application and
/// recursing with copied tables at every branching one; a saturated sequent
/// with observational content left gets its outcomes split case by case;
/// otherwise the leaf stays open and the sequent is not provable. Exceeding
/// a resource cap yields Inconclusive, never a verdict.
ProofResult prove(const Sequent& root, const ObservationStructure& structure,
                  const SearchLimits& limits = {});

/// Branch discipline audit over a finished tree: no left-K principal pair
/// fires twice on one branch, and no right-K chain exceeds the root bound.
/// Returns violations; empty means the tree is clean.
std::vector<std::string> audit_proof(const ProofNode& root);

/// {"sequent": ..., "rule": ..., "principal": ..., "premises": [...]};
/// byte-deterministic for a fixed tree.
std::string proof_to_json_text(const ProofNode& root);
std::string proof_to_text(const ProofNode& root);

}  // namespace lck
