#pragma once

#include <string>
#include <vector>

#include "lck/formula.hpp"
#include "lck/observation_structure.hpp"

namespace lck {

struct CorpusEntry {
  std::string name;
  FormulaPtr formula;
};

/// The bundled axiom suite H1..H14 instantiated over a structure with atomic
/// metavariables p, q, r: propositional axioms once; knowledge axioms for
/// every group (H8 for every nested group pair); observation axioms for
/// every nonempty group, observation and result tuple the structure admits.
std::vector<CorpusEntry> hilbert_corpus(const ObservationStructure& structure);

}  // namespace lck
