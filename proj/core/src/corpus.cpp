#include "lck/corpus.hpp"

namespace lck {

namespace {

std::string group_tag(const AgentSet& group) { return "{" + group.joined() + "}"; }

FormulaPtr conj_all(const std::vector<FormulaPtr>& parts) {
  FormulaPtr out;
  for (const FormulaPtr& part : parts) out = out ? Formula::conj(out, part) : part;
  return out;
}

FormulaPtr disj_all(const std::vector<FormulaPtr>& parts) {
  FormulaPtr out;
  for (const FormulaPtr& part : parts) out = out ? Formula::disj(out, part) : part;
  return out;
}

// Walks result tuples over `slots` observations: fn gets one vector of
// results per call.
template <typename Fn>
void result_tuples(const ObservationStructure& structure, std::size_t slots, Fn&& fn) {
  std::vector<std::string> tuple(slots);
  std::vector<std::size_t> pick(slots, 0);
  const auto& results = structure.results();
  while (true) {
    for (std::size_t k = 0; k < slots; ++k) tuple[k] = results[pick[k]];
    fn(tuple);
    std::size_t pos = slots;
    while (pos > 0) {
      --pos;
      if (++pick[pos] < results.size()) break;
      pick[pos] = 0;
      if (pos == 0) return;
    }
    if (slots == 0) return;
  }
}

std::string tuple_tag(const std::vector<JointObservation>& obs,
                      const std::vector<std::string>& tuple) {
  std::string out;
  for (std::size_t k = 0; k < obs.size(); ++k) {
    if (!out.empty()) out += ",";
    out += obs[k].key() + "^" + tuple[k];
  }
  return out;
}

}  // namespace

std::vector<CorpusEntry> hilbert_corpus(const ObservationStructure& structure) {
  std::vector<CorpusEntry> out;
  const FormulaPtr p = Formula::atom("p");
  const FormulaPtr q = Formula::atom("q");
  const FormulaPtr r = Formula::atom("r");
  const AgentSet& full = structure.full_group();
  const std::vector<AgentSet> groups = subsets_of(full);

  out.push_back({"H1", Formula::implies(p, Formula::implies(q, p))});
  out.push_back({"H2", Formula::implies(
                           Formula::implies(p, Formula::implies(q, r)),
                           Formula::implies(Formula::implies(p, q), Formula::implies(p, r)))});
  out.push_back({"H3", Formula::implies(Formula::implies(Formula::negate(p), Formula::negate(q)),
                                        Formula::implies(q, p))});

  for (const AgentSet& g : groups) {
    out.push_back({"H4" + group_tag(g),
                   Formula::implies(Formula::know(g, Formula::implies(p, q)),
                                    Formula::implies(Formula::know(g, p), Formula::know(g, q)))});
  }
  for (const AgentSet& g : groups) {
    out.push_back({"H5" + group_tag(g), Formula::implies(Formula::know(g, p), p)});
  }
  for (const AgentSet& g : groups) {
    out.push_back({"H6" + group_tag(g),
                   Formula::implies(Formula::know(g, p),
                                    Formula::know(g, Formula::know(g, p)))});
  }
  for (const AgentSet& g : groups) {
    out.push_back({"H7" + group_tag(g),
                   Formula::implies(Formula::negate(Formula::know(g, p)),
                                    Formula::know(g, Formula::negate(Formula::know(g, p))))});
  }
  for (const AgentSet& big : groups) {
    for (const AgentSet& small : groups) {
      if (!small.subset_of(big)) continue;
      out.push_back({"H8" + group_tag(small) + "<=" + group_tag(big),
                     Formula::implies(Formula::know(small, p), Formula::know(big, p))});
    }
  }
  out.push_back({"H9", Formula::implies(p, Formula::know(full, p))});

  for (const AgentSet& g : groups) {
    if (g.empty()) continue;
    const std::vector<JointObservation> joints = structure.joint_observations(g);

    std::vector<FormulaPtr> coverage;
    for (const JointObservation& o : joints) {
      std::vector<FormulaPtr> one;
      for (const std::string& res : structure.results()) one.push_back(Formula::obs_atom(o, res));
      coverage.push_back(disj_all(one));
    }
    out.push_back({"H10" + group_tag(g), conj_all(coverage)});

    for (const JointObservation& o : joints) {
      for (const std::string& r1 : structure.results()) {
        for (const std::string& r2 : structure.results()) {
          if (r1 == r2) continue;
          out.push_back({"H11" + group_tag(g) + o.key() + "^" + r1 + "!=" + r2,
                         Formula::implies(Formula::obs_atom(o, r1),
                                          Formula::negate(Formula::obs_atom(o, r2)))});
        }
      }
    }

    for (const JointObservation& o : joints) {
      for (const std::string& res : structure.results()) {
        out.push_back({"H12" + group_tag(g) + o.key() + "^" + res,
                       Formula::implies(Formula::obs_atom(o, res),
                                        Formula::know(g, Formula::obs_atom(o, res)))});
      }
    }

    result_tuples(structure, joints.size(), [&](const std::vector<std::string>& tuple) {
      std::vector<FormulaPtr> atoms;
      for (std::size_t k = 0; k < joints.size(); ++k) {
        atoms.push_back(Formula::obs_atom(joints[k], tuple[k]));
      }
      const FormulaPtr snapshot = conj_all(atoms);
      out.push_back({"H13" + group_tag(g) + "[" + tuple_tag(joints, tuple) + "]",
                     Formula::implies(Formula::conj(snapshot, Formula::know(g, p)),
                                      Formula::know(AgentSet{}, Formula::implies(snapshot, p)))});
    });

    for (const JointObservation& e : joints) {
      const std::vector<int>& ext = structure.extension_indices(e);
      std::vector<JointObservation> cover;
      for (int idx : ext) cover.push_back(structure.full_observations()[idx]);
      result_tuples(structure, cover.size(), [&](const std::vector<std::string>& tuple) {
        std::vector<FormulaPtr> atoms;
        for (std::size_t k = 0; k < cover.size(); ++k) {
          atoms.push_back(Formula::obs_atom(cover[k], tuple[k]));
        }
        const std::string sigma = structure.compose_results(tuple);
        out.push_back({"H14" + group_tag(g) + e.key() + "[" + tuple_tag(cover, tuple) + "]",
                       Formula::implies(conj_all(atoms), Formula::obs_atom(e, sigma))});
      });
    }
  }
  return out;
}

}  // namespace lck
