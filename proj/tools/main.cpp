#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "lck/corpus.hpp"
#include "lck/engine.hpp"
#include "lck/model.hpp"
#include "lck/parser.hpp"

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string config;
  std::string format = "text";
  std::string input;
  std::string file;
  std::uint64_t max_nodes = 1'000'000;
  std::uint64_t max_millis = 0;
  bool witness = false;
};

void add_common(CLI::App* cmd, Options& opt, const char* input_hint) {
  cmd->add_option("--config", opt.config, "Observation structure JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("input", opt.input, input_hint);
  cmd->add_option("--file", opt.file, "Read the input from a file instead");
}

void add_limits(CLI::App* cmd, Options& opt) {
  cmd->add_option("--max-nodes", opt.max_nodes, "Abort proof search after this many nodes");
  cmd->add_option("--max-millis", opt.max_millis, "Abort proof search after this many milliseconds");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lck::Error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Input may be given inline or via --file; exactly one source.
std::string input_text(const Options& opt) {
  if (!opt.file.empty() && !opt.input.empty())
    throw lck::Error("give the input either inline or with --file, not both");
  if (!opt.file.empty()) return read_file(opt.file);
  if (opt.input.empty()) throw lck::Error("no input given");
  return opt.input;
}

bool looks_like_sequent(const std::string& text) {
  return text.find("|-") != std::string::npos;
}

lck::Sequent parse_input(const std::string& text, const lck::ObservationStructure& structure) {
  if (looks_like_sequent(text)) return lck::parse_sequent(text, structure);
  lck::Sequent seq;
  seq.add_succedent({"s", lck::parse_formula(text, structure)});
  return seq;
}

lck::SearchLimits limits_of(const Options& opt) {
  lck::SearchLimits limits;
  limits.max_nodes = opt.max_nodes;
  limits.max_millis = opt.max_millis;
  return limits;
}

ordered_json stats_json(const lck::ProofStats& stats) {
  return ordered_json{{"nodes", stats.nodes},
                      {"depth", stats.depth},
                      {"table_lk_size", stats.table_lk_size},
                      {"table_rk_chains", stats.table_rk_chains},
                      {"elapsed_ms", stats.elapsed_ms}};
}

int run_prove(const Options& opt) {
  const auto structure = lck::ObservationStructure::from_json_file(opt.config);
  const lck::Sequent seq = parse_input(input_text(opt), structure);
  const lck::ProofResult result = lck::prove(seq, structure, limits_of(opt));
  if (opt.format == "json") {
    ordered_json out{{"verdict", lck::verdict_name(result.verdict)},
                     {"provable", result.provable},
                     {"tree", ordered_json::parse(lck::proof_to_json_text(*result.tree))},
                     {"stats", stats_json(result.stats)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << lck::verdict_name(result.verdict) << "\n";
    std::cout << lck::proof_to_text(*result.tree);
    const auto& s = result.stats;
    std::cout << "nodes=" << s.nodes << " depth=" << s.depth
              << " table_lk_size=" << s.table_lk_size
              << " table_rk_chains=" << s.table_rk_chains
              << " elapsed_ms=" << s.elapsed_ms << "\n";
  }
  switch (result.verdict) {
    case lck::Verdict::Proved: return 0;
    case lck::Verdict::NotProved: return 1;
    case lck::Verdict::Inconclusive: return 2;
  }
  return 2;
}

int run_validity(const Options& opt) {
  const auto structure = lck::ObservationStructure::from_json_file(opt.config);
  const std::string text = input_text(opt);
  bool valid = false;
  ordered_json witness;
  std::string witness_text;
  if (looks_like_sequent(text)) {
    const lck::Sequent seq = lck::parse_sequent(text, structure);
    const auto counter = lck::find_sequent_countermodel(seq, structure);
    valid = !counter.has_value();
    if (counter && opt.witness) {
      ordered_json assignment = ordered_json::object();
      std::ostringstream lines;
      for (const auto& [label, state] : counter->assignment) {
        assignment[label] = state;
        lines << "  " << label << " -> state " << state << "\n";
      }
      witness = ordered_json{{"model", ordered_json::parse(lck::model_to_json_text(counter->model))},
                             {"assignment", assignment}};
      witness_text = "countermodel assignment:\n" + lines.str() +
                     lck::model_to_json_text(counter->model) + "\n";
    }
  } else {
    const lck::FormulaPtr f = lck::parse_formula(text, structure);
    lck::Sequent probe;
    probe.add_succedent({"s", f});
    const auto counter = lck::find_countermodel(f, structure, probe.atom_names());
    valid = !counter.has_value();
    if (counter && opt.witness) {
      witness = ordered_json{{"model", ordered_json::parse(lck::model_to_json_text(counter->model))},
                             {"state", counter->state}};
      witness_text = "countermodel at state " + std::to_string(counter->state) + ":\n" +
                     lck::model_to_json_text(counter->model) + "\n";
    }
  }
  if (opt.format == "json") {
    ordered_json out{{"valid", valid}};
    if (!witness.is_null()) out["countermodel"] = witness;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (valid ? "valid" : "invalid") << "\n";
    if (!witness_text.empty()) std::cout << witness_text;
  }
  return valid ? 0 : 1;
}

int run_corpus(const Options& opt) {
  const auto structure = lck::ObservationStructure::from_json_file(opt.config);
  const auto entries = lck::hilbert_corpus(structure);
  const lck::SearchLimits limits = limits_of(opt);
  std::size_t passed = 0;
  bool inconclusive = false;
  ordered_json rows = ordered_json::array();
  std::ostringstream table;
  for (const auto& entry : entries) {
    lck::Sequent seq;
    seq.add_succedent({"s", entry.formula});
    const lck::ProofResult result = lck::prove(seq, structure, limits);
    if (result.provable) ++passed;
    if (result.verdict == lck::Verdict::Inconclusive) inconclusive = true;
    rows.push_back(ordered_json{{"name", entry.name},
                                {"verdict", lck::verdict_name(result.verdict)}});
    table << (result.provable ? "PASS  " : "FAIL  ") << entry.name << "\n";
  }
  if (opt.format == "json") {
    ordered_json out{{"total", entries.size()}, {"passed", passed}, {"results", rows}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << table.str();
    std::cout << passed << "/" << entries.size() << " passed\n";
  }
  if (inconclusive) return 2;
  return passed == entries.size() ? 0 : 1;
}

int run_check_model(const Options& opt) {
  const auto structure = lck::ObservationStructure::from_json_file(opt.config);
  std::string path = opt.file.empty() ? opt.input : opt.file;
  if (path.empty()) throw lck::Error("no model file given");
  if (!opt.file.empty() && !opt.input.empty())
    throw lck::Error("give the model file either inline or with --file, not both");
  const lck::CorrelationModel model = lck::model_from_json_file(path, structure);
  const std::vector<std::string> violations = lck::validate_model(model);
  if (opt.format == "json") {
    ordered_json out{{"valid", violations.empty()}, {"violations", violations}};
    std::cout << out.dump(2) << "\n";
  } else {
    if (violations.empty()) {
      std::cout << "model ok (" << model.size() << " states)\n";
    } else {
      for (const auto& v : violations) std::cout << v << "\n";
    }
  }
  return violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedure for the logic of correlated knowledge"};
  app.require_subcommand(1);

  Options prove_opt;
  CLI::App* prove = app.add_subcommand("prove", "Run proof search on a formula or labelled sequent");
  add_common(prove, prove_opt, "Formula or sequent text (sequents contain '|-')");
  add_limits(prove, prove_opt);

  Options validity_opt;
  CLI::App* validity = app.add_subcommand("validity", "Check validity by finite model enumeration");
  add_common(validity, validity_opt, "Formula or sequent text (sequents contain '|-')");
  validity->add_flag("--witness", validity_opt.witness, "Print a countermodel when invalid");

  Options corpus_opt;
  CLI::App* corpus = app.add_subcommand("corpus", "Prove the bundled axiom corpus");
  corpus->add_option("--config", corpus_opt.config, "Observation structure JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  corpus->add_option("--format", corpus_opt.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  add_limits(corpus, corpus_opt);

  Options check_opt;
  CLI::App* check = app.add_subcommand("check-model", "Validate a correlation model file");
  add_common(check, check_opt, "Model JSON file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (prove->parsed()) return run_prove(prove_opt);
    if (validity->parsed()) return run_validity(validity_opt);
    if (corpus->parsed()) return run_corpus(corpus_opt);
    if (check->parsed()) return run_check_model(check_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
