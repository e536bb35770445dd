#include "lck/formula.hpp"

#include <algorithm>

namespace lck {

FormulaPtr Formula::atom(std::string name) {
  if (name.empty()) throw Error("atom needs a name");
  auto f = std::shared_ptr<Formula>(new Formula(Kind::Atom));
  f->text_ = std::move(name);
  return f;
}

FormulaPtr Formula::obs_atom(JointObservation obs, std::string result) {
  if (obs.empty()) throw Error("observation atom needs a nonempty group");
  auto f = std::shared_ptr<Formula>(new Formula(Kind::ObsAtom));
  f->group_ = obs.group();
  f->obs_ = std::move(obs);
  f->text_ = std::move(result);
  return f;
}

FormulaPtr Formula::top() {
  static const FormulaPtr instance(new Formula(Kind::Top));
  return instance;
}

FormulaPtr Formula::bottom() {
  static const FormulaPtr instance(new Formula(Kind::Bottom));
  return instance;
}

FormulaPtr Formula::negate(FormulaPtr body) {
  auto f = std::shared_ptr<Formula>(new Formula(Kind::Not));
  f->left_ = std::move(body);
  return f;
}

FormulaPtr Formula::binary(Kind kind, FormulaPtr lhs, FormulaPtr rhs) {
  auto f = std::shared_ptr<Formula>(new Formula(kind));
  f->left_ = std::move(lhs);
  f->right_ = std::move(rhs);
  return f;
}

FormulaPtr Formula::conj(FormulaPtr lhs, FormulaPtr rhs) {
  return binary(Kind::And, std::move(lhs), std::move(rhs));
}

FormulaPtr Formula::disj(FormulaPtr lhs, FormulaPtr rhs) {
  return binary(Kind::Or, std::move(lhs), std::move(rhs));
}

FormulaPtr Formula::implies(FormulaPtr lhs, FormulaPtr rhs) {
  return binary(Kind::Implies, std::move(lhs), std::move(rhs));
}

FormulaPtr Formula::know(AgentSet group, FormulaPtr body) {
  auto f = std::shared_ptr<Formula>(new Formula(Kind::Know));
  f->group_ = std::move(group);
  f->left_ = std::move(body);
  return f;
}

int compare(const Formula& x, const Formula& y) {
  if (&x == &y) return 0;
  if (x.kind() != y.kind()) return int(x.kind()) < int(y.kind()) ? -1 : 1;
  switch (x.kind()) {
    case Kind::Atom:
      return x.atom_name().compare(y.atom_name());
    case Kind::ObsAtom: {
      if (x.observation() != y.observation())
        return x.observation() < y.observation() ? -1 : 1;
      return x.result().compare(y.result());
    }
    case Kind::Top:
    case Kind::Bottom:
      return 0;
    case Kind::Not:
      return compare(x.left(), y.left());
    case Kind::And:
    case Kind::Or:
    case Kind::Implies: {
      int c = compare(x.left(), y.left());
      return c ? c : compare(x.right(), y.right());
    }
    case Kind::Know: {
      if (x.group() != y.group()) return x.group() < y.group() ? -1 : 1;
      return compare(x.left(), y.left());
    }
  }
  return 0;
}

int compare(const FormulaPtr& x, const FormulaPtr& y) {
  if (x.get() == y.get()) return 0;
  return compare(*x, *y);
}

bool equal(const FormulaPtr& x, const FormulaPtr& y) { return compare(x, y) == 0; }

int formula_complexity(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::ObsAtom:
    case Kind::Top:
    case Kind::Bottom:
      return 0;
    case Kind::Not:
    case Kind::Know:
      return 1 + formula_complexity(*f.left());
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      return 1 + formula_complexity(*f.left()) + formula_complexity(*f.right());
  }
  return 0;
}

namespace {

// Precedence: -> is 1, | is 2, & is 3, prefix operators 4, atoms 5.
int precedence(Kind kind) {
  switch (kind) {
    case Kind::Implies: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    case Kind::Not:
    case Kind::Know: return 4;
    default: return 5;
  }
}

void print_into(const Formula& f, int min_prec, std::string& out) {
  int prec = precedence(f.kind());
  bool wrap = prec < min_prec;
  if (wrap) out += '(';
  switch (f.kind()) {
    case Kind::Atom:
      out += f.atom_name();
      break;
    case Kind::ObsAtom:
      out += "obs{";
      out += f.group().joined();
      out += '}';
      out += f.observation().key();
      out += '^';
      out += f.result();
      break;
    case Kind::Top:
      out += "<top>";
      break;
    case Kind::Bottom:
      out += "<bottom>";
      break;
    case Kind::Not:
      out += '~';
      print_into(*f.left(), 4, out);
      break;
    case Kind::Know:
      out += "K{";
      out += f.group().joined();
      out += "} ";
      print_into(*f.left(), 4, out);
      break;
    case Kind::And:
      print_into(*f.left(), 3, out);
      out += " & ";
      print_into(*f.right(), 4, out);
      break;
    case Kind::Or:
      print_into(*f.left(), 2, out);
      out += " | ";
      print_into(*f.right(), 3, out);
      break;
    case Kind::Implies:
      print_into(*f.left(), 2, out);
      out += " -> ";
      print_into(*f.right(), 1, out);
      break;
  }
  if (wrap) out += ')';
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_into(f, 1, out);
  return out;
}

int compare(const LabelledFormula& x, const LabelledFormula& y) {
  int c = x.label.compare(y.label);
  return c ? c : compare(x.formula, y.formula);
}

bool operator<(const LabelledFormula& x, const LabelledFormula& y) {
  return compare(x, y) < 0;
}

bool operator==(const LabelledFormula& x, const LabelledFormula& y) {
  return compare(x, y) == 0;
}

std::string print_relational_atom(const RelationalAtom& r) {
  return r.left + " ~{" + r.group.joined() + "} " + r.right;
}

std::string print_labelled_formula(const LabelledFormula& f) {
  return f.label + ": " + print_formula(*f.formula);
}

namespace {

template <typename T>
bool sorted_insert(std::vector<T>& items, T value) {
  auto it = std::lower_bound(items.begin(), items.end(), value);
  if (it != items.end() && *it == value) return false;
  items.insert(it, std::move(value));
  return true;
}

template <typename T>
bool sorted_remove(std::vector<T>& items, const T& value) {
  auto it = std::lower_bound(items.begin(), items.end(), value);
  if (it == items.end() || !(*it == value)) return false;
  items.erase(it);
  return true;
}

template <typename T>
bool sorted_contains(const std::vector<T>& items, const T& value) {
  return std::binary_search(items.begin(), items.end(), value);
}

}  // namespace

bool Sequent::add_relation(RelationalAtom r) {
  labels_valid_ = false;
  return sorted_insert(relations_, std::move(r));
}

bool Sequent::add_antecedent(LabelledFormula f) {
  labels_valid_ = false;
  return sorted_insert(antecedent_, std::move(f));
}

bool Sequent::add_succedent(LabelledFormula f) {
  labels_valid_ = false;
  return sorted_insert(succedent_, std::move(f));
}

bool Sequent::remove_antecedent(const LabelledFormula& f) {
  labels_valid_ = false;
  return sorted_remove(antecedent_, f);
}

bool Sequent::remove_succedent(const LabelledFormula& f) {
  labels_valid_ = false;
  return sorted_remove(succedent_, f);
}

bool Sequent::has_relation(const RelationalAtom& r) const {
  return sorted_contains(relations_, r);
}

bool Sequent::has_antecedent(const LabelledFormula& f) const {
  return sorted_contains(antecedent_, f);
}

bool Sequent::has_succedent(const LabelledFormula& f) const {
  return sorted_contains(succedent_, f);
}

const std::vector<std::string>& Sequent::labels() const {
  if (labels_valid_) return labels_cache_;
  std::vector<std::string>& out = labels_cache_;
  out.clear();
  out.reserve(2 * relations_.size() + antecedent_.size() + succedent_.size());
  for (const auto& r : relations_) {
    out.push_back(r.left);
    out.push_back(r.right);
  }
  for (const auto& f : antecedent_) out.push_back(f.label);
  for (const auto& f : succedent_) out.push_back(f.label);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  labels_valid_ = true;
  return out;
}

namespace {

void collect_atom_names(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
    case Kind::Atom:
      out.push_back(f.atom_name());
      return;
    case Kind::ObsAtom:
    case Kind::Top:
    case Kind::Bottom:
      return;
    case Kind::Not:
    case Kind::Know:
      collect_atom_names(*f.left(), out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      collect_atom_names(*f.left(), out);
      collect_atom_names(*f.right(), out);
      return;
  }
}

}  // namespace

std::vector<std::string> Sequent::atom_names() const {
  std::vector<std::string> out;
  for (const auto& f : antecedent_) collect_atom_names(*f.formula, out);
  for (const auto& f : succedent_) collect_atom_names(*f.formula, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Sequent::contains_label(const std::string& label) const {
  const std::vector<std::string>& all = labels();
  return std::binary_search(all.begin(), all.end(), label);
}

std::string print_sequent(const Sequent& seq) {
  std::string out;
  bool first = true;
  for (const auto& r : seq.relations()) {
    if (!first) out += ", ";
    out += print_relational_atom(r);
    first = false;
  }
  for (const auto& f : seq.antecedent()) {
    if (!first) out += ", ";
    out += print_labelled_formula(f);
    first = false;
  }
  out += first ? "|-" : " |-";
  first = true;
  for (const auto& f : seq.succedent()) {
    out += first ? " " : ", ";
    out += print_labelled_formula(f);
    first = false;
  }
  return out;
}

int negative_k_occurrences(const Formula& f, const AgentSet& group, bool negative) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::ObsAtom:
    case Kind::Top:
    case Kind::Bottom:
      return 0;
    case Kind::Not:
      return negative_k_occurrences(*f.left(), group, !negative);
    case Kind::And:
    case Kind::Or:
      return negative_k_occurrences(*f.left(), group, negative) +
             negative_k_occurrences(*f.right(), group, negative);
    case Kind::Implies:
      return negative_k_occurrences(*f.left(), group, !negative) +
             negative_k_occurrences(*f.right(), group, negative);
    case Kind::Know:
      return (negative && f.group() == group ? 1 : 0) +
             negative_k_occurrences(*f.left(), group, negative);
  }
  return 0;
}

int negative_k_occurrences(const Sequent& seq, const AgentSet& group) {
  int count = 0;
  for (const auto& f : seq.antecedent())
    count += negative_k_occurrences(*f.formula, group, true);
  for (const auto& f : seq.succedent())
    count += negative_k_occurrences(*f.formula, group, false);
  return count;
}

namespace {

int negative_k_all(const Formula& f, bool negative) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::ObsAtom:
    case Kind::Top:
    case Kind::Bottom:
      return 0;
    case Kind::Not:
      return negative_k_all(*f.left(), !negative);
    case Kind::And:
    case Kind::Or:
      return negative_k_all(*f.left(), negative) + negative_k_all(*f.right(), negative);
    case Kind::Implies:
      return negative_k_all(*f.left(), !negative) + negative_k_all(*f.right(), negative);
    case Kind::Know:
      return (negative ? 1 : 0) + negative_k_all(*f.left(), negative);
  }
  return 0;
}

}  // namespace

int negative_k_occurrences_all(const Sequent& seq) {
  int count = 0;
  for (const auto& f : seq.antecedent()) count += negative_k_all(*f.formula, true);
  for (const auto& f : seq.succedent()) count += negative_k_all(*f.formula, false);
  return count;
}

}  // namespace lck
