#pragma once

#include <string>

#include "lck/formula.hpp"
#include "lck/observation_structure.hpp"

namespace lck {

struct ParseError : Error {
  ParseError(const std::string& message, std::size_t position);
  std::size_t position;
};

/// Grammar: atoms `p`, observation atoms `obs{a,b}(oa,ob1)^0`, connectives
/// `~ & | ->`, knowledge `K{a,b} A` and `K{} A`, parentheses. Precedence
/// `~`/`K` > `&` > `|` > `->`; `->` associates right, `&` and `|` left.
/// Observation atoms are validated against the structure; the group must be
/// nonempty.
FormulaPtr parse_formula(const std::string& text, const ObservationStructure& structure);

/// `Gamma |- Delta` with comma-separated members: labelled formulas `s: A`
/// and relational atoms `s ~{a,b} t` (antecedent only). Either side may be
/// empty.
Sequent parse_sequent(const std::string& text, const ObservationStructure& structure);

}  // namespace lck
