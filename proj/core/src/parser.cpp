#include "lck/parser.hpp"

#include <cctype>
#include <vector>

namespace lck {

ParseError::ParseError(const std::string& message, std::size_t pos)
    : Error(message + " (at offset " + std::to_string(pos) + ")"), position(pos) {}

namespace {

enum class Tok {
  Word,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Caret,
  Tilde,
  Amp,
  Pipe,
  Arrow,
  Colon,
  Turnstile,
  End,
};

struct Token {
  Tok type = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

const char* token_label(Tok type) {
  switch (type) {
    case Tok::Word: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Caret: return "'^'";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Colon: return "':'";
    case Tok::Turnstile: return "'|-'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      out.push_back({Tok::Word, text.substr(start, i - start), start});
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", i}); break;
      case ')': out.push_back({Tok::RParen, ")", i}); break;
      case '{': out.push_back({Tok::LBrace, "{", i}); break;
      case '}': out.push_back({Tok::RBrace, "}", i}); break;
      case ',': out.push_back({Tok::Comma, ",", i}); break;
      case '^': out.push_back({Tok::Caret, "^", i}); break;
      case '~': out.push_back({Tok::Tilde, "~", i}); break;
      case '&': out.push_back({Tok::Amp, "&", i}); break;
      case '|':
        if (i + 1 < n && text[i + 1] == '-') {
          out.push_back({Tok::Turnstile, "|-", i});
          ++i;
        } else {
          out.push_back({Tok::Pipe, "|", i});
        }
        break;
      case '-':
        if (i + 1 < n && text[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", i});
          ++i;
        } else {
          throw ParseError("stray '-' (expected '->')", i);
        }
        break;
      case ':': out.push_back({Tok::Colon, ":", i}); break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    ++i;
  }
  out.push_back({Tok::End, "", n});
  return out;
}

bool is_reserved(const std::string& word) { return word == "K" || word == "obs"; }

bool is_name(const std::string& word) {
  return !word.empty() &&
         (std::isalpha(static_cast<unsigned char>(word[0])) || word[0] == '_') &&
         !is_reserved(word);
}

class Parser {
 public:
  Parser(const std::string& text, const ObservationStructure& structure)
      : tokens_(lex(text)), structure_(structure) {}

  FormulaPtr formula_only() {
    FormulaPtr f = formula();
    expect(Tok::End);
    return f;
  }

  Sequent sequent_only() {
    Sequent seq;
    if (peek().type != Tok::Turnstile) {
      antecedent_item(seq);
      while (peek().type == Tok::Comma) {
        advance();
        antecedent_item(seq);
      }
    }
    expect(Tok::Turnstile);
    if (peek().type != Tok::End) {
      succedent_item(seq);
      while (peek().type == Tok::Comma) {
        advance();
        succedent_item(seq);
      }
    }
    expect(Tok::End);
    return seq;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = index_ + ahead;
    if (i >= tokens_.size()) i = tokens_.size() - 1;
    return tokens_[i];
  }

  const Token& advance() { return tokens_[index_++]; }

  const Token& expect(Tok type) {
    if (peek().type != type) {
      throw ParseError(std::string("expected ") + token_label(type) + ", found " +
                           token_label(peek().type),
                       peek().pos);
    }
    return advance();
  }

  std::string name(const char* what) {
    const Token& tok = peek();
    if (tok.type != Tok::Word || !is_name(tok.text)) {
      throw ParseError(std::string("expected ") + what + ", found " + token_label(tok.type),
                       tok.pos);
    }
    advance();
    return tok.text;
  }

  // {a,b} or {}
  AgentSet group() {
    expect(Tok::LBrace);
    std::vector<std::string> agents;
    if (peek().type != Tok::RBrace) {
      agents.push_back(agent());
      while (peek().type == Tok::Comma) {
        advance();
        agents.push_back(agent());
      }
    }
    expect(Tok::RBrace);
    return AgentSet(agents);
  }

  std::string agent() {
    const Token& tok = peek();
    std::string a = name("agent name");
    if (!structure_.has_agent(a)) throw ParseError("unknown agent '" + a + "'", tok.pos);
    return a;
  }

  FormulaPtr formula() {  // '->', right-associative
    FormulaPtr left = disjunction();
    if (peek().type == Tok::Arrow) {
      advance();
      return Formula::implies(left, formula());
    }
    return left;
  }

  FormulaPtr disjunction() {
    FormulaPtr left = conjunction();
    while (peek().type == Tok::Pipe) {
      advance();
      left = Formula::disj(left, conjunction());
    }
    return left;
  }

  FormulaPtr conjunction() {
    FormulaPtr left = unary();
    while (peek().type == Tok::Amp) {
      advance();
      left = Formula::conj(left, unary());
    }
    return left;
  }

  FormulaPtr unary() {
    const Token& tok = peek();
    if (tok.type == Tok::Tilde) {
      advance();
      return Formula::negate(unary());
    }
    if (tok.type == Tok::Word && tok.text == "K") {
      advance();
      AgentSet g = group();
      return Formula::know(g, unary());
    }
    return primary();
  }

  FormulaPtr primary() {
    const Token& tok = peek();
    if (tok.type == Tok::LParen) {
      advance();
      FormulaPtr inner = formula();
      expect(Tok::RParen);
      return inner;
    }
    if (tok.type == Tok::Word && tok.text == "obs") return observation_atom();
    if (tok.type == Tok::Word && is_name(tok.text)) {
      advance();
      return Formula::atom(tok.text);
    }
    throw ParseError(std::string("expected formula, found ") + token_label(tok.type), tok.pos);
  }

  // obs{a,b}(oa,ob1)^0
  FormulaPtr observation_atom() {
    const Token& head = peek();
    expect(Tok::Word);  // "obs"
    AgentSet g = group();
    if (g.empty()) throw ParseError("observation atom needs a nonempty group", head.pos);
    expect(Tok::LParen);
    std::vector<std::string> names;
    names.push_back(name("observation name"));
    while (peek().type == Tok::Comma) {
      advance();
      names.push_back(name("observation name"));
    }
    const Token& close = peek();
    expect(Tok::RParen);
    if (names.size() != g.size()) {
      throw ParseError("observation atom lists " + std::to_string(names.size()) +
                           " observations for " + std::to_string(g.size()) + " agents",
                       head.pos);
    }
    std::vector<std::pair<std::string, std::string>> components;
    std::size_t k = 0;
    for (const std::string& a : g) {
      components.emplace_back(a, names[k]);
      ++k;
    }
    JointObservation joint(components);
    if (!structure_.valid_observation(joint)) {
      throw ParseError("unknown observation " + joint.key() + " for group {" + g.joined() + "}",
                       head.pos);
    }
    expect(Tok::Caret);
    const Token& rtok = peek();
    if (rtok.type != Tok::Word) {
      throw ParseError(std::string("expected result, found ") + token_label(rtok.type), rtok.pos);
    }
    advance();
    if (!structure_.has_result(rtok.text)) {
      throw ParseError("unknown result '" + rtok.text + "'", rtok.pos);
    }
    (void)close;
    return Formula::obs_atom(joint, rtok.text);
  }

  // `s: A` or `s ~{a,b} t`
  void antecedent_item(Sequent& seq) {
    std::string label = name("label");
    if (peek().type == Tok::Colon) {
      advance();
      seq.add_antecedent({label, formula()});
      return;
    }
    if (peek().type == Tok::Tilde) {
      advance();
      AgentSet g = group();
      std::string right = name("label");
      seq.add_relation({label, g, right});
      return;
    }
    throw ParseError(std::string("expected ':' or '~' after label, found ") +
                         token_label(peek().type),
                     peek().pos);
  }

  void succedent_item(Sequent& seq) {
    const Token& start = peek();
    std::string label = name("label");
    if (peek().type == Tok::Tilde && peek(1).type == Tok::LBrace) {
      throw ParseError("relational atoms may only appear left of '|-'", start.pos);
    }
    expect(Tok::Colon);
    seq.add_succedent({label, formula()});
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  const ObservationStructure& structure_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const ObservationStructure& structure) {
  return Parser(text, structure).formula_only();
}

Sequent parse_sequent(const std::string& text, const ObservationStructure& structure) {
  return Parser(text, structure).sequent_only();
}

}  // namespace lck
