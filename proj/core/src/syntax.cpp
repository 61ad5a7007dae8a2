#include "plr/syntax.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "plr/error.hpp"

namespace plr {

ParseError::ParseError(std::size_t line, std::size_t column, std::string message, std::string token)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
            (token.empty() ? std::string() : " (at '" + token + "')")),
      line_(line),
      column_(column),
      message_(std::move(message)),
      token_(std::move(token)) {}

bool is_valid_name(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto tail = [&](char c) {
    return head(c) || (c >= '0' && c <= '9') || c == '.' || c == ':' || c == '-';
  };
  return head(s.front()) && std::all_of(s.begin() + 1, s.end(), tail);
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_nat(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

struct Token {
  enum class Kind { LParen, RParen, Atom, End };
  Kind kind;
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    if (pos_ >= text_.size()) return {Token::Kind::End, {}, line_, column_};
    const std::size_t line = line_;
    const std::size_t column = column_;
    const char c = text_[pos_];
    if (c == '(' || c == ')') {
      advance();
      return {c == '(' ? Token::Kind::LParen : Token::Kind::RParen, text_.substr(pos_ - 1, 1), line, column};
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '(' && text_[pos_] != ')' &&
           text_[pos_] != '#') {
      advance();
    }
    return {Token::Kind::Atom, text_.substr(start, pos_ - start), line, column};
  }

 private:
  void advance() {
    const auto byte = static_cast<unsigned char>(text_[pos_]);
    ++pos_;
    if (byte == '\n') {
      ++line_;
      column_ = 1;
    } else if ((byte & 0xC0) != 0x80) {
      // continuation bytes of a UTF-8 sequence do not start a new column
      ++column_;
    }
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      if (is_space(text_[pos_])) {
        advance();
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

[[noreturn]] void fail(const Token& t, std::string message) {
  throw ParseError(t.line, t.column, std::move(message), std::string(t.text));
}

std::uint64_t parse_nat(const Token& t) {
  if (!is_nat(t.text)) fail(t, "expected a natural number");
  std::uint64_t value = 0;
  const auto* first = t.text.data();
  const auto* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) fail(t, "number does not fit in 64 bits");
  if (ec != std::errc() || ptr != last) fail(t, "expected a natural number");
  return value;
}

// Operators outside the policy grammar, with the construct they would denote.
const std::unordered_map<std::string_view, std::string_view>& rejected_policy_operators() {
  static const std::unordered_map<std::string_view, std::string_view> table{
      {"all", "universal restrictions are not allowed in policies"},
      {"only", "universal restrictions are not allowed in policies"},
      {"forall", "universal restrictions are not allowed in policies"},
      {"min", "number restrictions are not allowed in policies"},
      {"max", "number restrictions are not allowed in policies"},
      {"exactly", "number restrictions are not allowed in policies"},
      {"inv", "inverse roles are not allowed in policies"},
      {"inverse", "inverse roles are not allowed in policies"},
      {"not", "negation is not allowed in policies"},
      {"self", "Self restrictions are not allowed in policies"},
  };
  return table;
}

bool is_policy_keyword(std::string_view s) {
  return s == "or" || s == "and" || s == "some" || s == "int" || s == "bot";
}

class PolicyParser {
 public:
  explicit PolicyParser(std::string_view text) : lexer_(text) { shift(); }

  FullConcept parse() {
    if (cur_.kind == Token::Kind::End) fail(cur_, "empty policy");
    FullConcept result = parse_full();
    if (cur_.kind != Token::Kind::End) fail(cur_, "trailing input after policy");
    return result;
  }

 private:
  enum class Context { TopLevel, UnderOr, UnderAnd, UnderSome };

  void shift() { cur_ = lexer_.next(); }

  void expect_rparen() {
    if (cur_.kind != Token::Kind::RParen) fail(cur_, "expected ')'");
    shift();
  }

  Token expect_name(std::string_view what) {
    if (cur_.kind == Token::Kind::LParen) {
      Token open = cur_;
      shift();
      if (cur_.kind == Token::Kind::Atom) {
        auto& table = rejected_policy_operators();
        if (auto it = table.find(cur_.text); it != table.end()) fail(cur_, std::string(it->second));
      }
      fail(open, "expected " + std::string(what) + " name");
    }
    if (cur_.kind != Token::Kind::Atom || !is_valid_name(cur_.text) || is_policy_keyword(cur_.text)) {
      fail(cur_, "expected " + std::string(what) + " name");
    }
    Token t = cur_;
    shift();
    return t;
  }

  FullConcept parse_full() {
    if (cur_.kind == Token::Kind::LParen) {
      Lexer saved_lexer = lexer_;
      Token saved = cur_;
      shift();
      if (cur_.kind == Token::Kind::Atom && cur_.text == "or") {
        shift();
        std::vector<Concept> disjuncts;
        while (cur_.kind != Token::Kind::RParen) {
          if (cur_.kind == Token::Kind::End) fail(cur_, "unterminated union");
          disjuncts.push_back(parse_simple(Context::UnderOr));
        }
        if (disjuncts.empty()) fail(cur_, "empty union");
        shift();
        return FullConcept(std::move(disjuncts));
      }
      lexer_ = saved_lexer;
      cur_ = saved;
    }
    return FullConcept(parse_simple(Context::TopLevel));
  }

  Concept parse_simple(Context ctx) {
    switch (cur_.kind) {
      case Token::Kind::End:
        fail(cur_, "unexpected end of input");
      case Token::Kind::RParen:
        fail(cur_, "unexpected ')'");
      case Token::Kind::Atom: {
        Token t = cur_;
        shift();
        if (t.text == "bot") return Concept::bottom();
        if (is_nat(t.text)) fail(t, "expected a concept, got a number");
        if (is_policy_keyword(t.text)) fail(t, "operator used without parentheses");
        if (!is_valid_name(t.text)) fail(t, "invalid name");
        return Concept::name(Symbol::intern(t.text));
      }
      case Token::Kind::LParen:
        break;
    }
    const Token open = cur_;
    shift();
    if (cur_.kind != Token::Kind::Atom) fail(cur_, "expected an operator after '('");
    const Token op = cur_;
    shift();

    if (op.text == "and") {
      std::vector<Concept> operands;
      while (cur_.kind != Token::Kind::RParen) {
        if (cur_.kind == Token::Kind::End) fail(open, "unterminated conjunction");
        operands.push_back(parse_simple(Context::UnderAnd));
      }
      if (operands.empty()) fail(op, "empty conjunction");
      shift();
      return Concept::conj(std::move(operands));
    }
    if (op.text == "some") {
      const Token role = expect_name("role");
      Concept filler = parse_simple(Context::UnderSome);
      expect_rparen();
      return Concept::exists(Symbol::intern(role.text), std::move(filler));
    }
    if (op.text == "int") {
      const Token prop = expect_name("property");
      const std::uint64_t lo = parse_nat(cur_);
      shift();
      const std::uint64_t hi = parse_nat(cur_);
      shift();
      expect_rparen();
      return Concept::interval(Symbol::intern(prop.text), lo, hi);
    }
    if (op.text == "or") {
      switch (ctx) {
        case Context::UnderSome:
          fail(op, "union not allowed under a role");
        case Context::UnderAnd:
          fail(op, "union not allowed under a conjunction");
        default:
          fail(op, "nested union");
      }
    }
    auto& table = rejected_policy_operators();
    if (auto it = table.find(op.text); it != table.end()) fail(op, std::string(it->second));
    fail(op, "unknown operator");
  }

  Lexer lexer_;
  Token cur_{};
};

// Splits a line into whitespace-separated words, dropping a trailing `#` comment.
struct Word {
  std::string_view text;
  std::size_t column;
};

std::vector<Word> split_words(std::string_view line) {
  std::vector<Word> words;
  std::size_t column = 1;
  std::size_t i = 0;
  auto step = [&] {
    if ((static_cast<unsigned char>(line[i]) & 0xC0) != 0x80) ++column;
    ++i;
  };
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (is_space(line[i])) {
      step();
      continue;
    }
    const std::size_t start = i;
    const std::size_t start_col = column;
    while (i < line.size() && !is_space(line[i]) && line[i] != '#') step();
    words.push_back({line.substr(start, i - start), start_col});
  }
  return words;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line_no, line);
    if (end == text.size()) break;
    start = end + 1;
    ++line_no;
  }
}

Symbol name_at(std::size_t line, const Word& w, std::string_view what) {
  if (!is_valid_name(w.text)) {
    throw ParseError(line, w.column, "expected " + std::string(what) + " name", std::string(w.text));
  }
  return Symbol::intern(w.text);
}

void expect_arity(std::size_t line, const std::vector<Word>& words, std::size_t arity) {
  if (words.size() == arity + 1) return;
  if (words.size() > arity + 1) {
    throw ParseError(line, words[arity + 1].column, "too many arguments for '" + std::string(words[0].text) + "'",
                     std::string(words[arity + 1].text));
  }
  throw ParseError(line, words.back().column + words.back().text.size(),
                   "'" + std::string(words[0].text) + "' expects " + std::to_string(arity) + " argument(s)", "");
}

const std::unordered_map<std::string_view, std::string_view>& rejected_horn_keywords() {
  static const std::unordered_map<std::string_view, std::string_view> table{
      {"min", "number restrictions are outside the supported oracle subset"},
      {"max", "number restrictions are outside the supported oracle subset"},
      {"atmost", "number restrictions are outside the supported oracle subset"},
      {"atleast", "number restrictions are outside the supported oracle subset"},
      {"func", "functional roles (number restrictions) are outside the supported oracle subset"},
      {"self", "Self concepts are outside the supported oracle subset"},
      {"chain", "complex role inclusions are outside the supported oracle subset"},
      {"trans", "complex role inclusions (transitivity) are outside the supported oracle subset"},
      {"inv", "inverse roles are outside the supported oracle subset"},
      {"inverse", "inverse roles are outside the supported oracle subset"},
      {"all", "universal restrictions are outside the supported oracle subset"},
      {"suball", "universal restrictions are outside the supported oracle subset"},
      {"oneof", "nominals are outside the supported oracle subset"},
      {"nominal", "nominals are outside the supported oracle subset"},
      {"disjrole", "role disjointness is outside the supported oracle subset"},
      {"range", "range axioms are outside the supported oracle subset"},
      {"domain", "domain axioms are outside the supported oracle subset; write 'subex R Top A'"},
  };
  return table;
}

void write_concept(std::ostream& out, const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Name:
      out << c.symbol().str();
      break;
    case ConceptKind::Bottom:
      out << "bot";
      break;
    case ConceptKind::Interval:
      out << "(int " << c.symbol().str() << ' ' << c.range().lo << ' ' << c.range().hi << ')';
      break;
    case ConceptKind::Exists:
      out << "(some " << c.symbol().str() << ' ';
      write_concept(out, c.filler());
      out << ')';
      break;
    case ConceptKind::And:
      out << "(and";
      for (const auto& op : c.operands()) {
        out << ' ';
        write_concept(out, op);
      }
      out << ')';
      break;
  }
}

}  // namespace

FullConcept parse_policy(std::string_view text) { return PolicyParser(text).parse(); }

MainKB parse_main_kb(std::string_view text) {
  MainKB kb;
  for_each_line(text, [&](std::size_t line, std::string_view content) {
    const auto words = split_words(content);
    if (words.empty()) return;
    const std::string_view kw = words[0].text;
    if (kw == "func") {
      expect_arity(line, words, 1);
      kb.add_func(name_at(line, words[1], "role or property"));
    } else if (kw == "range") {
      expect_arity(line, words, 2);
      kb.add_range(name_at(line, words[1], "role"), name_at(line, words[2], "concept"));
    } else if (kw == "sub") {
      expect_arity(line, words, 2);
      kb.add_inclusion(name_at(line, words[1], "concept"), name_at(line, words[2], "concept"));
    } else if (kw == "disj") {
      expect_arity(line, words, 2);
      kb.add_disjoint(name_at(line, words[1], "concept"), name_at(line, words[2], "concept"));
    } else {
      throw ParseError(line, words[0].column, "unsupported main KB axiom", std::string(kw));
    }
  });
  return kb;
}

OracleOntology parse_oracle_ontology(std::string_view text) {
  OracleOntology onto;
  for_each_line(text, [&](std::size_t line, std::string_view content) {
    const auto words = split_words(content);
    if (words.empty()) return;
    const std::string_view kw = words[0].text;
    auto concept_at = [&](std::size_t i) { return name_at(line, words[i], "concept"); };
    auto role_at = [&](std::size_t i) {
      Symbol r = name_at(line, words[i], "role");
      if (r.is_top() || r.is_bot()) {
        throw ParseError(line, words[i].column, "reserved concept name used as a role", std::string(words[i].text));
      }
      return r;
    };
    if (kw == "sub") {
      expect_arity(line, words, 2);
      onto.add(HornAxiom::sub(concept_at(1), concept_at(2)));
    } else if (kw == "subconj") {
      expect_arity(line, words, 3);
      onto.add(HornAxiom::subconj(concept_at(1), concept_at(2), concept_at(3)));
    } else if (kw == "subex") {
      expect_arity(line, words, 3);
      onto.add(HornAxiom::subex(role_at(1), concept_at(2), concept_at(3)));
    } else if (kw == "supex") {
      expect_arity(line, words, 3);
      onto.add(HornAxiom::supex(concept_at(1), role_at(2), concept_at(3)));
    } else if (kw == "subrole") {
      expect_arity(line, words, 2);
      onto.add(HornAxiom::subrole(role_at(1), role_at(2)));
    } else if (kw == "disj") {
      expect_arity(line, words, 2);
      onto.add(HornAxiom::disj(concept_at(1), concept_at(2)));
    } else if (kw == "bot") {
      expect_arity(line, words, 1);
      onto.add(HornAxiom::bottom(concept_at(1)));
    } else {
      auto& table = rejected_horn_keywords();
      if (auto it = table.find(kw); it != table.end()) {
        throw ParseError(line, words[0].column, std::string(it->second), std::string(kw));
      }
      throw ParseError(line, words[0].column, "unknown oracle axiom kind", std::string(kw));
    }
  });
  return onto;
}

std::string serialize_concept(const Concept& c) {
  std::ostringstream out;
  write_concept(out, c);
  return out.str();
}

std::string serialize_policy(const FullConcept& c) {
  if (c.size() == 1) return serialize_concept(c[0]);
  std::ostringstream out;
  out << "(or";
  for (const auto& d : c.disjuncts()) {
    out << ' ';
    write_concept(out, d);
  }
  out << ')';
  return out.str();
}

std::string serialize_main_kb(const MainKB& kb) {
  std::ostringstream out;
  for (Symbol f : kb.func) out << "func " << f.str() << '\n';
  for (const auto& [r, a] : kb.range) out << "range " << r.str() << ' ' << a.str() << '\n';
  for (const auto& [a, b] : kb.inclusions) out << "sub " << a.str() << ' ' << b.str() << '\n';
  for (const auto& [a, b] : kb.disjointness) out << "disj " << a.str() << ' ' << b.str() << '\n';
  return out.str();
}

std::string serialize_oracle_ontology(const OracleOntology& o) {
  std::string out;
  for (const auto& ax : o.axioms) {
    out += to_line(ax);
    out += '\n';
  }
  return out;
}

}  // namespace plr
