#include "bagcq/relcore/text.hpp"

#include <cctype>

namespace bagcq {

namespace {

enum class Tok { Ident, Const, LParen, RParen, Comma, Amp, Bar, Neq, Slash, Semi, Eq, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string s, std::size_t c) { out.push_back({k, std::move(s), line, c}); };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      push(Tok::Newline, "\n", col);
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    std::size_t start_col = col;
    if (ident_char(c) || c == '@') {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      if (c == '@') {
        if (word.size() == 1) throw ParseError("expected constant name after '@'", line, col);
        push(Tok::Const, word.substr(1), start_col);
      } else {
        push(Tok::Ident, word, start_col);
      }
      col += j - i;
      i = j;
      continue;
    }
    if (c == '!' && i + 1 < text.size() && text[i + 1] == '=') {
      push(Tok::Neq, "!=", start_col);
      i += 2;
      col += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      case '/': k = Tok::Slash; break;
      case ';': k = Tok::Semi; break;
      case '=': k = Tok::Eq; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    push(k, std::string(1, c), start_col);
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const char* describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Const: return "constant";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Neq: return "'!='";
    case Tok::Slash: return "'/'";
    case Tok::Semi: return "';'";
    case Tok::Eq: return "'='";
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
  }
  return "token";
}

class Cursor {
 public:
  Cursor(std::vector<Token> toks, bool skip_newlines)
      : toks_(std::move(toks)), skip_newlines_(skip_newlines) {
    settle();
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& peek_next() const {
    std::size_t j = pos_ + 1;
    while (skip_newlines_ && toks_[j].kind == Tok::Newline) ++j;
    return toks_[j];
  }
  bool at(Tok k) const { return peek().kind == k; }

  Token take() {
    Token t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    settle();
    return t;
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    take();
    return true;
  }

  Token expect(Tok k, const char* context) {
    if (!at(k))
      fail(std::string("expected ") + describe(k) + " " + context + ", found " + describe(peek().kind));
    return take();
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, peek().line, peek().column);
  }

 private:
  void settle() {
    while (skip_newlines_ && toks_[pos_].kind == Tok::Newline) ++pos_;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool skip_newlines_;
};

bool is_keyword_use(const Cursor& cur, std::string_view word) {
  return cur.at(Tok::Ident) && cur.peek().text == word && cur.peek_next().kind != Tok::LParen;
}

bool is_variable_name(const std::string& s) {
  if (s.empty()) return false;
  char c = s[0];
  return std::islower(static_cast<unsigned char>(c)) || c == '_';
}

int parse_arity(Cursor& cur) {
  Token t = cur.expect(Tok::Ident, "for arity");
  for (char c : t.text)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("arity must be a number", t.line, t.column);
  return std::stoi(t.text);
}

// `sig NAME/ARITY, ...` with the keyword already consumed.
void parse_relation_list(Cursor& cur, Signature& sig) {
  if (!cur.at(Tok::Ident) || cur.peek_next().kind != Tok::Slash) return;
  do {
    Token name = cur.expect(Tok::Ident, "for relation name");
    cur.expect(Tok::Slash, "after relation name");
    int ar = parse_arity(cur);
    try {
      sig.add_relation(name.text, ar);
    } catch (const SignatureError& e) {
      throw ParseError(e.what(), name.line, name.column);
    }
  } while (cur.accept(Tok::Comma));
}

struct RawAtom {
  bool neq = false;
  std::string relation;
  std::vector<Token> args;
  Token at;
};

struct RawCQ {
  std::vector<RawAtom> atoms;
};

Token parse_term_token(Cursor& cur) {
  if (cur.at(Tok::Const)) return cur.take();
  if (cur.at(Tok::Ident) && is_variable_name(cur.peek().text)) return cur.take();
  cur.fail("expected a variable, '_' or '@constant'");
}

RawAtom parse_raw_atom(Cursor& cur) {
  RawAtom a;
  a.at = cur.peek();
  if (cur.at(Tok::Ident) && cur.peek_next().kind == Tok::LParen) {
    a.relation = cur.take().text;
    cur.expect(Tok::LParen, "after relation name");
    do {
      a.args.push_back(parse_term_token(cur));
    } while (cur.accept(Tok::Comma));
    cur.expect(Tok::RParen, "to close the atom");
    return a;
  }
  a.neq = true;
  a.args.push_back(parse_term_token(cur));
  cur.expect(Tok::Neq, "in inequality atom");
  a.args.push_back(parse_term_token(cur));
  return a;
}

}  // namespace

UCQ parse_query(std::string_view text, const std::optional<Signature>& sig,
                const QueryParseOptions& options) {
  Cursor cur(tokenize(text), true);

  std::optional<Signature> declared = sig;
  if (is_keyword_use(cur, "sig")) {
    cur.take();
    Signature header;
    parse_relation_list(cur, header);
    if (cur.accept(Tok::Semi) && is_keyword_use(cur, "const")) {
      cur.take();
      if (cur.at(Tok::Ident) && cur.peek_next().kind != Tok::LParen) {
        do {
          header.add_constant(cur.expect(Tok::Ident, "for constant name").text);
        } while (cur.accept(Tok::Comma));
      }
      cur.accept(Tok::Semi);
    }
    declared = declared ? Signature::merge(*declared, header) : header;
  }

  std::vector<RawCQ> raw;
  do {
    RawCQ cq;
    if (is_keyword_use(cur, "true")) {
      cur.take();
    } else {
      do {
        cq.atoms.push_back(parse_raw_atom(cur));
      } while (cur.accept(Tok::Amp));
    }
    raw.push_back(std::move(cq));
  } while (cur.accept(Tok::Bar));
  if (!cur.at(Tok::End)) cur.fail(std::string("unexpected ") + describe(cur.peek().kind));

  std::set<std::string> used;
  for (const auto& cq : raw)
    for (const auto& a : cq.atoms)
      for (const auto& t : a.args)
        if (t.kind == Tok::Ident && t.text != "_") {
          used.insert(t.text);
          if (!options.allow_aliens && is_alien_name(t.text))
            throw ParseError("variable name '" + t.text + "' is reserved for aliens", t.line,
                             t.column);
        }

  Signature full;
  if (declared) {
    full = *declared;
  } else {
    for (const auto& cq : raw)
      for (const auto& a : cq.atoms) {
        if (!a.neq) {
          try {
            full.add_relation(a.relation, static_cast<int>(a.args.size()));
          } catch (const SignatureError& e) {
            throw ParseError(e.what(), a.at.line, a.at.column);
          }
        }
        for (const auto& t : a.args)
          if (t.kind == Tok::Const) full.add_constant(t.text);
      }
  }

  std::size_t wildcard = 0;
  auto term_of = [&](const Token& t) {
    if (t.kind == Tok::Const) return Term::constant(t.text);
    if (t.text != "_") return Term::var(t.text);
    std::string name;
    do {
      name = "_w" + std::to_string(++wildcard);
    } while (used.contains(name));
    used.insert(name);
    return Term::var(name);
  };

  std::vector<CQ> cqs;
  for (const auto& rc : raw) {
    std::vector<Atom> atoms;
    for (const auto& a : rc.atoms) {
      std::vector<Term> terms;
      for (const auto& t : a.args) terms.push_back(term_of(t));
      if (a.neq)
        atoms.emplace_back(NeqAtom{terms[0], terms[1]});
      else
        atoms.emplace_back(RelAtom{a.relation, std::move(terms)});
    }
    try {
      cqs.emplace_back(std::move(atoms), full);
    } catch (const SignatureError& e) {
      const Token& where = rc.atoms.empty() ? cur.peek() : rc.atoms.front().at;
      throw ParseError(e.what(), where.line, where.column);
    }
  }
  return UCQ(std::move(cqs));
}

CQ parse_cq(std::string_view text, const std::optional<Signature>& sig,
            const QueryParseOptions& options) {
  UCQ q = parse_query(text, sig, options);
  if (q.size() != 1) throw ParseError("expected a single conjunctive query", 1, 1);
  return q[0];
}

Structure parse_structure(std::string_view text) {
  Cursor cur(tokenize(text), false);
  Signature sig;
  bool have_sig = false;
  std::vector<std::pair<std::string, std::string>> consts;
  std::vector<std::string> vertices;
  std::vector<std::pair<Token, std::vector<std::string>>> facts;

  auto parse_consts = [&] {
    if (!cur.at(Tok::Ident)) return;
    do {
      Token c = cur.expect(Tok::Ident, "for constant name");
      cur.expect(Tok::Eq, "after constant name");
      Token v = cur.expect(Tok::Ident, "for the constant's vertex");
      sig.add_constant(c.text);
      consts.emplace_back(c.text, v.text);
    } while (cur.accept(Tok::Comma));
  };

  while (!cur.at(Tok::End)) {
    if (cur.accept(Tok::Newline)) continue;
    if (is_keyword_use(cur, "sig")) {
      cur.take();
      have_sig = true;
      parse_relation_list(cur, sig);
      if (cur.accept(Tok::Semi) && is_keyword_use(cur, "const")) {
        cur.take();
        parse_consts();
      }
    } else if (is_keyword_use(cur, "const")) {
      cur.take();
      parse_consts();
    } else if (is_keyword_use(cur, "vertex")) {
      cur.take();
      do {
        vertices.push_back(cur.expect(Tok::Ident, "for vertex name").text);
      } while (cur.accept(Tok::Comma));
    } else {
      do {
        Token name = cur.expect(Tok::Ident, "for relation name");
        cur.expect(Tok::LParen, "after relation name");
        std::vector<std::string> args;
        do {
          args.push_back(cur.expect(Tok::Ident, "for vertex name").text);
        } while (cur.accept(Tok::Comma));
        cur.expect(Tok::RParen, "to close the fact");
        if (!have_sig) {
          try {
            sig.add_relation(name.text, static_cast<int>(args.size()));
          } catch (const SignatureError& e) {
            throw ParseError(e.what(), name.line, name.column);
          }
        }
        facts.emplace_back(name, std::move(args));
      } while (cur.accept(Tok::Amp) || (cur.at(Tok::Ident) && cur.peek_next().kind == Tok::LParen));
    }
    if (!cur.at(Tok::Newline) && !cur.at(Tok::End))
      cur.fail(std::string("unexpected ") + describe(cur.peek().kind));
  }

  StructureBuilder b(sig);
  for (const auto& v : vertices) b.add_vertex(v);
  for (const auto& [name, args] : facts) {
    try {
      b.add_fact(name.text, args);
    } catch (const SignatureError& e) {
      throw ParseError(e.what(), name.line, name.column);
    }
  }
  for (const auto& [c, v] : consts) b.set_constant(c, v);
  return b.build();
}

std::string to_string(const Term& t) { return t.is_var() ? t.name : "@" + t.name; }

std::string to_string(const Atom& a) {
  if (const auto* r = std::get_if<RelAtom>(&a)) {
    std::string out = r->relation + "(";
    for (std::size_t i = 0; i < r->args.size(); ++i) {
      if (i) out += ",";
      out += to_string(r->args[i]);
    }
    return out + ")";
  }
  const auto& n = std::get<NeqAtom>(a);
  return to_string(n.lhs) + " != " + to_string(n.rhs);
}

std::string to_string(const CQ& cq) {
  if (cq.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < cq.atoms().size(); ++i) {
    if (i) out += " & ";
    out += to_string(cq.atoms()[i]);
  }
  return out;
}

std::string to_string(const UCQ& q) {
  std::string out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) out += " | ";
    out += to_string(q[i]);
  }
  return out;
}

std::string to_text_with_signature(const UCQ& q) {
  std::string out = to_string(q.signature());
  if (!q.signature().constants.empty()) {
    out += " ; const ";
    bool first = true;
    for (const auto& c : q.signature().constants) {
      if (!first) out += ", ";
      first = false;
      out += c;
    }
  }
  return out + " ;\n" + to_string(q) + "\n";
}

std::string to_string(const Structure& d) {
  std::string out = to_string(d.signature());
  std::set<VertexId> mentioned;
  if (!d.constants().empty()) {
    out += " ; const ";
    bool first = true;
    for (const auto& [c, v] : d.constants()) {
      if (!first) out += ", ";
      first = false;
      out += c + "=" + d.name(v);
      mentioned.insert(v);
    }
  }
  out += "\n";
  std::string body;
  for (const auto& [rel, ar] : d.signature().relations) {
    for (const auto& t : d.facts(rel)) {
      body += rel + "(";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) body += ",";
        body += d.name(t[i]);
        mentioned.insert(t[i]);
      }
      body += ")\n";
    }
  }
  for (VertexId v = 0; v < d.size(); ++v)
    if (!mentioned.contains(v)) out += "vertex " + d.name(v) + "\n";
  return out + body;
}

}  // namespace bagcq
