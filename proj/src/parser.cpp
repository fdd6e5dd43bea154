#include "plci/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace plci {

namespace {

enum class Tok {
  Ident,    // lowercase identifier or numeral (constant)
  Var,      // uppercase / underscore identifier
  Number,   // decimal literal like 0.05 (only valid as probability)
  LParen, RParen, LBracket, RBracket,
  Comma, Dot, Semicolon, Slash,
  ColonDash, ColonColon, NegMarker,  // ":-", "::", "\+"
  Eq, Neq,                           // "=", "\="
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> toks;
  size_t pos = 0;
  int line = 1, col = 1;
  auto advance = [&] {
    if (text[pos] == '\n') { ++line; col = 1; } else { ++col; }
    ++pos;
  };
  while (pos < text.size()) {
    char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) { advance(); continue; }
    if (c == '%') {
      while (pos < text.size() && text[pos] != '\n') advance();
      continue;
    }
    int tl = line, tc = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        s += text[pos];
        advance();
      }
      // A dot followed by a digit extends a numeral into a decimal literal;
      // a bare dot is the clause terminator.
      if (pos + 1 < text.size() && text[pos] == '.' &&
          std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
        s += '.';
        advance();
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          s += text[pos];
          advance();
        }
        toks.push_back({Tok::Number, s, tl, tc});
      } else {
        toks.push_back({Tok::Ident, s, tl, tc});
      }
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
        s += text[pos];
        advance();
      }
      bool var = (s[0] == '_') || std::isupper(static_cast<unsigned char>(s[0]));
      toks.push_back({var ? Tok::Var : Tok::Ident, s, tl, tc});
      continue;
    }
    switch (c) {
      case '(': toks.push_back({Tok::LParen, "(", tl, tc}); advance(); break;
      case ')': toks.push_back({Tok::RParen, ")", tl, tc}); advance(); break;
      case '[': toks.push_back({Tok::LBracket, "[", tl, tc}); advance(); break;
      case ']': toks.push_back({Tok::RBracket, "]", tl, tc}); advance(); break;
      case ',': toks.push_back({Tok::Comma, ",", tl, tc}); advance(); break;
      case '.': toks.push_back({Tok::Dot, ".", tl, tc}); advance(); break;
      case ';': toks.push_back({Tok::Semicolon, ";", tl, tc}); advance(); break;
      case '/': toks.push_back({Tok::Slash, "/", tl, tc}); advance(); break;
      case '=': toks.push_back({Tok::Eq, "=", tl, tc}); advance(); break;
      case ':':
        advance();
        if (pos < text.size() && text[pos] == '-') {
          toks.push_back({Tok::ColonDash, ":-", tl, tc});
          advance();
        } else if (pos < text.size() && text[pos] == ':') {
          toks.push_back({Tok::ColonColon, "::", tl, tc});
          advance();
        } else {
          throw ParseError("stray ':'", tl, tc);
        }
        break;
      case '\\':
        advance();
        if (pos < text.size() && text[pos] == '+') {
          toks.push_back({Tok::NegMarker, "\\+", tl, tc});
          advance();
        } else if (pos < text.size() && text[pos] == '=') {
          toks.push_back({Tok::Neq, "\\=", tl, tc});
          advance();
        } else {
          throw ParseError("stray '\\'", tl, tc);
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
    }
  }
  toks.push_back({Tok::End, "", line, col});
  return toks;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  const Token& cur() const { return toks_[i_]; }
  void shift() { if (cur().kind != Tok::End) ++i_; }
  size_t mark() const { return i_; }
  void rewind(size_t m) { i_ = m; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().col);
  }

  void expect(Tok kind, const char* what) {
    if (cur().kind != kind) fail(std::string("expected ") + what);
    shift();
  }

  bool accept(Tok kind) {
    if (cur().kind != kind) return false;
    shift();
    return true;
  }

  Term parse_term() {
    if (cur().kind != Tok::Ident && cur().kind != Tok::Var)
      fail("expected a term");
    Term t = cur().kind == Tok::Var ? Term{TermKind::Variable, cur().text}
                                    : Term{TermKind::Constant, cur().text};
    shift();
    return t;
  }

  // atom := ident [ '(' term {',' term} ')' ] | term ('='|'\=') term
  Atom parse_atom() {
    if (cur().kind == Tok::Var) {  // can only start a builtin comparison
      Term lhs = parse_term();
      return parse_builtin_rest(lhs);
    }
    if (cur().kind != Tok::Ident) fail("expected an atom");
    Token head = cur();
    shift();
    if (cur().kind == Tok::Eq || cur().kind == Tok::Neq) {
      Term lhs{TermKind::Constant, head.text};
      return parse_builtin_rest(lhs);
    }
    if (!std::isalpha(static_cast<unsigned char>(head.text[0])) ||
        std::isupper(static_cast<unsigned char>(head.text[0])))
      throw ParseError("expected a predicate name", head.line, head.col);
    Atom a;
    a.predicate = head.text;
    if (accept(Tok::LParen)) {
      a.args.push_back(parse_term());
      while (accept(Tok::Comma)) a.args.push_back(parse_term());
      expect(Tok::RParen, "')'");
    }
    return a;
  }

  Atom parse_builtin_rest(const Term& lhs) {
    Builtin b;
    if (cur().kind == Tok::Eq) b = Builtin::Eq;
    else if (cur().kind == Tok::Neq) b = Builtin::Neq;
    else fail("expected '=' or '\\='");
    shift();
    Term rhs = parse_term();
    Atom a;
    a.predicate = b == Builtin::Eq ? "=" : "\\=";
    a.builtin = b;
    a.args = {lhs, rhs};
    return a;
  }

  Literal parse_literal() {
    bool positive = !accept(Tok::NegMarker);
    return Literal{parse_atom(), positive};
  }

  // Body element: a literal or a parenthesized formula. Disjunction is
  // introduced only via ';' inside parens.
  ConditionFormula parse_formula_elem() {
    if (accept(Tok::LParen)) {
      ConditionFormula f = parse_formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    return ConditionFormula::literal(parse_literal());
  }

  ConditionFormula parse_formula() {
    std::vector<ConditionFormula> disjuncts;
    disjuncts.push_back(parse_formula_conj());
    while (accept(Tok::Semicolon)) disjuncts.push_back(parse_formula_conj());
    if (disjuncts.size() == 1) return disjuncts[0];
    return ConditionFormula::disj(std::move(disjuncts));
  }

  ConditionFormula parse_formula_conj() {
    std::vector<ConditionFormula> conjuncts;
    conjuncts.push_back(parse_formula_elem());
    while (accept(Tok::Comma)) conjuncts.push_back(parse_formula_elem());
    if (conjuncts.size() == 1) return conjuncts[0];
    return ConditionFormula::conj(std::move(conjuncts));
  }

 private:
  std::vector<Token> toks_;
  size_t i_ = 0;
};

bool formula_has_random(const ConditionFormula& f,
                        const std::map<std::string, int>& random_decls) {
  if (f.kind == ConditionFormula::Kind::Lit)
    return !f.lit.atom.is_builtin() &&
           random_decls.count(f.lit.atom.predicate) > 0;
  return std::any_of(f.children.begin(), f.children.end(), [&](const auto& c) {
    return formula_has_random(c, random_decls);
  });
}

// Positive non-builtin atoms anywhere in the formula (including below
// disjunctions), used for the range-restriction check.
void positive_atoms(const ConditionFormula& f, std::vector<const Atom*>& out) {
  if (f.kind == ConditionFormula::Kind::Lit) {
    if (f.lit.positive && !f.lit.atom.is_builtin()) out.push_back(&f.lit.atom);
    return;
  }
  for (const auto& c : f.children) positive_atoms(c, out);
}

void check_range_restriction(const std::vector<std::string>& vars,
                             const std::vector<const Atom*>& positives,
                             const std::string& where) {
  for (const std::string& v : vars) {
    bool covered = false;
    for (const Atom* a : positives) {
      for (const Term& t : a->args)
        if (t.is_var() && t.name == v) { covered = true; break; }
      if (covered) break;
    }
    if (!covered)
      throw ValidationError("range-restriction violation: variable " + v +
                            " of " + where +
                            " does not occur in a positive external or "
                            "internal literal");
  }
}

struct ArityTable {
  std::map<std::string, int> arity;

  void note(const std::string& pred, int a) {
    auto [it, inserted] = arity.emplace(pred, a);
    if (!inserted && it->second != a)
      throw ValidationError("arity clash for predicate " + pred + ": used with " +
                            std::to_string(a) + " and " +
                            std::to_string(it->second) + " arguments");
  }

  void note_atom(const Atom& a) {
    if (!a.is_builtin()) note(a.predicate, static_cast<int>(a.args.size()));
  }

  void note_formula(const ConditionFormula& f) {
    if (f.kind == ConditionFormula::Kind::Lit) note_atom(f.lit.atom);
    else for (const auto& c : f.children) note_formula(c);
  }
};

void collect_constants(const Atom& a, std::set<std::string>& out) {
  for (const Term& t : a.args)
    if (!t.is_var()) out.insert(t.name);
}

void collect_constants(const ConditionFormula& f, std::set<std::string>& out) {
  if (f.kind == ConditionFormula::Kind::Lit) collect_constants(f.lit.atom, out);
  else for (const auto& c : f.children) collect_constants(c, out);
}

void flatten_literals(const ConditionFormula& f, std::vector<Literal>& out,
                      int line, int col) {
  if (f.kind == ConditionFormula::Kind::Lit) { out.push_back(f.lit); return; }
  if (f.kind == ConditionFormula::Kind::Or)
    throw ParseError("disjunction is only allowed in random-clause conditions",
                     line, col);
  for (const auto& c : f.children) flatten_literals(c, out, line, col);
}

}  // namespace

ProgramStructure parse_program(const std::string& text) {
  ProgramStructure prog;
  Parser p(text);
  int next_clause_id = 1;

  while (p.cur().kind != Tok::End) {
    Token start = p.cur();

    // random p/N.
    if (start.kind == Tok::Ident && start.text == "random") {
      size_t m = p.mark();
      p.shift();
      if (p.cur().kind == Tok::Ident) {
        Token pred = p.cur();
        p.shift();
        if (p.accept(Tok::Slash)) {
          if (p.cur().kind != Tok::Ident ||
              !std::all_of(p.cur().text.begin(), p.cur().text.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
              }))
            p.fail("expected arity");
          int arity = std::stoi(p.cur().text);
          p.shift();
          p.expect(Tok::Dot, "'.'");
          if (!prog.decls.random.emplace(pred.text, arity).second)
            throw ParseError("duplicate random declaration for " + pred.text,
                             pred.line, pred.col);
          continue;
        }
      }
      p.rewind(m);  // an ordinary clause whose head is literally `random`
    }

    // :- body.  (constraint)
    if (p.accept(Tok::ColonDash)) {
      ConditionFormula body = p.parse_formula();
      Constraint c;
      flatten_literals(body, c.body, start.line, start.col);
      p.expect(Tok::Dot, "'.'");
      prog.constraints.push_back(std::move(c));
      continue;
    }

    // Probability prefix? `0.5 ::`, `1 ::`, `3/4 ::` or `_ ::`.
    std::optional<BigRat> prob;
    bool is_random_clause = false;
    if (p.cur().kind == Tok::Number) {
      auto r = parse_rational(p.cur().text);
      if (!r) p.fail("malformed probability");
      prob = *r;
      is_random_clause = true;
      p.shift();
      p.expect(Tok::ColonColon, "'::'");
    } else if (p.cur().kind == Tok::Ident &&
               std::isdigit(static_cast<unsigned char>(p.cur().text[0]))) {
      size_t m = p.mark();
      std::string lit = p.cur().text;
      p.shift();
      if (p.accept(Tok::Slash)) {
        if (p.cur().kind == Tok::Ident) {
          lit += "/" + p.cur().text;
          p.shift();
        }
      }
      if (p.cur().kind == Tok::ColonColon) {
        auto r = parse_rational(lit);
        if (!r) p.fail("malformed probability");
        prob = *r;
        is_random_clause = true;
        p.shift();
      } else {
        p.rewind(m);
      }
    } else if (p.cur().kind == Tok::Var && p.cur().text == "_") {
      size_t m = p.mark();
      p.shift();
      if (p.cur().kind == Tok::ColonColon) {
        is_random_clause = true;  // probability left unspecified
        p.shift();
      } else {
        p.rewind(m);
      }
    }

    if (is_random_clause) {
      if (prob && (*prob < 0 || *prob > 1))
        throw ParseError("probability out of [0,1]", start.line, start.col);
      RandomClause rc;
      rc.effect = p.parse_atom();
      if (rc.effect.is_builtin())
        throw ParseError("builtin cannot be an effect", start.line, start.col);
      rc.probability = prob;
      rc.clause_id = next_clause_id++;
      std::vector<ConditionFormula> cond_parts;
      if (p.accept(Tok::ColonDash)) {
        // Body elements split into causes (random literals) and condition.
        do {
          Token elem_tok = p.cur();
          ConditionFormula elem = p.parse_formula_elem();
          if (elem.kind == ConditionFormula::Kind::Lit &&
              !elem.lit.atom.is_builtin() &&
              prog.decls.random.count(elem.lit.atom.predicate)) {
            rc.causes.push_back(elem.lit);
          } else {
            if (formula_has_random(elem, prog.decls.random))
              throw ParseError("random atom inside a condition", elem_tok.line,
                               elem_tok.col);
            cond_parts.push_back(std::move(elem));
          }
        } while (p.accept(Tok::Comma));
      }
      rc.condition = ConditionFormula::conj(std::move(cond_parts));
      p.expect(Tok::Dot, "'.'");
      prog.random_part.push_back(std::move(rc));
      continue;
    }

    // Internal clause (or internal fact).
    Atom head = p.parse_atom();
    if (head.is_builtin())
      throw ParseError("builtin cannot be a clause head", start.line, start.col);
    InternalClause ic;
    ic.head = std::move(head);
    if (p.accept(Tok::ColonDash)) {
      ConditionFormula body = p.parse_formula();
      flatten_literals(body, ic.body, start.line, start.col);
    }
    p.expect(Tok::Dot, "'.'");
    prog.internal_part.push_back(std::move(ic));
  }

  // --- vocabulary construction & validation -------------------------------
  VocabularyDecl& decls = prog.decls;
  ArityTable arities;
  for (const auto& [pred, a] : decls.random) arities.note(pred, a);

  for (const InternalClause& ic : prog.internal_part) {
    if (decls.random.count(ic.head.predicate))
      throw ValidationError("random predicate " + ic.head.predicate +
                            " used as head of an internal clause");
    arities.note_atom(ic.head);
    decls.internal.emplace(ic.head.predicate,
                           static_cast<int>(ic.head.args.size()));
  }

  for (const InternalClause& ic : prog.internal_part)
    for (const Literal& l : ic.body) {
      if (!l.atom.is_builtin() && decls.random.count(l.atom.predicate))
        throw ValidationError("random atom " + to_string(l.atom) +
                              " in the body of an internal clause");
      arities.note_atom(l.atom);
    }

  for (const Constraint& c : prog.constraints)
    for (const Literal& l : c.body) {
      if (!l.atom.is_builtin() && decls.random.count(l.atom.predicate))
        throw ValidationError("random atom " + to_string(l.atom) +
                              " in a constraint");
      arities.note_atom(l.atom);
    }

  for (const RandomClause& rc : prog.random_part) {
    if (!decls.random.count(rc.effect.predicate))
      throw ValidationError("undeclared random predicate " +
                            rc.effect.predicate + " used as effect");
    arities.note_atom(rc.effect);
    for (const Literal& cl : rc.causes) {
      if (!decls.random.count(cl.atom.predicate))
        throw ValidationError("undeclared random predicate " +
                              cl.atom.predicate + " used as cause");
      arities.note_atom(cl.atom);
    }
    // Causes compare as sets; duplicates are rejected outright.
    for (size_t i = 0; i < rc.causes.size(); ++i)
      for (size_t j = i + 1; j < rc.causes.size(); ++j)
        if (rc.causes[i] == rc.causes[j])
          throw ValidationError("duplicate cause " + to_string(rc.causes[i]) +
                                " in clause " + std::to_string(rc.clause_id));
    if (formula_has_random(rc.condition, decls.random))
      throw ValidationError("random atom inside a condition of clause " +
                            std::to_string(rc.clause_id));
    arities.note_formula(rc.condition);
  }

  // Everything used but neither random nor an internal head is external.
  for (const auto& [pred, a] : arities.arity)
    if (!decls.random.count(pred) && !decls.internal.count(pred))
      decls.external.emplace(pred, a);

  // Range restriction.
  for (const RandomClause& rc : prog.random_part) {
    std::vector<const Atom*> positives;
    positive_atoms(rc.condition, positives);
    check_range_restriction(clause_vars(rc), positives,
                            "clause " + std::to_string(rc.clause_id));
  }
  for (const InternalClause& ic : prog.internal_part) {
    std::vector<std::string> vars;
    collect_vars(ic.head, vars);
    for (const Literal& l : ic.body) collect_vars(l.atom, vars);
    std::vector<const Atom*> positives;
    for (const Literal& l : ic.body)
      if (l.positive && !l.atom.is_builtin()) positives.push_back(&l.atom);
    check_range_restriction(vars, positives, "clause " + to_string(ic.head));
  }
  for (size_t i = 0; i < prog.constraints.size(); ++i) {
    const Constraint& c = prog.constraints[i];
    std::vector<std::string> vars;
    for (const Literal& l : c.body) collect_vars(l.atom, vars);
    std::vector<const Atom*> positives;
    for (const Literal& l : c.body)
      if (l.positive && !l.atom.is_builtin()) positives.push_back(&l.atom);
    check_range_restriction(vars, positives,
                            "constraint " + std::to_string(i + 1));
  }

  return prog;
}

ExternalDatabase parse_database(const std::string& text,
                                const ProgramStructure& program) {
  ExternalDatabase db;
  Parser p(text);
  ArityTable arities;
  for (const auto& [pred, a] : program.decls.random) arities.note(pred, a);
  for (const auto& [pred, a] : program.decls.internal) arities.note(pred, a);
  for (const auto& [pred, a] : program.decls.external) arities.note(pred, a);

  while (p.cur().kind != Tok::End) {
    Token start = p.cur();
    Atom a = p.parse_atom();
    p.expect(Tok::Dot, "'.'");
    if (a.is_builtin())
      throw ParseError("builtin atom cannot be a fact", start.line, start.col);
    if (!a.ground())
      throw ParseError("non-ground fact " + to_string(a), start.line,
                       start.col);
    if (program.decls.is_random(a.predicate) ||
        program.decls.is_internal(a.predicate))
      throw ParseError("predicate " + a.predicate + " not declared external",
                       start.line, start.col);
    arities.note_atom(a);  // throws ValidationError on clash
    db.facts.insert(std::move(a));
  }

  // Active domain: constants of program and database.
  for (const RandomClause& rc : program.random_part) {
    collect_constants(rc.effect, db.constants);
    for (const Literal& l : rc.causes) collect_constants(l.atom, db.constants);
    collect_constants(rc.condition, db.constants);
  }
  for (const InternalClause& ic : program.internal_part) {
    collect_constants(ic.head, db.constants);
    for (const Literal& l : ic.body) collect_constants(l.atom, db.constants);
  }
  for (const Constraint& c : program.constraints)
    for (const Literal& l : c.body) collect_constants(l.atom, db.constants);
  for (const Atom& f : db.facts) collect_constants(f, db.constants);

  return db;
}

CIQuery parse_query(const std::string& text, const ProgramStructure& program) {
  Parser p(text);
  Token start = p.cur();
  if (start.kind != Tok::Ident || start.text != "indep")
    throw ParseError("expected indep(A, B, [Z...])", start.line, start.col);
  p.shift();
  p.expect(Tok::LParen, "'('");
  CIQuery q;
  auto check = [&](const Atom& a, const Token& tok) {
    if (a.is_builtin())
      throw ParseError("builtin atom in query", tok.line, tok.col);
    if (!a.ground())
      throw ParseError("non-ground atom " + to_string(a), tok.line, tok.col);
    auto it = program.decls.random.find(a.predicate);
    if (it == program.decls.random.end()) {
      if (program.decls.arity_of(a.predicate))
        throw ParseError("atom " + to_string(a) + " not random", tok.line,
                         tok.col);
      throw ParseError("unknown predicate " + a.predicate, tok.line, tok.col);
    }
    if (it->second != static_cast<int>(a.args.size()))
      throw ParseError("arity clash for " + a.predicate, tok.line, tok.col);
  };
  Token ta = p.cur();
  q.a = p.parse_atom();
  check(q.a, ta);
  p.expect(Tok::Comma, "','");
  Token tb = p.cur();
  q.b = p.parse_atom();
  check(q.b, tb);
  p.expect(Tok::Comma, "','");
  p.expect(Tok::LBracket, "'['");
  if (!p.accept(Tok::RBracket)) {
    do {
      Token tz = p.cur();
      Atom z = p.parse_atom();
      check(z, tz);
      q.observations.push_back(std::move(z));
    } while (p.accept(Tok::Comma));
    p.expect(Tok::RBracket, "']'");
  }
  p.expect(Tok::RParen, "')'");
  p.accept(Tok::Dot);
  if (p.cur().kind != Tok::End)
    throw ParseError("trailing input after query", p.cur().line, p.cur().col);
  return q;
}

ParamsFile parse_params(const std::string& text) {
  ParamsFile file;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto pos = line.find('%'); pos != std::string::npos) line.erase(pos);
    std::string trimmed;
    std::copy_if(line.begin(), line.end(), std::back_inserter(trimmed),
                 [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
    if (trimmed.empty()) continue;
    size_t eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected '<ordinal> = <decimal>'", lineno, 1);
    std::string key = trimmed.substr(0, eq), val = trimmed.substr(eq + 1);
    auto r = parse_rational(val);
    if (!r || *r < 0 || *r > 1)
      throw ParseError("malformed probability '" + val + "'", lineno, 1);
    if (key == "default") {
      if (file.def) throw ParseError("duplicate default entry", lineno, 1);
      file.def = *r;
    } else {
      if (key.empty() || !std::all_of(key.begin(), key.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
          }))
        throw ParseError("malformed clause ordinal '" + key + "'", lineno, 1);
      int id = std::stoi(key);
      if (!file.entries.emplace(id, *r).second)
        throw ParseError("duplicate entry for clause " + key, lineno, 1);
    }
  }
  return file;
}

ParameterAssignment resolve_parameters(const ProgramStructure& program,
                                       const ParamsFile& file) {
  for (const auto& [id, _] : file.entries) {
    bool known = std::any_of(
        program.random_part.begin(), program.random_part.end(),
        [&](const RandomClause& rc) { return rc.clause_id == id; });
    if (!known)
      throw ValidationError("params file names clause " + std::to_string(id) +
                            " which does not exist");
  }
  ParameterAssignment out;
  for (const RandomClause& rc : program.random_part) {
    if (auto it = file.entries.find(rc.clause_id); it != file.entries.end())
      out.probs[rc.clause_id] = it->second;
    else if (rc.probability)
      out.probs[rc.clause_id] = *rc.probability;
    else if (file.def)
      out.probs[rc.clause_id] = *file.def;
  }
  return out;
}

ParameterAssignment resolve_parameters(const ProgramStructure& program) {
  return resolve_parameters(program, ParamsFile{});
}

}  // namespace plci
