#include "plci/ast.hpp"

#include <algorithm>
#include <sstream>

namespace plci {

Term make_term(const std::string& name) {
  if (name.empty()) throw ValidationError("empty term name");
  char c = name[0];
  bool var = (c == '_') || (c >= 'A' && c <= 'Z');
  return Term{var ? TermKind::Variable : TermKind::Constant, name};
}

bool Atom::ground() const {
  return std::none_of(args.begin(), args.end(),
                      [](const Term& t) { return t.is_var(); });
}

ConditionFormula ConditionFormula::literal(Literal l) {
  ConditionFormula f;
  f.kind = Kind::Lit;
  f.lit = std::move(l);
  return f;
}

ConditionFormula ConditionFormula::conj(std::vector<ConditionFormula> cs) {
  ConditionFormula f;
  f.kind = Kind::And;
  f.children = std::move(cs);
  return f;
}

ConditionFormula ConditionFormula::disj(std::vector<ConditionFormula> cs) {
  ConditionFormula f;
  f.kind = Kind::Or;
  f.children = std::move(cs);
  return f;
}

std::optional<int> VocabularyDecl::arity_of(const std::string& p) const {
  if (auto it = random.find(p); it != random.end()) return it->second;
  if (auto it = external.find(p); it != external.end()) return it->second;
  if (auto it = internal.find(p); it != internal.end()) return it->second;
  return std::nullopt;
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_var() && std::find(out.begin(), out.end(), t.name) == out.end())
    out.push_back(t.name);
}

void collect_vars(const Atom& a, std::vector<std::string>& out) {
  for (const Term& t : a.args) collect_vars(t, out);
}

void collect_vars(const ConditionFormula& f, std::vector<std::string>& out) {
  if (f.kind == ConditionFormula::Kind::Lit) {
    collect_vars(f.lit.atom, out);
  } else {
    for (const auto& c : f.children) collect_vars(c, out);
  }
}

// var(RC) in first-occurrence order: effect, causes, condition. This order
// keys error-term substitutions, so it must stay stable.
std::vector<std::string> clause_vars(const RandomClause& rc) {
  std::vector<std::string> vars;
  collect_vars(rc.effect, vars);
  for (const Literal& c : rc.causes) collect_vars(c.atom, vars);
  collect_vars(rc.condition, vars);
  return vars;
}

Atom substitute(const Atom& a, const std::map<std::string, std::string>& subst) {
  Atom out = a;
  for (Term& t : out.args) {
    if (!t.is_var()) continue;
    auto it = subst.find(t.name);
    if (it != subst.end()) t = Term{TermKind::Constant, it->second};
  }
  return out;
}

std::string to_string(const Term& t) { return t.name; }

std::string to_string(const Atom& a) {
  if (a.builtin == Builtin::Eq)
    return to_string(a.args[0]) + " = " + to_string(a.args[1]);
  if (a.builtin == Builtin::Neq)
    return to_string(a.args[0]) + " \\= " + to_string(a.args[1]);
  if (a.args.empty()) return a.predicate;
  std::string s = a.predicate + "(";
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ", ";
    s += to_string(a.args[i]);
  }
  return s + ")";
}

std::string to_string(const Literal& l) {
  return l.positive ? to_string(l.atom) : "\\+" + to_string(l.atom);
}

std::string to_string(const ConditionFormula& f) {
  switch (f.kind) {
    case ConditionFormula::Kind::Lit:
      return to_string(f.lit);
    case ConditionFormula::Kind::And: {
      std::string s;
      for (size_t i = 0; i < f.children.size(); ++i) {
        if (i) s += ", ";
        s += to_string(f.children[i]);
      }
      return s;
    }
    case ConditionFormula::Kind::Or: {
      std::string s = "(";
      for (size_t i = 0; i < f.children.size(); ++i) {
        if (i) s += "; ";
        const auto& c = f.children[i];
        // And-children inside a disjunct print without extra parens.
        s += to_string(c);
      }
      return s + ")";
    }
  }
  return {};
}

std::string to_string(const RandomClause& rc) {
  std::string s = rc.probability ? rat_to_decimal(*rc.probability) : "_";
  s += " :: " + to_string(rc.effect);
  std::vector<std::string> parts;
  for (const Literal& c : rc.causes) parts.push_back(to_string(c));
  if (!rc.condition.empty()) parts.push_back(to_string(rc.condition));
  if (!parts.empty()) {
    s += " :- ";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ", ";
      s += parts[i];
    }
  }
  return s + ".";
}

std::string to_string(const InternalClause& ic) {
  std::string s = to_string(ic.head);
  if (!ic.body.empty()) {
    s += " :- ";
    for (size_t i = 0; i < ic.body.size(); ++i) {
      if (i) s += ", ";
      s += to_string(ic.body[i]);
    }
  }
  return s + ".";
}

std::string to_string(const Constraint& c) {
  std::string s = ":- ";
  for (size_t i = 0; i < c.body.size(); ++i) {
    if (i) s += ", ";
    s += to_string(c.body[i]);
  }
  return s + ".";
}

std::string to_string(const CIQuery& q) {
  std::string s = "indep(" + to_string(q.a) + ", " + to_string(q.b) + ", [";
  for (size_t i = 0; i < q.observations.size(); ++i) {
    if (i) s += ", ";
    s += to_string(q.observations[i]);
  }
  return s + "])";
}

std::string pretty_print(const ProgramStructure& p) {
  std::ostringstream os;
  for (const auto& [pred, arity] : p.decls.random)
    os << "random " << pred << "/" << arity << ".\n";
  for (const RandomClause& rc : p.random_part) os << to_string(rc) << "\n";
  for (const InternalClause& ic : p.internal_part) os << to_string(ic) << "\n";
  for (const Constraint& c : p.constraints) os << to_string(c) << "\n";
  return os.str();
}

std::string pretty_print(const ExternalDatabase& db) {
  std::ostringstream os;
  for (const Atom& a : db.facts) os << to_string(a) << ".\n";
  return os.str();
}

}  // namespace plci
