#include "parikh/grammar.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace parikh {

namespace {

bool is_ident_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '_';
}

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), is_ident_char);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ' || s[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

struct RawRule {
  int line;
  std::string lhs;
  std::vector<std::vector<std::string>> alternatives;
};

}  // namespace

void validate(const Grammar& g) {
  std::set<std::string> seen;
  for (const auto& name : g.variables) {
    if (!is_ident(name)) throw std::invalid_argument("bad variable name: " + name);
    if (!seen.insert(name).second)
      throw std::invalid_argument("duplicate symbol name: " + name);
  }
  for (const auto& name : g.terminals) {
    if (!is_ident(name)) throw std::invalid_argument("bad terminal name: " + name);
    if (!seen.insert(name).second)
      throw std::invalid_argument("duplicate symbol name: " + name);
  }
  auto check_symbol = [&](Symbol s) {
    const auto bound = s.is_variable() ? g.variables.size() : g.terminals.size();
    if (s.id < 0 || static_cast<std::size_t>(s.id) >= bound)
      throw std::invalid_argument("symbol id out of range");
  };
  for (const auto& p : g.productions) {
    if (p.lhs < 0 || static_cast<std::size_t>(p.lhs) >= g.variables.size())
      throw std::invalid_argument("production lhs is not a declared variable");
    for (Symbol s : p.rhs) check_symbol(s);
  }
  if (g.axiom < 0 || static_cast<std::size_t>(g.axiom) >= g.variables.size())
    throw std::invalid_argument("axiom is not a declared variable");
}

Grammar parse_grammar(std::string_view text) {
  std::vector<RawRule> rules;
  std::optional<std::string> start_name;

  int line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = trim(raw);
    if (!line.empty() && line.back() == ';') line = trim(line.substr(0, line.size() - 1));
    if (line.empty() || line.front() == '#') continue;

    if (line.substr(0, 5) == "start" && line.find("->") == std::string_view::npos) {
      std::string_view rest = trim(line.substr(5));
      if (rest.empty() || rest.front() != ':')
        throw ParseError(line_no, "expected ':' after 'start'");
      std::string_view name = trim(rest.substr(1));
      if (!is_ident(name)) throw ParseError(line_no, "bad start symbol name");
      if (start_name) throw ParseError(line_no, "duplicate start directive");
      start_name = std::string(name);
      continue;
    }

    std::size_t arrow = line.find("->");
    if (arrow == std::string_view::npos)
      throw ParseError(line_no, "expected 'LHS -> ...' rule");
    std::string_view lhs = trim(line.substr(0, arrow));
    if (!is_ident(lhs)) throw ParseError(line_no, "bad rule left-hand side");

    RawRule rule;
    rule.line = line_no;
    rule.lhs = std::string(lhs);
    for (std::string_view alt : split(line.substr(arrow + 2), '|')) {
      std::vector<std::string> syms;
      for (std::string_view tok : tokens(alt)) {
        if (!is_ident(tok))
          throw ParseError(line_no, "bad symbol '" + std::string(tok) + "'");
        syms.emplace_back(tok);
      }
      rule.alternatives.push_back(std::move(syms));
    }
    rules.push_back(std::move(rule));
  }

  if (rules.empty() && !start_name) throw ParseError(line_no, "no rules in grammar");

  Grammar g;
  std::map<std::string, int> var_id;
  for (const auto& r : rules) {
    if (!var_id.count(r.lhs)) {
      var_id.emplace(r.lhs, static_cast<int>(g.variables.size()));
      g.variables.push_back(r.lhs);
    }
  }
  // The start symbol is a variable even when it has no rule of its own
  // (such a grammar denotes the empty language).
  if (start_name && !var_id.count(*start_name)) {
    var_id.emplace(*start_name, static_cast<int>(g.variables.size()));
    g.variables.push_back(*start_name);
  }

  std::map<std::string, int> term_id;
  std::vector<Production> in_order;
  for (const auto& r : rules) {
    for (const auto& alt : r.alternatives) {
      Production p;
      p.lhs = var_id.at(r.lhs);
      for (const auto& name : alt) {
        auto vit = var_id.find(name);
        if (vit != var_id.end()) {
          p.rhs.push_back(Symbol::variable(vit->second));
        } else {
          auto [tit, inserted] = term_id.emplace(name, static_cast<int>(g.terminals.size()));
          if (inserted) g.terminals.push_back(name);
          p.rhs.push_back(Symbol::terminal(tit->second));
        }
      }
      in_order.push_back(std::move(p));
    }
  }

  // Stable-group productions by variable so that parsing a serialized
  // grammar reproduces it exactly.
  for (int v = 0; v < static_cast<int>(g.variables.size()); ++v)
    for (const auto& p : in_order)
      if (p.lhs == v) g.productions.push_back(p);

  g.axiom = start_name ? var_id.at(*start_name) : in_order.empty() ? 0 : in_order.front().lhs;
  validate(g);
  return g;
}

std::string format_grammar(const Grammar& g) {
  std::string out;
  const int first_lhs = g.productions.empty() ? -1 : g.productions.front().lhs;
  if (g.axiom != first_lhs) out += "start: " + g.variables.at(g.axiom) + "\n";
  for (int v = 0; v < static_cast<int>(g.variables.size()); ++v) {
    bool any = false;
    std::string line;
    for (const auto& p : g.productions) {
      if (p.lhs != v) continue;
      if (!any) {
        line = g.variables[v] + " ->";
        any = true;
      } else {
        line += " |";
      }
      for (Symbol s : p.rhs) line += " " + g.symbol_name(s);
    }
    if (any) out += line + "\n";
  }
  return out;
}

Grammar remove_useless(const Grammar& g) {
  validate(g);
  const std::size_t n = g.variables.size();

  // Productive variables: fixpoint over productions whose variables are
  // all already known productive.
  std::vector<bool> productive(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      if (productive[p.lhs]) continue;
      bool ok = true;
      for (Symbol s : p.rhs)
        if (s.is_variable() && !productive[s.id]) ok = false;
      if (ok) {
        productive[p.lhs] = true;
        changed = true;
      }
    }
  }

  // Reachable from the axiom through productions over productive variables.
  std::vector<bool> reachable(n, false);
  reachable[g.axiom] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      if (!reachable[p.lhs] || !productive[p.lhs]) continue;
      bool usable = true;
      for (Symbol s : p.rhs)
        if (s.is_variable() && !productive[s.id]) usable = false;
      if (!usable) continue;
      for (Symbol s : p.rhs) {
        if (s.is_variable() && !reachable[s.id]) {
          reachable[s.id] = true;
          changed = true;
        }
      }
    }
  }

  std::vector<bool> keep(n, false);
  for (std::size_t v = 0; v < n; ++v)
    keep[v] = (productive[v] && reachable[v]) || static_cast<int>(v) == g.axiom;

  std::vector<int> new_id(n, -1);
  Grammar out;
  for (std::size_t v = 0; v < n; ++v) {
    if (keep[v]) {
      new_id[v] = static_cast<int>(out.variables.size());
      out.variables.push_back(g.variables[v]);
    }
  }
  std::map<std::string, int> term_id;
  for (const auto& p : g.productions) {
    if (!keep[p.lhs] || !productive[p.lhs] || !reachable[p.lhs]) continue;
    bool usable = true;
    for (Symbol s : p.rhs)
      if (s.is_variable() && !keep[s.id]) usable = false;
    if (!usable) continue;
    Production q;
    q.lhs = new_id[p.lhs];
    for (Symbol s : p.rhs) {
      if (s.is_variable()) {
        q.rhs.push_back(Symbol::variable(new_id[s.id]));
      } else {
        const auto& name = g.terminals[s.id];
        auto [it, inserted] = term_id.emplace(name, static_cast<int>(out.terminals.size()));
        if (inserted) out.terminals.push_back(name);
        q.rhs.push_back(Symbol::terminal(it->second));
      }
    }
    out.productions.push_back(std::move(q));
  }
  out.axiom = new_id[g.axiom];
  validate(out);
  return out;
}

int degree(const Grammar& g) {
  if (g.productions.empty())
    throw std::invalid_argument("degree is undefined for a grammar with no productions");
  int max_vars = 0;
  for (const auto& p : g.productions) {
    int vars = 0;
    for (Symbol s : p.rhs)
      if (s.is_variable()) ++vars;
    max_vars = std::max(max_vars, vars);
  }
  return max_vars - 1;
}

VarVector parikh_v(const Grammar& g, const SententialForm& alpha) {
  VarVector v(g.variable_count());
  for (Symbol s : alpha)
    if (s.is_variable()) ++v[s.id];
  return v;
}

TermVector parikh_t(const Grammar& g, const SententialForm& alpha) {
  TermVector v(g.terminal_count());
  for (Symbol s : alpha)
    if (s.is_terminal()) ++v[s.id];
  return v;
}

TermVector parikh_t(const Grammar& g, const TerminalWord& word) {
  TermVector v(g.terminal_count());
  for (int id : word) ++v[id];
  return v;
}

SententialForm project(const SententialForm& alpha, SymbolKind side) {
  SententialForm out;
  for (Symbol s : alpha)
    if (s.kind == side) out.push_back(s);
  return out;
}

TerminalWord terminal_word(const SententialForm& alpha) {
  TerminalWord out;
  for (Symbol s : alpha)
    if (s.is_terminal()) out.push_back(s.id);
  return out;
}

SententialForm apply_step(const SententialForm& alpha, std::size_t position,
                          const Production& p) {
  if (position >= alpha.size())
    throw std::out_of_range("step position past end of sentential form");
  if (alpha[position] != Symbol::variable(p.lhs))
    throw std::invalid_argument("symbol at step position is not the production's variable");
  SententialForm out;
  out.reserve(alpha.size() - 1 + p.rhs.size());
  out.insert(out.end(), alpha.begin(), alpha.begin() + position);
  out.insert(out.end(), p.rhs.begin(), p.rhs.end());
  out.insert(out.end(), alpha.begin() + position + 1, alpha.end());
  return out;
}

Transition step_transition(const Grammar& g, const SententialForm& alpha,
                           std::size_t position, const Production& p) {
  SententialForm beta = apply_step(alpha, position, p);
  return Transition{parikh_v(g, alpha), terminal_word(p.rhs), parikh_v(g, beta)};
}

void validate(const Grammar& g, const Derivation& d, bool require_axiom) {
  if (d.forms.empty()) throw std::invalid_argument("derivation has no forms");
  if (d.forms.size() != d.steps.size() + 1)
    throw std::invalid_argument("derivation step/form counts disagree");
  if (require_axiom && d.forms.front() != SententialForm{Symbol::variable(g.axiom)})
    throw std::invalid_argument("derivation does not start at the axiom");
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& step = d.steps[i];
    if (step.production >= g.productions.size())
      throw std::invalid_argument("derivation step production out of range");
    SententialForm next =
        apply_step(d.forms[i], step.position, g.productions[step.production]);
    if (next != d.forms[i + 1])
      throw std::invalid_argument("derivation forms are not related by the recorded step");
  }
}

int derivation_index(const Derivation& d) {
  int index = 0;
  for (const auto& form : d.forms) {
    int vars = 0;
    for (Symbol s : form)
      if (s.is_variable()) ++vars;
    index = std::max(index, vars);
  }
  return index;
}

std::string format_form(const Grammar& g, const SententialForm& alpha) {
  std::string out;
  for (Symbol s : alpha) {
    if (!out.empty()) out += " ";
    out += g.symbol_name(s);
  }
  return out;
}

std::string format_word(const Grammar& g, const TerminalWord& word) {
  std::string out;
  for (int id : word) out += g.terminals.at(id);
  return out;
}

}  // namespace parikh
