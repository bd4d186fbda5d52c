#ifndef PARIKH_GRAMMAR_HPP
#define PARIKH_GRAMMAR_HPP

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "parikh/vectors.hpp"

namespace parikh {

enum class SymbolKind { Variable, Terminal };

/// One occurrence of a variable or terminal; `id` indexes the grammar's
/// ordered variable or terminal list, depending on `kind`.
struct Symbol {
  SymbolKind kind;
  int id;

  static Symbol variable(int id) { return {SymbolKind::Variable, id}; }
  static Symbol terminal(int id) { return {SymbolKind::Terminal, id}; }
  bool is_variable() const { return kind == SymbolKind::Variable; }
  bool is_terminal() const { return kind == SymbolKind::Terminal; }

  auto operator<=>(const Symbol&) const = default;
};

/// Word over variables and terminals.
using SententialForm = std::vector<Symbol>;

/// Word over terminals, as ids into the grammar's terminal list.
using TerminalWord = std::vector<int>;

struct Production {
  int lhs = 0;
  SententialForm rhs;

  auto operator<=>(const Production&) const = default;
};

/// A context-free grammar. Variables and terminals are kept in a fixed
/// order (first appearance in the source text); every count vector in the
/// toolkit is indexed by these orderings.
struct Grammar {
  std::vector<std::string> variables;
  std::vector<std::string> terminals;
  std::vector<Production> productions;
  int axiom = 0;

  std::size_t variable_count() const { return variables.size(); }
  std::size_t terminal_count() const { return terminals.size(); }

  const std::string& symbol_name(Symbol s) const {
    return s.is_variable() ? variables.at(s.id) : terminals.at(s.id);
  }

  bool operator==(const Grammar&) const = default;
};

/// Raised on malformed grammar text; the message carries the line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Checks all structural invariants; throws std::invalid_argument on the
/// first violation. Parsing and the generators always produce valid
/// grammars; this is for grammars assembled by hand.
void validate(const Grammar& g);

/// Parses the grammar text format: one `LHS -> alt1 | alt2` rule per line,
/// `#` comment lines, an optional `start: NAME` directive, `;` line
/// terminators. Identifiers appearing on some left-hand side are variables,
/// everything else is a terminal.
Grammar parse_grammar(std::string_view text);

/// Canonical serialization: rules grouped in variable order, alternatives
/// in input order, a start directive only when the axiom is not the first
/// rule's left-hand side. parse_grammar(format_grammar(g)) == g.
std::string format_grammar(const Grammar& g);

/// Removes variables that are unproductive or unreachable, along with
/// every production mentioning them. The axiom is always kept, so the
/// result may be a grammar with no productions (empty language).
Grammar remove_useless(const Grammar& g);

/// One less than the maximum number of variable occurrences on any
/// right-hand side; -1 when all right-hand sides are terminal-only.
/// Throws std::invalid_argument if the grammar has no productions.
int degree(const Grammar& g);

VarVector parikh_v(const Grammar& g, const SententialForm& alpha);
TermVector parikh_t(const Grammar& g, const SententialForm& alpha);
TermVector parikh_t(const Grammar& g, const TerminalWord& word);

/// Subsequence of alpha keeping only symbols of the given kind.
SententialForm project(const SententialForm& alpha, SymbolKind side);

/// Terminal projection as a word of terminal ids.
TerminalWord terminal_word(const SententialForm& alpha);

/// Replaces the single variable occurrence at `position` by the
/// right-hand side of `p`. The symbol there must be the variable p.lhs.
SententialForm apply_step(const SententialForm& alpha, std::size_t position,
                          const Production& p);

/// The transition induced by one derivation step: variable counts before,
/// the terminal part of the applied right-hand side, variable counts after.
struct Transition {
  VarVector source;
  TerminalWord label;
  VarVector target;

  auto operator<=>(const Transition&) const = default;
};

Transition step_transition(const Grammar& g, const SententialForm& alpha,
                           std::size_t position, const Production& p);

/// A derivation recorded as its sentential forms plus, for each step, the
/// position rewritten and the index of the production applied.
struct DerivationStep {
  std::size_t position = 0;
  std::size_t production = 0;

  auto operator<=>(const DerivationStep&) const = default;
};

struct Derivation {
  std::vector<SententialForm> forms;
  std::vector<DerivationStep> steps;

  bool operator==(const Derivation&) const = default;
};

/// Checks that consecutive forms are related by the recorded steps and,
/// when require_axiom is set, that the derivation starts at the axiom.
void validate(const Grammar& g, const Derivation& d, bool require_axiom = true);

/// The least k such that the derivation has index k: the maximum number of
/// variable occurrences in any of its forms.
int derivation_index(const Derivation& d);

std::string format_form(const Grammar& g, const SententialForm& alpha);
std::string format_word(const Grammar& g, const TerminalWord& word);

}  // namespace parikh

#endif
