#include "parikh/automaton.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace parikh {

std::vector<VarVector> vectors_up_to(std::size_t dim, int sum_bound) {
  std::vector<VarVector> out;
  VarVector current(dim);
  // Recursing over coordinates yields lexicographic order directly.
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos == dim) {
      out.push_back(current);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      current[pos] = v;
      self(self, pos + 1, remaining - v);
    }
    current[pos] = 0;
  };
  rec(rec, 0, sum_bound);
  return out;
}

WordNFA build_parikh_automaton(const Grammar& g, int k) {
  if (k < 1) throw std::invalid_argument("automaton bound k must be at least 1");
  if (g.variables.empty()) throw std::invalid_argument("grammar has no variables");

  WordNFA m;
  m.variables = g.variables;
  m.terminals = g.terminals;
  m.k = k;
  m.states = vectors_up_to(g.variable_count(), k);
  m.initial = VarVector::unit(g.variable_count(), g.axiom);
  m.finals = {VarVector::zero(g.variable_count())};

  // The transition of a step depends only on the source's variable counts,
  // so enumerating (production x state) covers every step exactly once.
  std::set<Transition> transitions;
  for (const auto& p : g.productions) {
    VarVector rhs_vars(g.variable_count());
    for (Symbol s : p.rhs)
      if (s.is_variable()) ++rhs_vars[s.id];
    TerminalWord label = terminal_word(p.rhs);
    for (const auto& q : m.states) {
      if (q[p.lhs] < 1) continue;
      VarVector target = q;
      --target[p.lhs];
      target += rhs_vars;
      if (target.sum() > k) continue;
      transitions.insert(Transition{q, label, target});
    }
  }
  m.transitions.assign(transitions.begin(), transitions.end());
  return m;
}

bigint state_count(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("state_count needs n, k >= 0");
  // binomial(n + k, n) via the multiplicative formula; exact at every step.
  bigint result = 1;
  for (int i = 1; i <= n; ++i) {
    result *= k + i;
    result /= i;
  }
  return result;
}

int default_k(const Grammar& g) {
  const int n = static_cast<int>(g.variable_count());
  const int d = g.productions.empty() ? 0 : std::max(degree(g), 0);
  return n * d + 1;
}

Grammar gn_family(int n) {
  if (n < 1) throw std::invalid_argument("gn_family needs n >= 1");
  Grammar g;
  for (int i = 1; i <= n; ++i) g.variables.push_back("A" + std::to_string(i));
  g.terminals = {"a"};
  g.productions.push_back(Production{0, {Symbol::terminal(0)}});
  for (int i = 2; i <= n; ++i)
    g.productions.push_back(
        Production{i - 1, {Symbol::variable(i - 2), Symbol::variable(i - 2)}});
  g.axiom = n - 1;
  validate(g);
  return g;
}

}  // namespace parikh
