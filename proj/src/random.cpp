#include "parikh/random.hpp"

#include <algorithm>
#include <limits>

namespace parikh {

Grammar random_grammar(std::mt19937& rng, const GrammarGenParams& params) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  Grammar g;
  const int n_vars = pick(1, params.max_variables);
  const int n_terms = pick(1, params.max_terminals);
  static const char* var_names[] = {"A", "B", "C", "D", "E", "F"};
  static const char* term_names[] = {"a", "b", "c", "d", "e", "f"};
  for (int i = 0; i < n_vars; ++i) g.variables.push_back(var_names[i]);
  for (int i = 0; i < n_terms; ++i) g.terminals.push_back(term_names[i]);

  const int n_prods = pick(1, params.max_productions);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n_prods; ++i) {
    Production p;
    p.lhs = pick(0, n_vars - 1);
    const int len = pick(0, params.max_rhs_len);
    for (int j = 0; j < len; ++j) {
      if (coin(rng) < params.variable_weight)
        p.rhs.push_back(Symbol::variable(pick(0, n_vars - 1)));
      else
        p.rhs.push_back(Symbol::terminal(pick(0, n_terms - 1)));
    }
    g.productions.push_back(std::move(p));
  }
  g.axiom = 0;
  validate(g);
  return g;
}

namespace {

constexpr int kUnbounded = std::numeric_limits<int>::max() / 4;

// Node cost of expanding with production p, given minimal completions for
// its variables: the node itself, one leaf per terminal (or one empty-word
// leaf), and the children's minima.
int production_floor(const Production& p, const std::vector<int>& var_min) {
  if (p.rhs.empty()) return 2;
  long long cost = 1;
  for (Symbol s : p.rhs)
    cost += s.is_terminal() ? 1 : var_min[s.id];
  return static_cast<int>(std::min<long long>(cost, kUnbounded));
}

}  // namespace

std::vector<std::optional<int>> min_tree_sizes(const Grammar& g) {
  std::vector<int> best(g.variable_count(), kUnbounded);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      int cost = production_floor(p, best);
      if (cost < best[p.lhs]) {
        best[p.lhs] = cost;
        changed = true;
      }
    }
  }
  std::vector<std::optional<int>> out(best.size());
  for (std::size_t i = 0; i < best.size(); ++i)
    if (best[i] < kUnbounded) out[i] = best[i];
  return out;
}

namespace {

struct TreeGrower {
  const Grammar& g;
  std::mt19937& rng;
  std::vector<int> var_min;

  ParseTree grow(int variable, int budget) {
    std::vector<int> feasible;
    for (std::size_t i = 0; i < g.productions.size(); ++i) {
      const auto& p = g.productions[i];
      if (p.lhs == variable && production_floor(p, var_min) <= budget)
        feasible.push_back(static_cast<int>(i));
    }
    // Guaranteed nonempty: the caller never allots less than the minimum.
    std::uniform_int_distribution<std::size_t> dist(0, feasible.size() - 1);
    const int prod = feasible[dist(rng)];
    const Production& p = g.productions[prod];

    ParseTree node = ParseTree::variable_leaf(variable);
    node.production = prod;
    if (p.rhs.empty()) {
      node.children.push_back(ParseTree::epsilon());
      return node;
    }

    int slack = budget - production_floor(p, var_min);
    for (std::size_t i = 0; i < p.rhs.size(); ++i) {
      Symbol s = p.rhs[i];
      if (s.is_terminal()) {
        node.children.push_back(ParseTree::terminal(s.id));
        continue;
      }
      std::uniform_int_distribution<int> extra(0, slack);
      const int child_budget = var_min[s.id] + extra(rng);
      ParseTree child = grow(s.id, child_budget);
      slack -= static_cast<int>(node_count(child)) - var_min[s.id];
      node.children.push_back(std::move(child));
    }
    return node;
  }
};

}  // namespace

std::optional<ParseTree> random_tree(const Grammar& g, std::mt19937& rng, int node_budget) {
  auto minima = min_tree_sizes(g);
  if (!minima[g.axiom] || *minima[g.axiom] > node_budget) return std::nullopt;
  std::vector<int> var_min(minima.size(), kUnbounded);
  for (std::size_t i = 0; i < minima.size(); ++i)
    if (minima[i]) var_min[i] = *minima[i];
  TreeGrower grower{g, rng, std::move(var_min)};
  ParseTree t = grower.grow(g.axiom, node_budget);
  validate(g, t, false);
  return t;
}

}  // namespace parikh
