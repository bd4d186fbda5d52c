#ifndef PARIKH_RANDOM_HPP
#define PARIKH_RANDOM_HPP

#include <optional>
#include <random>

#include "parikh/grammar.hpp"
#include "parikh/parse_tree.hpp"

namespace parikh {

/// Knobs for the seeded grammar corpus used by the property suites.
struct GrammarGenParams {
  int max_variables = 3;
  int max_terminals = 3;
  int max_productions = 6;
  int max_rhs_len = 3;  // empty right-hand sides included
  double variable_weight = 0.45;
};

Grammar random_grammar(std::mt19937& rng, const GrammarGenParams& params = {});

/// Minimum node count of a complete tree rooted at each variable; empty
/// when the variable derives no terminal word at all.
std::vector<std::optional<int>> min_tree_sizes(const Grammar& g);

/// Random complete parse tree rooted at the axiom with at most node_budget
/// nodes, grown top-down; productions are chosen uniformly among those
/// whose minimal completion still fits the remaining budget, so generation
/// cannot dead-end. Returns nothing when the axiom derives no word or the
/// budget is below the smallest complete tree.
std::optional<ParseTree> random_tree(const Grammar& g, std::mt19937& rng, int node_budget);

}  // namespace parikh

#endif
