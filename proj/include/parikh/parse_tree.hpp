#ifndef PARIKH_PARSE_TREE_HPP
#define PARIKH_PARSE_TREE_HPP

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "parikh/grammar.hpp"

namespace parikh {

/// Rooted ordered tree: internal nodes are variable-labeled and record the
/// production applied there; leaves are terminals or empty-word markers.
/// A variable node without a production is an unexpanded leaf; those only
/// occur in the factorization helpers, never in complete trees.
struct ParseTree {
  enum class Kind { Variable, Terminal, Epsilon };

  Kind kind = Kind::Epsilon;
  int symbol = -1;      // variable or terminal id, depending on kind
  int production = -1;  // index into the grammar's production list
  std::vector<ParseTree> children;

  static ParseTree terminal(int id) { return {Kind::Terminal, id, -1, {}}; }
  static ParseTree epsilon() { return {Kind::Epsilon, -1, -1, {}}; }
  static ParseTree variable_leaf(int id) { return {Kind::Variable, id, -1, {}}; }

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_expanded() const { return kind == Kind::Variable && production >= 0; }
  bool is_variable_leaf() const { return kind == Kind::Variable && production < 0; }

  bool operator==(const ParseTree&) const = default;
};

/// Path of child indices from the root; the empty path is the root itself.
using TreeCursor = std::vector<std::size_t>;

const ParseTree& subtree_at(const ParseTree& t, const TreeCursor& path);
/// Returns a copy of t with the subtree at `path` replaced.
ParseTree with_subtree(const ParseTree& t, const TreeCursor& path, ParseTree replacement);

/// True when no unexpanded variable leaf remains.
bool is_complete(const ParseTree& t);

/// Checks tree shape against the grammar: children of every expanded node
/// spell its production's right-hand side (an empty right-hand side is one
/// empty-word leaf). Throws std::invalid_argument on violations.
void validate(const Grammar& g, const ParseTree& t, bool allow_partial = false);

std::size_t node_count(const ParseTree& t);

/// Left-to-right terminal leaves; empty-word markers contribute nothing.
TerminalWord yield_of(const ParseTree& t);

/// Maximum edge count from the root to a leaf.
int height(const ParseTree& t);

/// Dimension: 0 without proper children (children rooted at a variable);
/// otherwise the largest child dimension, plus one when it is attained
/// twice. Always strictly below the height.
int dimension(const ParseTree& t);

/// Set of distinct variables appearing in the tree.
std::set<int> variable_set(const ParseTree& t);

/// Number of distinct variables appearing in the tree.
int count_variables(const ParseTree& t);

/// A tree is compact when its dimension is at most the number of distinct
/// variables in it.
bool is_compact(const ParseTree& t);

/// Same node count, same variable set, and Parikh-equal yields.
bool omega_equivalent(const ParseTree& a, const ParseTree& b);

/// Restructures t into an omega-equivalent compact tree by repeatedly
/// moving a pumpable segment from a maximal-dimension child into the child
/// with the most variables. Node count, variable set and the yield's
/// Parikh image are preserved.
ParseTree compact(const Grammar& g, const ParseTree& t);

/// Builds a derivation of yield_of(t) whose index is at most
/// dimension(t) * degree + 1: the root production first, then the proper
/// children fully derived one at a time, lower-dimension children first.
Derivation tree_to_indexed_derivation(const Grammar& g, const ParseTree& t);

/// The unique parse tree of a derivation that ends in a terminal word.
ParseTree derivation_to_tree(const Grammar& g, const Derivation& dv);

/// S-expression rendering: (A1 (A1 "a") (A2 "c" (A1 "a"))); the empty-word
/// leaf prints as ().
std::string to_sexpr(const Grammar& g, const ParseTree& t);
ParseTree tree_from_sexpr(const Grammar& g, std::string_view text);

}  // namespace parikh

#endif
