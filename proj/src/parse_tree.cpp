#include "parikh/parse_tree.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>

namespace parikh {

const ParseTree& subtree_at(const ParseTree& t, const TreeCursor& path) {
  const ParseTree* node = &t;
  for (std::size_t step : path) node = &node->children.at(step);
  return *node;
}

namespace {

ParseTree& node_ref(ParseTree& t, const TreeCursor& path) {
  ParseTree* node = &t;
  for (std::size_t step : path) node = &node->children.at(step);
  return *node;
}

}  // namespace

ParseTree with_subtree(const ParseTree& t, const TreeCursor& path, ParseTree replacement) {
  ParseTree out = t;
  node_ref(out, path) = std::move(replacement);
  return out;
}

bool is_complete(const ParseTree& t) {
  if (t.is_variable_leaf()) return false;
  return std::all_of(t.children.begin(), t.children.end(), is_complete);
}

void validate(const Grammar& g, const ParseTree& t, bool allow_partial) {
  switch (t.kind) {
    case ParseTree::Kind::Epsilon:
      if (!t.children.empty()) throw std::invalid_argument("empty-word leaf with children");
      return;
    case ParseTree::Kind::Terminal:
      if (!t.children.empty()) throw std::invalid_argument("terminal leaf with children");
      if (t.symbol < 0 || static_cast<std::size_t>(t.symbol) >= g.terminals.size())
        throw std::invalid_argument("terminal id out of range");
      return;
    case ParseTree::Kind::Variable:
      break;
  }
  if (t.symbol < 0 || static_cast<std::size_t>(t.symbol) >= g.variables.size())
    throw std::invalid_argument("variable id out of range");
  if (t.is_variable_leaf()) {
    if (!allow_partial) throw std::invalid_argument("unexpanded variable in parse tree");
    if (!t.children.empty()) throw std::invalid_argument("unexpanded variable with children");
    return;
  }
  if (static_cast<std::size_t>(t.production) >= g.productions.size())
    throw std::invalid_argument("production index out of range");
  const Production& p = g.productions[t.production];
  if (p.lhs != t.symbol)
    throw std::invalid_argument("node label does not match its production");
  if (p.rhs.empty()) {
    if (t.children.size() != 1 || t.children[0].kind != ParseTree::Kind::Epsilon)
      throw std::invalid_argument("empty right-hand side must expand to one empty-word leaf");
  } else {
    if (t.children.size() != p.rhs.size())
      throw std::invalid_argument("child count does not match the production");
    for (std::size_t i = 0; i < p.rhs.size(); ++i) {
      const Symbol s = p.rhs[i];
      const ParseTree& c = t.children[i];
      if (s.is_variable()) {
        if (!c.is_variable() || c.symbol != s.id)
          throw std::invalid_argument("child does not spell the production");
      } else {
        if (c.kind != ParseTree::Kind::Terminal || c.symbol != s.id)
          throw std::invalid_argument("child does not spell the production");
      }
    }
  }
  for (const auto& c : t.children) validate(g, c, allow_partial);
}

std::size_t node_count(const ParseTree& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += node_count(c);
  return n;
}

TerminalWord yield_of(const ParseTree& t) {
  if (t.is_variable_leaf())
    throw std::invalid_argument("yield of an incomplete parse tree");
  if (t.kind == ParseTree::Kind::Terminal) return {t.symbol};
  TerminalWord out;
  for (const auto& c : t.children) {
    TerminalWord part = yield_of(c);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

int height(const ParseTree& t) {
  int h = 0;
  for (const auto& c : t.children) h = std::max(h, 1 + height(c));
  return h;
}

int dimension(const ParseTree& t) {
  int best = -1, second = -1;
  for (const auto& c : t.children) {
    if (!c.is_variable()) continue;
    int d = dimension(c);
    if (d > best) {
      second = best;
      best = d;
    } else if (d > second) {
      second = d;
    }
  }
  if (best < 0) return 0;
  return best == second ? best + 1 : best;
}

namespace {

void collect_variables(const ParseTree& t, std::set<int>& out) {
  if (t.is_variable()) out.insert(t.symbol);
  for (const auto& c : t.children) collect_variables(c, out);
}

std::map<int, int> terminal_counts(const ParseTree& t) {
  std::map<int, int> counts;
  for (int id : yield_of(t)) ++counts[id];
  return counts;
}

}  // namespace

std::set<int> variable_set(const ParseTree& t) {
  std::set<int> out;
  collect_variables(t, out);
  return out;
}

int count_variables(const ParseTree& t) {
  return static_cast<int>(variable_set(t).size());
}

bool is_compact(const ParseTree& t) { return dimension(t) <= count_variables(t); }

bool omega_equivalent(const ParseTree& a, const ParseTree& b) {
  return node_count(a) == node_count(b) && variable_set(a) == variable_set(b) &&
         terminal_counts(a) == terminal_counts(b);
}

namespace {

std::vector<std::size_t> proper_child_indices(const ParseTree& t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.children.size(); ++i)
    if (t.children[i].is_variable()) out.push_back(i);
  return out;
}

struct RepeatedPair {
  TreeCursor outer;  // first occurrence of the variable on the path
  TreeCursor inner;  // second occurrence, strictly below the first
  int variable = -1;
};

// Walks root-to-leaf paths depth-first, left to right, and on the first
// path visiting two equally-labeled nodes returns the shallowest such
// pair: the lowest position that repeats any earlier label, paired with
// that label's first occurrence.
bool find_repeated(const ParseTree& node, std::vector<int>& labels,
                   std::vector<std::size_t>& steps, RepeatedPair& out) {
  if (!node.is_variable()) {
    for (std::size_t j = 1; j < labels.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (labels[i] != labels[j]) continue;
        out.outer.assign(steps.begin(), steps.begin() + i);
        out.inner.assign(steps.begin(), steps.begin() + j);
        out.variable = labels[i];
        return true;
      }
    }
    return false;
  }
  labels.push_back(node.symbol);
  for (std::size_t c = 0; c < node.children.size(); ++c) {
    steps.push_back(c);
    if (find_repeated(node.children[c], labels, steps, out)) return true;
    steps.pop_back();
  }
  labels.pop_back();
  return false;
}

std::optional<RepeatedPair> find_repeated(const ParseTree& t) {
  std::vector<int> labels;
  std::vector<std::size_t> steps;
  RepeatedPair out;
  if (find_repeated(t, labels, steps, out)) return out;
  return std::nullopt;
}

// Shallowest node labeled with the variable; leftmost among equally deep.
std::optional<TreeCursor> find_shallowest(const ParseTree& t, int variable) {
  std::deque<std::pair<TreeCursor, const ParseTree*>> queue;
  queue.emplace_back(TreeCursor{}, &t);
  while (!queue.empty()) {
    auto [path, node] = queue.front();
    queue.pop_front();
    if (node->is_variable() && node->symbol == variable) return path;
    for (std::size_t c = 0; c < node->children.size(); ++c) {
      TreeCursor next = path;
      next.push_back(c);
      queue.emplace_back(std::move(next), &node->children[c]);
    }
  }
  return std::nullopt;
}

}  // namespace

ParseTree compact(const Grammar& g, const ParseTree& t0) {
  if (!is_complete(t0)) throw std::invalid_argument("compact needs a complete tree");
  ParseTree t = t0;
  // Each pass through the loop that reaches the transplant moves at least
  // one node between children, so the node count bounds the iterations.
  const std::size_t guard = node_count(t) + 2;
  for (std::size_t iter = 0; !is_compact(t); ++iter) {
    if (iter > guard) throw std::logic_error("compaction failed to terminate");
    auto proper = proper_child_indices(t);
    if (proper.empty()) throw std::logic_error("non-compact tree without proper children");
    for (std::size_t ci : proper) t.children[ci] = compact(g, t.children[ci]);
    if (is_compact(t)) break;

    // x: the child with the most distinct variables (leftmost on ties);
    // y: a different child of maximal dimension.
    std::size_t x = proper.front();
    int best_k = -1;
    for (std::size_t ci : proper) {
      int k = count_variables(t.children[ci]);
      if (k > best_k) {
        best_k = k;
        x = ci;
      }
    }
    int best_d = -1;
    for (std::size_t ci : proper) best_d = std::max(best_d, dimension(t.children[ci]));
    std::size_t y = t.children.size();
    for (std::size_t ci : proper) {
      if (ci != x && dimension(t.children[ci]) == best_d) {
        y = ci;
        break;
      }
    }
    if (y == t.children.size())
      throw std::logic_error("maximal dimension attained only once in a non-compact tree");

    // When the transplant runs, the selection inequalities collapse to
    // equalities; any slack means the bookkeeping above is wrong.
    const int d_t = dimension(t);
    const int d_y = dimension(t.children[y]);
    const int k_y = count_variables(t.children[y]);
    const int k_x = count_variables(t.children[x]);
    const int k_t = count_variables(t);
    if (!(d_t == d_y + 1 && d_y == k_y && k_y == k_x && k_x == k_t))
      throw std::logic_error("compaction selection invariant violated");

    auto rep = find_repeated(t.children[y]);
    if (!rep) throw std::logic_error("no repeated variable on any path of the donor child");
    auto hole = find_shallowest(t.children[x], rep->variable);
    if (!hole) throw std::logic_error("donated variable missing from the receiving child");

    // Cut the segment between the two occurrences out of child y and wrap
    // it around the matching node of child x.
    TreeCursor rel(rep->inner.begin() + rep->outer.size(), rep->inner.end());
    const ParseTree& ty = t.children[y];
    ParseTree segment = subtree_at(ty, rep->outer);
    ParseTree below = subtree_at(segment, rel);
    segment = with_subtree(segment, rel, subtree_at(t.children[x], *hole));
    ParseTree new_ty = with_subtree(ty, rep->outer, std::move(below));
    ParseTree new_tx = with_subtree(t.children[x], *hole, std::move(segment));
    t.children[x] = std::move(new_tx);
    t.children[y] = std::move(new_ty);
  }
  return t;
}

namespace {

// Expands the subtree rooted at `offset` in the latest form of d until the
// occurrence is rewritten to its yield. Children of larger dimension are
// postponed, which is what keeps the index within dimension * degree + 1.
void derive_expanded(const Grammar& g, const ParseTree& t, Derivation& d,
                     std::ptrdiff_t offset) {
  const Production& p = g.productions.at(t.production);
  d.steps.push_back(DerivationStep{static_cast<std::size_t>(offset),
                                   static_cast<std::size_t>(t.production)});
  d.forms.push_back(apply_step(d.forms.back(), static_cast<std::size_t>(offset), p));
  if (p.rhs.empty()) return;

  struct Pending {
    const ParseTree* tree;
    std::ptrdiff_t pos;
    int dim;
  };
  std::vector<Pending> pending;
  for (std::size_t i = 0; i < p.rhs.size(); ++i) {
    if (!p.rhs[i].is_variable()) continue;
    pending.push_back(Pending{&t.children[i], offset + static_cast<std::ptrdiff_t>(i),
                              dimension(t.children[i])});
  }
  std::stable_sort(pending.begin(), pending.end(),
                   [](const Pending& a, const Pending& b) { return a.dim > b.dim; });

  for (std::size_t j = pending.size(); j-- > 0;) {
    derive_expanded(g, *pending[j].tree, d, pending[j].pos);
    const std::ptrdiff_t shift =
        static_cast<std::ptrdiff_t>(yield_of(*pending[j].tree).size()) - 1;
    for (std::size_t i = 0; i < j; ++i)
      if (pending[i].pos > pending[j].pos) pending[i].pos += shift;
  }
}

}  // namespace

Derivation tree_to_indexed_derivation(const Grammar& g, const ParseTree& t) {
  if (!t.is_expanded())
    throw std::invalid_argument("derivation needs a tree rooted at a variable");
  validate(g, t, false);
  Derivation d;
  d.forms.push_back(SententialForm{Symbol::variable(t.symbol)});
  derive_expanded(g, t, d, 0);
  return d;
}

ParseTree derivation_to_tree(const Grammar& g, const Derivation& dv) {
  validate(g, dv, false);
  const SententialForm& first = dv.forms.front();
  if (first.size() != 1 || !first[0].is_variable())
    throw std::invalid_argument("derivation must start at a single variable");
  for (Symbol s : dv.forms.back())
    if (s.is_variable())
      throw std::invalid_argument("derivation must end in a terminal word");

  ParseTree root = ParseTree::variable_leaf(first[0].id);
  std::vector<TreeCursor> slots = {TreeCursor{}};
  for (const auto& step : dv.steps) {
    const Production& p = g.productions.at(step.production);
    ParseTree& node = node_ref(root, slots.at(step.position));
    node.production = static_cast<int>(step.production);
    if (p.rhs.empty()) {
      node.children = {ParseTree::epsilon()};
    } else {
      for (Symbol s : p.rhs)
        node.children.push_back(s.is_variable() ? ParseTree::variable_leaf(s.id)
                                                : ParseTree::terminal(s.id));
    }
    std::vector<TreeCursor> next(slots.begin(), slots.begin() + step.position);
    for (std::size_t i = 0; i < p.rhs.size(); ++i) {
      TreeCursor c = slots[step.position];
      c.push_back(i);
      next.push_back(std::move(c));
    }
    next.insert(next.end(), slots.begin() + step.position + 1, slots.end());
    slots = std::move(next);
  }
  return root;
}

namespace {

void render_sexpr(const Grammar& g, const ParseTree& t, std::string& out) {
  switch (t.kind) {
    case ParseTree::Kind::Epsilon:
      out += "()";
      return;
    case ParseTree::Kind::Terminal:
      out += "\"" + g.terminals.at(t.symbol) + "\"";
      return;
    case ParseTree::Kind::Variable:
      out += "(" + g.variables.at(t.symbol);
      for (const auto& c : t.children) {
        out += " ";
        render_sexpr(g, c, out);
      }
      out += ")";
      return;
  }
}

struct SexprParser {
  const Grammar& g;
  std::string_view text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                 text[pos] == '\n' || text[pos] == '\r'))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("s-expression: " + what + " at offset " +
                                std::to_string(pos));
  }

  std::string ident() {
    std::size_t start = pos;
    while (pos < text.size() &&
           (isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected an identifier");
    return std::string(text.substr(start, pos - start));
  }

  ParseTree node() {
    skip_space();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '"') {
      ++pos;
      std::size_t start = pos;
      while (pos < text.size() && text[pos] != '"') ++pos;
      if (pos >= text.size()) fail("unterminated string");
      std::string name(text.substr(start, pos - start));
      ++pos;
      for (std::size_t id = 0; id < g.terminals.size(); ++id)
        if (g.terminals[id] == name) return ParseTree::terminal(static_cast<int>(id));
      fail("unknown terminal '" + name + "'");
    }
    if (text[pos] != '(') fail("expected '(' or a quoted terminal");
    ++pos;
    skip_space();
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      return ParseTree::epsilon();
    }
    std::string name = ident();
    int var = -1;
    for (std::size_t id = 0; id < g.variables.size(); ++id)
      if (g.variables[id] == name) var = static_cast<int>(id);
    if (var < 0) fail("unknown variable '" + name + "'");
    std::vector<ParseTree> children;
    while (true) {
      skip_space();
      if (pos >= text.size()) fail("unterminated node");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      children.push_back(node());
    }
    if (children.empty()) return ParseTree::variable_leaf(var);

    SententialForm rhs;
    bool epsilon_expansion =
        children.size() == 1 && children[0].kind == ParseTree::Kind::Epsilon;
    if (!epsilon_expansion) {
      for (const auto& c : children) {
        if (c.kind == ParseTree::Kind::Epsilon)
          fail("empty-word leaf must be an only child");
        rhs.push_back(c.is_variable() ? Symbol::variable(c.symbol)
                                      : Symbol::terminal(c.symbol));
      }
    }
    int production = -1;
    for (std::size_t i = 0; i < g.productions.size(); ++i)
      if (g.productions[i].lhs == var && g.productions[i].rhs == rhs)
        production = static_cast<int>(i);
    if (production < 0)
      fail("no production of " + name + " matches the children");
    ParseTree out = ParseTree::variable_leaf(var);
    out.production = production;
    out.children = std::move(children);
    return out;
  }
};

}  // namespace

std::string to_sexpr(const Grammar& g, const ParseTree& t) {
  std::string out;
  render_sexpr(g, t, out);
  return out;
}

ParseTree tree_from_sexpr(const Grammar& g, std::string_view text) {
  SexprParser parser{g, text};
  ParseTree t = parser.node();
  parser.skip_space();
  if (parser.pos != text.size())
    throw std::invalid_argument("s-expression: trailing input");
  validate(g, t, true);
  return t;
}

}  // namespace parikh
