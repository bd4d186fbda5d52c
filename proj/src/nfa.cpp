#include "parikh/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace parikh {

using nlohmann::json;

std::string LetterNFA::state_name(std::size_t id) const {
  if (id < original_states.size()) return to_string(original_states[id]);
  return "i" + std::to_string(id - original_states.size());
}

namespace {

std::map<VarVector, std::size_t> index_states(const std::vector<VarVector>& states) {
  std::map<VarVector, std::size_t> index;
  for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i], i);
  return index;
}

/// Reflexive-transitive closure over the empty-word transitions.
std::vector<std::set<std::size_t>> epsilon_closure(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& eps_edges) {
  std::vector<std::set<std::size_t>> closure(n);
  for (std::size_t s = 0; s < n; ++s) closure[s].insert(s);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [from, to] : eps_edges) {
      for (std::size_t s = 0; s < n; ++s) {
        if (!closure[s].count(from)) continue;
        if (closure[s].insert(to).second) changed = true;
      }
    }
  }
  return closure;
}

struct FlatNFA {
  std::size_t states = 0;
  std::size_t dim = 0;  // terminal alphabet size
  std::size_t initial = 0;
  std::vector<bool> final_state;
  // Edges carry the Parikh increment of their label.
  std::vector<std::tuple<std::size_t, TermVector, std::size_t>> edges;
};

TermVector word_counts(std::size_t dim, const TerminalWord& word) {
  TermVector v(dim);
  for (int id : word) ++v[id];
  return v;
}

FlatNFA flatten(const WordNFA& m) {
  FlatNFA f;
  auto index = index_states(m.states);
  f.states = m.states.size();
  f.dim = m.terminals.size();
  f.initial = index.at(m.initial);
  f.final_state.assign(f.states, false);
  for (const auto& q : m.finals) f.final_state[index.at(q)] = true;
  for (const auto& t : m.transitions)
    f.edges.emplace_back(index.at(t.source), word_counts(f.dim, t.label),
                         index.at(t.target));
  return f;
}

FlatNFA flatten(const LetterNFA& m) {
  FlatNFA f;
  f.states = m.state_count();
  f.dim = m.terminals.size();
  f.initial = m.initial;
  f.final_state.assign(f.states, false);
  for (std::size_t q : m.finals) f.final_state[q] = true;
  for (const auto& e : m.edges) {
    TermVector delta(m.terminals.size());
    ++delta[e.letter];
    f.edges.emplace_back(e.source, delta, e.target);
  }
  return f;
}

std::set<TermVector> truncated_image(const FlatNFA& m, int bound) {
  if (bound < 0) throw std::invalid_argument("truncation bound must be >= 0");
  std::vector<std::vector<std::pair<TermVector, std::size_t>>> out(m.states);
  for (const auto& [s, delta, t] : m.edges) out[s].emplace_back(delta, t);

  std::set<std::pair<std::size_t, TermVector>> seen;
  std::deque<std::pair<std::size_t, TermVector>> work;
  std::pair<std::size_t, TermVector> start{m.initial, TermVector(m.dim)};
  seen.insert(start);
  work.push_back(start);
  std::set<TermVector> image;
  while (!work.empty()) {
    auto [state, vec] = work.front();
    work.pop_front();
    if (m.final_state[state]) image.insert(vec);
    for (const auto& [delta, target] : out[state]) {
      TermVector next = vec + delta;
      if (next.sum() > bound) continue;
      std::pair<std::size_t, TermVector> pair{target, std::move(next)};
      if (seen.insert(pair).second) work.push_back(std::move(pair));
    }
  }
  return image;
}

}  // namespace

LetterNFA to_letter_nfa(const WordNFA& m) {
  auto index = index_states(m.states);

  // Empty-word removal first, on the word level, so that splitting
  // afterwards gives every intermediate exactly one incoming and one
  // outgoing edge.
  std::vector<std::pair<std::size_t, std::size_t>> eps_edges;
  for (const auto& t : m.transitions)
    if (t.label.empty()) eps_edges.emplace_back(index.at(t.source), index.at(t.target));
  auto closure = epsilon_closure(m.states.size(), eps_edges);

  std::set<Transition> word_edges;
  std::set<std::size_t> final_ids;
  for (const auto& q : m.finals) final_ids.insert(index.at(q));
  LetterNFA out;
  out.terminals = m.terminals;
  out.original_states = m.states;
  out.initial = index.at(m.initial);
  for (std::size_t s = 0; s < m.states.size(); ++s) {
    for (std::size_t u : closure[s]) {
      if (final_ids.count(u)) out.finals.insert(s);
      for (const auto& t : m.transitions) {
        if (t.label.empty() || index.at(t.source) != u) continue;
        word_edges.insert(Transition{m.states[s], t.label, t.target});
      }
    }
  }

  std::set<LetterNFA::Edge> edges;
  for (const auto& t : word_edges) {
    std::size_t source = index.at(t.source);
    const std::size_t target = index.at(t.target);
    for (std::size_t i = 0; i + 1 < t.label.size(); ++i) {
      std::size_t fresh = out.state_count();
      out.intermediates.push_back(
          LetterNFA::Intermediate{t, static_cast<int>(i + 1)});
      edges.insert(LetterNFA::Edge{source, t.label[i], fresh});
      source = fresh;
    }
    edges.insert(LetterNFA::Edge{source, t.label.back(), target});
  }
  out.edges.assign(edges.begin(), edges.end());
  return out;
}

std::set<TermVector> truncated_parikh_image(const WordNFA& m, int bound) {
  return truncated_image(flatten(m), bound);
}

std::set<TermVector> truncated_parikh_image(const LetterNFA& m, int bound) {
  return truncated_image(flatten(m), bound);
}

namespace {

std::set<TerminalWord> enumerate_words_flat(
    std::size_t states, std::size_t initial, const std::vector<bool>& final_state,
    const std::vector<std::tuple<std::size_t, TerminalWord, std::size_t>>& edges,
    int max_len) {
  std::set<std::pair<std::size_t, TerminalWord>> seen;
  std::deque<std::pair<std::size_t, TerminalWord>> work;
  std::pair<std::size_t, TerminalWord> start{initial, {}};
  seen.insert(start);
  work.push_back(start);
  std::set<TerminalWord> words;
  while (!work.empty()) {
    auto [state, word] = work.front();
    work.pop_front();
    if (final_state[state]) words.insert(word);
    for (const auto& [s, label, t] : edges) {
      if (s != state) continue;
      if (word.size() + label.size() > static_cast<std::size_t>(max_len)) continue;
      TerminalWord next = word;
      next.insert(next.end(), label.begin(), label.end());
      std::pair<std::size_t, TerminalWord> pair{t, std::move(next)};
      if (seen.insert(pair).second) work.push_back(std::move(pair));
    }
  }
  return words;
}

}  // namespace

std::set<TerminalWord> enumerate_words(const WordNFA& m, int max_len) {
  auto index = index_states(m.states);
  std::vector<bool> final_state(m.states.size(), false);
  for (const auto& q : m.finals) final_state[index.at(q)] = true;
  std::vector<std::tuple<std::size_t, TerminalWord, std::size_t>> edges;
  for (const auto& t : m.transitions)
    edges.emplace_back(index.at(t.source), t.label, index.at(t.target));
  return enumerate_words_flat(m.states.size(), index.at(m.initial), final_state, edges,
                              max_len);
}

std::set<TerminalWord> enumerate_words(const LetterNFA& m, int max_len) {
  std::vector<bool> final_state(m.state_count(), false);
  for (std::size_t q : m.finals) final_state[q] = true;
  std::vector<std::tuple<std::size_t, TerminalWord, std::size_t>> edges;
  for (const auto& e : m.edges)
    edges.emplace_back(e.source, TerminalWord{e.letter}, e.target);
  return enumerate_words_flat(m.state_count(), m.initial, final_state, edges, max_len);
}

std::string label_string(const std::vector<std::string>& terminals,
                         const TerminalWord& word) {
  std::string out;
  for (int id : word) out += terminals.at(id);
  return out;
}

TerminalWord parse_label(const std::vector<std::string>& terminals,
                         const std::string& text) {
  const std::size_t len = text.size();
  // ways[i]: number of segmentations of text[i:], capped at 2.
  std::vector<int> ways(len + 1, 0);
  ways[len] = 1;
  for (std::size_t i = len; i-- > 0;) {
    for (const auto& name : terminals) {
      if (i + name.size() <= len && text.compare(i, name.size(), name) == 0)
        ways[i] = std::min(2, ways[i] + ways[i + name.size()]);
    }
  }
  if (ways[0] == 0)
    throw std::invalid_argument("label '" + text + "' is not a word over the terminals");
  if (ways[0] > 1)
    throw std::invalid_argument("label '" + text + "' tokenizes ambiguously");
  TerminalWord word;
  std::size_t i = 0;
  while (i < len) {
    for (std::size_t id = 0; id < terminals.size(); ++id) {
      const auto& name = terminals[id];
      if (i + name.size() <= len && text.compare(i, name.size(), name) == 0 &&
          ways[i + name.size()] > 0) {
        word.push_back(static_cast<int>(id));
        i += name.size();
        break;
      }
    }
  }
  return word;
}

namespace {

std::string dot_quote(const std::string& s) { return "\"" + s + "\""; }

std::string dot_label(const std::vector<std::string>& terminals, const TerminalWord& w) {
  return w.empty() ? "eps" : label_string(terminals, w);
}

}  // namespace

std::string export_dot(const WordNFA& m) {
  std::string out = "digraph {\n  rankdir=LR;\n  node [shape=circle];\n";
  out += "  __start [shape=point];\n";
  std::set<VarVector> final_set(m.finals.begin(), m.finals.end());
  for (const auto& q : m.states) {
    out += "  " + dot_quote(to_string(q));
    if (final_set.count(q)) out += " [shape=doublecircle]";
    out += ";\n";
  }
  out += "  __start -> " + dot_quote(to_string(m.initial)) + ";\n";
  std::vector<std::tuple<std::string, std::string, std::string>> lines;
  for (const auto& t : m.transitions)
    lines.emplace_back(to_string(t.source), dot_label(m.terminals, t.label),
                       to_string(t.target));
  std::sort(lines.begin(), lines.end());
  for (const auto& [s, l, t] : lines)
    out += "  " + dot_quote(s) + " -> " + dot_quote(t) + " [label=" + dot_quote(l) + "];\n";
  out += "}\n";
  return out;
}

std::string export_dot(const LetterNFA& m) {
  std::string out = "digraph {\n  rankdir=LR;\n  node [shape=circle];\n";
  out += "  __start [shape=point];\n";
  for (std::size_t id = 0; id < m.state_count(); ++id) {
    out += "  " + dot_quote(m.state_name(id));
    if (m.finals.count(id)) out += " [shape=doublecircle]";
    out += ";\n";
  }
  out += "  __start -> " + dot_quote(m.state_name(m.initial)) + ";\n";
  for (const auto& e : m.edges)
    out += "  " + dot_quote(m.state_name(e.source)) + " -> " +
           dot_quote(m.state_name(e.target)) + " [label=" +
           dot_quote(m.terminals.at(e.letter)) + "];\n";
  out += "}\n";
  return out;
}

namespace {

json vector_to_json(const std::vector<int>& counts) { return json(counts); }

template <typename Tag>
json vec_json(const CountVector<Tag>& v) {
  return vector_to_json(v.counts);
}

template <typename Tag>
CountVector<Tag> vec_from_json(const json& j) {
  CountVector<Tag> v;
  v.counts = j.get<std::vector<int>>();
  return v;
}

}  // namespace

json to_json(const WordNFA& m) {
  json j;
  j["variables"] = m.variables;
  j["terminals"] = m.terminals;
  j["k"] = m.k;
  auto sorted_states = m.states;
  std::sort(sorted_states.begin(), sorted_states.end());
  json states = json::array();
  for (const auto& q : sorted_states) states.push_back(vec_json(q));
  j["states"] = states;
  j["initial"] = vec_json(m.initial);
  auto sorted_finals = m.finals;
  std::sort(sorted_finals.begin(), sorted_finals.end());
  json finals = json::array();
  for (const auto& q : sorted_finals) finals.push_back(vec_json(q));
  j["finals"] = finals;
  std::vector<std::tuple<std::vector<int>, std::string, std::vector<int>>> rows;
  for (const auto& t : m.transitions)
    rows.emplace_back(t.source.counts, label_string(m.terminals, t.label),
                      t.target.counts);
  std::sort(rows.begin(), rows.end());
  json transitions = json::array();
  for (const auto& [s, l, t] : rows) transitions.push_back(json::array({s, l, t}));
  j["transitions"] = transitions;
  return j;
}

WordNFA word_nfa_from_json(const json& j) {
  WordNFA m;
  m.variables = j.at("variables").get<std::vector<std::string>>();
  m.terminals = j.at("terminals").get<std::vector<std::string>>();
  m.k = j.at("k").get<int>();
  for (const auto& q : j.at("states")) m.states.push_back(vec_from_json<VarDim>(q));
  m.initial = vec_from_json<VarDim>(j.at("initial"));
  for (const auto& q : j.at("finals")) m.finals.push_back(vec_from_json<VarDim>(q));
  std::set<Transition> transitions;
  for (const auto& row : j.at("transitions")) {
    if (!row.is_array() || row.size() != 3)
      throw std::invalid_argument("transition row must be [source, label, target]");
    transitions.insert(Transition{vec_from_json<VarDim>(row[0]),
                                  parse_label(m.terminals, row[1].get<std::string>()),
                                  vec_from_json<VarDim>(row[2])});
  }
  m.transitions.assign(transitions.begin(), transitions.end());
  std::sort(m.states.begin(), m.states.end());
  return m;
}

json to_json(const LetterNFA& m) {
  json j;
  j["terminals"] = m.terminals;
  json states = json::array();
  for (const auto& q : m.original_states) states.push_back(vec_json(q));
  j["states"] = states;
  json inter = json::array();
  for (std::size_t i = 0; i < m.intermediates.size(); ++i) {
    const auto& im = m.intermediates[i];
    json row;
    row["name"] = "i" + std::to_string(i);
    row["origin"] = json::array({vec_json(im.origin.source),
                                 label_string(m.terminals, im.origin.label),
                                 vec_json(im.origin.target)});
    row["position"] = im.position;
    inter.push_back(row);
  }
  j["intermediates"] = inter;
  j["initial"] = m.state_name(m.initial);
  json finals = json::array();
  for (std::size_t q : m.finals) finals.push_back(m.state_name(q));
  j["finals"] = finals;
  json edges = json::array();
  for (const auto& e : m.edges)
    edges.push_back(json::array(
        {m.state_name(e.source), m.terminals.at(e.letter), m.state_name(e.target)}));
  j["transitions"] = edges;
  return j;
}

}  // namespace parikh
