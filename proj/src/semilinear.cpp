#include "parikh/semilinear.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace parikh {

using nlohmann::json;

RegexPtr re_empty() {
  static const RegexPtr instance = std::make_shared<Regex>(Regex{Regex::Kind::Empty});
  return instance;
}

RegexPtr re_epsilon() {
  static const RegexPtr instance = std::make_shared<Regex>(Regex{Regex::Kind::Epsilon});
  return instance;
}

RegexPtr re_letter(int id) {
  return std::make_shared<Regex>(Regex{Regex::Kind::Letter, id, nullptr, nullptr});
}

RegexPtr re_union(RegexPtr a, RegexPtr b) {
  if (a->kind == Regex::Kind::Empty) return b;
  if (b->kind == Regex::Kind::Empty) return a;
  if (a->kind == Regex::Kind::Epsilon && b->kind == Regex::Kind::Epsilon) return a;
  return std::make_shared<Regex>(Regex{Regex::Kind::Union, -1, std::move(a), std::move(b)});
}

RegexPtr re_concat(RegexPtr a, RegexPtr b) {
  if (a->kind == Regex::Kind::Empty || b->kind == Regex::Kind::Empty) return re_empty();
  if (a->kind == Regex::Kind::Epsilon) return b;
  if (b->kind == Regex::Kind::Epsilon) return a;
  return std::make_shared<Regex>(Regex{Regex::Kind::Concat, -1, std::move(a), std::move(b)});
}

RegexPtr re_star(RegexPtr a) {
  if (a->kind == Regex::Kind::Empty || a->kind == Regex::Kind::Epsilon)
    return re_epsilon();
  if (a->kind == Regex::Kind::Star) return a;
  return std::make_shared<Regex>(Regex{Regex::Kind::Star, -1, std::move(a), nullptr});
}

std::string to_string(const Regex& r, const std::vector<std::string>& terminals) {
  switch (r.kind) {
    case Regex::Kind::Empty:
      return "{}";
    case Regex::Kind::Epsilon:
      return "eps";
    case Regex::Kind::Letter:
      return terminals.at(r.letter);
    case Regex::Kind::Union:
      return "(" + to_string(*r.left, terminals) + "|" + to_string(*r.right, terminals) + ")";
    case Regex::Kind::Concat:
      return to_string(*r.left, terminals) + to_string(*r.right, terminals);
    case Regex::Kind::Star:
      return "(" + to_string(*r.left, terminals) + ")*";
  }
  return "{}";
}

RegexPtr eliminate_to_regex(const LetterNFA& m) {
  const std::size_t n = m.state_count();
  const std::size_t start = n, accept = n + 1;
  std::map<std::pair<std::size_t, std::size_t>, RegexPtr> edge;
  auto add = [&](std::size_t u, std::size_t v, RegexPtr r) {
    auto it = edge.find({u, v});
    if (it == edge.end())
      edge.emplace(std::pair{u, v}, std::move(r));
    else
      it->second = re_union(it->second, std::move(r));
  };
  for (const auto& e : m.edges) add(e.source, e.target, re_letter(e.letter));
  add(start, m.initial, re_epsilon());
  for (std::size_t f : m.finals) add(f, accept, re_epsilon());

  // Elimination order: intermediates in creation order, then original
  // states by descending total degree in the input automaton, ties by
  // state order.
  std::vector<int> deg(n, 0);
  for (const auto& e : m.edges) {
    ++deg[e.source];
    ++deg[e.target];
  }
  std::vector<std::size_t> order;
  for (std::size_t id = m.original_states.size(); id < n; ++id) order.push_back(id);
  std::vector<std::size_t> originals;
  for (std::size_t id = 0; id < m.original_states.size(); ++id) originals.push_back(id);
  std::stable_sort(originals.begin(), originals.end(),
                   [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
  order.insert(order.end(), originals.begin(), originals.end());

  for (std::size_t victim : order) {
    RegexPtr loop = re_empty();
    if (auto it = edge.find({victim, victim}); it != edge.end()) {
      loop = it->second;
      edge.erase(it);
    }
    RegexPtr loop_star = re_star(loop);
    std::vector<std::pair<std::size_t, RegexPtr>> in, out;
    for (auto it = edge.begin(); it != edge.end();) {
      if (it->first.second == victim) {
        in.emplace_back(it->first.first, it->second);
        it = edge.erase(it);
      } else if (it->first.first == victim) {
        out.emplace_back(it->first.second, it->second);
        it = edge.erase(it);
      } else {
        ++it;
      }
    }
    for (const auto& [p, rin] : in)
      for (const auto& [q, rout] : out)
        add(p, q, re_concat(rin, re_concat(loop_star, rout)));
  }

  auto it = edge.find({start, accept});
  return it == edge.end() ? re_empty() : it->second;
}

namespace {

LinearSet make_linear(TermVector offset, std::vector<TermVector> periods) {
  std::sort(periods.begin(), periods.end());
  periods.erase(std::unique(periods.begin(), periods.end()), periods.end());
  std::erase_if(periods, [](const TermVector& p) { return p.is_zero(); });
  return LinearSet{std::move(offset), std::move(periods)};
}

SemilinearSet sl_union(SemilinearSet a, const SemilinearSet& b) {
  a.components.insert(a.components.end(), b.components.begin(), b.components.end());
  return a;
}

SemilinearSet sl_concat(const SemilinearSet& a, const SemilinearSet& b) {
  SemilinearSet out;
  for (const auto& x : a.components) {
    for (const auto& y : b.components) {
      std::vector<TermVector> periods = x.periods;
      periods.insert(periods.end(), y.periods.begin(), y.periods.end());
      out.components.push_back(make_linear(x.offset + y.offset, std::move(periods)));
    }
  }
  return out;
}

SemilinearSet sl_star(const SemilinearSet& a, std::size_t dim,
                      const ExtractionLimits& limits) {
  const std::size_t m = a.components.size();
  if (m > static_cast<std::size_t>(limits.max_star_width))
    throw LimitExceeded("star width", static_cast<long long>(m), limits.max_star_width);
  SemilinearSet out;
  out.components.push_back(make_linear(TermVector(dim), {}));
  // One component per nonempty subset: its offsets add up once and repeat
  // as periods together with the member periods.
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    TermVector offset(dim);
    std::vector<TermVector> periods;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask & (std::size_t{1} << i))) continue;
      offset += a.components[i].offset;
      periods.push_back(a.components[i].offset);
      periods.insert(periods.end(), a.components[i].periods.begin(),
                     a.components[i].periods.end());
    }
    out.components.push_back(make_linear(std::move(offset), std::move(periods)));
  }
  return out;
}

}  // namespace

SemilinearSet regex_parikh(const Regex& r, std::size_t dim,
                           const ExtractionLimits& limits) {
  switch (r.kind) {
    case Regex::Kind::Empty:
      return {};
    case Regex::Kind::Epsilon:
      return SemilinearSet{{make_linear(TermVector(dim), {})}};
    case Regex::Kind::Letter: {
      return SemilinearSet{{make_linear(TermVector::unit(dim, r.letter), {})}};
    }
    case Regex::Kind::Union:
      return normalize(sl_union(regex_parikh(*r.left, dim, limits),
                                regex_parikh(*r.right, dim, limits)));
    case Regex::Kind::Concat:
      return normalize(sl_concat(regex_parikh(*r.left, dim, limits),
                                 regex_parikh(*r.right, dim, limits)));
    case Regex::Kind::Star:
      return normalize(sl_star(regex_parikh(*r.left, dim, limits), dim, limits));
  }
  return {};
}

SemilinearSet normalize(const SemilinearSet& s) {
  std::vector<LinearSet> components;
  for (const auto& c : s.components)
    components.push_back(make_linear(c.offset, c.periods));
  std::sort(components.begin(), components.end());
  components.erase(std::unique(components.begin(), components.end()), components.end());

  // Drop a component when a sibling with the same offset has a superset of
  // its periods.
  std::vector<LinearSet> kept;
  for (std::size_t i = 0; i < components.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < components.size() && !subsumed; ++j) {
      if (i == j || components[i].offset != components[j].offset) continue;
      if (components[i].periods.size() > components[j].periods.size()) continue;
      if (components[i] == components[j]) continue;
      subsumed = std::includes(components[j].periods.begin(), components[j].periods.end(),
                               components[i].periods.begin(), components[i].periods.end());
    }
    if (!subsumed) kept.push_back(components[i]);
  }
  return SemilinearSet{std::move(kept)};
}

namespace {

bool linear_member(const LinearSet& c, const TermVector& v) {
  if (v.size() != c.offset.size()) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] < c.offset[i]) return false;
  TermVector residual = v - c.offset;

  // DFS over multiplicities; each period's multiplier is capped by the
  // residual coordinates it consumes.
  auto rec = [&](auto&& self, std::size_t idx, TermVector rem) -> bool {
    if (rem.is_zero()) return true;
    if (idx == c.periods.size()) return false;
    for (std::size_t coord = 0; coord < rem.size(); ++coord) {
      if (rem[coord] == 0) continue;
      bool covered = false;
      for (std::size_t j = idx; j < c.periods.size(); ++j)
        if (c.periods[j][coord] > 0) covered = true;
      if (!covered) return false;
    }
    const TermVector& p = c.periods[idx];
    int cap = -1;
    for (std::size_t coord = 0; coord < rem.size(); ++coord) {
      if (p[coord] == 0) continue;
      int q = rem[coord] / p[coord];
      cap = cap < 0 ? q : std::min(cap, q);
    }
    for (int lambda = 0; lambda <= cap; ++lambda) {
      TermVector next = rem;
      bool ok = true;
      for (std::size_t coord = 0; coord < next.size(); ++coord) {
        next[coord] -= lambda * p[coord];
        if (next[coord] < 0) ok = false;
      }
      if (ok && self(self, idx + 1, std::move(next))) return true;
    }
    return false;
  };
  return rec(rec, 0, std::move(residual));
}

}  // namespace

bool slset_member(const SemilinearSet& s, const TermVector& v) {
  return std::any_of(s.components.begin(), s.components.end(),
                     [&](const LinearSet& c) { return linear_member(c, v); });
}

std::set<TermVector> slset_truncate(const SemilinearSet& s, int bound) {
  if (bound < 0) throw std::invalid_argument("truncation bound must be >= 0");
  std::set<TermVector> out;
  for (const auto& c : s.components) {
    if (c.offset.sum() > bound) continue;
    std::set<TermVector> seen{c.offset};
    std::vector<TermVector> work{c.offset};
    while (!work.empty()) {
      TermVector v = std::move(work.back());
      work.pop_back();
      for (const auto& p : c.periods) {
        TermVector next = v + p;
        if (next.sum() > bound) continue;
        if (seen.insert(next).second) work.push_back(std::move(next));
      }
    }
    out.insert(seen.begin(), seen.end());
  }
  return out;
}

WordNFA trim_useful(const WordNFA& m) {
  std::set<VarVector> reach{m.initial};
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : m.transitions)
      if (reach.count(t.source) && reach.insert(t.target).second) changed = true;
  }
  std::set<VarVector> coreach(m.finals.begin(), m.finals.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : m.transitions)
      if (coreach.count(t.target) && coreach.insert(t.source).second) changed = true;
  }

  WordNFA out;
  out.variables = m.variables;
  out.terminals = m.terminals;
  out.k = m.k;
  auto useful = [&](const VarVector& q) { return reach.count(q) && coreach.count(q); };
  for (const auto& q : m.states)
    if (useful(q)) out.states.push_back(q);
  for (const auto& t : m.transitions)
    if (useful(t.source) && useful(t.target)) out.transitions.push_back(t);
  out.initial = m.initial;
  for (const auto& q : m.finals)
    if (useful(q)) out.finals.push_back(q);
  // An automaton with an empty language keeps its initial state so that
  // it stays structurally valid.
  if (!useful(m.initial)) {
    out.states = {m.initial};
    out.transitions.clear();
    out.finals.clear();
  }
  return out;
}

namespace {

// Restriction of the letter NFA to states on accepting paths, reindexed.
LetterNFA trim_letter(const LetterNFA& m) {
  const std::size_t n = m.state_count();
  std::vector<bool> reach(n, false), coreach(n, false);
  reach[m.initial] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : m.edges)
      if (reach[e.source] && !reach[e.target]) reach[e.target] = changed = true;
  }
  for (std::size_t f : m.finals) coreach[f] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : m.edges)
      if (coreach[e.target] && !coreach[e.source]) coreach[e.source] = changed = true;
  }

  std::vector<std::size_t> new_id(n, n);
  LetterNFA out;
  out.terminals = m.terminals;
  for (std::size_t id = 0; id < m.original_states.size(); ++id) {
    if (!(reach[id] && coreach[id]) && id != m.initial) continue;
    new_id[id] = out.original_states.size();
    out.original_states.push_back(m.original_states[id]);
  }
  for (std::size_t id = m.original_states.size(); id < n; ++id) {
    if (!(reach[id] && coreach[id])) continue;
    new_id[id] = out.original_states.size() + out.intermediates.size();
    out.intermediates.push_back(m.intermediates[id - m.original_states.size()]);
  }
  // Intermediate ids must stay above the originals; the two loops above
  // preserve that because originals are assigned first.
  for (const auto& e : m.edges) {
    if (new_id[e.source] == n || new_id[e.target] == n) continue;
    if (!(reach[e.source] && coreach[e.source] && reach[e.target] && coreach[e.target]))
      continue;
    out.edges.push_back(LetterNFA::Edge{new_id[e.source], e.letter, new_id[e.target]});
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.initial = new_id[m.initial];
  for (std::size_t f : m.finals)
    if (new_id[f] != n && reach[f] && coreach[f]) out.finals.insert(new_id[f]);
  return out;
}

}  // namespace

SemilinearSet nfa_parikh(const WordNFA& m, const ExtractionLimits& limits) {
  WordNFA trimmed = trim_useful(m);
  LetterNFA letter = trim_letter(to_letter_nfa(trimmed));
  if (letter.original_states.size() > static_cast<std::size_t>(limits.max_states))
    throw LimitExceeded("states", static_cast<long long>(letter.original_states.size()),
                        limits.max_states);
  if (letter.edges.size() > static_cast<std::size_t>(limits.max_transitions))
    throw LimitExceeded("transitions", static_cast<long long>(letter.edges.size()),
                        limits.max_transitions);
  RegexPtr regex = eliminate_to_regex(letter);
  return normalize(regex_parikh(*regex, m.terminals.size(), limits));
}

ToBoundReport to_bound_report(const Grammar& g) {
  ToBoundReport r;
  r.n = static_cast<int>(g.variable_count());
  r.d = g.productions.empty() ? 0 : std::max(degree(g), 0);
  r.t = static_cast<int>(g.terminal_count());
  r.p = 0;
  for (const auto& p : g.productions)
    for (Symbol s : p.rhs)
      if (s.is_terminal()) ++r.p;
  r.s = state_count(r.n, r.n * r.d + 1) * r.p;
  r.ell = r.t;
  r.degenerate = (r.s == 0 || r.ell == 0);
  const unsigned ell = static_cast<unsigned>(r.ell);
  const bigint ell_big = r.ell;
  using boost::multiprecision::pow;
  r.linear_set_count_bound = pow(r.s, ell * ell + 3 * ell + 3) * pow(ell_big, 4 * ell + 6);
  r.max_offset_entry_bound = pow(r.s, 3 * ell + 3) * pow(ell_big, 4 * ell + 6);
  r.max_period_entry_bound = r.s;
  return r;
}

json to_json(const SemilinearSet& s) {
  SemilinearSet sorted = normalize(s);
  json components = json::array();
  for (const auto& c : sorted.components) {
    json comp;
    comp["offset"] = c.offset.counts;
    json periods = json::array();
    for (const auto& p : c.periods) periods.push_back(p.counts);
    comp["periods"] = periods;
    components.push_back(comp);
  }
  json j;
  j["components"] = components;
  return j;
}

SemilinearSet semilinear_from_json(const json& j) {
  SemilinearSet s;
  for (const auto& comp : j.at("components")) {
    LinearSet c;
    c.offset.counts = comp.at("offset").get<std::vector<int>>();
    for (const auto& p : comp.at("periods")) {
      TermVector period;
      period.counts = p.get<std::vector<int>>();
      c.periods.push_back(std::move(period));
    }
    s.components.push_back(make_linear(c.offset, c.periods));
  }
  return normalize(s);
}

json to_json(const ToBoundReport& r) {
  json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["t"] = r.t;
  j["p"] = r.p;
  j["s"] = r.s.str();
  j["ell"] = r.ell;
  j["linear_set_count_bound"] = r.linear_set_count_bound.str();
  j["max_offset_entry_bound"] = r.max_offset_entry_bound.str();
  j["max_period_entry_bound"] = r.max_period_entry_bound.str();
  j["degenerate"] = r.degenerate;
  j["note"] = "count and offset bounds are the formula values with the asymptotic constant taken as 1";
  return j;
}

}  // namespace parikh
