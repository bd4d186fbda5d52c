#include "parikh/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace parikh {

using nlohmann::json;

ParikhSnapshot grammar_parikh(const Grammar& g, int bound) {
  if (bound < 0) throw std::invalid_argument("snapshot bound must be >= 0");
  std::vector<std::set<TermVector>> derived(g.variable_count());

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      TermVector base = parikh_t(g, p.rhs);
      if (base.sum() > bound) continue;
      std::vector<int> vars;
      for (Symbol s : p.rhs)
        if (s.is_variable()) vars.push_back(s.id);

      // All combinations of already-derived vectors for the occurrences,
      // pruned as soon as the running sum leaves the bound.
      auto rec = [&](auto&& self, std::size_t idx, TermVector acc) -> void {
        if (acc.sum() > bound) return;
        if (idx == vars.size()) {
          if (derived[p.lhs].insert(std::move(acc)).second) changed = true;
          return;
        }
        for (const auto& v : derived[vars[idx]]) self(self, idx + 1, acc + v);
      };
      rec(rec, 0, std::move(base));
    }
  }

  ParikhSnapshot snap;
  snap.vectors = derived[g.axiom];
  snap.bound = bound;
  snap.source = SnapshotSource::Grammar;
  return snap;
}

ParikhSnapshot indexed_grammar_parikh(const Grammar& g, int k, int bound) {
  if (k < 1) throw std::invalid_argument("index bound must be >= 1");
  if (bound < 0) throw std::invalid_argument("snapshot bound must be >= 0");

  ParikhSnapshot snap;
  snap.bound = bound;
  snap.source = SnapshotSource::IndexedGrammar;
  snap.k = k;

  SententialForm start{Symbol::variable(g.axiom)};
  std::set<SententialForm> seen{start};
  std::deque<SententialForm> work{start};
  while (!work.empty()) {
    SententialForm form = std::move(work.front());
    work.pop_front();
    bool terminal_only = true;
    for (std::size_t pos = 0; pos < form.size(); ++pos) {
      if (!form[pos].is_variable()) continue;
      terminal_only = false;
      for (const auto& p : g.productions) {
        if (p.lhs != form[pos].id) continue;
        SententialForm next = apply_step(form, pos, p);
        int vars = 0, terms = 0;
        for (Symbol s : next) (s.is_variable() ? vars : terms)++;
        if (vars > k || terms > bound) continue;
        if (seen.insert(next).second) work.push_back(std::move(next));
      }
    }
    if (terminal_only) snap.vectors.insert(parikh_t(g, form));
  }
  return snap;
}

ParikhSnapshot automaton_snapshot(const WordNFA& m, int bound) {
  ParikhSnapshot snap;
  snap.vectors = truncated_parikh_image(m, bound);
  snap.bound = bound;
  snap.source = SnapshotSource::Automaton;
  snap.k = m.k;
  return snap;
}

CheckReport compare_snapshots(ParikhSnapshot left, ParikhSnapshot right,
                              CheckReport::Relation relation) {
  CheckReport report;
  report.relation = relation;
  std::set_difference(left.vectors.begin(), left.vectors.end(), right.vectors.begin(),
                      right.vectors.end(), std::back_inserter(report.left_only));
  if (relation == CheckReport::Relation::Equality)
    std::set_difference(right.vectors.begin(), right.vectors.end(), left.vectors.begin(),
                        left.vectors.end(), std::back_inserter(report.right_only));
  report.holds = report.left_only.empty() && report.right_only.empty();
  report.left = std::move(left);
  report.right = std::move(right);
  return report;
}

CheckReport check_theorem1(const Grammar& g, int bound) {
  WordNFA m = build_parikh_automaton(g, default_k(g));
  return compare_snapshots(grammar_parikh(g, bound), automaton_snapshot(m, bound),
                           CheckReport::Relation::Equality);
}

CheckReport check_indexed_equivalence(const Grammar& g, int k, int bound) {
  WordNFA m = build_parikh_automaton(g, k);
  return compare_snapshots(indexed_grammar_parikh(g, k, bound),
                           automaton_snapshot(m, bound),
                           CheckReport::Relation::Equality);
}

CheckReport check_collapse(const Grammar& g, int bound) {
  return compare_snapshots(grammar_parikh(g, bound),
                           indexed_grammar_parikh(g, default_k(g), bound),
                           CheckReport::Relation::Inclusion);
}

namespace {

json snapshot_json(const ParikhSnapshot& s) {
  json j;
  switch (s.source) {
    case SnapshotSource::Grammar:
      j["source"] = "grammar";
      break;
    case SnapshotSource::IndexedGrammar:
      j["source"] = "indexed-grammar";
      j["k"] = s.k;
      break;
    case SnapshotSource::Automaton:
      j["source"] = "automaton";
      j["k"] = s.k;
      break;
  }
  j["bound"] = s.bound;
  j["size"] = s.vectors.size();
  return j;
}

json witness_json(const std::vector<TermVector>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(v.counts);
  return arr;
}

}  // namespace

json to_json(const CheckReport& r) {
  json j;
  j["relation"] = r.relation == CheckReport::Relation::Equality ? "equality" : "inclusion";
  j["left"] = snapshot_json(r.left);
  j["right"] = snapshot_json(r.right);
  j["holds"] = r.holds;
  j["witnesses"]["left_only"] = witness_json(r.left_only);
  j["witnesses"]["right_only"] = witness_json(r.right_only);
  return j;
}

}  // namespace parikh
