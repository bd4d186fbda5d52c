#ifndef PARIKH_ORACLE_HPP
#define PARIKH_ORACLE_HPP

#include <set>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "parikh/automaton.hpp"
#include "parikh/nfa.hpp"

namespace parikh {

enum class SnapshotSource { Grammar, IndexedGrammar, Automaton };

/// Truncated Parikh image together with where it came from. Snapshots from
/// different sources are compared by their vector sets alone.
struct ParikhSnapshot {
  std::set<TermVector> vectors;
  int bound = 0;
  SnapshotSource source = SnapshotSource::Grammar;
  int k = 0;  // automaton or index bound; unused for plain grammar snapshots

  bool operator==(const ParikhSnapshot&) const = default;
};

/// Result of comparing two snapshots. `holds` is true when the expected
/// relation (equality or left-in-right inclusion) is satisfied; the witness
/// lists carry the offending vectors of each side, sorted.
struct CheckReport {
  enum class Relation { Equality, Inclusion };

  ParikhSnapshot left, right;
  Relation relation = Relation::Equality;
  bool holds = false;
  std::vector<TermVector> left_only, right_only;
};

/// Parikh vectors (entry sum <= bound) of words derivable from the axiom,
/// by a per-variable least fixpoint: a production contributes the sum of
/// its terminal part and any combination of vectors already derived for
/// its right-hand-side variables. Independent of the automaton route.
ParikhSnapshot grammar_parikh(const Grammar& g, int bound);

/// Parikh vectors of words that have a derivation keeping at most k
/// variables in every sentential form, by breadth-first search over the
/// concrete forms with at most k variables and at most `bound` terminals.
/// Both caps are monotone along derivations, so pruning is sound.
ParikhSnapshot indexed_grammar_parikh(const Grammar& g, int k, int bound);

ParikhSnapshot automaton_snapshot(const WordNFA& m, int bound);

/// Grammar fixpoint vs the automaton built at k = n*d + 1; the two sides
/// must agree exactly at every bound.
CheckReport check_theorem1(const Grammar& g, int bound);

/// Index-k derivations vs the k-bounded automaton, as set equality.
CheckReport check_indexed_equivalence(const Grammar& g, int k, int bound);

/// Whole-grammar image included in the index-(n*d+1) image; the reverse
/// inclusion is trivial.
CheckReport check_collapse(const Grammar& g, int bound);

CheckReport compare_snapshots(ParikhSnapshot left, ParikhSnapshot right,
                              CheckReport::Relation relation);

nlohmann::json to_json(const CheckReport& r);

}  // namespace parikh

#endif
