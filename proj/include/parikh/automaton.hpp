#ifndef PARIKH_AUTOMATON_HPP
#define PARIKH_AUTOMATON_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "parikh/grammar.hpp"

namespace parikh {

using bigint = boost::multiprecision::cpp_int;

/// NFA whose transition labels are terminal words (possibly empty) and
/// whose states are variable-count vectors. States are kept sorted
/// lexicographically and transitions deduplicated and sorted, so two
/// equal automata compare equal.
struct WordNFA {
  std::vector<std::string> variables;
  std::vector<std::string> terminals;
  int k = 0;
  std::vector<VarVector> states;
  std::vector<Transition> transitions;
  VarVector initial;
  std::vector<VarVector> finals;

  bool operator==(const WordNFA&) const = default;
};

/// All vectors in N^dim with entry sum <= k, in lexicographic order.
std::vector<VarVector> vectors_up_to(std::size_t dim, int sum_bound);

/// Builds the automaton whose states are the variable-count vectors with
/// entry sum <= k: for every production A -> gamma and every state q with
/// q[A] >= 1 there is a transition (q, gamma/T, q - unit(A) + parikh_v(gamma))
/// whenever the target stays within the sum bound. The initial state is the
/// axiom's unit vector, the only final state the zero vector.
WordNFA build_parikh_automaton(const Grammar& g, int k);

/// Number of states of the k-bounded construction on n variables:
/// binomial(n + k, n), computed exactly.
bigint state_count(int n, int k);

/// The bound n*d + 1 that makes the construction Parikh-equivalent to the
/// grammar; d is clamped to 0 so the result is defined for every grammar
/// (a grammar of degree <= 0 only needs single-variable forms).
int default_k(const Grammar& g);

/// The grammar with productions A_j -> A_{j-1} A_{j-1} for 2 <= j <= n,
/// A_1 -> a, and axiom A_n; its language is the single word a^(2^(n-1)).
/// Used as a corpus family that maximizes automaton size relative to the
/// shortest accepted word.
Grammar gn_family(int n);

}  // namespace parikh

#endif
