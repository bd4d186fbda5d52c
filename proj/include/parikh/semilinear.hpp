#ifndef PARIKH_SEMILINEAR_HPP
#define PARIKH_SEMILINEAR_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "parikh/nfa.hpp"

namespace parikh {

/// offset + all natural combinations of the periods.
struct LinearSet {
  TermVector offset;
  std::vector<TermVector> periods;  // sorted, nonzero, duplicate-free

  auto operator<=>(const LinearSet&) const = default;
};

/// Finite union of linear sets; an empty component list is the empty set.
struct SemilinearSet {
  std::vector<LinearSet> components;

  bool operator==(const SemilinearSet&) const = default;
};

/// Regular expression over terminal ids, used as the intermediate form of
/// the automaton-to-semilinear extraction.
struct Regex;
using RegexPtr = std::shared_ptr<const Regex>;

struct Regex {
  enum class Kind { Empty, Epsilon, Letter, Union, Concat, Star };
  Kind kind = Kind::Empty;
  int letter = -1;
  RegexPtr left, right;
};

// Constructors apply the language-preserving identities with the empty
// regex and the empty word, so elimination output stays readable.
RegexPtr re_empty();
RegexPtr re_epsilon();
RegexPtr re_letter(int id);
RegexPtr re_union(RegexPtr a, RegexPtr b);
RegexPtr re_concat(RegexPtr a, RegexPtr b);
RegexPtr re_star(RegexPtr a);

std::string to_string(const Regex& r, const std::vector<std::string>& terminals);

/// Guards against the exponential cost of state elimination plus the star
/// formula. Overridable per call and, in the CLI, via environment.
struct ExtractionLimits {
  int max_states = 12;       // word-level states after trimming
  int max_transitions = 80;  // letter-level transitions after trimming
  int max_star_width = 16;   // components under a single star
};

class LimitExceeded : public std::runtime_error {
 public:
  LimitExceeded(const std::string& limit, long long value, long long cap)
      : std::runtime_error("extraction limit exceeded: " + limit + " = " +
                           std::to_string(value) + " (limit " + std::to_string(cap) + ")"),
        limit_(limit) {}
  const std::string& limit() const { return limit_; }

 private:
  std::string limit_;
};

/// State elimination. Intermediate states are removed first, then original
/// states by descending total degree (ties broken by state order). The
/// result denotes exactly the accepted language.
RegexPtr eliminate_to_regex(const LetterNFA& m);

/// Parikh image of a regex by structural recursion; `dim` is the terminal
/// alphabet size. Star distributes over the component subsets: offsets of
/// the chosen components add up and also become periods.
SemilinearSet regex_parikh(const Regex& r, std::size_t dim,
                           const ExtractionLimits& limits = {});

/// Drops duplicate and subsumed components (same offset, subset periods)
/// and orders everything; never changes the denoted set.
SemilinearSet normalize(const SemilinearSet& s);

/// Membership by depth-first search over period multiplicities, each
/// bounded through the residual's coordinates.
bool slset_member(const SemilinearSet& s, const TermVector& v);

/// All members with entry sum <= bound.
std::set<TermVector> slset_truncate(const SemilinearSet& s, int bound);

/// Restriction of m to states that lie on some accepting path.
WordNFA trim_useful(const WordNFA& m);

/// Parikh image of the automaton's language: trim, normalize to letters,
/// eliminate to a regex, recurse. Throws LimitExceeded when the trimmed
/// automaton is too large for the extraction route.
SemilinearSet nfa_parikh(const WordNFA& m, const ExtractionLimits& limits = {});

/// Size parameters of the semilinear representation guaranteed for the
/// grammar's Parikh image, evaluated without the asymptotic constants.
struct ToBoundReport {
  int n = 0;    // variables
  int d = 0;    // degree, clamped to >= 0
  int t = 0;    // terminals
  int p = 0;    // terminal occurrences in productions
  bigint s;     // letter-NFA state parameter: C(n + n*d + 1, n) * p
  int ell = 0;  // alphabet parameter: t
  bigint linear_set_count_bound;  // s^(ell^2 + 3*ell + 3) * ell^(4*ell + 6)
  bigint max_offset_entry_bound;  // s^(3*ell + 3) * ell^(4*ell + 6)
  bigint max_period_entry_bound;  // s
  bool degenerate = false;        // no terminals anywhere: s or ell is 0
};

ToBoundReport to_bound_report(const Grammar& g);

nlohmann::json to_json(const SemilinearSet& s);
SemilinearSet semilinear_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ToBoundReport& r);

}  // namespace parikh

#endif
