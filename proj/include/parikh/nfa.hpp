#ifndef PARIKH_NFA_HPP
#define PARIKH_NFA_HPP

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "parikh/automaton.hpp"

namespace parikh {

/// Letter-labeled NFA obtained from a WordNFA by removing empty-word
/// transitions and splitting longer labels through fresh intermediate
/// states. State ids 0..original_states.size()-1 are the original
/// vector states in order; intermediate ids follow.
struct LetterNFA {
  struct Intermediate {
    Transition origin;  // the word transition this state was created for
    int position = 0;   // letters consumed along that transition's label
    auto operator<=>(const Intermediate&) const = default;
  };

  struct Edge {
    std::size_t source = 0;
    int letter = 0;
    std::size_t target = 0;
    auto operator<=>(const Edge&) const = default;
  };

  std::vector<std::string> terminals;
  std::vector<VarVector> original_states;
  std::vector<Intermediate> intermediates;
  std::vector<Edge> edges;  // sorted, deduplicated
  std::size_t initial = 0;
  std::set<std::size_t> finals;

  std::size_t state_count() const { return original_states.size() + intermediates.size(); }
  bool is_intermediate(std::size_t id) const { return id >= original_states.size(); }
  /// "(0,2)" for original states, "i0", "i1", ... for intermediates.
  std::string state_name(std::size_t id) const;
};

/// Removes empty-word transitions by closure (finals and outgoing words
/// reachable through empty-word chains are copied back), then splits every
/// label of length >= 2 through fresh states. Preserves the accepted
/// language exactly, not just its Parikh image.
LetterNFA to_letter_nfa(const WordNFA& m);

/// Parikh images of accepted words whose entry sum stays within the bound,
/// computed as a reachability fixpoint over (state, count-vector) pairs.
std::set<TermVector> truncated_parikh_image(const WordNFA& m, int bound);
std::set<TermVector> truncated_parikh_image(const LetterNFA& m, int bound);

/// All accepted words of length <= max_len, lexicographic by id sequence.
/// Desk-scale enumeration used to compare languages exactly.
std::set<TerminalWord> enumerate_words(const LetterNFA& m, int max_len);
std::set<TerminalWord> enumerate_words(const WordNFA& m, int max_len);

std::string export_dot(const WordNFA& m);
std::string export_dot(const LetterNFA& m);

/// Transition labels in exports are the terminal names concatenated.
std::string label_string(const std::vector<std::string>& terminals,
                         const TerminalWord& word);
/// Inverse of label_string; throws std::invalid_argument when the string
/// has no segmentation into terminal names or more than one.
TerminalWord parse_label(const std::vector<std::string>& terminals,
                         const std::string& text);

nlohmann::json to_json(const WordNFA& m);
WordNFA word_nfa_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LetterNFA& m);

}  // namespace parikh

#endif
