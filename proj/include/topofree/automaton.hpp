#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topofree/word.hpp"

namespace topofree {

/// Folded subgroup graph (Stallings core) over a fixed letter alphabet,
/// doubling as a coset automaton when complete. States are renumbered
/// canonically by BFS from the base state, so equal subgroups over the same
/// alphabet produce identical automata.
class Automaton {
 public:
  /// Folds the wedge of generator loops. Generators are freely reduced first;
  /// identity words are ignored. Throws if folding exceeds state_cap states
  /// or a generator uses a letter outside the alphabet.
  static Automaton fold(std::vector<std::string> alphabet, const std::vector<Word>& generators,
                        std::size_t state_cap = 10000);

  /// Rebuilds from explicit positive transition rows (rows[letter][state],
  /// -1 for absent); used when loading certificates.
  static Automaton from_transitions(std::vector<std::string> alphabet,
                                    std::vector<std::vector<int>> rows);

  /// Lifts a component-level automaton to a point alphabet: a point letter
  /// acts as its class in `point_class`; points mapped to the empty string
  /// act as the identity at every state.
  Automaton inflate(std::vector<std::string> point_alphabet,
                    const std::map<std::string, std::string>& point_class) const;

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return nstates_; }
  static constexpr int kBase = 0;

  /// Target of the transition, or -1 when absent.
  int next(int state, std::size_t letter, int sign) const;
  std::size_t letter_index(const std::string& id) const;

  /// Follows a reduced word; -1 when a transition is missing.
  int trace(int state, const Word& reduced) const;

  /// Loop test at the base state; the word is reduced first.
  bool member(const Word& w) const;

  bool complete() const;
  /// The subgroup index when finite: the state count of a complete automaton.
  std::optional<std::size_t> finite_index() const;

  /// BFS-least transversal: a reduced word from the base to each state.
  std::vector<Word> transversal() const;

  bool operator==(const Automaton& other) const = default;

 private:
  Automaton canonicalized() const;

  std::size_t nstates_ = 0;
  std::vector<std::string> alphabet_;        // sorted
  std::vector<std::vector<int>> npos_;       // npos_[letter][state]
  std::vector<std::vector<int>> nneg_;       // inverse direction
};

}  // namespace topofree
