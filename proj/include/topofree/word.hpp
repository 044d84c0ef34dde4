#pragma once

#include <string>
#include <vector>

#include "topofree/common.hpp"

namespace topofree {

/// A signed letter: an edge/point id with sign +1 or -1.
struct Letter {
  std::string id;
  int sign = 1;

  Letter inverse() const { return Letter{id, -sign}; }
  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter&) const = default;
};

/// A formal word over signed letters. Free groups and the letter sequences of
/// groupoid morphisms both use this representation.
using Word = std::vector<Letter>;

/// Deletes adjacent e^d e^-d pairs until none remain (left-to-right scan
/// iterated to a fixpoint). The normal form is order-independent; the tests
/// check confluence exhaustively on short words.
Word free_reduce(Word w);

bool is_reduced(const Word& w);

Word concat_reduce(const Word& u, const Word& w);
Word inverse(const Word& w);

/// Cancellation length between reduced u and w: the number of letter pairs
/// cancelled when forming uw.
std::size_t cancellation(const Word& u, const Word& w);

/// Word syntax: whitespace-separated letters, `^-1` suffix for inverses,
/// `1` alone for the identity word.
Word parse_word(const std::string& text);
std::string format_word(const Word& w);

/// Parses a `;`-separated generator list.
std::vector<Word> parse_words(const std::string& text);

}  // namespace topofree
