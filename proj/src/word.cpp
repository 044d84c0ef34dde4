#include "topofree/word.hpp"

#include <algorithm>
#include <sstream>

namespace topofree {

Word free_reduce(Word w) {
  bool changed = true;
  while (changed) {
    changed = false;
    Word out;
    out.reserve(w.size());
    for (auto& l : w) {
      if (!out.empty() && out.back().id == l.id && out.back().sign == -l.sign) {
        out.pop_back();
        changed = true;
      } else {
        out.push_back(std::move(l));
      }
    }
    w = std::move(out);
  }
  return w;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i].id == w[i + 1].id && w[i].sign == -w[i + 1].sign) return false;
  return true;
}

Word concat_reduce(const Word& u, const Word& w) {
  Word out = u;
  out.insert(out.end(), w.begin(), w.end());
  return free_reduce(std::move(out));
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

std::size_t cancellation(const Word& u, const Word& w) {
  std::size_t k = 0;
  while (k < u.size() && k < w.size() && u[u.size() - 1 - k] == w[k].inverse()) ++k;
  return k;
}

Word parse_word(const std::string& text) {
  Word w;
  auto tokens = split_ws(text);
  if (tokens.size() == 1 && tokens[0] == "1") return w;
  for (const auto& tok : tokens) {
    if (tok == "1") fail("identity letter `1` inside a word: " + text);
    if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
      w.push_back(Letter{tok.substr(0, tok.size() - 3), -1});
    } else {
      w.push_back(Letter{tok, 1});
    }
  }
  return w;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out << ' ';
    out << w[i].id;
    if (w[i].sign < 0) out << "^-1";
  }
  return out.str();
}

std::vector<Word> parse_words(const std::string& text) {
  std::vector<Word> out;
  for (const auto& part : split_on(text, ';')) {
    if (part.empty()) continue;
    out.push_back(parse_word(part));
  }
  return out;
}

}  // namespace topofree
