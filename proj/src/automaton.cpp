#include "topofree/automaton.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace topofree {

namespace {

// Mutable edge soup used during folding: positive-direction records
// (state, letter, target), deduplicated through a union-find.
struct FoldState {
  std::vector<int> parent;

  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  // Merge into the smaller representative id; keeps folding deterministic,
  // though the folded result is unique regardless of order.
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return a;
  }
};

}  // namespace

Automaton Automaton::fold(std::vector<std::string> alphabet, const std::vector<Word>& generators,
                          std::size_t state_cap) {
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

  auto letter_of = [&](const std::string& id) {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), id);
    if (it == alphabet.end() || *it != id) fail("fold: letter outside alphabet: " + id);
    return static_cast<std::size_t>(it - alphabet.begin());
  };

  // Wedge of loops at state 0.
  struct Edge {
    int from;
    std::size_t letter;
    int to;
  };
  std::vector<Edge> edges;
  int nstates = 1;
  for (const Word& gen : generators) {
    Word w = free_reduce(gen);
    if (w.empty()) continue;
    int at = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int to = (i + 1 == w.size()) ? 0 : nstates++;
      if (static_cast<std::size_t>(nstates) > state_cap) fail("fold: state cap exceeded");
      std::size_t l = letter_of(w[i].id);
      if (w[i].sign > 0)
        edges.push_back({at, l, to});
      else
        edges.push_back({to, l, at});
      at = to;
    }
  }

  FoldState uf;
  uf.parent.resize(static_cast<std::size_t>(nstates));
  for (int i = 0; i < nstates; ++i) uf.parent[static_cast<std::size_t>(i)] = i;

  // Fold until deterministic in both directions.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, std::size_t>, int> out, in;
    for (const auto& e : edges) {
      int f = uf.find(e.from), t = uf.find(e.to);
      auto [oit, onew] = out.try_emplace({f, e.letter}, t);
      if (!onew && uf.find(oit->second) != t) {
        uf.unite(oit->second, t);
        changed = true;
        break;
      }
      auto [iit, inew] = in.try_emplace({t, e.letter}, f);
      if (!inew && uf.find(iit->second) != f) {
        uf.unite(iit->second, f);
        changed = true;
        break;
      }
    }
  }

  // Collapse to representatives.
  std::map<int, int> renumber;
  for (int i = 0; i < nstates; ++i) {
    int r = uf.find(i);
    if (!renumber.count(r)) renumber[r] = static_cast<int>(renumber.size());
  }
  Automaton a;
  a.alphabet_ = std::move(alphabet);
  a.nstates_ = renumber.size();
  a.npos_.assign(a.alphabet_.size(), std::vector<int>(a.nstates_, -1));
  a.nneg_.assign(a.alphabet_.size(), std::vector<int>(a.nstates_, -1));
  for (const auto& e : edges) {
    int f = renumber.at(uf.find(e.from)), t = renumber.at(uf.find(e.to));
    a.npos_[e.letter][static_cast<std::size_t>(f)] = t;
    a.nneg_[e.letter][static_cast<std::size_t>(t)] = f;
  }
  // Base stays renumber[find(0)]; make it 0 via canonical BFS renumbering.
  int base = renumber.at(uf.find(0));
  Automaton with_base = a;
  if (base != 0) {
    // swap state ids base <-> 0 before canonicalization
    for (std::size_t l = 0; l < a.alphabet_.size(); ++l) {
      std::swap(with_base.npos_[l][0], with_base.npos_[l][static_cast<std::size_t>(base)]);
      std::swap(with_base.nneg_[l][0], with_base.nneg_[l][static_cast<std::size_t>(base)]);
      for (std::size_t s = 0; s < a.nstates_; ++s) {
        auto fix = [&](int& v) {
          if (v == 0) v = base;
          else if (v == base) v = 0;
        };
        fix(with_base.npos_[l][s]);
        fix(with_base.nneg_[l][s]);
      }
    }
  }
  return with_base.canonicalized();
}

Automaton Automaton::from_transitions(std::vector<std::string> alphabet,
                                      std::vector<std::vector<int>> rows) {
  if (alphabet.size() != rows.size()) fail("from_transitions: row count mismatch");
  for (std::size_t i = 0; i + 1 < alphabet.size(); ++i)
    if (!(alphabet[i] < alphabet[i + 1])) fail("from_transitions: alphabet not sorted");
  std::size_t n = rows.empty() ? 1 : rows.front().size();
  if (n == 0) fail("from_transitions: empty state set");
  Automaton a;
  a.alphabet_ = std::move(alphabet);
  a.nstates_ = n;
  a.npos_ = std::move(rows);
  a.nneg_.assign(a.alphabet_.size(), std::vector<int>(n, -1));
  for (std::size_t l = 0; l < a.alphabet_.size(); ++l) {
    if (a.npos_[l].size() != n) fail("from_transitions: ragged rows");
    for (std::size_t s = 0; s < n; ++s) {
      int t = a.npos_[l][s];
      if (t < 0) continue;
      if (static_cast<std::size_t>(t) >= n) fail("from_transitions: target out of range");
      if (a.nneg_[l][static_cast<std::size_t>(t)] >= 0)
        fail("from_transitions: letter " + a.alphabet_[l] + " is not injective");
      a.nneg_[l][static_cast<std::size_t>(t)] = static_cast<int>(s);
    }
  }
  return a.canonicalized();
}

Automaton Automaton::canonicalized() const {
  // BFS from the base, letters ascending, +1 before -1.
  std::vector<int> order(nstates_, -1);
  std::vector<int> bfs{kBase};
  order[kBase] = 0;
  int discovered = 1;
  for (std::size_t qi = 0; qi < bfs.size(); ++qi) {
    int s = bfs[qi];
    for (std::size_t l = 0; l < alphabet_.size(); ++l) {
      for (int sign : {1, -1}) {
        int t = sign > 0 ? npos_[l][static_cast<std::size_t>(s)]
                         : nneg_[l][static_cast<std::size_t>(s)];
        if (t >= 0 && order[static_cast<std::size_t>(t)] < 0) {
          order[static_cast<std::size_t>(t)] = discovered++;
          bfs.push_back(t);
        }
      }
    }
  }
  if (static_cast<std::size_t>(discovered) != nstates_)
    fail("automaton has states unreachable from the base");
  Automaton out;
  out.alphabet_ = alphabet_;
  out.nstates_ = nstates_;
  out.npos_.assign(alphabet_.size(), std::vector<int>(nstates_, -1));
  out.nneg_.assign(alphabet_.size(), std::vector<int>(nstates_, -1));
  for (std::size_t l = 0; l < alphabet_.size(); ++l)
    for (std::size_t s = 0; s < nstates_; ++s) {
      if (npos_[l][s] >= 0)
        out.npos_[l][static_cast<std::size_t>(order[s])] =
            order[static_cast<std::size_t>(npos_[l][s])];
      if (nneg_[l][s] >= 0)
        out.nneg_[l][static_cast<std::size_t>(order[s])] =
            order[static_cast<std::size_t>(nneg_[l][s])];
    }
  return out;
}

Automaton Automaton::inflate(std::vector<std::string> point_alphabet,
                             const std::map<std::string, std::string>& point_class) const {
  std::sort(point_alphabet.begin(), point_alphabet.end());
  Automaton out;
  out.alphabet_ = std::move(point_alphabet);
  out.nstates_ = nstates_;
  out.npos_.assign(out.alphabet_.size(), std::vector<int>(nstates_, -1));
  out.nneg_.assign(out.alphabet_.size(), std::vector<int>(nstates_, -1));
  for (std::size_t l = 0; l < out.alphabet_.size(); ++l) {
    auto cit = point_class.find(out.alphabet_[l]);
    if (cit == point_class.end()) fail("inflate: letter without a class: " + out.alphabet_[l]);
    const std::string& cls = cit->second;
    for (std::size_t s = 0; s < nstates_; ++s) {
      if (cls.empty()) {  // identity action
        out.npos_[l][s] = static_cast<int>(s);
        out.nneg_[l][s] = static_cast<int>(s);
      } else {
        std::size_t cl = letter_index(cls);
        out.npos_[l][s] = npos_[cl][s];
        out.nneg_[l][s] = nneg_[cl][s];
      }
    }
  }
  return out.canonicalized();
}

int Automaton::next(int state, std::size_t letter, int sign) const {
  return sign > 0 ? npos_[letter][static_cast<std::size_t>(state)]
                  : nneg_[letter][static_cast<std::size_t>(state)];
}

std::size_t Automaton::letter_index(const std::string& id) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), id);
  if (it == alphabet_.end() || *it != id) fail("automaton: unknown letter: " + id);
  return static_cast<std::size_t>(it - alphabet_.begin());
}

int Automaton::trace(int state, const Word& reduced) const {
  int at = state;
  for (const auto& l : reduced) {
    if (at < 0) return -1;
    at = next(at, letter_index(l.id), l.sign);
  }
  return at;
}

bool Automaton::member(const Word& w) const {
  return trace(kBase, free_reduce(w)) == kBase;
}

bool Automaton::complete() const {
  for (const auto& row : npos_)
    for (int v : row)
      if (v < 0) return false;
  return true;
}

std::optional<std::size_t> Automaton::finite_index() const {
  if (!complete()) return std::nullopt;
  return nstates_;
}

std::vector<Word> Automaton::transversal() const {
  std::vector<Word> words(nstates_);
  std::vector<bool> have(nstates_, false);
  have[kBase] = true;
  std::vector<int> bfs{kBase};
  for (std::size_t qi = 0; qi < bfs.size(); ++qi) {
    int s = bfs[qi];
    for (std::size_t l = 0; l < alphabet_.size(); ++l) {
      for (int sign : {1, -1}) {
        int t = next(s, l, sign);
        if (t >= 0 && !have[static_cast<std::size_t>(t)]) {
          have[static_cast<std::size_t>(t)] = true;
          words[static_cast<std::size_t>(t)] = words[static_cast<std::size_t>(s)];
          words[static_cast<std::size_t>(t)].push_back(Letter{alphabet_[l], sign});
          bfs.push_back(t);
        }
      }
    }
  }
  return words;
}

}  // namespace topofree
