#include "topofree/graev.hpp"

#include <algorithm>

namespace topofree {

ClassifyResult classify(const PointedFinSpace& xs) {
  const FinSpace& x = xs.space;
  auto comps = x.path_components();
  if (comps.size() <= 1) return ClassifyResult{true, std::nullopt};

  MarkovWitness w;
  w.e1 = xs.basepoint;
  for (const auto& comp : comps) {
    if (std::binary_search(comp.begin(), comp.end(), xs.basepoint)) {
      w.a1 = comp;
    } else {
      w.a2.insert(w.a2.end(), comp.begin(), comp.end());
    }
  }
  std::sort(w.a2.begin(), w.a2.end());
  w.e2 = w.a2.front();

  // A1 u A2 = X already, so the wedge is the quotient identifying {e1,e2}.
  std::vector<std::vector<std::string>> partition;
  std::vector<std::string> base_class{w.e1, w.e2};
  std::sort(base_class.begin(), base_class.end());
  partition.push_back(base_class);
  for (const auto& p : x.points())
    if (p != w.e1 && p != w.e2) partition.push_back({p});
  auto [q, proj] = x.quotient(partition);
  w.wedge_space = PointedFinSpace::make(std::move(q), proj.at(w.e1));
  w.q = std::move(proj);
  return ClassifyResult{false, std::move(w)};
}

namespace {

bool contains(const std::vector<std::string>& sorted, const std::string& p) {
  return std::binary_search(sorted.begin(), sorted.end(), p);
}

void append_signed(Word& out, const Word& image, int sign) {
  if (sign > 0) {
    out.insert(out.end(), image.begin(), image.end());
  } else {
    Word inv = inverse(image);
    out.insert(out.end(), inv.begin(), inv.end());
  }
}

}  // namespace

Word graev_to_markov(const MarkovWitness& w, const Word& word) {
  const std::string z = w.wedge_space.basepoint;
  Word out;
  for (const auto& l : word) {
    if (l.id == w.e1) continue;  // basepoint letter is the identity
    Word image;
    if (contains(w.a1, l.id)) {
      image = {Letter{w.q.at(l.id), 1}, Letter{z, -1}};
    } else if (contains(w.a2, l.id)) {
      image = {Letter{w.q.at(l.id), 1}};
    } else {
      fail("graev_to_markov: letter outside X: " + l.id);
    }
    append_signed(out, image, l.sign);
  }
  return free_reduce(std::move(out));
}

Word markov_to_graev(const MarkovWitness& w, const Word& word) {
  const std::string z = w.wedge_space.basepoint;
  Word out;
  for (const auto& l : word) {
    Word image;
    if (l.id == z) {
      image = {Letter{w.e2, 1}};
    } else if (w.wedge_space.space.has_point(l.id) && contains(w.a1, l.id)) {
      image = {Letter{l.id, 1}, Letter{w.e2, 1}};
    } else if (w.wedge_space.space.has_point(l.id) && contains(w.a2, l.id)) {
      image = {Letter{l.id, 1}};
    } else {
      fail("markov_to_graev: letter outside wedge: " + l.id);
    }
    append_signed(out, image, l.sign);
  }
  return free_reduce(std::move(out));
}

}  // namespace topofree
