#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topofree/finspace.hpp"
#include "topofree/word.hpp"

namespace topofree {

/// Witness that F_G(X,e1) is a free Markov topological group: a clopen split
/// X = A1 u A2 with e1 in A1, a chosen e2 in A2, and the wedge A1 v A2 =
/// X/{e1,e2} realizing the isomorphism.
struct MarkovWitness {
  std::vector<std::string> a1;  // the path component of the basepoint, sorted
  std::vector<std::string> a2;  // the rest, sorted
  std::string e1;
  std::string e2;               // least point of a2
  PointedFinSpace wedge_space;  // X/{e1,e2}, pointed at the identified class
  std::map<std::string, std::string> q;  // X point -> wedge point
};

struct ClassifyResult {
  bool connected = false;
  std::optional<MarkovWitness> witness;  // present iff disconnected
};

/// Connectivity trichotomy: X connected iff F_G(X,*) connected iff F_G(X,*)
/// is not Markov-free. Disconnected spaces come with the explicit witness.
ClassifyResult classify(const PointedFinSpace& xs);

/// Letterwise rewriter F_G(X,e1) -> F_M(A1 v A2):
/// a in A1 -> q(a) z^-1, a in A2 -> q(a); freely reduced. Basepoint letters
/// are the identity and are dropped.
Word graev_to_markov(const MarkovWitness& w, const Word& word);

/// Inverse rewriter F_M(A1 v A2) -> F_G(X,e1):
/// z -> e2, class of a in A1\{e1} -> a e2, class of a in A2 -> a.
Word markov_to_graev(const MarkovWitness& w, const Word& word);

}  // namespace topofree
