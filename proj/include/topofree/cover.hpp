#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topofree/automaton.hpp"
#include "topofree/finspace.hpp"
#include "topofree/groupoid.hpp"
#include "topofree/topgraph.hpp"
#include "topofree/word.hpp"

namespace topofree {

/// An open-subgroup candidate H <= F_G(X,*), given by finitely many
/// generator words. Generators are normalized on construction: basepoint
/// letters deleted, then freely reduced.
struct SubgroupSpec {
  PointedFinSpace ambient;
  std::vector<Word> generators;

  static SubgroupSpec make(PointedFinSpace ambient, std::vector<Word> generators);
};

/// Path-component data of a pointed space: class ids are least members; the
/// non-basepoint classes are the letters of the projected free group.
struct Components {
  std::vector<std::vector<std::string>> classes;
  std::map<std::string, std::string> class_of;
  std::string base_class;
  std::vector<std::string> letters;  // sorted non-basepoint class ids
};

Components components_of(const PointedFinSpace& xs);

/// Replaces each letter by its path component, deletes letters in the
/// basepoint component, and freely reduces.
Word component_projection(const PointedFinSpace& xs, const Word& w);

/// Folds generator loops into a membership automaton (Stallings core).
Automaton stallings_fold(const std::vector<std::string>& alphabet,
                         const std::vector<Word>& generators, std::size_t state_cap = 10000);

/// Result of the openness decision. H is open iff it is the full preimage of
/// its component projection; operationally, iff the component kernel is
/// trivial, or the projection has finite index and the point-level core
/// equals the inflated component automaton. A finitely generated subgroup
/// containing the nontrivial kernel forces finite index, so an infinite-index
/// projection with nontrivial kernel is already a refusal.
struct OpennessCertificate {
  bool open = false;
  bool kernel_trivial = false;
  std::string reason;
  std::optional<Word> witness;  // a word of the preimage outside H
  Automaton component_automaton;
  Automaton point_automaton;
  std::optional<std::size_t> component_index;
};

OpennessCertificate decide_open(const SubgroupSpec& sub, std::size_t state_cap = 10000);

/// The Schreier covering of the two-vertex base graph Gamma(a,b) = X. Cover
/// vertices are coset copies a@i, b@i; the whole component c of X lifts at
/// coset i to the single edge space determined by the automaton transition.
struct CoveringTopGraph {
  TopGraph base;
  TopGraph total;
  std::map<std::string, std::string> vertex_map;  // total vertex -> base vertex
  std::map<std::string, std::string> edge_map;    // total edge point -> X point
  struct Lift {
    std::string cover_class;  // pi0 class id of the copy in the total graph
    std::string x_class;      // source component class in X
    std::size_t coset = 0;
    std::string from, to;     // cover vertices
    bool base_component = false;
  };
  std::vector<Lift> lifts;
  Automaton automaton;  // component-level coset automaton
  std::size_t index = 0;
};

CoveringTopGraph schreier_cover(const SubgroupSpec& sub, std::size_t state_cap = 10000);

/// The output certificate of the pipeline: the pointed quotient Q of the
/// cover by its spanning tree, with one ambient generator word per
/// non-basepoint point of Q.
struct GraevPresentation {
  PointedFinSpace space;                             // Q
  std::map<std::string, Word> generator_words;       // Q point -> word in F_G(X,*)
  std::map<std::string, std::string> source_points;  // Q point -> X point under p
  Tree tree;
  std::vector<Word> transversal;  // coset -> ambient word
  Automaton component_automaton;
  std::size_t index = 0;
};

GraevPresentation subgroup_basis(const SubgroupSpec& sub, std::size_t state_cap = 10000);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

/// Re-derives every claim of a presentation against the subgroup spec:
/// openness, membership of the generator words, subgroup equality via folded
/// automata, the Nielsen-Schreier rank count, homeomorphism of each non-tree
/// component copy with its source component, projection coherence, and
/// Nielsen reduction of the component-level generators.
VerifyReport verify_presentation(const SubgroupSpec& sub, const GraevPresentation& p,
                                 std::size_t state_cap = 10000);

}  // namespace topofree
