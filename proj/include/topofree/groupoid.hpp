#pragma once

#include <functional>
#include <map>
#include <string>

#include "topofree/topgraph.hpp"
#include "topofree/word.hpp"

namespace topofree {

/// A morphism of the free category on the symmetrized graph: a composable
/// sequence of signed edge letters. The empty sequence is the identity and
/// requires source == target.
struct GroupoidWord {
  std::string source;
  std::string target;
  Word letters;

  bool is_identity() const { return letters.empty(); }
};

/// Source/target of a single signed edge letter in g.
std::pair<std::string, std::string> letter_endpoints(const TopGraph& g, const Letter& l);

/// Validates composability of the letter chain and endpoint consistency.
GroupoidWord make_groupoid_word(const TopGraph& g, const std::string& source, Word letters);

GroupoidWord reduce(const TopGraph& g, const GroupoidWord& w);
GroupoidWord compose(const TopGraph& g, const GroupoidWord& u, const GroupoidWord& w);
GroupoidWord invert(const TopGraph& g, const GroupoidWord& w);

/// The unique reduced word from v to x through the tree's representative
/// points; the identity when v == x.
GroupoidWord tree_word(const TopGraph& g, const Tree& tree, const std::string& v,
                       const std::string& x);

/// r_T(w) = reduce(gamma_{v,x} . w . gamma_{y,v}) for w from x to y.
GroupoidWord retract(const TopGraph& g, const Tree& tree, const std::string& v,
                     const GroupoidWord& w);

/// The free Graev presentation of the vertex group at v: the pointed quotient
/// Q = Gamma/T together with one loop r_T(e) per non-tree edge point, keyed by
/// the Q point the edge maps to.
struct VertexGroupBasis {
  PointedFinSpace q;
  std::map<std::string, std::string> projection;  // edge point -> Q point
  std::map<std::string, GroupoidWord> loops;      // Q point -> loop at v
  Tree tree;
  std::string vertex;
};

VertexGroupBasis vertex_group_basis(const TopGraph& g, const Tree& tree, const std::string& v);

/// Writes a loop at v as a reduced word over the non-basepoint points of Q:
/// each edge letter goes to its Q point, tree letters to the identity.
/// Substituting the basis loops back recovers the loop up to free reduction.
Word express_in_basis(const TopGraph& g, const Tree& tree, const std::string& v,
                      const GroupoidWord& loop);

/// Substitutes basis loops for the letters of a Q-word; used by tests and the
/// round-trip property.
GroupoidWord substitute_basis(const TopGraph& g, const VertexGroupBasis& basis, const Word& qword);

/// Bounded openness test for a word-membership predicate over F_G(X,*): for
/// every n <= max_len the set {w in (X+-)^n : member(reduce(w))} must be open
/// in the n-fold product space (componentwise preorder). The predicate
/// receives the basepoint-free reduced word.
bool stratum_open_check(const PointedFinSpace& xs, const std::function<bool(const Word&)>& member,
                        std::size_t max_len);

}  // namespace topofree
