#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "topofree/finspace.hpp"

namespace topofree {

/// A directed graph with a discrete vertex set and a finite topological space
/// of edges for each ordered vertex pair. Edge point ids are globally unique
/// across pairs: the total edge space is their disjoint sum.
class TopGraph {
 public:
  using VertexPair = std::pair<std::string, std::string>;

  static TopGraph make(std::vector<std::string> vertices,
                       std::map<VertexPair, FinSpace> edge_spaces);

  const std::vector<std::string>& vertices() const { return vertices_; }
  bool has_vertex(const std::string& v) const;

  /// Empty space when the pair has no declared edges.
  const FinSpace& edge_space(const std::string& x, const std::string& y) const;
  const std::map<VertexPair, FinSpace>& edge_spaces() const { return edges_; }

  bool has_edge_point(const std::string& e) const { return edge_home_.count(e) != 0; }
  /// (source, target) of the pair housing edge point e.
  const VertexPair& edge_endpoints(const std::string& e) const;

  std::vector<std::string> all_edge_points() const;  // sorted
  /// Disjoint sum of all edge spaces (ids are already unique).
  FinSpace total_edge_space() const;

  /// Gamma+-: each pair (x,y) carries Gamma(x,y) plus a homeomorphic copy of
  /// Gamma(y,x) with ids suffixed `^-1`.
  TopGraph symmetrize() const;

  /// Vertexwise identity, edgewise path components (class id = least member).
  /// Returns the graph and the quotient morphism edge point -> class.
  std::pair<TopGraph, std::map<std::string, std::string>> pi0_graph() const;

  /// True iff every vertex pair is joined by a chain of nonempty
  /// symmetrized edge spaces.
  bool is_connected_graph() const;

 private:
  std::vector<std::string> vertices_;                 // sorted
  std::map<VertexPair, FinSpace> edges_;              // nonempty spaces only
  std::map<std::string, VertexPair> edge_home_;       // edge point -> pair
};

/// One edge of a spanning tree of the pi0 graph, together with the concrete
/// edge subspace identified with it. Collapsing in Gamma/T requires the
/// concrete subspace to be a single point; maximal_tree always selects the
/// least point id inside the component.
struct TreeEdge {
  std::string class_id;
  std::vector<std::string> points;
  std::string from;
  std::string to;
};

struct Tree {
  std::vector<TreeEdge> edges;  // in discovery order

  const TreeEdge* edge_for_class(const std::string& class_id) const;
  bool contains_point(const std::string& p) const;
};

/// Deterministic spanning tree of the pi0 graph of g: BFS by levels from the
/// lexicographically least vertex; within a level, repeatedly takes the least
/// class id reaching an undiscovered vertex. Throws on disconnected graphs.
Tree maximal_tree(const TopGraph& g);

/// (total edge space of g) / (all tree edge points -> basepoint), with the
/// quotient topology. With an empty tree (single vertex) a fresh isolated
/// basepoint `*` is added instead, so Q = Gamma_+.
/// Returns the pointed quotient and the projection edge point -> Q point.
std::pair<PointedFinSpace, std::map<std::string, std::string>> quotient_by_tree(
    const TopGraph& g, const Tree& tree);

}  // namespace topofree
