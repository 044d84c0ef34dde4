#include "topofree/topgraph.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace topofree {

namespace {
const FinSpace kEmptySpace = FinSpace::make({}, {});
}

TopGraph TopGraph::make(std::vector<std::string> vertices,
                        std::map<VertexPair, FinSpace> edge_spaces) {
  if (vertices.empty()) fail("top-graph needs a nonempty vertex set");
  std::sort(vertices.begin(), vertices.end());
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    if (vertices[i] == vertices[i + 1]) fail("duplicate vertex id: " + vertices[i]);
  TopGraph g;
  g.vertices_ = std::move(vertices);
  for (auto& [pair, space] : edge_spaces) {
    if (space.size() == 0) continue;
    if (!g.has_vertex(pair.first) || !g.has_vertex(pair.second))
      fail("edge space between unknown vertices: " + pair.first + " " + pair.second);
    for (const auto& p : space.points()) {
      auto [it, fresh] = g.edge_home_.emplace(p, pair);
      if (!fresh) fail("edge point id used in two pairs: " + p);
    }
    g.edges_.emplace(pair, std::move(space));
  }
  return g;
}

bool TopGraph::has_vertex(const std::string& v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

const FinSpace& TopGraph::edge_space(const std::string& x, const std::string& y) const {
  auto it = edges_.find({x, y});
  return it == edges_.end() ? kEmptySpace : it->second;
}

const TopGraph::VertexPair& TopGraph::edge_endpoints(const std::string& e) const {
  auto it = edge_home_.find(e);
  if (it == edge_home_.end()) fail("unknown edge point: " + e);
  return it->second;
}

std::vector<std::string> TopGraph::all_edge_points() const {
  std::vector<std::string> out;
  for (const auto& [p, pair] : edge_home_) out.push_back(p);
  return out;  // map iteration is sorted
}

FinSpace TopGraph::total_edge_space() const {
  std::vector<std::string> pts = all_edge_points();
  std::vector<std::pair<std::string, std::string>> rel;
  for (const auto& [pair, space] : edges_)
    for (std::size_t i = 0; i < space.size(); ++i)
      for (std::size_t j = 0; j < space.size(); ++j)
        if (i != j && space.leq(i, j)) rel.emplace_back(space.point(i), space.point(j));
  return FinSpace::make(std::move(pts), rel);
}

TopGraph TopGraph::symmetrize() const {
  std::map<VertexPair, FinSpace> out;
  for (const auto& [pair, space] : edges_) {
    // Forward copy under (x,y).
    auto [sum_it, _] = out.try_emplace(pair, FinSpace::make({}, {}));
    sum_it->second = sum_it->second.disjoint_union(space).first;
    // Inverted copy under (y,x).
    std::map<std::string, std::string> rename;
    for (const auto& p : space.points()) rename[p] = p + "^-1";
    VertexPair rev{pair.second, pair.first};
    auto [rev_it, _2] = out.try_emplace(rev, FinSpace::make({}, {}));
    rev_it->second = rev_it->second.disjoint_union(space.renamed(rename)).first;
  }
  return TopGraph::make(vertices_, std::move(out));
}

std::pair<TopGraph, std::map<std::string, std::string>> TopGraph::pi0_graph() const {
  std::map<VertexPair, FinSpace> out;
  std::map<std::string, std::string> q;
  for (const auto& [pair, space] : edges_) {
    std::vector<std::string> classes;
    for (const auto& comp : space.path_components()) {
      const std::string& cls = comp.front();  // least member
      classes.push_back(cls);
      for (const auto& p : comp) q[p] = cls;
    }
    out.emplace(pair, FinSpace::make(std::move(classes), {}));
  }
  return {TopGraph::make(vertices_, std::move(out)), std::move(q)};
}

bool TopGraph::is_connected_graph() const {
  std::set<std::string> seen{vertices_.front()};
  std::queue<std::string> todo;
  todo.push(vertices_.front());
  while (!todo.empty()) {
    std::string v = todo.front();
    todo.pop();
    for (const auto& w : vertices_) {
      if (seen.count(w)) continue;
      if (edge_space(v, w).size() > 0 || edge_space(w, v).size() > 0) {
        seen.insert(w);
        todo.push(w);
      }
    }
  }
  return seen.size() == vertices_.size();
}

const TreeEdge* Tree::edge_for_class(const std::string& class_id) const {
  for (const auto& e : edges)
    if (e.class_id == class_id) return &e;
  return nullptr;
}

bool Tree::contains_point(const std::string& p) const {
  for (const auto& e : edges)
    if (std::find(e.points.begin(), e.points.end(), p) != e.points.end()) return true;
  return false;
}

Tree maximal_tree(const TopGraph& g) {
  if (!g.is_connected_graph()) fail("maximal_tree: graph is not connected");
  auto [pi0, q] = g.pi0_graph();

  // Undirected candidate edges: class id -> endpoints, plus the least concrete
  // point inside the component as the tree's representative.
  struct Cand {
    std::string cls, from, to, rep;
  };
  std::map<std::string, Cand> cands;
  for (const auto& [pair, space] : g.edge_spaces()) {
    for (const auto& comp : space.path_components()) {
      const std::string& cls = comp.front();
      cands[cls] = Cand{cls, pair.first, pair.second, comp.front()};
    }
  }

  Tree tree;
  std::set<std::string> discovered{g.vertices().front()};
  std::vector<std::string> level{g.vertices().front()};
  while (discovered.size() < g.vertices().size()) {
    std::set<std::string> in_level(level.begin(), level.end());
    std::vector<std::string> next_level;
    // Within the level, repeatedly take the least class id that reaches a new
    // vertex from the current frontier.
    while (true) {
      const Cand* best = nullptr;
      std::string best_other;
      for (const auto& [cls, c] : cands) {  // sorted by class id
        bool from_in = in_level.count(c.from) != 0;
        bool to_in = in_level.count(c.to) != 0;
        std::string other;
        if (from_in && !discovered.count(c.to)) other = c.to;
        else if (to_in && !discovered.count(c.from)) other = c.from;
        else continue;
        best = &c;
        best_other = other;
        break;
      }
      if (!best) break;
      tree.edges.push_back(TreeEdge{best->cls, {best->rep}, best->from, best->to});
      discovered.insert(best_other);
      next_level.push_back(best_other);
    }
    if (next_level.empty()) fail("maximal_tree: BFS stalled on a connected graph");
    level = std::move(next_level);
  }
  return tree;
}

std::pair<PointedFinSpace, std::map<std::string, std::string>> quotient_by_tree(
    const TopGraph& g, const Tree& tree) {
  FinSpace total = g.total_edge_space();

  // Validate the tree: classes span the vertices and each identified concrete
  // subspace is a single point of its component.
  auto [pi0, q] = g.pi0_graph();
  std::set<std::string> touched;
  std::set<std::string> collapse;
  for (const auto& e : tree.edges) {
    if (e.points.size() != 1)
      fail("quotient_by_tree: tree component not a singleton point (class " + e.class_id + ")");
    const std::string& p = e.points.front();
    if (!g.has_edge_point(p)) fail("quotient_by_tree: unknown tree point: " + p);
    if (q.at(p) != e.class_id)
      fail("quotient_by_tree: tree point " + p + " not in class " + e.class_id);
    collapse.insert(p);
    touched.insert(e.from);
    touched.insert(e.to);
  }
  if (tree.edges.size() + 1 != g.vertices().size())
    fail("quotient_by_tree: tree does not span (|edges| != |vertices|-1)");
  if (!tree.edges.empty() && touched.size() != g.vertices().size())
    fail("quotient_by_tree: tree does not touch every vertex");
  {
    // n-1 edges and no cycle make a spanning tree.
    std::map<std::string, std::string> parent;
    for (const auto& v : g.vertices()) parent[v] = v;
    auto find = [&](std::string v) {
      while (parent[v] != v) v = parent[v];
      return v;
    };
    for (const auto& e : tree.edges) {
      std::string a = find(e.from), b = find(e.to);
      if (a == b) fail("quotient_by_tree: tree contains a cycle at class " + e.class_id);
      parent[a] = b;
    }
  }

  if (collapse.empty()) {
    // Single vertex: no tree edges; adjoin a fresh isolated basepoint.
    std::string base = "*";
    while (total.has_point(base)) base += '\'';
    std::vector<std::string> pts = total.points();
    pts.push_back(base);
    std::vector<std::pair<std::string, std::string>> rel;
    for (std::size_t i = 0; i < total.size(); ++i)
      for (std::size_t j = 0; j < total.size(); ++j)
        if (i != j && total.leq(i, j)) rel.emplace_back(total.point(i), total.point(j));
    std::map<std::string, std::string> proj;
    for (const auto& p : total.points()) proj[p] = p;
    return {PointedFinSpace::make(FinSpace::make(std::move(pts), rel), base), std::move(proj)};
  }

  std::vector<std::vector<std::string>> partition;
  partition.emplace_back(collapse.begin(), collapse.end());
  for (const auto& p : total.points())
    if (!collapse.count(p)) partition.push_back({p});
  auto [space, proj] = total.quotient(partition);
  std::string base = proj.at(*collapse.begin());
  return {PointedFinSpace::make(std::move(space), base), std::move(proj)};
}

}  // namespace topofree
