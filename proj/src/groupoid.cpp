#include "topofree/groupoid.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace topofree {

std::pair<std::string, std::string> letter_endpoints(const TopGraph& g, const Letter& l) {
  const auto& [x, y] = g.edge_endpoints(l.id);
  return l.sign > 0 ? std::make_pair(x, y) : std::make_pair(y, x);
}

GroupoidWord make_groupoid_word(const TopGraph& g, const std::string& source, Word letters) {
  if (!g.has_vertex(source)) fail("unknown vertex: " + source);
  std::string at = source;
  for (const auto& l : letters) {
    auto [from, to] = letter_endpoints(g, l);
    if (from != at)
      fail("word not composable: letter " + l.id + " starts at " + from + ", expected " + at);
    at = to;
  }
  return GroupoidWord{source, at, std::move(letters)};
}

GroupoidWord reduce(const TopGraph& g, const GroupoidWord& w) {
  return make_groupoid_word(g, w.source, free_reduce(w.letters));
}

GroupoidWord compose(const TopGraph& g, const GroupoidWord& u, const GroupoidWord& w) {
  if (u.target != w.source)
    fail("compose: endpoint mismatch (" + u.target + " vs " + w.source + ")");
  return make_groupoid_word(g, u.source, concat_reduce(u.letters, w.letters));
}

GroupoidWord invert(const TopGraph& g, const GroupoidWord& w) {
  return make_groupoid_word(g, w.target, inverse(w.letters));
}

GroupoidWord tree_word(const TopGraph& g, const Tree& tree, const std::string& v,
                       const std::string& x) {
  if (!g.has_vertex(v)) fail("unknown vertex: " + v);
  if (!g.has_vertex(x)) fail("unknown vertex: " + x);
  // BFS through tree representative points; the path is unique.
  std::map<std::string, std::pair<std::string, Letter>> from;  // vertex -> (prev, letter)
  std::queue<std::string> todo;
  todo.push(v);
  std::set<std::string> seen{v};
  while (!todo.empty() && !seen.count(x)) {
    std::string at = todo.front();
    todo.pop();
    for (const auto& e : tree.edges) {
      const std::string& p = e.points.front();
      const auto& [a, b] = g.edge_endpoints(p);
      std::string other;
      Letter l{p, 1};
      if (a == at) {
        other = b;
      } else if (b == at) {
        other = a;
        l.sign = -1;
      } else {
        continue;
      }
      if (seen.count(other)) continue;
      seen.insert(other);
      from[other] = {at, l};
      todo.push(other);
    }
  }
  if (!seen.count(x)) fail("tree_word: no tree path from " + v + " to " + x);
  Word path;
  for (std::string at = x; at != v;) {
    auto& [prev, l] = from.at(at);
    path.push_back(l);
    at = prev;
  }
  std::reverse(path.begin(), path.end());
  return make_groupoid_word(g, v, std::move(path));
}

GroupoidWord retract(const TopGraph& g, const Tree& tree, const std::string& v,
                     const GroupoidWord& w) {
  GroupoidWord gv_x = tree_word(g, tree, v, w.source);
  GroupoidWord gy_v = tree_word(g, tree, w.target, v);
  return compose(g, compose(g, gv_x, w), gy_v);
}

VertexGroupBasis vertex_group_basis(const TopGraph& g, const Tree& tree, const std::string& v) {
  if (!g.is_connected_graph()) fail("vertex_group_basis: graph is not connected");
  auto [q, projection] = quotient_by_tree(g, tree);
  VertexGroupBasis basis;
  basis.q = q;
  basis.projection = projection;
  basis.tree = tree;
  basis.vertex = v;
  for (const auto& e : g.all_edge_points()) {
    if (tree.contains_point(e)) continue;
    GroupoidWord loop = retract(g, tree, v, make_groupoid_word(g, g.edge_endpoints(e).first,
                                                               Word{Letter{e, 1}}));
    basis.loops.emplace(projection.at(e), std::move(loop));
  }
  return basis;
}

Word express_in_basis(const TopGraph& g, const Tree& tree, const std::string& v,
                      const GroupoidWord& loop) {
  if (loop.source != v || loop.target != v)
    fail("express_in_basis: word is not a loop at " + v);
  make_groupoid_word(g, loop.source, loop.letters);  // validate composability
  auto [q, projection] = quotient_by_tree(g, tree);
  Word out;
  for (const auto& l : loop.letters) {
    const std::string& qp = projection.at(l.id);
    if (qp == q.basepoint) continue;
    out.push_back(Letter{qp, l.sign});
  }
  return free_reduce(std::move(out));
}

GroupoidWord substitute_basis(const TopGraph& g, const VertexGroupBasis& basis, const Word& qword) {
  GroupoidWord acc = make_groupoid_word(g, basis.vertex, {});
  for (const auto& l : qword) {
    auto it = basis.loops.find(l.id);
    if (it == basis.loops.end()) fail("substitute_basis: unknown generator point: " + l.id);
    acc = compose(g, acc, l.sign > 0 ? it->second : invert(g, it->second));
  }
  return acc;
}

bool stratum_open_check(const PointedFinSpace& xs, const std::function<bool(const Word&)>& member,
                        std::size_t max_len) {
  const FinSpace& x = xs.space;
  const std::size_t m = x.size();
  const std::size_t base = x.index_of(xs.basepoint);
  const std::size_t nletters = 2 * m;  // letter 2i = point i, letter 2i+1 = its inverse

  // Strictly smaller letters, componentwise: same sign and strictly below.
  std::vector<std::vector<std::size_t>> below(nletters);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && x.leq(i, j)) {
        below[2 * j].push_back(2 * i);
        below[2 * j + 1].push_back(2 * i + 1);
      }

  for (std::size_t n = 1; n <= max_len; ++n) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= nletters;
    std::vector<std::uint8_t> member_of(total, 0);
    std::vector<std::size_t> digits(n, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      Word w;
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t pt = digits[k] / 2;
        if (pt != base) w.push_back(Letter{x.point(pt), digits[k] % 2 == 0 ? 1 : -1});
      }
      member_of[idx] = member(free_reduce(std::move(w))) ? 1 : 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (++digits[k] < nletters) break;
        digits[k] = 0;
      }
    }
    // Down-closure: every tuple strictly below a member tuple in one
    // coordinate must itself be a member.
    std::size_t stride = 1;
    std::fill(digits.begin(), digits.end(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      if (member_of[idx]) {
        stride = 1;
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t smaller : below[digits[k]]) {
            std::size_t nidx = idx - digits[k] * stride + smaller * stride;
            if (!member_of[nidx]) return false;
          }
          stride *= nletters;
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (++digits[k] < nletters) break;
        digits[k] = 0;
      }
    }
  }
  return true;
}

}  // namespace topofree
