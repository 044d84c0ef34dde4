#include "topofree/finspace.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace topofree {

FinSpace FinSpace::make(std::vector<std::string> points,
                        const std::vector<std::pair<std::string, std::string>>& le_pairs) {
  std::sort(points.begin(), points.end());
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (points[i] == points[i + 1]) fail("duplicate point id: " + points[i]);
  FinSpace s;
  s.points_ = std::move(points);
  const std::size_t n = s.points_.size();
  s.le_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) s.le_[i * n + i] = 1;
  for (const auto& [x, y] : le_pairs) {
    s.le_[s.index_of(x) * n + s.index_of(y)] = 1;
  }
  // Warshall transitive closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (s.le_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (s.le_[k * n + j]) s.le_[i * n + j] = 1;
  return s;
}

bool FinSpace::has_point(const std::string& id) const {
  return std::binary_search(points_.begin(), points_.end(), id);
}

std::size_t FinSpace::index_of(const std::string& id) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), id);
  if (it == points_.end() || *it != id) fail("unknown point id: " + id);
  return static_cast<std::size_t>(it - points_.begin());
}

bool FinSpace::leq(const std::string& x, const std::string& y) const {
  return leq(index_of(x), index_of(y));
}

std::vector<std::size_t> FinSpace::minimal_open_idx(std::size_t p) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (leq(i, p)) out.push_back(i);
  return out;
}

std::vector<std::string> FinSpace::minimal_open(const std::string& p) const {
  std::vector<std::string> out;
  for (std::size_t i : minimal_open_idx(index_of(p))) out.push_back(points_[i]);
  return out;
}

bool FinSpace::is_open(const std::vector<std::size_t>& subset) const {
  std::vector<std::uint8_t> in(size(), 0);
  for (std::size_t i : subset) in[i] = 1;
  for (std::size_t j : subset)
    for (std::size_t i = 0; i < size(); ++i)
      if (leq(i, j) && !in[i]) return false;
  return true;
}

std::vector<std::size_t> FinSpace::component_ids() const {
  const std::size_t n = size();
  std::vector<std::size_t> comp(n, n);
  std::size_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    // BFS over the comparability graph.
    std::vector<std::size_t> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j)
        if (comp[j] == n && (leq(i, j) || leq(j, i))) {
          comp[j] = next;
          stack.push_back(j);
        }
    }
    ++next;
  }
  return comp;
}

std::vector<std::vector<std::string>> FinSpace::path_components() const {
  std::vector<std::vector<std::string>> classes;
  std::vector<std::size_t> comp = component_ids();
  std::size_t nclasses = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  classes.resize(nclasses);
  for (std::size_t i = 0; i < size(); ++i) classes[comp[i]].push_back(points_[i]);
  return classes;  // points_ sorted => class members sorted, classes by least member
}

std::pair<std::vector<std::vector<std::string>>, FinSpace> FinSpace::pi0() const {
  auto partition = path_components();
  std::vector<std::string> classes;
  for (const auto& cls : partition) classes.push_back(cls.front());
  return {std::move(partition), FinSpace::make(std::move(classes), {})};
}

bool FinSpace::is_connected() const {
  return size() <= 1 || path_components().size() == 1;
}

std::pair<FinSpace, std::map<std::string, std::string>> FinSpace::quotient(
    const std::vector<std::vector<std::string>>& partition) const {
  const std::size_t n = size();
  std::vector<std::size_t> cls(n, partition.size());
  for (std::size_t c = 0; c < partition.size(); ++c) {
    if (partition[c].empty()) fail("invalid partition: empty class");
    for (const auto& id : partition[c]) {
      std::size_t i = index_of(id);
      if (cls[i] != partition.size()) fail("invalid partition: point in two classes: " + id);
      cls[i] = c;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (cls[i] == partition.size()) fail("invalid partition: point not covered: " + points_[i]);

  std::vector<std::string> class_ids(partition.size());
  for (std::size_t c = 0; c < partition.size(); ++c)
    class_ids[c] = *std::min_element(partition[c].begin(), partition[c].end());

  // Quotient preorder by saturation: [x] <= [y] iff [x] is reached from [y]
  // by repeatedly stepping down along the projected relation. This equals the
  // reflexive-transitive closure of {([a],[b]) : a <= b}; the powerset oracle
  // in the tests confirms it matches the quotient topology.
  std::vector<std::pair<std::string, std::string>> proj;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (leq(i, j)) proj.emplace_back(class_ids[cls[i]], class_ids[cls[j]]);
  FinSpace q = FinSpace::make(class_ids, proj);

  std::map<std::string, std::string> projection;
  for (std::size_t i = 0; i < n; ++i) projection[points_[i]] = class_ids[cls[i]];
  return {std::move(q), std::move(projection)};
}

std::pair<FinSpace, std::map<std::string, std::string>> FinSpace::disjoint_union(
    const FinSpace& other) const {
  std::set<std::string> used(points_.begin(), points_.end());
  std::map<std::string, std::string> rename;
  for (const auto& id : other.points_) {
    std::string fresh = id;
    while (used.count(fresh)) fresh += '\'';
    used.insert(fresh);
    rename[id] = fresh;
  }
  std::vector<std::string> pts = points_;
  for (const auto& [o, f] : rename) pts.push_back(f);
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (leq(i, j)) rel.emplace_back(points_[i], points_[j]);
  for (std::size_t i = 0; i < other.size(); ++i)
    for (std::size_t j = 0; j < other.size(); ++j)
      if (other.leq(i, j)) rel.emplace_back(rename.at(other.points_[i]), rename.at(other.points_[j]));
  return {FinSpace::make(std::move(pts), rel), std::move(rename)};
}

namespace {

bool extend_iso(const FinSpace& a, const FinSpace& b, std::vector<std::size_t>& img,
                std::vector<std::uint8_t>& used, std::size_t i) {
  const std::size_t n = a.size();
  if (i == n) return true;
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j]) continue;
    if (img[i] != n && img[i] != j) continue;  // pinned (pointed search)
    bool ok = true;
    for (std::size_t k = 0; k < i && ok; ++k) {
      if (img[k] == n) continue;
      ok = (a.leq(i, k) == b.leq(j, img[k])) && (a.leq(k, i) == b.leq(img[k], j)) &&
           (a.leq(i, i) == b.leq(j, j));
    }
    if (!ok) continue;
    std::size_t saved = img[i];
    img[i] = j;
    used[j] = 1;
    if (extend_iso(a, b, img, used, i + 1)) return true;
    img[i] = saved;
    used[j] = 0;
    if (saved != n) return false;  // pinned slot failed
  }
  return false;
}

std::optional<std::map<std::string, std::string>> find_iso(const FinSpace& a, const FinSpace& b,
                                                           std::optional<std::pair<std::size_t, std::size_t>> pin) {
  if (a.size() != b.size()) return std::nullopt;
  const std::size_t n = a.size();
  // Degree profiles must match; quick rejection before backtracking.
  auto profile = [](const FinSpace& s) {
    std::vector<std::pair<std::size_t, std::size_t>> p(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (s.leq(i, j)) ++p[i].first;
        if (s.leq(j, i)) ++p[i].second;
      }
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
  };
  if (profile(a) != profile(b)) return std::nullopt;
  std::vector<std::size_t> img(n, n);
  std::vector<std::uint8_t> used(n, 0);
  if (pin) {
    img[pin->first] = pin->second;
  }
  if (!extend_iso(a, b, img, used, 0)) return std::nullopt;
  std::map<std::string, std::string> witness;
  for (std::size_t i = 0; i < n; ++i) witness[a.point(i)] = b.point(img[i]);
  return witness;
}

}  // namespace

std::optional<std::map<std::string, std::string>> FinSpace::homeomorphism_to(
    const FinSpace& other) const {
  return find_iso(*this, other, std::nullopt);
}

FinSpace FinSpace::subspace(const std::vector<std::string>& pts) const {
  std::vector<std::pair<std::string, std::string>> rel;
  for (const auto& x : pts)
    for (const auto& y : pts)
      if (leq(x, y)) rel.emplace_back(x, y);
  return FinSpace::make(pts, rel);
}

FinSpace FinSpace::renamed(const std::map<std::string, std::string>& rename) const {
  std::vector<std::string> pts;
  std::vector<std::pair<std::string, std::string>> rel;
  for (const auto& p : points_) pts.push_back(rename.at(p));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (leq(i, j)) rel.emplace_back(rename.at(points_[i]), rename.at(points_[j]));
  return FinSpace::make(std::move(pts), rel);
}

std::string FinSpace::to_text(const std::string& name) const {
  std::ostringstream out;
  out << "space " << name << "\n";
  for (const auto& p : points_) out << "point " << p << "\n";
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (i != j && leq(i, j)) out << "le " << points_[i] << " " << points_[j] << "\n";
  return out.str();
}

PointedFinSpace PointedFinSpace::make(FinSpace s, const std::string& base) {
  if (!s.has_point(base)) fail("basepoint not in space: " + base);
  return PointedFinSpace{std::move(s), base};
}

bool is_continuous(const ContinuousMap& f) {
  if (!f.source || !f.target) fail("continuous map without source/target");
  const FinSpace& a = *f.source;
  const FinSpace& b = *f.target;
  for (const auto& p : a.points())
    if (!f.assignment.count(p)) fail("assignment not total at: " + p);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.leq(i, j) && !b.leq(f.assignment.at(a.point(i)), f.assignment.at(a.point(j))))
        return false;
  return true;
}

PointedFinSpace wedge(const PointedFinSpace& x, const PointedFinSpace& y) {
  auto [sum, rename] = x.space.disjoint_union(y.space);
  std::vector<std::vector<std::string>> partition;
  std::vector<std::string> base_class{x.basepoint, rename.at(y.basepoint)};
  std::sort(base_class.begin(), base_class.end());
  partition.push_back(base_class);
  for (const auto& p : sum.points())
    if (p != base_class[0] && p != base_class[1]) partition.push_back({p});
  auto [q, proj] = sum.quotient(partition);
  return PointedFinSpace::make(std::move(q), proj.at(x.basepoint));
}

/// Pointed homeomorphism search: basepoints must correspond.
std::optional<std::map<std::string, std::string>> pointed_homeomorphism(
    const PointedFinSpace& a, const PointedFinSpace& b) {
  if (a.space.size() != b.space.size()) return std::nullopt;
  return find_iso(a.space, b.space,
                  std::make_pair(a.space.index_of(a.basepoint), b.space.index_of(b.basepoint)));
}

}  // namespace topofree
