#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topofree/common.hpp"

namespace topofree {

/// A finite topological space, stored as its specialization preorder.
/// x <= y means x lies in the minimal open set U_y of y; the open sets are
/// exactly the down-closed subsets. Points are kept sorted by id, which fixes
/// serialization and every tie-break downstream.
class FinSpace {
 public:
  FinSpace() = default;

  /// Builds from point ids and generating relations (x <= y pairs); the
  /// reflexive-transitive closure is taken. Throws on duplicate points or
  /// relations naming unknown points.
  static FinSpace make(std::vector<std::string> points,
                       const std::vector<std::pair<std::string, std::string>>& le_pairs);

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& point(std::size_t i) const { return points_[i]; }

  bool has_point(const std::string& id) const;
  std::size_t index_of(const std::string& id) const;

  bool leq(std::size_t i, std::size_t j) const { return le_[i * points_.size() + j] != 0; }
  bool leq(const std::string& x, const std::string& y) const;

  /// U_p = {x : x <= p}, the intersection of all open sets containing p.
  std::vector<std::string> minimal_open(const std::string& p) const;
  std::vector<std::size_t> minimal_open_idx(std::size_t p) const;

  /// A subset is open iff it is down-closed.
  bool is_open(const std::vector<std::size_t>& subset) const;

  /// Comparability components; the quotient by them is discrete. For finite
  /// spaces these are exactly the path components (comparable points are
  /// joined by a two-point path).
  std::vector<std::vector<std::string>> path_components() const;
  /// Component index per point, components numbered by least member.
  std::vector<std::size_t> component_ids() const;
  /// The partition together with its (discrete) quotient space.
  std::pair<std::vector<std::vector<std::string>>, FinSpace> pi0() const;
  bool is_connected() const;

  /// Quotient by a partition (given as classes of point ids). Class ids are
  /// the least member id. Returns the space and the projection point -> class.
  std::pair<FinSpace, std::map<std::string, std::string>> quotient(
      const std::vector<std::vector<std::string>>& partition) const;

  /// Sum of two spaces. Colliding ids in `other` get a `'` suffix appended
  /// until free; the returned map records the renaming of `other`'s points.
  std::pair<FinSpace, std::map<std::string, std::string>> disjoint_union(
      const FinSpace& other) const;

  /// Searches for an order-isomorphism; returns the witness if one exists.
  std::optional<std::map<std::string, std::string>> homeomorphism_to(const FinSpace& other) const;
  bool is_homeomorphic(const FinSpace& other) const { return homeomorphism_to(other).has_value(); }

  /// The subspace on the given points (induced preorder).
  FinSpace subspace(const std::vector<std::string>& pts) const;

  /// Renames points via the given total injective map.
  FinSpace renamed(const std::map<std::string, std::string>& rename) const;

  /// Text block without a trailing blank line:
  ///   space <name>\n point <id>... \n le <x> <y>...
  /// Emits all non-reflexive related pairs, sorted; load applies closure.
  std::string to_text(const std::string& name) const;

  bool operator==(const FinSpace& other) const = default;

 private:
  std::vector<std::string> points_;        // sorted
  std::vector<std::uint8_t> le_;           // row-major: le_[i*n+j] = (i <= j)
  friend class FinSpaceBuilder;
};

struct PointedFinSpace {
  FinSpace space;
  std::string basepoint;

  static PointedFinSpace make(FinSpace s, const std::string& base);
};

/// A map between finite spaces; continuous iff monotone.
struct ContinuousMap {
  const FinSpace* source = nullptr;
  const FinSpace* target = nullptr;
  std::map<std::string, std::string> assignment;
};

/// Monotonicity check (equivalent to "preimage of every open is open").
bool is_continuous(const ContinuousMap& f);

/// Wedge of two pointed spaces: quotient of the sum identifying basepoints.
PointedFinSpace wedge(const PointedFinSpace& x, const PointedFinSpace& y);

/// Order-isomorphism matching basepoints, if one exists.
std::optional<std::map<std::string, std::string>> pointed_homeomorphism(
    const PointedFinSpace& a, const PointedFinSpace& b);

}  // namespace topofree
