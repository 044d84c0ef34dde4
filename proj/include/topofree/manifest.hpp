#pragma once

#include <map>
#include <string>
#include <vector>

#include "topofree/cover.hpp"
#include "topofree/finspace.hpp"
#include "topofree/topgraph.hpp"
#include "topofree/word.hpp"

namespace topofree {

/// Parsed batch input: named spaces, pointed spaces, graphs and subgroup
/// specs. Graph edge declarations keep the referenced space names so that
/// re-serialization is byte-identical.
struct Manifest {
  static constexpr const char* kVersion = "topofree v1";

  struct GraphDecl {
    std::vector<std::string> vertices;                           // sorted
    std::map<std::pair<std::string, std::string>, std::string> edges;  // pair -> space name
  };
  struct PointedDecl {
    std::string space_name;
    std::string basepoint;
  };
  struct SubgroupDecl {
    std::string pointed_name;
    std::vector<Word> generators;
  };

  std::map<std::string, FinSpace> spaces;
  std::map<std::string, PointedDecl> pointed;
  std::map<std::string, GraphDecl> graphs;
  std::map<std::string, SubgroupDecl> subgroups;

  PointedFinSpace pointed_space(const std::string& name) const;
  TopGraph build_graph(const std::string& name) const;
  SubgroupSpec subgroup_spec(const std::string& name) const;
};

/// Parses the line-based manifest text. Errors carry the 1-based line number.
Manifest parse_manifest(const std::string& text);

/// Canonical emission: sorted names, sorted points, all non-reflexive le
/// pairs; parse . emit . parse is stable.
std::string emit_manifest(const Manifest& m);

/// A self-contained certificate for one subgroup_basis run.
struct Certificate {
  SubgroupSpec sub;
  GraevPresentation presentation;
  VerifyReport report;
  std::string input_hash;
};

std::string input_hash(const SubgroupSpec& sub);

/// Deterministic text form; embeds the inputs, the derived data and every
/// check result, so `verify` can re-check it without other files.
std::string emit_certificate(const Certificate& cert);

Certificate parse_certificate(const std::string& text);

}  // namespace topofree
