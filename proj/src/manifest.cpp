#include "topofree/manifest.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace topofree {

PointedFinSpace Manifest::pointed_space(const std::string& name) const {
  auto it = pointed.find(name);
  if (it == pointed.end()) fail("unknown pointed space: " + name);
  auto sit = spaces.find(it->second.space_name);
  if (sit == spaces.end()) fail("pointed space " + name + " references unknown space");
  return PointedFinSpace::make(sit->second, it->second.basepoint);
}

TopGraph Manifest::build_graph(const std::string& name) const {
  auto it = graphs.find(name);
  if (it == graphs.end()) fail("unknown graph: " + name);
  std::map<TopGraph::VertexPair, FinSpace> edges;
  for (const auto& [pair, space_name] : it->second.edges) {
    auto sit = spaces.find(space_name);
    if (sit == spaces.end()) fail("graph " + name + " references unknown space: " + space_name);
    edges.emplace(pair, sit->second);
  }
  return TopGraph::make(it->second.vertices, std::move(edges));
}

SubgroupSpec Manifest::subgroup_spec(const std::string& name) const {
  auto it = subgroups.find(name);
  if (it == subgroups.end()) fail("unknown subgroup: " + name);
  return SubgroupSpec::make(pointed_space(it->second.pointed_name), it->second.generators);
}

namespace {

struct LineReader {
  std::vector<std::string> lines;
  std::size_t at = 0;

  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }
};

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
  fail("line " + std::to_string(line_no + 1) + ": " + msg);
}

long parse_int(std::size_t line_no, const std::string& tok) {
  try {
    std::size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) parse_fail(line_no, "not a number: " + tok);
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    parse_fail(line_no, "not a number: " + tok);
  }
}

}  // namespace

Manifest parse_manifest(const std::string& text) {
  LineReader reader(text);
  Manifest m;

  std::size_t i = 0;
  while (i < reader.lines.size() && trim(reader.lines[i]).empty()) ++i;
  if (i == reader.lines.size() || trim(reader.lines[i]) != Manifest::kVersion)
    parse_fail(i < reader.lines.size() ? i : 0,
               std::string("expected version line `") + Manifest::kVersion + "`");
  ++i;

  std::set<std::string> names;
  auto claim_name = [&](std::size_t line_no, const std::string& name) {
    if (!names.insert(name).second) parse_fail(line_no, "duplicate name: " + name);
  };

  // Current open block.
  std::string block_kind, block_name;
  std::vector<std::string> points, vertices;
  std::vector<std::pair<std::string, std::string>> le_pairs;
  std::map<std::pair<std::string, std::string>, std::string> graph_edges;
  std::vector<Word> gens;
  std::string sub_pointed;

  auto close_block = [&](std::size_t line_no) {
    if (block_kind.empty()) return;
    if (block_kind == "space") {
      m.spaces.emplace(block_name, FinSpace::make(points, le_pairs));
    } else if (block_kind == "graph") {
      m.graphs.emplace(block_name, Manifest::GraphDecl{vertices, graph_edges});
    } else if (block_kind == "subgroup") {
      m.subgroups.emplace(block_name, Manifest::SubgroupDecl{sub_pointed, gens});
    }
    (void)line_no;
    block_kind.clear();
    block_name.clear();
    points.clear();
    le_pairs.clear();
    vertices.clear();
    graph_edges.clear();
    gens.clear();
    sub_pointed.clear();
  };

  for (; i < reader.lines.size(); ++i) {
    std::string line = trim(reader.lines[i]);
    if (line.empty()) {
      close_block(i);
      continue;
    }
    auto tok = split_ws(line);
    const std::string& kw = tok[0];
    if (kw == "space" || kw == "graph" || kw == "subgroup" || kw == "pointed") {
      close_block(i);
      if (kw == "pointed") {
        if (tok.size() != 4) parse_fail(i, "expected `pointed <name> <space> <basepoint>`");
        claim_name(i, tok[1]);
        m.pointed.emplace(tok[1], Manifest::PointedDecl{tok[2], tok[3]});
        continue;
      }
      if (tok.size() < 2) parse_fail(i, "expected `" + kw + " <name>`");
      claim_name(i, tok[1]);
      block_kind = kw;
      block_name = tok[1];
      if (kw == "subgroup") {
        if (tok.size() != 3) parse_fail(i, "expected `subgroup <name> <pointed>`");
        sub_pointed = tok[2];
      } else if (tok.size() != 2) {
        parse_fail(i, "expected `" + kw + " <name>`");
      }
    } else if (kw == "point") {
      if (block_kind != "space") parse_fail(i, "`point` outside a space block");
      if (tok.size() != 2) parse_fail(i, "expected `point <id>`");
      points.push_back(tok[1]);
    } else if (kw == "le") {
      if (block_kind != "space") parse_fail(i, "`le` outside a space block");
      if (tok.size() != 3) parse_fail(i, "expected `le <x> <y>`");
      le_pairs.emplace_back(tok[1], tok[2]);
    } else if (kw == "vertex") {
      if (block_kind != "graph") parse_fail(i, "`vertex` outside a graph block");
      if (tok.size() != 2) parse_fail(i, "expected `vertex <id>`");
      vertices.push_back(tok[1]);
    } else if (kw == "edges") {
      if (block_kind != "graph") parse_fail(i, "`edges` outside a graph block");
      if (tok.size() != 4) parse_fail(i, "expected `edges <x> <y> <space>`");
      if (!graph_edges.emplace(std::make_pair(tok[1], tok[2]), tok[3]).second)
        parse_fail(i, "duplicate edge declaration for pair " + tok[1] + " " + tok[2]);
    } else if (kw == "gen") {
      if (block_kind != "subgroup") parse_fail(i, "`gen` outside a subgroup block");
      try {
        gens.push_back(parse_word(line.substr(3)));
      } catch (const Error& e) {
        parse_fail(i, e.what());
      }
    } else {
      parse_fail(i, "unknown keyword: " + kw);
    }
  }
  close_block(reader.lines.size());

  // Resolve references eagerly so dangling names fail at parse time.
  for (const auto& [name, decl] : m.pointed) {
    if (!m.spaces.count(decl.space_name))
      fail("pointed " + name + " references undeclared space " + decl.space_name);
    if (!m.spaces.at(decl.space_name).has_point(decl.basepoint))
      fail("pointed " + name + " basepoint " + decl.basepoint + " not in space");
  }
  for (const auto& [name, decl] : m.graphs) {
    for (const auto& [pair, space_name] : decl.edges)
      if (!m.spaces.count(space_name))
        fail("graph " + name + " references undeclared space " + space_name);
    m.build_graph(name);  // validates vertices and edge point uniqueness
  }
  for (const auto& [name, decl] : m.subgroups) {
    if (!m.pointed.count(decl.pointed_name))
      fail("subgroup " + name + " references undeclared pointed space " + decl.pointed_name);
    m.subgroup_spec(name);  // validates letters
  }
  return m;
}

std::string emit_manifest(const Manifest& m) {
  std::ostringstream out;
  out << Manifest::kVersion << "\n";
  for (const auto& [name, space] : m.spaces) {
    out << "\n" << space.to_text(name);
  }
  for (const auto& [name, decl] : m.pointed) {
    out << "\npointed " << name << " " << decl.space_name << " " << decl.basepoint << "\n";
  }
  for (const auto& [name, decl] : m.graphs) {
    out << "\ngraph " << name << "\n";
    std::vector<std::string> vs = decl.vertices;
    std::sort(vs.begin(), vs.end());
    for (const auto& v : vs) out << "vertex " << v << "\n";
    for (const auto& [pair, space_name] : decl.edges)
      out << "edges " << pair.first << " " << pair.second << " " << space_name << "\n";
  }
  for (const auto& [name, decl] : m.subgroups) {
    out << "\nsubgroup " << name << " " << decl.pointed_name << "\n";
    for (const auto& g : decl.generators) out << "gen " << format_word(g) << "\n";
  }
  return out.str();
}

std::string input_hash(const SubgroupSpec& sub) {
  std::ostringstream data;
  data << sub.ambient.space.to_text("X") << "basepoint " << sub.ambient.basepoint << "\n";
  for (const auto& g : sub.generators) data << "gen " << format_word(g) << "\n";
  return hex64(fnv1a64(data.str()));
}

std::string emit_certificate(const Certificate& cert) {
  std::ostringstream out;
  const PointedFinSpace& xs = cert.sub.ambient;
  out << "topofree-certificate v1\n";
  out << "input-hash " << cert.input_hash << "\n";
  out << "basepoint " << xs.basepoint << "\n";
  for (const auto& p : xs.space.points()) out << "point " << p << "\n";
  for (std::size_t i = 0; i < xs.space.size(); ++i)
    for (std::size_t j = 0; j < xs.space.size(); ++j)
      if (i != j && xs.space.leq(i, j))
        out << "le " << xs.space.point(i) << " " << xs.space.point(j) << "\n";
  for (const auto& g : cert.sub.generators) out << "generator " << format_word(g) << "\n";

  const GraevPresentation& p = cert.presentation;
  out << "index " << p.index << "\n";
  const Automaton& aut = p.component_automaton;
  for (std::size_t l = 0; l < aut.alphabet().size(); ++l) {
    out << "transition " << aut.alphabet()[l] << " :";
    for (std::size_t s = 0; s < aut.num_states(); ++s) out << " " << aut.next(static_cast<int>(s), l, 1);
    out << "\n";
  }
  for (std::size_t i = 0; i < p.transversal.size(); ++i)
    out << "transversal " << i << " : " << format_word(p.transversal[i]) << "\n";
  for (const auto& e : p.tree.edges)
    out << "tree-edge " << e.class_id << " rep " << e.points.front() << " from " << e.from
        << " to " << e.to << "\n";
  for (const auto& q : p.space.space.points()) out << "qpoint " << q << "\n";
  for (std::size_t i = 0; i < p.space.space.size(); ++i)
    for (std::size_t j = 0; j < p.space.space.size(); ++j)
      if (i != j && p.space.space.leq(i, j))
        out << "qle " << p.space.space.point(i) << " " << p.space.space.point(j) << "\n";
  out << "qbase " << p.space.basepoint << "\n";
  for (const auto& [qp, w] : p.generator_words)
    out << "genword " << qp << " from " << p.source_points.at(qp) << " : " << format_word(w)
        << "\n";
  for (const auto& c : cert.report.checks)
    out << "check " << c.name << " " << (c.pass ? "pass" : "fail") << " : " << c.detail << "\n";
  out << "result " << (cert.report.all_pass() ? "pass" : "fail") << "\n";
  return out.str();
}

Certificate parse_certificate(const std::string& text) {
  LineReader reader(text);
  std::size_t i = 0;
  while (i < reader.lines.size() && trim(reader.lines[i]).empty()) ++i;
  if (i == reader.lines.size() || trim(reader.lines[i]) != "topofree-certificate v1")
    parse_fail(i < reader.lines.size() ? i : 0, "expected `topofree-certificate v1`");
  ++i;

  std::string hash, basepoint, qbase;
  std::vector<std::string> points, qpoints;
  std::vector<std::pair<std::string, std::string>> les, qles;
  std::vector<Word> gens;
  std::size_t index = 0;
  bool have_index = false;
  std::vector<std::pair<std::string, std::vector<int>>> transitions;
  std::vector<std::pair<std::size_t, Word>> transversal;
  std::vector<TreeEdge> tree_edges;
  struct GenWord {
    std::string qp, xp;
    Word w;
  };
  std::vector<GenWord> genwords;
  std::vector<CheckResult> checks;

  for (; i < reader.lines.size(); ++i) {
    std::string line = trim(reader.lines[i]);
    if (line.empty()) continue;
    auto tok = split_ws(line);
    const std::string& kw = tok[0];
    auto need = [&](std::size_t n, const char* what) {
      if (tok.size() != n) parse_fail(i, std::string("expected `") + what + "`");
    };
    if (kw == "input-hash") {
      need(2, "input-hash <hex>");
      hash = tok[1];
    } else if (kw == "basepoint") {
      need(2, "basepoint <id>");
      basepoint = tok[1];
    } else if (kw == "point") {
      need(2, "point <id>");
      points.push_back(tok[1]);
    } else if (kw == "le") {
      need(3, "le <x> <y>");
      les.emplace_back(tok[1], tok[2]);
    } else if (kw == "generator") {
      gens.push_back(parse_word(line.substr(10)));
    } else if (kw == "index") {
      need(2, "index <n>");
      index = static_cast<std::size_t>(parse_int(i, tok[1]));
      have_index = true;
    } else if (kw == "transition") {
      if (tok.size() < 3 || tok[2] != ":") parse_fail(i, "expected `transition <letter> : ...`");
      std::vector<int> row;
      for (std::size_t k = 3; k < tok.size(); ++k)
        row.push_back(static_cast<int>(parse_int(i, tok[k])));
      transitions.emplace_back(tok[1], std::move(row));
    } else if (kw == "transversal") {
      if (tok.size() < 3 || tok[2] != ":") parse_fail(i, "expected `transversal <i> : <word>`");
      std::string word_text = line.substr(line.find(':') + 1);
      transversal.emplace_back(static_cast<std::size_t>(parse_int(i, tok[1])),
                               parse_word(word_text));
    } else if (kw == "tree-edge") {
      if (tok.size() != 8 || tok[2] != "rep" || tok[4] != "from" || tok[6] != "to")
        parse_fail(i, "expected `tree-edge <class> rep <pt> from <v> to <w>`");
      tree_edges.push_back(TreeEdge{tok[1], {tok[3]}, tok[5], tok[7]});
    } else if (kw == "qpoint") {
      need(2, "qpoint <id>");
      qpoints.push_back(tok[1]);
    } else if (kw == "qle") {
      need(3, "qle <x> <y>");
      qles.emplace_back(tok[1], tok[2]);
    } else if (kw == "qbase") {
      need(2, "qbase <id>");
      qbase = tok[1];
    } else if (kw == "genword") {
      if (tok.size() < 5 || tok[2] != "from" || tok[4] != ":")
        parse_fail(i, "expected `genword <qp> from <xp> : <word>`");
      std::string word_text = line.substr(line.find(':') + 1);
      genwords.push_back(GenWord{tok[1], tok[3], parse_word(word_text)});
    } else if (kw == "check") {
      if (tok.size() < 3) parse_fail(i, "expected `check <name> <pass|fail> : <detail>`");
      std::size_t colon = line.find(':');
      checks.push_back(CheckResult{tok[1], tok[2] == "pass",
                                   colon == std::string::npos ? "" : trim(line.substr(colon + 1))});
    } else if (kw == "result") {
      // informational; recomputed by verify
    } else {
      parse_fail(i, "unknown certificate keyword: " + kw);
    }
  }

  if (basepoint.empty()) fail("certificate missing basepoint");
  if (qbase.empty()) fail("certificate missing qbase");
  if (!have_index) fail("certificate missing index");

  Certificate cert;
  cert.input_hash = hash;
  cert.sub = SubgroupSpec::make(
      PointedFinSpace::make(FinSpace::make(points, les), basepoint), gens);

  GraevPresentation& p = cert.presentation;
  p.space = PointedFinSpace::make(FinSpace::make(qpoints, qles), qbase);
  p.index = index;
  p.tree.edges = std::move(tree_edges);
  std::sort(transversal.begin(), transversal.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [k, w] : transversal) p.transversal.push_back(std::move(w));
  for (auto& gw : genwords) {
    p.generator_words[gw.qp] = std::move(gw.w);
    p.source_points[gw.qp] = gw.xp;
  }
  std::vector<std::string> alphabet;
  std::vector<std::vector<int>> rows;
  std::sort(transitions.begin(), transitions.end());
  for (auto& [l, row] : transitions) {
    alphabet.push_back(l);
    rows.push_back(std::move(row));
  }
  p.component_automaton = Automaton::from_transitions(std::move(alphabet), std::move(rows));
  cert.report.checks = std::move(checks);
  return cert;
}

}  // namespace topofree
