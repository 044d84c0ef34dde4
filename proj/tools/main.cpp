#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "topofree/cover.hpp"
#include "topofree/graev.hpp"
#include "topofree/groupoid.hpp"
#include "topofree/manifest.hpp"

namespace tf = topofree;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) tf::fail("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) tf::fail("cannot write file: " + path);
  out << data;
}

struct SubgroupArgs {
  std::string manifest_path;
  std::string subgroup;
  std::string space;
  std::string basepoint;
  std::string generators;
  std::size_t max_index = 10000;

  void attach(CLI::App* cmd) {
    cmd->add_option("--manifest", manifest_path, "Manifest file declaring spaces");
    cmd->add_option("--subgroup", subgroup, "Declared subgroup name");
    cmd->add_option("--space", space, "Ambient space name");
    cmd->add_option("--basepoint", basepoint, "Basepoint id");
    cmd->add_option("--generators", generators, "Generator words, `;`-separated");
    cmd->add_option("--max-index", max_index, "Coset state cap (default 10000)");
  }

  tf::SubgroupSpec resolve() const {
    if (manifest_path.empty()) tf::fail("--manifest is required");
    tf::Manifest m = tf::parse_manifest(read_file(manifest_path));
    if (!subgroup.empty()) return m.subgroup_spec(subgroup);
    if (space.empty() || basepoint.empty())
      tf::fail("need --subgroup or --space with --basepoint");
    auto sit = m.spaces.find(space);
    if (sit == m.spaces.end()) tf::fail("unknown space: " + space);
    return tf::SubgroupSpec::make(tf::PointedFinSpace::make(sit->second, basepoint),
                                  tf::parse_words(generators));
  }
};

void print_report(const tf::VerifyReport& report) {
  for (const auto& c : report.checks)
    std::cout << "check " << c.name << " " << (c.pass ? "pass" : "fail") << " : " << c.detail
              << "\n";
  std::cout << "result " << (report.all_pass() ? "pass" : "fail") << "\n";
}

int run_classify(const std::string& manifest_path, const std::string& space,
                 const std::string& basepoint) {
  tf::Manifest m = tf::parse_manifest(read_file(manifest_path));
  auto sit = m.spaces.find(space);
  if (sit == m.spaces.end()) tf::fail("unknown space: " + space);
  tf::ClassifyResult r = tf::classify(tf::PointedFinSpace::make(sit->second, basepoint));
  if (r.connected) {
    std::cout << "connected\n";
    return 0;
  }
  const tf::MarkovWitness& w = *r.witness;
  std::cout << "disconnected\n";
  std::cout << "split A1 :";
  for (const auto& p : w.a1) std::cout << " " << p;
  std::cout << "\nsplit A2 :";
  for (const auto& p : w.a2) std::cout << " " << p;
  std::cout << "\ne2 " << w.e2 << "\n";
  std::cout << w.wedge_space.space.to_text("wedge");
  std::cout << "basepoint " << w.wedge_space.basepoint << "\n";
  return 0;
}

int run_pi0(const std::string& manifest_path, const std::string& space,
            const std::string& graph) {
  tf::Manifest m = tf::parse_manifest(read_file(manifest_path));
  if (!space.empty()) {
    auto sit = m.spaces.find(space);
    if (sit == m.spaces.end()) tf::fail("unknown space: " + space);
    for (const auto& comp : sit->second.path_components()) {
      std::cout << "component " << comp.front() << " :";
      for (const auto& p : comp) std::cout << " " << p;
      std::cout << "\n";
    }
    return 0;
  }
  if (graph.empty()) tf::fail("pi0 needs --space or --graph");
  tf::TopGraph g = m.build_graph(graph);
  auto [pi0, q] = g.pi0_graph();
  std::cout << "graph pi0\n";
  for (const auto& v : pi0.vertices()) std::cout << "vertex " << v << "\n";
  for (const auto& [pair, spc] : g.edge_spaces()) {
    for (const auto& comp : spc.path_components()) {
      std::cout << "edge-class " << pair.first << " " << pair.second << " " << comp.front()
                << " :";
      for (const auto& p : comp) std::cout << " " << p;
      std::cout << "\n";
    }
  }
  return 0;
}

int run_vertex_group(const std::string& manifest_path, const std::string& graph,
                     std::string vertex) {
  tf::Manifest m = tf::parse_manifest(read_file(manifest_path));
  tf::TopGraph g = m.build_graph(graph);
  if (vertex.empty()) vertex = g.vertices().front();
  tf::Tree tree = tf::maximal_tree(g);
  tf::VertexGroupBasis basis = tf::vertex_group_basis(g, tree, vertex);
  for (const auto& e : tree.edges)
    std::cout << "tree-edge " << e.class_id << " rep " << e.points.front() << " from " << e.from
              << " to " << e.to << "\n";
  std::cout << basis.q.space.to_text("Q");
  std::cout << "basepoint " << basis.q.basepoint << "\n";
  for (const auto& [qp, loop] : basis.loops)
    std::cout << "loop " << qp << " : " << tf::format_word(loop.letters) << "\n";
  return 0;
}

int run_open_check(const SubgroupArgs& args, std::size_t strata_depth) {
  tf::SubgroupSpec sub = args.resolve();
  tf::OpennessCertificate cert = tf::decide_open(sub, args.max_index);
  std::cout << "open " << (cert.open ? "true" : "false") << "\n";
  std::cout << "reason " << cert.reason << "\n";
  if (cert.witness) std::cout << "witness " << tf::format_word(*cert.witness) << "\n";
  std::cout << "kernel-trivial " << (cert.kernel_trivial ? "true" : "false") << "\n";
  if (cert.component_index)
    std::cout << "component-index " << *cert.component_index << "\n";
  else
    std::cout << "component-index infinite\n";
  if (strata_depth > 0) {
    bool strata = tf::stratum_open_check(
        sub.ambient, [&](const tf::Word& w) { return cert.point_automaton.member(w); },
        strata_depth);
    std::cout << "stratum-open-check " << strata_depth << " " << (strata ? "true" : "false")
              << "\n";
    std::cout << "agreement " << ((strata == cert.open) ? "true" : "false") << "\n";
  }
  return cert.open ? 0 : 1;
}

int run_subgroup_basis(const SubgroupArgs& args, const std::string& emit_path) {
  tf::SubgroupSpec sub = args.resolve();
  // Not open (or no finite cover) is a mathematical negative, not a usage error.
  tf::OpennessCertificate open_cert = tf::decide_open(sub, args.max_index);
  if (!open_cert.open) {
    std::cout << "not-open : " << open_cert.reason << "\n";
    return 1;
  }
  if (!open_cert.component_index) {
    std::cout << "infinite-index : projected subgroup has infinite index, no finite cover\n";
    return 1;
  }
  tf::Certificate cert;
  cert.sub = sub;
  cert.input_hash = tf::input_hash(sub);
  cert.presentation = tf::subgroup_basis(sub, args.max_index);
  cert.report = tf::verify_presentation(sub, cert.presentation, args.max_index);
  std::string text = tf::emit_certificate(cert);
  std::cout << text;
  if (!emit_path.empty()) write_file(emit_path, text);
  return cert.report.all_pass() ? 0 : 1;
}

int run_verify(const std::string& cert_path) {
  tf::Certificate cert = tf::parse_certificate(read_file(cert_path));
  tf::VerifyReport report;
  bool hash_ok = cert.input_hash == tf::input_hash(cert.sub);
  report.checks.push_back(
      tf::CheckResult{"input-hash", hash_ok, hash_ok ? "matches" : "input hash mismatch"});
  tf::VerifyReport inner = tf::verify_presentation(cert.sub, cert.presentation);
  report.checks.insert(report.checks.end(), inner.checks.begin(), inner.checks.end());
  print_report(report);
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topofree: free Graev presentations of open subgroups over finite spaces"};
  app.require_subcommand(1);

  // classify
  auto* classify = app.add_subcommand("classify", "Connectivity trichotomy with Markov witness");
  std::string cl_manifest, cl_space, cl_base;
  classify->add_option("--manifest", cl_manifest)->required();
  classify->add_option("--space", cl_space)->required();
  classify->add_option("--basepoint", cl_base)->required();

  // pi0
  auto* pi0 = app.add_subcommand("pi0", "Path components of a space or graph");
  std::string p_manifest, p_space, p_graph;
  pi0->add_option("--manifest", p_manifest)->required();
  pi0->add_option("--space", p_space);
  pi0->add_option("--graph", p_graph);

  // vertex-group
  auto* vg = app.add_subcommand("vertex-group", "Free Graev basis of a graph vertex group");
  std::string v_manifest, v_graph, v_vertex;
  vg->add_option("--manifest", v_manifest)->required();
  vg->add_option("--graph", v_graph)->required();
  vg->add_option("--vertex", v_vertex);

  // open-check
  auto* oc = app.add_subcommand("open-check", "Decide openness of a subgroup");
  SubgroupArgs oc_args;
  oc_args.attach(oc);
  std::size_t strata_depth = 0;
  oc->add_option("--strata-depth", strata_depth, "Also run the bounded stratum openness check");

  // subgroup-basis
  auto* sb = app.add_subcommand("subgroup-basis", "Free Graev presentation of an open subgroup");
  SubgroupArgs sb_args;
  sb_args.attach(sb);
  std::string emit_path;
  sb->add_option("--emit-certificate", emit_path, "Also write the certificate to this path");

  // verify
  auto* vf = app.add_subcommand("verify", "Re-check an emitted certificate");
  std::string cert_path;
  vf->add_option("--certificate", cert_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify) return run_classify(cl_manifest, cl_space, cl_base);
    if (*pi0) return run_pi0(p_manifest, p_space, p_graph);
    if (*vg) return run_vertex_group(v_manifest, v_graph, v_vertex);
    if (*oc) return run_open_check(oc_args, strata_depth);
    if (*sb) return run_subgroup_basis(sb_args, emit_path);
    if (*vf) return run_verify(cert_path);
  } catch (const tf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
