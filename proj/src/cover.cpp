#include "topofree/cover.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace topofree {

SubgroupSpec SubgroupSpec::make(PointedFinSpace ambient, std::vector<Word> generators) {
  for (auto& g : generators) {
    Word kept;
    for (const auto& l : g) {
      if (!ambient.space.has_point(l.id)) fail("subgroup generator letter outside X: " + l.id);
      if (l.id == ambient.basepoint) continue;
      kept.push_back(l);
    }
    g = free_reduce(std::move(kept));
  }
  return SubgroupSpec{std::move(ambient), std::move(generators)};
}

Components components_of(const PointedFinSpace& xs) {
  Components c;
  c.classes = xs.space.path_components();
  for (const auto& cls : c.classes) {
    const std::string& id = cls.front();
    for (const auto& p : cls) c.class_of[p] = id;
  }
  c.base_class = c.class_of.at(xs.basepoint);
  for (const auto& cls : c.classes)
    if (cls.front() != c.base_class) c.letters.push_back(cls.front());
  std::sort(c.letters.begin(), c.letters.end());
  return c;
}

Word component_projection(const PointedFinSpace& xs, const Word& w) {
  Components c = components_of(xs);
  Word out;
  for (const auto& l : w) {
    const std::string& cls = c.class_of.at(l.id);
    if (cls == c.base_class) continue;
    out.push_back(Letter{cls, l.sign});
  }
  return free_reduce(std::move(out));
}

Automaton stallings_fold(const std::vector<std::string>& alphabet,
                         const std::vector<Word>& generators, std::size_t state_cap) {
  return Automaton::fold(alphabet, generators, state_cap);
}

namespace {

std::vector<std::string> point_alphabet_of(const PointedFinSpace& xs) {
  std::vector<std::string> out;
  for (const auto& p : xs.space.points())
    if (p != xs.basepoint) out.push_back(p);
  return out;
}

/// Component relators in deterministic order: x y^-1 joining each non-least
/// point of a component to its least point, and the bare letters lying in the
/// basepoint component.
std::vector<Word> component_relators(const PointedFinSpace& xs, const Components& c) {
  std::vector<Word> out;
  for (const auto& cls : c.classes) {
    bool base = cls.front() == c.base_class;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (base) {
        if (cls[i] != xs.basepoint) out.push_back(Word{Letter{cls[i], 1}});
      } else if (i > 0) {
        out.push_back(Word{Letter{cls.front(), 1}, Letter{cls[i], -1}});
      }
    }
  }
  return out;
}

std::map<std::string, std::string> point_class_for_inflate(const PointedFinSpace& xs,
                                                           const Components& c) {
  std::map<std::string, std::string> out;
  for (const auto& p : xs.space.points()) {
    if (p == xs.basepoint) continue;
    const std::string& cls = c.class_of.at(p);
    out[p] = (cls == c.base_class) ? std::string() : cls;
  }
  return out;
}

/// Searches for a kernel element outside H: plain relators first, then
/// relators conjugated by short words (breadth-first over reduced words).
std::optional<std::pair<Word, bool>> kernel_witness(const PointedFinSpace& xs,
                                                    const Components& c,
                                                    const Automaton& point_aut) {
  std::vector<Word> relators = component_relators(xs, c);
  for (const auto& r : relators)
    if (!point_aut.member(r)) return std::make_pair(r, false);

  std::vector<std::string> alpha = point_alphabet_of(xs);
  std::vector<Word> frontier{Word{}};
  std::size_t budget = 50000;  // conjugating words tried before giving up
  for (std::size_t depth = 0; depth < point_aut.num_states() + 3 && budget > 0; ++depth) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& a : alpha) {
        for (int sign : {1, -1}) {
          if (budget == 0) break;
          Word cw = w;
          cw.push_back(Letter{a, sign});
          if (!is_reduced(cw)) continue;
          --budget;
          for (const auto& r : relators) {
            Word cand = concat_reduce(concat_reduce(cw, r), inverse(cw));
            if (!cand.empty() && !point_aut.member(cand)) return std::make_pair(cand, true);
          }
          next.push_back(std::move(cw));
        }
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

OpennessCertificate decide_open(const SubgroupSpec& sub, std::size_t state_cap) {
  const PointedFinSpace& xs = sub.ambient;
  Components c = components_of(xs);

  OpennessCertificate cert;
  std::vector<Word> projected;
  for (const auto& g : sub.generators) projected.push_back(component_projection(xs, g));
  cert.component_automaton = Automaton::fold(c.letters, projected, state_cap);
  cert.point_automaton = Automaton::fold(point_alphabet_of(xs), sub.generators, state_cap);
  cert.component_index = cert.component_automaton.finite_index();

  bool base_singleton = c.class_of.size() > 0;
  for (const auto& [p, cls] : c.class_of) {
    if (cls == c.base_class && p != xs.basepoint) base_singleton = false;
  }
  bool others_singleton = true;
  for (const auto& cls : c.classes)
    if (cls.front() != c.base_class && cls.size() > 1) others_singleton = false;
  cert.kernel_trivial = base_singleton && others_singleton;

  if (cert.kernel_trivial) {
    cert.open = true;
    cert.reason = "letters inject into components; the component kernel is trivial";
    return cert;
  }

  if (!cert.component_index) {
    cert.open = false;
    cert.reason =
        "projected subgroup has infinite index and the component kernel is nontrivial";
    if (auto w = kernel_witness(xs, c, cert.point_automaton)) {
      cert.witness = w->first;
      cert.reason = std::string(w->second ? "conjugated component relator " : "component relator ") +
                    format_word(w->first) + " not in subgroup";
    }
    return cert;
  }

  Automaton expected =
      cert.component_automaton.inflate(point_alphabet_of(xs), point_class_for_inflate(xs, c));
  cert.open = (cert.point_automaton == expected);
  if (cert.open) {
    cert.reason = "subgroup equals the full preimage of its component projection (index " +
                  std::to_string(*cert.component_index) + ")";
  } else {
    cert.reason = "subgroup is a proper subgroup of the preimage of its component projection";
    if (auto w = kernel_witness(xs, c, cert.point_automaton)) {
      cert.witness = w->first;
      cert.reason = std::string(w->second ? "conjugated component relator " : "component relator ") +
                    format_word(w->first) + " not in subgroup";
    }
  }
  return cert;
}

CoveringTopGraph schreier_cover(const SubgroupSpec& sub, std::size_t state_cap) {
  const PointedFinSpace& xs = sub.ambient;
  OpennessCertificate cert = decide_open(sub, state_cap);
  if (!cert.open) fail("schreier_cover: subgroup is not open: " + cert.reason);
  std::optional<std::size_t> idx = cert.component_index;
  if (!idx) fail("schreier_cover: projected subgroup has infinite index");
  const std::size_t n = *idx;

  CoveringTopGraph cover;
  cover.automaton = cert.component_automaton;
  cover.index = n;
  cover.base = TopGraph::make({"a", "b"}, {{{"a", "b"}, xs.space}});

  Components c = components_of(xs);
  std::vector<std::string> vertices;
  std::map<TopGraph::VertexPair, std::vector<std::string>> pair_points;
  std::map<TopGraph::VertexPair, std::vector<std::pair<std::string, std::string>>> pair_rels;
  for (std::size_t i = 0; i < n; ++i) {
    vertices.push_back("a@" + std::to_string(i));
    vertices.push_back("b@" + std::to_string(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    cover.vertex_map["a@" + std::to_string(i)] = "a";
    cover.vertex_map["b@" + std::to_string(i)] = "b";
    for (const auto& cls : c.classes) {
      bool base_comp = cls.front() == c.base_class;
      std::size_t j = i;
      if (!base_comp) {
        int t = cover.automaton.next(static_cast<int>(i),
                                     cover.automaton.letter_index(cls.front()), 1);
        j = static_cast<std::size_t>(t);
      }
      TopGraph::VertexPair pair{"a@" + std::to_string(i), "b@" + std::to_string(j)};
      std::string least_copy;
      for (const auto& p : cls) {
        std::string copy = p + "@" + std::to_string(i);
        cover.edge_map[copy] = p;
        pair_points[pair].push_back(copy);
        if (least_copy.empty() || copy < least_copy) least_copy = copy;
      }
      for (const auto& p : cls)
        for (const auto& q : cls)
          if (p != q && xs.space.leq(p, q))
            pair_rels[pair].emplace_back(p + "@" + std::to_string(i), q + "@" + std::to_string(i));
      cover.lifts.push_back(CoveringTopGraph::Lift{least_copy, cls.front(), i, pair.first,
                                                   pair.second, base_comp});
    }
  }
  std::map<TopGraph::VertexPair, FinSpace> edges;
  for (auto& [pair, pts] : pair_points)
    edges.emplace(pair, FinSpace::make(std::move(pts), pair_rels[pair]));
  cover.total = TopGraph::make(std::move(vertices), std::move(edges));
  return cover;
}

namespace {

/// Base-level translation: project the cover loop along p, drop basepoint
/// letters (the base tree is the single point *), keep the rest.
Word ambient_word(const CoveringTopGraph& cover, const std::string& basepoint,
                  const Word& cover_letters) {
  Word out;
  for (const auto& l : cover_letters) {
    const std::string& x = cover.edge_map.at(l.id);
    if (x == basepoint) continue;
    out.push_back(Letter{x, l.sign});
  }
  return free_reduce(std::move(out));
}

}  // namespace

GraevPresentation subgroup_basis(const SubgroupSpec& sub, std::size_t state_cap) {
  const PointedFinSpace& xs = sub.ambient;
  CoveringTopGraph cover = schreier_cover(sub, state_cap);

  // The spanning tree of the cover mirrors the base tree {*}: every lifted
  // basepoint edge a@i -- b@i, plus a BFS-least spanning tree of the coset
  // automaton (letters ascending, forward before backward). The projected
  // tree words are then exactly the BFS-least Schreier transversal, which
  // keeps the component-level basis Nielsen-reduced.
  std::map<std::pair<std::size_t, std::string>, const CoveringTopGraph::Lift*> lift_at;
  std::vector<const CoveringTopGraph::Lift*> base_lifts(cover.index, nullptr);
  for (const auto& lift : cover.lifts) {
    if (lift.base_component)
      base_lifts[lift.coset] = &lift;
    else
      lift_at[{lift.coset, lift.x_class}] = &lift;
  }
  auto vertical_edge = [&](std::size_t i) {
    const auto* lift = base_lifts[i];
    return TreeEdge{lift->cover_class,
                    {xs.basepoint + "@" + std::to_string(i)},
                    lift->from,
                    lift->to};
  };
  auto letter_edge = [&](std::size_t coset, const std::string& cls) {
    const auto* lift = lift_at.at({coset, cls});
    return TreeEdge{lift->cover_class, {lift->cover_class}, lift->from, lift->to};
  };

  Tree tree;
  const Automaton& aut = cover.automaton;
  std::vector<bool> discovered(cover.index, false);
  std::vector<std::size_t> queue{0};
  discovered[0] = true;
  tree.edges.push_back(vertical_edge(0));
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t s = queue[qi];
    for (std::size_t l = 0; l < aut.alphabet().size(); ++l) {
      for (int sign : {1, -1}) {
        int t = aut.next(static_cast<int>(s), l, sign);
        if (t < 0 || discovered[static_cast<std::size_t>(t)]) continue;
        discovered[static_cast<std::size_t>(t)] = true;
        // Forward discovery uses the letter copy at s, backward the copy at t.
        std::size_t copy_coset = sign > 0 ? s : static_cast<std::size_t>(t);
        tree.edges.push_back(letter_edge(copy_coset, aut.alphabet()[l]));
        tree.edges.push_back(vertical_edge(static_cast<std::size_t>(t)));
        queue.push_back(static_cast<std::size_t>(t));
      }
    }
  }

  auto [q, proj] = quotient_by_tree(cover.total, tree);

  GraevPresentation pres;
  pres.space = q;
  pres.tree = tree;
  pres.component_automaton = cover.automaton;
  pres.index = cover.index;

  std::map<std::string, std::string> back;  // Q point -> cover edge point
  for (const auto& [e, qp] : proj) {
    if (qp == q.basepoint) continue;
    back[qp] = e;
  }
  for (const auto& [qp, e] : back) {
    const auto& [from, to] = cover.total.edge_endpoints(e);
    GroupoidWord loop = retract(cover.total, tree, "a@0",
                                make_groupoid_word(cover.total, from, Word{Letter{e, 1}}));
    pres.generator_words[qp] = ambient_word(cover, xs.basepoint, loop.letters);
    pres.source_points[qp] = cover.edge_map.at(e);
  }
  for (std::size_t i = 0; i < cover.index; ++i) {
    GroupoidWord tw = tree_word(cover.total, tree, "a@0", "a@" + std::to_string(i));
    pres.transversal.push_back(ambient_word(cover, xs.basepoint, tw.letters));
  }
  return pres;
}

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

VerifyReport verify_presentation(const SubgroupSpec& sub, const GraevPresentation& p,
                                 std::size_t state_cap) {
  const PointedFinSpace& xs = sub.ambient;
  Components c = components_of(xs);
  VerifyReport report;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    report.checks.push_back(CheckResult{name, pass, detail});
  };

  OpennessCertificate cert = decide_open(sub, state_cap);
  add("subgroup-open", cert.open, cert.reason);

  // (i) Every generator word lies in H.
  {
    bool ok = true;
    std::string bad;
    for (const auto& [qp, w] : p.generator_words) {
      if (!cert.point_automaton.member(w)) {
        ok = false;
        bad = qp + " -> " + format_word(w);
        break;
      }
    }
    add("membership", ok, ok ? "all generator words lie in the subgroup"
                             : "word not in subgroup: " + bad);
  }

  // (ii) The generator words generate exactly the subgroup (H plus the
  // component relators), compared through canonical folded automata.
  {
    bool ok = false;
    std::string detail;
    if (!cert.component_index) {
      detail = "projected subgroup has infinite index";
    } else {
      std::vector<Word> words;
      for (const auto& [qp, w] : p.generator_words) words.push_back(w);
      std::vector<std::string> alpha;
      for (const auto& pt : xs.space.points())
        if (pt != xs.basepoint) alpha.push_back(pt);
      Automaton folded = Automaton::fold(alpha, words, state_cap);
      std::map<std::string, std::string> pc;
      for (const auto& pt : alpha) {
        const std::string& cls = c.class_of.at(pt);
        pc[pt] = (cls == c.base_class) ? std::string() : cls;
      }
      Automaton expected = cert.component_automaton.inflate(alpha, pc);
      ok = (folded == expected);
      detail = ok ? "folded generator words match the subgroup automaton"
                  : "folded generator words define a different subgroup";
    }
    add("subgroup-equality", ok, detail);
  }

  // (iii) Nielsen-Schreier rank counts.
  {
    std::size_t n = p.index;
    std::size_t r = c.letters.size();
    std::size_t m = xs.space.size();
    std::size_t comp_rank = 0;
    for (const auto& cls : p.space.space.path_components())
      if (!std::binary_search(cls.begin(), cls.end(), p.space.basepoint)) ++comp_rank;
    std::size_t point_rank = p.generator_words.size();
    bool comp_ok = r == 0 ? comp_rank == 0 : comp_rank == n * (r - 1) + 1;
    bool point_ok = m <= 1 ? point_rank == 0 : point_rank == n * (m - 2) + 1;
    std::ostringstream d;
    d << "component rank " << comp_rank << (r == 0 ? " (projection trivial)" : "")
      << ", expected n(r-1)+1 with n=" << n << " r=" << r << "; point rank " << point_rank;
    add("rank", comp_ok && point_ok, d.str());
  }

  // (iv) Each non-tree component copy of Q is carried homeomorphically onto
  // its source component of X by the recorded point sources.
  {
    bool ok = true;
    std::string detail = "all non-basepoint components match their source components";
    for (const auto& cls : p.space.space.path_components()) {
      if (std::binary_search(cls.begin(), cls.end(), p.space.basepoint)) continue;
      std::vector<std::string> sources;
      for (const auto& qp : cls) {
        auto it = p.source_points.find(qp);
        if (it == p.source_points.end()) {
          ok = false;
          detail = "missing source point for " + qp;
          break;
        }
        sources.push_back(it->second);
      }
      if (!ok) break;
      std::sort(sources.begin(), sources.end());
      if (std::unique(sources.begin(), sources.end()) != sources.end()) {
        ok = false;
        detail = "source map not injective on component of " + cls.front();
        break;
      }
      const std::string& xcls = c.class_of.count(sources.front()) ? c.class_of.at(sources.front())
                                                                  : std::string();
      auto xit = std::find_if(c.classes.begin(), c.classes.end(),
                              [&](const auto& k) { return k.front() == xcls; });
      if (xit == c.classes.end() || *xit != sources) {
        ok = false;
        detail = "component of " + cls.front() + " is not a whole component of X";
        break;
      }
      // Order isomorphism under the source map.
      for (const auto& u : cls) {
        for (const auto& v : cls) {
          if (p.space.space.leq(u, v) != xs.space.leq(p.source_points.at(u), p.source_points.at(v))) {
            ok = false;
            detail = "component of " + cls.front() + " not homeomorphic to its source";
          }
        }
      }
      if (!ok) break;
    }
    add("component-homeomorphism", ok, detail);
  }

  // (v) Component-level projections cohere on each component of Q and form a
  // Nielsen-reduced generating set.
  {
    bool ok = true;
    std::string detail;
    std::vector<Word> class_words;
    for (const auto& cls : p.space.space.path_components()) {
      bool base = std::binary_search(cls.begin(), cls.end(), p.space.basepoint);
      std::optional<Word> common;
      for (const auto& qp : cls) {
        if (qp == p.space.basepoint) continue;
        auto it = p.generator_words.find(qp);
        if (it == p.generator_words.end()) continue;
        Word proj = component_projection(xs, it->second);
        if (base && !proj.empty()) {
          ok = false;
          detail = "word of " + qp + " in the basepoint component has nontrivial projection";
          break;
        }
        if (!common) {
          common = proj;
        } else if (*common != proj) {
          ok = false;
          detail = "component projections disagree inside component of " + cls.front();
          break;
        }
      }
      if (!ok) break;
      if (!base && common) {
        if (common->empty()) {
          ok = false;
          detail = "non-basepoint component of " + cls.front() + " projects to the identity";
          break;
        }
        class_words.push_back(*common);
      }
    }
    if (ok) {
      // No product of two basis words or inverses may cancel more than half
      // of either factor.
      for (std::size_t i = 0; i < class_words.size() && ok; ++i) {
        for (std::size_t j = 0; j < class_words.size() && ok; ++j) {
          for (int si : {1, -1}) {
            for (int sj : {1, -1}) {
              Word u = si > 0 ? class_words[i] : inverse(class_words[i]);
              Word v = sj > 0 ? class_words[j] : inverse(class_words[j]);
              if (u == inverse(v)) continue;
              std::size_t k = cancellation(u, v);
              if (2 * k > u.size() || 2 * k > v.size()) {
                ok = false;
                detail = "cancellation exceeds half: " + format_word(u) + " . " + format_word(v);
              }
            }
          }
        }
      }
      if (ok && detail.empty()) detail = "projections cohere; component basis is Nielsen-reduced";
    }
    add("nielsen-reduced", ok, detail);
  }

  return report;
}

}  // namespace topofree
