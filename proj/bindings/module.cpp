#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "topofree/cover.hpp"
#include "topofree/graev.hpp"
#include "topofree/groupoid.hpp"
#include "topofree/manifest.hpp"

namespace py = pybind11;
namespace tf = topofree;

namespace {

tf::FinSpace make_space(const std::vector<std::string>& points,
                        const std::vector<std::pair<std::string, std::string>>& le) {
  return tf::FinSpace::make(points, le);
}

tf::SubgroupSpec make_subgroup(const tf::FinSpace& space, const std::string& basepoint,
                               const std::string& generators) {
  return tf::SubgroupSpec::make(tf::PointedFinSpace::make(space, basepoint),
                                tf::parse_words(generators));
}

py::dict openness_dict(const tf::OpennessCertificate& cert) {
  py::dict out;
  out["open"] = cert.open;
  out["kernel_trivial"] = cert.kernel_trivial;
  out["reason"] = cert.reason;
  out["witness"] = cert.witness ? py::object(py::str(tf::format_word(*cert.witness)))
                                : py::object(py::none());
  if (cert.component_index)
    out["component_index"] = *cert.component_index;
  else
    out["component_index"] = py::none();
  return out;
}

py::dict presentation_dict(const tf::SubgroupSpec& sub, const tf::GraevPresentation& p,
                           const tf::VerifyReport& report, const std::string& cert_text) {
  py::dict words, sources;
  for (const auto& [qp, w] : p.generator_words) words[py::str(qp)] = tf::format_word(w);
  for (const auto& [qp, xp] : p.source_points) sources[py::str(qp)] = xp;
  py::list checks;
  for (const auto& c : report.checks) checks.append(py::make_tuple(c.name, c.pass, c.detail));
  py::dict out;
  out["space"] = p.space.space;
  out["basepoint"] = p.space.basepoint;
  out["generator_words"] = words;
  out["source_points"] = sources;
  out["index"] = p.index;
  out["checks"] = checks;
  out["all_pass"] = report.all_pass();
  out["certificate"] = cert_text;
  (void)sub;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Free Graev presentations of open subgroups over finite topological spaces";

  py::register_exception<tf::Error>(m, "TopofreeError");

  py::class_<tf::FinSpace>(m, "FinSpace")
      .def(py::init(&make_space), py::arg("points"), py::arg("le"))
      .def_property_readonly("points", &tf::FinSpace::points)
      .def("leq", py::overload_cast<const std::string&, const std::string&>(
                      &tf::FinSpace::leq, py::const_))
      .def("minimal_open", &tf::FinSpace::minimal_open)
      .def("path_components", &tf::FinSpace::path_components)
      .def("is_connected", &tf::FinSpace::is_connected)
      .def("is_homeomorphic",
           [](const tf::FinSpace& a, const tf::FinSpace& b) { return a.is_homeomorphic(b); })
      .def("homeomorphism_to", &tf::FinSpace::homeomorphism_to)
      .def("quotient",
           [](const tf::FinSpace& s, const std::vector<std::vector<std::string>>& partition) {
             return s.quotient(partition);
           })
      .def("to_text", &tf::FinSpace::to_text, py::arg("name") = "X")
      .def("__len__", &tf::FinSpace::size)
      .def("__repr__", [](const tf::FinSpace& s) {
        return "<FinSpace with " + std::to_string(s.size()) + " points>";
      });

  m.def("reduce_word", [](const std::string& w) {
    return tf::format_word(tf::free_reduce(tf::parse_word(w)));
  });

  m.def(
      "wedge",
      [](const tf::FinSpace& a, const std::string& pa, const tf::FinSpace& b,
         const std::string& pb) {
        tf::PointedFinSpace w =
            tf::wedge(tf::PointedFinSpace::make(a, pa), tf::PointedFinSpace::make(b, pb));
        return py::make_tuple(w.space, w.basepoint);
      },
      py::arg("space_a"), py::arg("base_a"), py::arg("space_b"), py::arg("base_b"));

  m.def("classify", [](const tf::FinSpace& space, const std::string& basepoint) {
    tf::ClassifyResult r = tf::classify(tf::PointedFinSpace::make(space, basepoint));
    py::dict out;
    out["connected"] = r.connected;
    if (r.witness) {
      out["a1"] = r.witness->a1;
      out["a2"] = r.witness->a2;
      out["e2"] = r.witness->e2;
      out["wedge"] = r.witness->wedge_space.space;
      out["wedge_basepoint"] = r.witness->wedge_space.basepoint;
    }
    return out;
  });

  m.def("graev_to_markov",
        [](const tf::FinSpace& space, const std::string& basepoint, const std::string& w) {
          tf::ClassifyResult r = tf::classify(tf::PointedFinSpace::make(space, basepoint));
          if (r.connected) tf::fail("graev_to_markov: space is connected");
          return tf::format_word(tf::graev_to_markov(*r.witness, tf::parse_word(w)));
        });

  m.def("markov_to_graev",
        [](const tf::FinSpace& space, const std::string& basepoint, const std::string& w) {
          tf::ClassifyResult r = tf::classify(tf::PointedFinSpace::make(space, basepoint));
          if (r.connected) tf::fail("markov_to_graev: space is connected");
          return tf::format_word(tf::markov_to_graev(*r.witness, tf::parse_word(w)));
        });

  m.def(
      "component_projection",
      [](const tf::FinSpace& space, const std::string& basepoint, const std::string& w) {
        return tf::format_word(tf::component_projection(
            tf::PointedFinSpace::make(space, basepoint), tf::parse_word(w)));
      },
      py::arg("space"), py::arg("basepoint"), py::arg("word"));

  m.def(
      "decide_open",
      [](const tf::FinSpace& space, const std::string& basepoint, const std::string& generators,
         std::size_t max_index) {
        return openness_dict(tf::decide_open(make_subgroup(space, basepoint, generators),
                                             max_index));
      },
      py::arg("space"), py::arg("basepoint"), py::arg("generators"),
      py::arg("max_index") = 10000);

  m.def(
      "stratum_open_check",
      [](const tf::FinSpace& space, const std::string& basepoint, const std::string& generators,
         std::size_t depth) {
        tf::SubgroupSpec sub = make_subgroup(space, basepoint, generators);
        tf::Automaton aut =
            tf::decide_open(sub).point_automaton;
        return tf::stratum_open_check(
            sub.ambient, [&](const tf::Word& w) { return aut.member(w); }, depth);
      },
      py::arg("space"), py::arg("basepoint"), py::arg("generators"), py::arg("depth") = 6);

  m.def(
      "subgroup_basis",
      [](const tf::FinSpace& space, const std::string& basepoint, const std::string& generators,
         std::size_t max_index) {
        tf::SubgroupSpec sub = make_subgroup(space, basepoint, generators);
        tf::Certificate cert;
        cert.sub = sub;
        cert.input_hash = tf::input_hash(sub);
        cert.presentation = tf::subgroup_basis(sub, max_index);
        cert.report = tf::verify_presentation(sub, cert.presentation, max_index);
        return presentation_dict(sub, cert.presentation, cert.report, tf::emit_certificate(cert));
      },
      py::arg("space"), py::arg("basepoint"), py::arg("generators"),
      py::arg("max_index") = 10000);

  m.def("verify_certificate", [](const std::string& text) {
    tf::Certificate cert = tf::parse_certificate(text);
    tf::VerifyReport report = tf::verify_presentation(cert.sub, cert.presentation);
    bool hash_ok = cert.input_hash == tf::input_hash(cert.sub);
    py::list checks;
    checks.append(py::make_tuple("input-hash", hash_ok, hash_ok ? "matches" : "mismatch"));
    for (const auto& c : report.checks) checks.append(py::make_tuple(c.name, c.pass, c.detail));
    return py::make_tuple(hash_ok && report.all_pass(), checks);
  });

  m.attr("__version__") = "0.1.0";
}
