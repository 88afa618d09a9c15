// Python extension module. Problems, transcripts and reports cross the
// boundary as JSON text; the dcopkit package turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "dcopkit/cli.hpp"
#include "dcopkit/errors.hpp"
#include "dcopkit/io.hpp"
#include "dcopkit/nomenclature.hpp"
#include "dcopkit/privacy_check.hpp"
#include "dcopkit/report.hpp"
#include "dcopkit/solvers.hpp"
#include "dcopkit/transforms.hpp"
#include "json_codec.hpp"

namespace py = pybind11;
using namespace dcopkit;

namespace {

NameForm parse_style(const std::string& style) {
  if (style == "full") return NameForm::FullCamel;
  if (style == "short") return NameForm::ShortLetters;
  if (style == "elided") return NameForm::DefaultElided;
  throw ConfigurationError("unknown name style '" + style + "'");
}

std::string oracle_json(const std::string& problem) {
  const auto s = oracle_solve(parse_problem_file(problem));
  json_codec::Json j;
  if (!s) {
    j["status"] = "NoSolution";
  } else {
    j["status"] = "Solved";
    j["assignment"] = json_codec::assignment_object(s->assignment);
    j["cost"] = json_codec::cost_json(s->cost);
    j["within_bounds"] = s->within_bounds;
  }
  return j.dump();
}

std::pair<std::string, std::string> solve_json(const std::string& problem, bool steg,
                                               std::uint64_t seed, const std::string& hide) {
  const Problem p = parse_problem_file(problem);
  Transcript t = syncbb_solve(p, StegPolicyConfig{steg}, seed);
  t = hide_existence_filter(std::move(t), parse_rational(hide), seed);
  if (t.solved()) t = distribute_decision(std::move(t), p.outputs);
  return {report_to_json(make_report(p, t)), transcript_to_jsonl(t)};
}

std::string audit_json(const std::string& problem, const std::string& transcript) {
  const Problem p = parse_problem_file(problem);
  const Transcript t = parse_transcript(transcript);
  if (auto problems = check_well_formed(t); !problems.empty())
    throw CorruptTranscript("transcript is malformed: " + problems.front());
  return report_to_json(make_report(p, t));
}

py::dict check_privacy(const std::string& family, std::size_t t, bool non_uniform,
                       std::uint64_t seed) {
  const auto names = builtin_family_names();
  const Family f = std::find(names.begin(), names.end(), family) != names.end()
                       ? builtin_family(family)
                       : parse_family_file(family);
  PrivacyCheckConfig config;
  config.t = t;
  config.seed = seed;
  const ProtocolFactory& protocol = default_registry().find(f.protocol);
  PrivacyVerdict v;
  {
    py::gil_scoped_release release;
    v = non_uniform ? check_nonuniform_requested_privacy(f.prior, protocol, config)
                    : check_requested_privacy(f.prior, protocol, config);
  }
  py::dict out;
  out["protocol"] = f.protocol;
  out["holds"] = v.holds;
  if (v.counterexample) {
    const Counterexample& c = *v.counterexample;
    py::dict ce;
    std::vector<std::int64_t> colluders;
    for (AgentId a : c.view.colluders) colluders.push_back(a.value);
    ce["colluders"] = colluders;
    ce["secret"] = c.secret.str();
    ce["value"] = c.value;
    ce["posterior_given_view"] = c.posterior_given_view.str();
    ce["posterior_given_output"] = c.posterior_given_output.str();
    ce["text"] = counterexample_to_text(c);
    out["counterexample"] = ce;
  } else {
    out["counterexample"] = py::none();
  }
  return out;
}

py::tuple cli(const std::vector<std::string>& args) {
  std::vector<std::string> argv{"dcopkit"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run_cli(argv, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_dcopkit, m) {
  m.doc() = "Distributed constraint optimization workbench";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<NameParseError>(m, "NameParseError", base.ptr());

  m.def("encode", [](const std::string& text, const std::string& style) {
        const FrameworkDescriptor d =
            text.find(',') != std::string::npos ? parse_fields(text) : decode(text);
        return encode(d, parse_style(style));
      },
      py::arg("name"), py::arg("style") = "elided",
      "Render a name or six comma-separated fields in the given style.");
  m.def("describe", [](const std::string& name) { return describe(decode(name)); }, py::arg("name"));
  m.def("oracle", &oracle_json, py::arg("problem"));
  m.def("solve", &solve_json, py::arg("problem"), py::arg("steg") = false, py::arg("seed") = 0,
        py::arg("hide_existence") = "0", "Returns (report JSON, transcript JSON Lines).");
  m.def("audit", &audit_json, py::arg("problem"), py::arg("transcript"));
  m.def("check_privacy", &check_privacy, py::arg("family"), py::arg("t"),
        py::arg("non_uniform") = false, py::arg("seed") = 0);
  m.def("builtin_families", &builtin_family_names);
  m.def("merge", [](const std::string& p) { return problem_to_json(merge_topology(parse_problem_file(p))); },
        py::arg("problem"));
  m.def("dualize",
        [](const std::string& p) { return problem_to_json(primal_dual_convert(parse_problem_file(p))); },
        py::arg("problem"));
  m.def("run_cli", &cli, py::arg("args"), "Run the command line tool; returns (code, stdout, stderr).");
}
