#include "dcopkit/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "dcopkit/errors.hpp"
#include "dcopkit/io.hpp"
#include "dcopkit/nomenclature.hpp"
#include "dcopkit/privacy_check.hpp"
#include "dcopkit/report.hpp"
#include "dcopkit/solvers.hpp"
#include "dcopkit/transforms.hpp"
#include "json_codec.hpp"

namespace dcopkit {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw ConfigurationError("cannot write '" + path + "'");
}

Problem load_problem(const std::string& path) { return parse_problem_file(read_file(path)); }

NameForm parse_style(const std::string& style) {
  if (style == "full") return NameForm::FullCamel;
  if (style == "short") return NameForm::ShortLetters;
  return NameForm::DefaultElided;
}

std::string solution_json(const std::optional<Solution>& s) {
  json_codec::Json j;
  if (!s) {
    j["status"] = "NoSolution";
  } else {
    j["status"] = "Solved";
    j["assignment"] = json_codec::assignment_object(s->assignment);
    j["cost"] = json_codec::cost_json(s->cost);
    j["within_bounds"] = s->within_bounds;
  }
  return j.dump(2) + "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributed constraint optimization workbench"};
  app.require_subcommand(1);

  std::string problem_path, transcript_path, transcript_out, family, style = "elided", text;
  std::uint64_t seed = 0;
  std::string hide = "0";
  bool steg = false, non_uniform = false;
  std::size_t t = 1;

  auto* oracle = app.add_subcommand("oracle", "Solve a problem by exhaustive enumeration");
  oracle->add_option("problem", problem_path, "Problem file")->required();

  auto* solve = app.add_subcommand("solve", "Solve with distributed branch and bound");
  solve->add_option("problem", problem_path, "Problem file")->required();
  solve->add_flag("--steg", steg, "Agents follow the steganographic participation policy");
  solve->add_option("--seed", seed, "Seed for stochastic steps");
  solve->add_option("--hide-existence", hide, "Probability of discarding a found solution");
  solve->add_option("--transcript", transcript_out, "Write the transcript (JSON Lines) here");

  auto* audit = app.add_subcommand("audit", "Recompute the report of a recorded run");
  audit->add_option("problem", problem_path, "Problem file")->required();
  audit->add_option("transcript", transcript_path, "Transcript file")->required();

  auto* privacy = app.add_subcommand("check-privacy", "Check requested t-privacy of a protocol");
  privacy->add_option("family", family, "Family file or built-in family name")->required();
  privacy->add_option("--t", t, "Largest colluder set")->required();
  privacy->add_flag("--non-uniform", non_uniform, "Check the non-uniform variant");
  privacy->add_option("--seed", seed, "Seed passed to the protocol");

  auto* name_cmd = app.add_subcommand("name", "Framework nomenclature");
  name_cmd->require_subcommand(1);
  auto* encode_cmd = name_cmd->add_subcommand("encode", "Render a descriptor as a name");
  encode_cmd->add_option("descriptor", text, "A name, or six fields X6,X5,X4,X3,X2,X1")->required();
  encode_cmd->add_option("--style", style, "full, short or elided")
      ->check(CLI::IsMember({"full", "short", "elided"}));
  auto* decode_cmd = name_cmd->add_subcommand("decode", "Print the descriptor of a name");
  decode_cmd->add_option("name", text, "Framework name")->required();

  auto* transform = app.add_subcommand("transform", "Problem transforms");
  transform->require_subcommand(1);
  auto* merge = transform->add_subcommand("merge", "Merge all constraints into one");
  merge->add_option("problem", problem_path, "Problem file")->required();
  auto* dualize = transform->add_subcommand("dualize", "Primal to dual conversion");
  dualize->add_option("problem", problem_path, "Problem file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (oracle->parsed()) {
      out << solution_json(oracle_solve(load_problem(problem_path)));
    } else if (solve->parsed()) {
      const Problem p = load_problem(problem_path);
      Rational discard;
      try {
        discard = parse_rational(hide);
      } catch (const DomainError& e) {
        err << "usage error: --hide-existence: " << e.what() << "\n";
        return 2;
      }
      Transcript tr = syncbb_solve(p, StegPolicyConfig{steg}, seed);
      tr = hide_existence_filter(std::move(tr), discard, seed);
      if (tr.solved()) tr = distribute_decision(std::move(tr), p.outputs);
      if (!transcript_out.empty()) write_file(transcript_out, transcript_to_jsonl(tr));
      out << report_to_json(make_report(p, tr));
    } else if (audit->parsed()) {
      const Problem p = load_problem(problem_path);
      const Transcript tr = parse_transcript(read_file(transcript_path));
      if (auto problems = check_well_formed(tr); !problems.empty())
        throw CorruptTranscript("transcript is malformed: " + problems.front());
      out << report_to_json(make_report(p, tr));
    } else if (privacy->parsed()) {
      const auto builtin = builtin_family_names();
      const Family f = std::find(builtin.begin(), builtin.end(), family) != builtin.end()
                           ? builtin_family(family)
                           : parse_family_file(read_file(family));
      const ProtocolFactory& protocol = default_registry().find(f.protocol);
      PrivacyCheckConfig config;
      config.t = t;
      config.seed = seed;
      const PrivacyVerdict v = non_uniform
                                   ? check_nonuniform_requested_privacy(f.prior, protocol, config)
                                   : check_requested_privacy(f.prior, protocol, config);
      out << (non_uniform ? "non-uniform " : "") << "requested " << t << "-privacy of '"
          << f.protocol << "': " << (v.holds ? "holds" : "fails") << "\n";
      if (v.counterexample) out << counterexample_to_text(*v.counterexample);
    } else if (encode_cmd->parsed()) {
      const FrameworkDescriptor d =
          text.find(',') != std::string::npos ? parse_fields(text) : decode(text);
      out << encode(d, parse_style(style)) << "\n";
    } else if (decode_cmd->parsed()) {
      out << describe(decode(text)) << "\n";
    } else if (merge->parsed()) {
      out << problem_to_json(merge_topology(load_problem(problem_path)));
    } else if (dualize->parsed()) {
      out << problem_to_json(primal_dual_convert(load_problem(problem_path)));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace dcopkit
