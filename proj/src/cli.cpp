#include "lacuna/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "lacuna/corpus.hpp"
#include "lacuna/error.hpp"
#include "lacuna/json_io.hpp"
#include "lacuna/lacunary.hpp"
#include "lacuna/linalg.hpp"

namespace lacuna::cli {

using json_io::Json;

namespace {

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Json load(const std::optional<std::string>& path, const char* flag) {
  if (!path) usage(std::string("missing required flag ") + flag);
  std::ifstream in(*path, std::ios::binary);
  if (!in) usage("cannot open " + *path);
  std::ostringstream text;
  text << in.rdbuf();
  return json_io::parse_document(text.str(), *path);
}

// Corpus entries may be passed wherever a bare operator or sequence is expected.
OperatorSpec load_operator(const CliConfig& c) {
  const Json j = load(c.operator_path, "--operator");
  if (j.is_object() && j.contains("operator") && !j.contains("order")) {
    return json_io::operator_from_json(j["operator"]);
  }
  return json_io::operator_from_json(j);
}

SequenceSpec load_sequence(const CliConfig& c) {
  const Json j = load(c.sequence_path, "--sequence");
  if (j.is_object() && j.contains("lacunarySolution") && !j.contains("kind")) {
    return json_io::sequence_from_json(j["lacunarySolution"]);
  }
  return json_io::sequence_from_json(j);
}

Window require_window(const CliConfig& c) {
  if (!c.window) usage("missing required flag --window");
  return *c.window;
}

std::int64_t require_positive(const std::optional<std::int64_t>& v, const char* flag) {
  if (!v) usage(std::string("missing required flag ") + flag);
  if (*v < 1) usage(std::string(flag) + " must be positive");
  return *v;
}

std::string window_text(const Window& w) {
  return "[" + std::to_string(w.lo) + ", " + std::to_string(w.hi) + "]";
}

std::string solution_text(const FiniteSolution& s) {
  std::string out = "  anchor " + std::to_string(s.anchor()) + ":";
  for (const auto& v : s.values()) out += " " + to_string(v);
  return out + "\n";
}

struct Emitter {
  const CliConfig& config;
  RunResult result;

  void emit(const Json& j, const std::string& text, int code = kExitSuccess) {
    result.exit_code = code;
    result.output = config.format == Format::Json ? json_io::dump(j) : text;
  }
};

RunResult run_check(const CliConfig& c) {
  const OperatorSpec op = load_operator(c);
  const SequenceSpec x = load_sequence(c);
  const Window w = require_window(c);
  const auto failure = first_residual_failure(op, x, w);
  Emitter e{c, {}};
  Json j = {{"window", json_io::to_json(w)}, {"status", failure ? "not_a_solution" : "solution"}};
  if (failure) {
    j["firstFailure"] = *failure;
    e.emit(j, "not a solution on " + window_text(w) + ": residual nonzero at n = " +
                  std::to_string(*failure) + "\n", kExitError);
    e.result.diagnostics = "NotASolutionOnWindow: residual nonzero at n = " + std::to_string(*failure) + "\n";
  } else {
    e.emit(j, "solution on " + window_text(w) + "\n");
  }
  return e.result;
}

RunResult run_kernel(const CliConfig& c) {
  const OperatorSpec op = load_operator(c);
  const KernelBasis basis = finite_support_kernel(op, require_window(c));
  std::string text = "finite-support kernel on " + window_text(basis.window) + ": dimension " +
                     std::to_string(basis.dimension()) + "\n";
  for (const auto& v : basis.vectors) {
    text += " ";
    for (const auto& e : v) text += " " + to_string(e);
    text += "\n";
  }
  Emitter e{c, {}};
  e.emit(json_io::to_json(basis), text);
  return e.result;
}

RunResult emit_inconclusive(const CliConfig& c, const Inconclusive& inc) {
  Emitter e{c, {}};
  e.emit(json_io::to_json(inc), "inconclusive: " + inc.reason + "\n", kExitInconclusive);
  return e.result;
}

RunResult run_certify(const CliConfig& c) {
  const OperatorSpec op = load_operator(c);
  const auto result = certify_dimension(op, require_positive(c.k, "--k"), c.budget);
  if (const auto* inc = std::get_if<Inconclusive>(&result)) return emit_inconclusive(c, *inc);
  const auto& cert = std::get<DimensionCertificate>(result);
  std::string text = "dim >= " + std::to_string(cert.k()) + " certified on " + window_text(cert.window) + "\n";
  for (const auto& s : cert.solutions) text += solution_text(s);
  Emitter e{c, {}};
  e.emit(json_io::to_json(cert), text);
  return e.result;
}

RunResult run_split(const CliConfig& c) {
  const OperatorSpec op = load_operator(c);
  const SequenceSpec x = load_sequence(c);
  const Window w = require_window(c);
  const std::int64_t max_pieces =
      c.max_pieces ? require_positive(c.max_pieces, "--max-pieces") : std::int64_t{1} << 62;
  const auto pieces = split_lacunary(op, x, w, max_pieces);
  Json list = Json::array();
  std::string text;
  for (const auto& p : pieces) {
    list.push_back(json_io::to_json(p));
    text += solution_text(p);
  }
  Emitter e{c, {}};
  if (pieces.empty()) {
    e.emit({{"status", "no_cuts"}, {"pieces", list}, {"window", json_io::to_json(w)}},
           "no cuts: no interior zero run of length >= order + 1 on " + window_text(w) + "\n",
           kExitInconclusive);
    e.result.diagnostics = "NoCuts\n";
  } else {
    e.emit({{"status", "split"}, {"pieces", list}, {"window", json_io::to_json(w)}},
           std::to_string(pieces.size()) + " pieces on " + window_text(w) + "\n" + text);
  }
  return e.result;
}

RunResult run_build(const CliConfig& c) {
  const OperatorSpec op = load_operator(c);
  const auto result = build_lacunary(op, require_positive(c.gap, "--gap"), c.budget);
  if (const auto* inc = std::get_if<Inconclusive>(&result)) return emit_inconclusive(c, *inc);
  const auto& sol = std::get<PartialLacunarySolution>(result);
  std::string text = std::to_string(sol.blocks.size()) + " blocks on the " +
                     (sol.ray == Ray::Positive ? "positive" : "negative") + " ray, gaps";
  for (auto g : sol.gap_profile) text += " " + std::to_string(g);
  text += "\n";
  for (const auto& b : sol.blocks) text += solution_text(b);
  Emitter e{c, {}};
  e.emit(json_io::to_json(sol), text);
  return e.result;
}

RunResult run_verify(const CliConfig& c) {
  const OperatorSpec op = load_operator(c);
  const Json j = load(c.certificate_path, "--certificate");
  VerifyReport report;
  std::string kind;
  if (j.is_object() && j.contains("solutions")) {
    kind = "dimension_certificate";
    report = verify(op, json_io::dimension_certificate_from_json(j));
  } else if (j.is_object() && j.contains("vectors")) {
    kind = "kernel_basis";
    report = verify(op, json_io::kernel_basis_from_json(j));
  } else if (j.is_object() && j.contains("blocks")) {
    kind = "lacunary_prefix";
    report = verify(op, json_io::partial_lacunary_from_json(j));
  } else {
    usage("certificate: unrecognized document (expected solutions, vectors or blocks)");
  }
  Json out = {{"kind", kind}, {"status", report.passed ? "pass" : "fail"}, {"failures", Json(report.failures)}};
  std::string text = kind + ": " + (report.passed ? "pass" : "FAIL") + "\n";
  for (const auto& f : report.failures) text += "  " + f + "\n";
  Emitter e{c, {}};
  e.emit(out, text, report.passed ? kExitSuccess : kExitError);
  if (!report.passed) e.result.diagnostics = "VerificationFailure\n";
  return e.result;
}

RunResult run_corpus(const CliConfig& c) {
  if (!c.corpus_name) usage("corpus: missing entry name (or \"manifest\")");
  Emitter e{c, {}};
  if (*c.corpus_name == "manifest") {
    std::string text;
    for (const auto& entry : corpus::entries()) {
      text += entry.name + " (" + std::to_string(entry.known_facts.size()) + " facts)\n";
    }
    e.emit(json_io::corpus_manifest(), text);
    return e.result;
  }
  const auto entry = corpus::find(*c.corpus_name);
  if (!entry) usage("corpus: unknown entry \"" + *c.corpus_name + "\"");
  Json j;
  if (c.corpus_part == "operator") {
    j = json_io::to_json(entry->op);
  } else if (c.corpus_part == "sequence") {
    if (!entry->lacunary) usage("corpus: entry \"" + entry->name + "\" has no lacunary sequence");
    j = json_io::to_json(*entry->lacunary);
  } else if (c.corpus_part == "entry") {
    j = json_io::to_json(*entry);
  } else {
    usage("corpus: --part must be entry, operator or sequence");
  }
  std::string text = entry->name + ": order " + std::to_string(entry->op.order()) + "\n";
  for (const auto& fact : entry->known_facts) {
    const auto outcome = corpus::check_fact(*entry, fact);
    text += std::string("  [") + (outcome.passed ? "ok" : "FAIL") + "] " + outcome.description + "\n";
  }
  e.emit(j, text);
  return e.result;
}

}  // namespace

Window parse_window(const std::string& text) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) usage("--window: expected LO:HI, got \"" + text + "\"");
  const auto parse = [&](const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::logic_error&) {
      usage("--window: bad bound \"" + s + "\"");
    }
    if (used != s.size()) usage("--window: bad bound \"" + s + "\"");
    return v;
  };
  const std::int64_t lo = parse(text.substr(0, colon));
  const std::int64_t hi = parse(text.substr(colon + 1));
  if (lo > hi) usage("--window: LO must not exceed HI");
  return {lo, hi};
}

CliConfig parse_args(int argc, const char* const* argv) {
  // "--window -5:5" would otherwise read as an unknown short flag.
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--window" && i + 1 < argc) {
      a += "=" + std::string(argv[++i]);
    }
    args.push_back(std::move(a));
  }

  CliConfig config;
  CLI::App app{"Certify infinite-dimensional solution spaces of linear difference equations", "lacuna"};
  app.require_subcommand(1);

  std::string window_text_arg, format = "json";
  std::string op_path, seq_path, cert_path, out_path, corpus_name;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", out_path, "write output to FILE");
  };
  const auto with_operator = [&](CLI::App* sub) {
    sub->add_option("--operator", op_path, "operator JSON (or corpus entry)")->required();
  };
  const auto with_sequence = [&](CLI::App* sub) {
    sub->add_option("--sequence", seq_path, "sequence JSON (or corpus entry)")->required();
  };
  const auto with_window = [&](CLI::App* sub) {
    sub->add_option("--window", window_text_arg, "LO:HI")->required();
  };

  auto* check = app.add_subcommand("check", "windowed residual check of a sequence");
  with_operator(check), with_sequence(check), with_window(check), common(check);

  auto* kernel = app.add_subcommand("kernel", "finite-support kernel on a window");
  with_operator(kernel), with_window(kernel), common(kernel);

  std::int64_t k = 0, gap = 0, max_pieces = 0;
  auto* certify = app.add_subcommand("certify", "dimension lower-bound certificate");
  with_operator(certify), common(certify);
  certify->add_option("--k", k, "number of disjoint solutions")->required();
  certify->add_option("--budget", config.budget, "largest half-width searched");

  auto* split = app.add_subcommand("split", "split a lacunary solution into finite pieces");
  with_operator(split), with_sequence(split), with_window(split), common(split);
  auto* max_pieces_opt = split->add_option("--max-pieces", max_pieces, "stop after this many pieces");

  auto* build = app.add_subcommand("build", "construct a lacunary solution prefix");
  with_operator(build), common(build);
  build->add_option("--gap", gap, "stop once a gap of this size appears")->required();
  build->add_option("--budget", config.budget, "search inside [-budget, budget]");

  auto* verify_cmd = app.add_subcommand("verify", "re-check a serialized certificate");
  with_operator(verify_cmd), common(verify_cmd);
  verify_cmd->add_option("--certificate", cert_path, "certificate JSON")->required();

  auto* corpus_cmd = app.add_subcommand("corpus", "emit a corpus entry or the manifest");
  common(corpus_cmd);
  corpus_cmd->add_option("name", corpus_name, "entry name, or \"manifest\"")->required();
  corpus_cmd->add_option("--part", config.corpus_part, "entry, operator or sequence")
      ->check(CLI::IsMember({"entry", "operator", "sequence"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success&) {
    config.help = app.help();
    for (auto* sub : app.get_subcommands()) config.help = sub->help();
    return config;
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }

  const std::pair<CLI::App*, Command> commands[] = {
      {check, Command::Check},   {kernel, Command::Kernel}, {certify, Command::Certify},
      {split, Command::Split},   {build, Command::Build},   {verify_cmd, Command::Verify},
      {corpus_cmd, Command::Corpus}};
  for (const auto& [sub, cmd] : commands) {
    if (sub->parsed()) config.command = cmd;
  }
  if (!op_path.empty()) config.operator_path = op_path;
  if (!seq_path.empty()) config.sequence_path = seq_path;
  if (!cert_path.empty()) config.certificate_path = cert_path;
  if (!out_path.empty()) config.output_path = out_path;
  if (!corpus_name.empty()) config.corpus_name = corpus_name;
  if (!window_text_arg.empty()) config.window = parse_window(window_text_arg);
  if (certify->parsed()) config.k = k;
  if (build->parsed()) config.gap = gap;
  if (max_pieces_opt->count() > 0) config.max_pieces = max_pieces;
  config.format = format == "text" ? Format::Text : Format::Json;
  return config;
}

RunResult run(const CliConfig& config) {
  try {
    if (config.budget < 1) usage("--budget must be positive");
    switch (config.command) {
      case Command::Check: return run_check(config);
      case Command::Kernel: return run_kernel(config);
      case Command::Certify: return run_certify(config);
      case Command::Split: return run_split(config);
      case Command::Build: return run_build(config);
      case Command::Verify: return run_verify(config);
      case Command::Corpus: return run_corpus(config);
    }
  } catch (const Error& e) {
    return {kExitError, "", std::string(e.name()) + ": " + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kExitError, "", std::string("error: ") + e.what() + "\n"};
  }
  return {kExitError, "", "unknown command\n"};
}

}  // namespace lacuna::cli
