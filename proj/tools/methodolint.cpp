// methodolint command-line front end.
//
// Exit codes: 0 clean, 1 findings (scan) or failed bundles (gate), 2 any
// operational error. On exit 2 nothing is written to stdout.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <pthread.h>

#include <CLI11.hpp>

#include "methodolint/methodolint.hpp"

namespace ml = methodolint;
namespace fs = std::filesystem;

#ifndef METHODOLINT_DEFAULT_CORPUS
#define METHODOLINT_DEFAULT_CORPUS "corpus"
#endif

namespace {

constexpr int kExitError = 2;

// Flags shared by the model-facing commands. Unset options fall through to
// the environment and then the config file.
struct CommonFlags {
  std::string config;
  ml::Settings cli;

  void add(CLI::App* app, bool with_endpoint = true) {
    app->add_option("--config", config, "Settings file (default: nearest .methodolint.toml)");
    app->add_option("--corpus", cli.corpus, "Pattern corpus root (holds patterns/)");
    if (!with_endpoint) return;
    app->add_option("--endpoint", cli.endpoint, "OpenAI-compatible base URL");
    app->add_option("--model", cli.model, "Model name sent with each request");
    app->add_option("--max-concurrency", cli.max_concurrency, "Requests in flight at once")->check(CLI::PositiveNumber);
    app->add_option("--max-retries", cli.max_retries, "Retries per request")->check(CLI::NonNegativeNumber);
    app->add_option("--request-timeout", cli.request_timeout, "Seconds per request")->check(CLI::PositiveNumber);
  }

  ml::Settings resolve() const {
    ml::Settings s;
    if (!config.empty()) {
      s = ml::load_settings_file(config);
    } else if (auto found = ml::find_settings_file(fs::current_path())) {
      s = ml::load_settings_file(*found);
    }
    s.overlay(ml::settings_from_env());
    s.overlay(cli);
    return s;
  }
};

ml::EndpointConfig endpoint_from(const ml::Settings& s) {
  ml::EndpointConfig c;
  if (s.endpoint) c.base_url = *s.endpoint;
  if (s.model) c.model_name = *s.model;
  c.api_key = s.api_key;
  if (s.max_concurrency) c.max_concurrency = *s.max_concurrency;
  if (s.max_retries) c.max_retries = *s.max_retries;
  if (s.request_timeout) c.request_timeout = *s.request_timeout;
  return c;
}

ml::PatternRegistry load_corpus(const ml::Settings& s) {
  return ml::load_registry(s.corpus.value_or(METHODOLINT_DEFAULT_CORPUS));
}

ml::TokenBudget budget_from(const ml::Settings& s) {
  ml::TokenBudget b;
  if (s.max_input_tokens) b.max_input_tokens = *s.max_input_tokens;
  if (s.chars_per_token) b.chars_per_token = *s.chars_per_token;
  b.validate();
  return b;
}

std::vector<std::string> split_commas(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& item : in) {
    std::size_t start = 0;
    while (start <= item.size()) {
      auto comma = item.find(',', start);
      auto part = item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!part.empty()) out.push_back(part);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

void emit(const std::string& text) {
  std::cout << text;
  std::cout.flush();
}

// ---- scan ---------------------------------------------------------------------

struct ScanFlags {
  CommonFlags common;
  std::vector<std::string> paths;
  std::vector<std::string> categories, patterns, include, exclude;
  std::optional<std::string> format;
  std::optional<int> max_input_tokens, file_parallelism;
  std::optional<double> chars_per_token;
  std::string prompt_template;
  bool no_preflight = false;
};

int run_scan(const ScanFlags& f) {
  ml::Settings s = f.common.resolve();
  if (!f.categories.empty()) s.categories = split_commas(f.categories);
  if (!f.patterns.empty()) s.patterns = split_commas(f.patterns);
  if (!f.include.empty()) s.include = f.include;
  if (!f.exclude.empty()) s.exclude = f.exclude;
  if (f.format) s.format = f.format;
  if (f.max_input_tokens) s.max_input_tokens = f.max_input_tokens;
  if (f.chars_per_token) s.chars_per_token = f.chars_per_token;
  if (f.file_parallelism) s.file_parallelism = f.file_parallelism;

  auto format = ml::parse_report_format(s.format.value_or("json"));
  if (!format) throw ml::ConfigError("unknown format '" + *s.format + "' (json or text)");
  ml::ScanOptions opts;
  if (s.categories) opts.categories = ml::parse_categories(*s.categories);
  if (s.patterns) opts.pattern_ids = *s.patterns;
  opts.budget = budget_from(s);
  if (s.include) opts.include_globs = *s.include;
  if (s.exclude) opts.exclude_globs = *s.exclude;
  if (s.file_parallelism) opts.file_parallelism = *s.file_parallelism;
  opts.preflight = !f.no_preflight;
  if (!f.prompt_template.empty()) opts.prompt_template = ml::load_prompt_template(f.prompt_template);

  auto reg = load_corpus(s);
  ml::InferenceClient client(endpoint_from(s));
  client.set_prompt_template(opts.prompt_template);
  auto report = ml::scan(f.paths, reg, client, opts);
  emit(ml::render_report(report, *format));
  return ml::exit_code(report);
}

// ---- gate ---------------------------------------------------------------------

struct GateFlags {
  CommonFlags common;
  std::string patterns;
  bool skip_semantic = false;
  double threshold = ml::kDefaultDiversityThreshold;
  bool json = false;
  bool verbose = false;
  std::string judge_endpoint, judge_model;
};

int run_gate(const GateFlags& f) {
  ml::Settings s = f.common.resolve();
  fs::path root = !f.patterns.empty() ? fs::path(f.patterns) : fs::path(s.corpus.value_or(METHODOLINT_DEFAULT_CORPUS));
  ml::GateOptions opts;
  opts.threshold = f.threshold;
  opts.checks.budget = budget_from(s);
  std::optional<ml::InferenceClient> judge;
  if (!f.skip_semantic) {
    if (!f.judge_endpoint.empty()) s.endpoint = f.judge_endpoint;
    if (!f.judge_model.empty()) s.model = f.judge_model;
    if (s.endpoint) {
      judge.emplace(endpoint_from(s));
      opts.judge = &*judge;
    } else {
      std::cerr << "methodolint: no endpoint configured; semantic gate skipped\n";
    }
  }
  auto summary = ml::gate_all(root, opts);
  emit(f.json ? ml::gate_summary_json(summary).dump(2) + "\n" : ml::gate_summary_text(summary, f.verbose));
  return summary.exit_code();
}

// ---- eval-patterns / eval-integration ---------------------------------------------

int run_eval_patterns(const CommonFlags& c, const std::vector<std::string>& patterns) {
  ml::Settings s = c.resolve();
  auto reg = ml::filter_by_ids(load_corpus(s), split_commas(patterns));
  ml::InferenceClient client(endpoint_from(s));
  std::string err;
  if (!client.ping(&err)) throw ml::ClientError(err, 1, true);
  auto r = ml::eval_patterns(reg, client);
  emit(ml::pattern_eval_json(r).dump(2) + "\n");
  return 0;
}

struct IntegrationFlags {
  CommonFlags common;
  std::string scenarios;
  int window = ml::kDefaultMatchWindow;
  bool judge_bonus = false;
  std::string judge_endpoint, judge_model;
};

int run_eval_integration(const IntegrationFlags& f) {
  ml::Settings s = f.common.resolve();
  auto reg = load_corpus(s);
  ml::InferenceClient client(endpoint_from(s));
  std::string err;
  if (!client.ping(&err)) throw ml::ClientError(err, 1, true);
  ml::IntegrationOptions opts;
  opts.window = f.window;
  opts.budget = budget_from(s);
  std::optional<ml::InferenceClient> judge;
  if (f.judge_bonus) {
    ml::Settings js = s;
    if (!f.judge_endpoint.empty()) js.endpoint = f.judge_endpoint;
    if (!f.judge_model.empty()) js.model = f.judge_model;
    judge.emplace(endpoint_from(js));
    opts.bonus_judge = &*judge;
  }
  auto r = ml::eval_integration(fs::path(f.scenarios), reg, client, opts);
  emit(ml::integration_json(r).dump(2) + "\n");
  return 0;
}

// ---- judge --------------------------------------------------------------------

struct JudgeFlags {
  CommonFlags common;
  std::string report;
  std::string judge_endpoint, judge_model, repository;
};

int run_judge(const JudgeFlags& f) {
  ml::Settings s = f.common.resolve();
  if (!f.judge_endpoint.empty()) s.endpoint = f.judge_endpoint;
  if (!f.judge_model.empty()) s.model = f.judge_model;
  auto text = ml::read_file(f.report);
  if (!text) throw ml::Error("cannot read report " + f.report);
  auto j = nlohmann::json::parse(*text, nullptr, false);
  if (j.is_discarded()) throw ml::Error(f.report + " is not valid JSON");
  auto report = ml::report_from_json(j);
  std::vector<ml::JudgeInput> inputs;
  for (const auto& finding : report.findings) {
    auto code = ml::read_file(finding.file);
    if (!code) throw ml::Error("cannot read " + finding.file + " referenced by the report");
    inputs.push_back({finding, *code, f.repository});
  }
  ml::InferenceClient judge(endpoint_from(s));
  auto verdicts = ml::judge_findings(inputs, judge);
  emit(ml::judge_json(verdicts, ml::summarize_judgements(inputs, verdicts)).dump(2) + "\n");
  return 0;
}

// ---- mock-serve ---------------------------------------------------------------

int run_mock_serve(const std::string& script, int port, const std::string& host) {
  // Block the stop signals before the server threads exist so only sigwait sees them.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  ml::MockServer server(ml::load_mock_script(script));
  server.start(port, host);
  emit("listening on " + server.base_url() + "\n");
  int sig = 0;
  sigwait(&stop_signals, &sig);
  server.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finds methodology bugs in scientific Python code with a language model."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "methodolint 0.1.0");

  ScanFlags scan;
  auto* scan_cmd = app.add_subcommand("scan", "Scan files or directories");
  scan_cmd->add_option("paths", scan.paths, "Files or directories")->required();
  scan.common.add(scan_cmd);
  scan_cmd->add_option("--categories", scan.categories, "Comma-separated categories (default: all)");
  scan_cmd->add_option("--patterns", scan.patterns, "Comma-separated pattern ids");
  scan_cmd->add_option("--format", scan.format, "json or text");
  scan_cmd->add_option("--max-input-tokens", scan.max_input_tokens, "Prompt budget")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--chars-per-token", scan.chars_per_token, "Token estimate divisor")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--file-parallelism", scan.file_parallelism, "Files scanned at once")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--include", scan.include, "Only paths matching this glob (repeatable)");
  scan_cmd->add_option("--exclude", scan.exclude, "Skip paths matching this glob (repeatable)");
  scan_cmd->add_option("--prompt-template", scan.prompt_template, "Prompt template TOML file");
  scan_cmd->add_flag("--no-preflight", scan.no_preflight, "Do not ping the endpoint first");

  GateFlags gate;
  auto* gate_cmd = app.add_subcommand("gate", "Run the quality gates over a pattern corpus");
  gate.common.add(gate_cmd);
  gate_cmd->add_option("--patterns", gate.patterns, "Corpus root (default: --corpus)");
  gate_cmd->add_flag("--skip-semantic", gate.skip_semantic, "Deterministic and diversity gates only");
  gate_cmd->add_option("--threshold", gate.threshold, "Diversity threshold")->check(CLI::Range(0.0, 1.0));
  gate_cmd->add_flag("--json", gate.json, "Emit JSON");
  gate_cmd->add_flag("-v,--verbose", gate.verbose, "List every check");
  gate_cmd->add_option("--judge-endpoint", gate.judge_endpoint, "Endpoint for the semantic gate");
  gate_cmd->add_option("--judge-model", gate.judge_model, "Model for the semantic gate");

  CommonFlags evp;
  std::vector<std::string> evp_patterns;
  auto* evp_cmd = app.add_subcommand("eval-patterns", "Run each pattern against its own tests");
  evp.add(evp_cmd);
  evp_cmd->add_option("--patterns", evp_patterns, "Comma-separated pattern ids (default: all)");

  IntegrationFlags integ;
  auto* integ_cmd = app.add_subcommand("eval-integration", "Score scans against planted-bug manifests");
  integ.common.add(integ_cmd);
  integ_cmd->add_option("--scenarios", integ.scenarios, "Directory of scenario manifests")->required();
  integ_cmd->add_option("--window", integ.window, "Line distance that still matches")->check(CLI::NonNegativeNumber);
  integ_cmd->add_flag("--judge-bonus", integ.judge_bonus, "Judge unmatched findings (report only)");
  integ_cmd->add_option("--judge-endpoint", integ.judge_endpoint, "Endpoint for the bonus judge");
  integ_cmd->add_option("--judge-model", integ.judge_model, "Model for the bonus judge");

  JudgeFlags judge;
  auto* judge_cmd = app.add_subcommand("judge", "Have a second model verify the findings of a scan report");
  judge.common.add(judge_cmd);
  judge_cmd->add_option("--report", judge.report, "JSON scan report")->required();
  judge_cmd->add_option("--judge-endpoint", judge.judge_endpoint, "Judge endpoint (default: --endpoint)");
  judge_cmd->add_option("--judge-model", judge.judge_model, "Judge model");
  judge_cmd->add_option("--repository", judge.repository, "Where the scanned code came from");

  std::string mock_script, mock_host = "127.0.0.1";
  int mock_port = 8000;
  auto* mock_cmd = app.add_subcommand("mock-serve", "Serve scripted chat-completions answers");
  mock_cmd->add_option("--script", mock_script, "Mock script JSON")->required()->check(CLI::ExistingFile);
  mock_cmd->add_option("--port", mock_port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  mock_cmd->add_option("--host", mock_host, "Bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (*scan_cmd) return run_scan(scan);
    if (*gate_cmd) return run_gate(gate);
    if (*evp_cmd) return run_eval_patterns(evp, evp_patterns);
    if (*integ_cmd) return run_eval_integration(integ);
    if (*judge_cmd) return run_judge(judge);
    if (*mock_cmd) return run_mock_serve(mock_script, mock_port, mock_host);
  } catch (const std::exception& e) {
    std::cerr << "methodolint: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
