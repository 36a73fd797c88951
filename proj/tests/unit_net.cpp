#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include "scan_fixture.hpp"
#include "support.hpp"

using namespace methodolint;
using namespace mltest;

namespace {

const PatternRegistry& corpus() {
  static const PatternRegistry reg = load_registry(corpus_dir());
  return reg;
}

PromptBundle sample_prompt(const std::string& id = "ml-001") {
  const Pattern& p = corpus().get(id);
  std::string code = p.positive_tests[0].source;
  return build_prompt(code, p, choose_nonce(code));
}

EndpointConfig dead_endpoint() {
  // A port that was free a moment ago and has no listener: connects are refused.
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  socklen_t len = sizeof addr;
  ::bind(fd, reinterpret_cast<sockaddr*>(&addr), len);
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  ::close(fd);
  EndpointConfig c;
  c.base_url = "http://127.0.0.1:" + std::to_string(ntohs(addr.sin_port));
  c.max_retries = 1;
  c.backoff_base = std::chrono::milliseconds(1);
  c.request_timeout = 2.0;
  return c;
}

}  // namespace

// ---- mock server ----------------------------------------------------------------

TEST(MockScript, NeedsCatchAll) {
  EXPECT_THROW(parse_mock_script(json::parse(R"([{"match_substring": "x", "response_body": "{}"}])")), ConfigError);
  EXPECT_THROW(parse_mock_script(json::parse(R"([{"match_substring": ""}])")), ConfigError);
  EXPECT_THROW(parse_mock_script(json::parse(R"({"no_rules": []})")), ConfigError);
  auto s = parse_mock_script(json::parse(R"({"rules": [{"response_body": {"a": 1}}], "reject_response_format": true})"));
  EXPECT_TRUE(s.reject_response_format);
  EXPECT_EQ(s.rules[0].response_body, R"({"a":1})");
}

TEST(MockScript, AlsoMatchIsAConjunction) {
  ScriptRule r;
  r.match_substring = "alpha";
  r.also_match = {"beta", "gamma"};
  EXPECT_TRUE(r.matches("alpha beta gamma"));
  EXPECT_FALSE(r.matches("alpha beta"));
  EXPECT_FALSE(r.catch_all());
}

TEST(MockServer, FirstMatchingRuleWinsAndIsLogged) {
  MockEndpoint ep(script({rule("needle", verdict_body(true, {1})), rule("", verdict_body(false))}));
  const Pattern& p = corpus().get("ml-001");
  auto hit = ep.client.request_verdict(build_prompt("needle = 1\n", p, Nonce::random()));
  auto miss = ep.client.request_verdict(build_prompt("other = 1\n", p, Nonce::random()));
  EXPECT_TRUE(hit.value.detected);
  EXPECT_FALSE(miss.value.detected);
  auto log = ep.server.request_log();
  ASSERT_EQ(log.size(), 2u);
  EXPECT_EQ(log[0].matched_rule, 0);
  EXPECT_EQ(log[1].matched_rule, 1);
  EXPECT_TRUE(log[0].had_response_format);
  EXPECT_NE(log[0].user_message.find(p.detection_question), std::string::npos);
  std::string err;
  EXPECT_TRUE(ep.client.ping(&err)) << err;
}

// ---- inference client -----------------------------------------------------------

TEST(Client, RetriesServerErrorsThenSucceeds) {
  auto r = rule("", verdict_body(true, {2}));
  r.fail_times = 2;
  MockEndpoint ep(script({r}), 8, 2);
  auto a = ep.client.request_verdict(sample_prompt());
  EXPECT_EQ(a.retries, 2);
  EXPECT_EQ(ep.server.request_log().size(), 3u);
}

TEST(Client, GivesUpAfterMaxRetries) {
  auto r = rule("", verdict_body(false));
  r.fail_times = 10;
  r.fail_status = 503;
  MockEndpoint ep(script({r}), 8, 2);
  try {
    ep.client.request_verdict(sample_prompt());
    FAIL();
  } catch (const ClientError& e) {
    EXPECT_EQ(e.attempts(), 3);
    EXPECT_TRUE(e.retryable());
    EXPECT_NE(std::string(e.what()).find("503"), std::string::npos);
  }
}

TEST(Client, ClientErrorsAreNotRetried) {
  auto r = rule("", verdict_body(false));
  r.fail_times = 10;
  r.fail_status = 401;
  MockEndpoint ep(script({r}), 8, 3);
  try {
    ep.client.request_verdict(sample_prompt());
    FAIL();
  } catch (const ClientError& e) {
    EXPECT_EQ(e.attempts(), 1);
    EXPECT_FALSE(e.retryable());
  }
  EXPECT_EQ(ep.server.request_log().size(), 1u);
}

TEST(Client, TooManyRequestsIsRetried) {
  auto r = rule("", verdict_body(false));
  r.fail_times = 1;
  r.fail_status = 429;
  MockEndpoint ep(script({r}), 8, 1);
  EXPECT_EQ(ep.client.request_verdict(sample_prompt()).retries, 1);
}

TEST(Client, MalformedAnswersAreRetried) {
  auto r = rule("", verdict_body(false));
  r.malformed_times = 1;
  MockEndpoint ep(script({r}), 8, 1);
  EXPECT_EQ(ep.client.request_verdict(sample_prompt()).retries, 1);

  auto bad = rule("", R"({"detected": "maybe"})");
  MockEndpoint ep2(script({bad}), 8, 1);
  EXPECT_THROW(ep2.client.request_verdict(sample_prompt()), ClientError);
  EXPECT_EQ(ep2.server.request_log().size(), 2u);
}

TEST(Client, ReasoningBeforeTheJsonIsTolerated) {
  MockEndpoint ep(script({rule("", "Step 1: look at the split.\nStep 2: done.\n" + verdict_body(true, {3}))}));
  auto a = ep.client.request_verdict(sample_prompt());
  EXPECT_TRUE(a.value.detected);
  EXPECT_EQ(a.value.line_refs, std::vector<int>{3});
}

TEST(Client, FallsBackWhenResponseFormatIsRejected) {
  auto s = script({rule("", verdict_body(false))});
  s.reject_response_format = true;
  MockEndpoint ep(std::move(s), 8, 0);
  auto a = ep.client.request_verdict(sample_prompt());
  EXPECT_EQ(a.retries, 0);
  auto log = ep.server.request_log();
  ASSERT_EQ(log.size(), 2u);
  EXPECT_TRUE(log[0].had_response_format);
  EXPECT_FALSE(log[1].had_response_format);
}

TEST(Client, BatchKeepsOrderAndIsolatesFailures) {
  auto failing = rule("Determine whether feature selection uses the labels", verdict_body(false));
  failing.fail_times = 100;
  failing.fail_status = 500;
  MockEndpoint ep(script({failing, rule("", verdict_body(false))}), 4, 0);
  std::string code = "x = 1\n";
  Nonce n = choose_nonce(code);
  std::vector<PromptBundle> bundles;
  for (auto id : {"ml-001", "ml-002", "ml-003", "num-001"}) bundles.push_back(build_prompt(code, corpus().get(id), n));
  auto res = ep.client.run_batch(bundles);
  ASSERT_EQ(res.size(), 4u);
  for (std::size_t i = 0; i < res.size(); ++i) EXPECT_EQ(res[i].pattern_id, bundles[i].pattern_id);
  EXPECT_FALSE(res[1].ok());
  EXPECT_TRUE(res[0].ok() && res[2].ok() && res[3].ok());
}

TEST(Client, UnreachableEndpoint) {
  InferenceClient c(dead_endpoint());
  std::string err;
  EXPECT_FALSE(c.ping(&err));
  EXPECT_NE(err.find("cannot reach"), std::string::npos);
  EXPECT_THROW(c.request_verdict(sample_prompt()), ClientError);
}

TEST(Client, ConfigValidation) {
  EndpointConfig c;
  c.max_concurrency = 0;
  EXPECT_THROW(InferenceClient{c}, ConfigError);
  c.max_concurrency = 1;
  c.request_timeout = 0;
  EXPECT_THROW(InferenceClient{c}, ConfigError);
}

// ---- scanning ---------------------------------------------------------------

TEST(Discovery, SkipsHiddenDirsAndNonPython) {
  TempDir tmp;
  make_scan_tree(tmp.path());
  fs::create_directories(tmp / "__pycache__");
  spit(tmp / "__pycache__/x.py", "x = 1\n");
  spit(tmp / "pkg/inner.py", "y = 2\n");
  auto t = discover_targets({tmp.path().string()});
  std::vector<std::string> names;
  for (const auto& f : t) names.push_back(fs::relative(f, tmp.path()).generic_string());
  EXPECT_EQ(names, (std::vector<std::string>{"clean_normalize.py", "leaky_normalize.py", "oversized.py", "pkg/inner.py"}));
  auto only = discover_targets({tmp.path().string()}, {"pkg/*"}, {});
  EXPECT_EQ(only.size(), 1u);
  auto minus = discover_targets({tmp.path().string()}, {}, {"*normalize*"});
  EXPECT_EQ(minus.size(), 2u);
  EXPECT_THROW(discover_targets({(tmp / "missing").string()}), Error);
  // Duplicates collapse.
  EXPECT_EQ(discover_targets({(tmp / "pkg").string(), (tmp / "pkg/inner.py").string()}).size(), 1u);
}

TEST(Scan, SampleTreeGivesOneFinding) {
  TempDir tmp;
  make_scan_tree(tmp.path());
  MockEndpoint ep(load_mock_script(source_dir() / "samples/mock_script.json"));
  auto r = scan({tmp.path().string()}, corpus(), ep.client);
  ASSERT_EQ(r.findings.size(), 1u);
  const Finding& f = r.findings[0];
  EXPECT_EQ(f.pattern_id, "ml-001");
  EXPECT_EQ(f.severity, Severity::Critical);
  EXPECT_EQ(f.line_refs, (std::vector<int>{5, 6, 7}));
  EXPECT_TRUE(f.file.ends_with("leaky_normalize.py"));
  EXPECT_EQ(f.doc_refs, corpus().get("ml-001").doc_refs);
  EXPECT_EQ(r.files_scanned.size(), 2u);
  ASSERT_EQ(r.files_skipped.size(), 1u);
  EXPECT_TRUE(r.files_skipped[0].path.ends_with("oversized.py"));
  EXPECT_NE(r.files_skipped[0].reason.find("14000"), std::string::npos);
  EXPECT_TRUE(r.files_errored.empty());
  EXPECT_EQ(exit_code(r), 1);
  EXPECT_EQ(r.config.patterns.size(), 66u);
  // Two scanned files, 66 patterns each; the skipped file sends nothing.
  EXPECT_EQ(ep.server.request_log().size(), 2u * 66u);
}

TEST(Scan, ReportRoundTripsThroughJson) {
  TempDir tmp;
  make_scan_tree(tmp.path());
  MockEndpoint ep(load_mock_script(source_dir() / "samples/mock_script.json"));
  auto r = scan({tmp.path().string()}, corpus(), ep.client);
  auto back = report_from_json(json::parse(render_report(r, ReportFormat::Json)));
  EXPECT_EQ(back, r);
  auto text = render_report(r, ReportFormat::Text);
  EXPECT_NE(text.find("ml-001"), std::string::npos);
  EXPECT_NE(text.find("oversized.py"), std::string::npos);
}

TEST(Scan, ParallelFilesGiveTheSameReport) {
  TempDir tmp;
  make_scan_tree(tmp.path());
  MockEndpoint ep(load_mock_script(source_dir() / "samples/mock_script.json"));
  ScanOptions serial, parallel;
  parallel.file_parallelism = 3;
  auto a = portable_report(scan({tmp.path().string()}, corpus(), ep.client, serial), tmp.path(), ep.server.base_url());
  auto b = portable_report(scan({tmp.path().string()}, corpus(), ep.client, parallel), tmp.path(), ep.server.base_url());
  EXPECT_EQ(a, b);
}

TEST(Scan, FiltersLimitPatterns) {
  TempDir tmp;
  make_scan_tree(tmp.path());
  MockEndpoint ep(load_mock_script(source_dir() / "samples/mock_script.json"));
  ScanOptions o;
  o.categories = {Category::ScientificNumerical};
  auto r = scan({tmp.path().string()}, corpus(), ep.client, o);
  EXPECT_TRUE(r.findings.empty());
  EXPECT_EQ(exit_code(r), 0);
  EXPECT_EQ(r.config.categories, std::vector<std::string>{"scientific-numerical"});
  EXPECT_EQ(ep.server.request_log().size(), 2u * 10u);
}

TEST(Scan, PatternErrorsGiveExitTwo) {
  TempDir tmp;
  make_scan_tree(tmp.path());
  auto broken = rule("Check whether preprocessing statistics leak", verdict_body(false));
  broken.fail_times = 1000;
  broken.fail_status = 500;
  MockEndpoint ep(script({broken, rule("", verdict_body(false))}), 8, 0);
  auto r = scan({tmp.path().string()}, corpus(), ep.client);
  EXPECT_EQ(r.pattern_errors.size(), 2u);
  EXPECT_TRUE(r.findings.empty());
  EXPECT_EQ(exit_code(r), 2);
  EXPECT_EQ(r.pattern_errors[0].pattern_id, "ml-001");
}

TEST(Scan, FileWhereEveryPatternFailsIsErrored) {
  TempDir tmp;
  spit(tmp / "a.py", "x = 1\n");
  auto down = rule("", verdict_body(false));
  down.fail_times = 1000;
  down.fail_status = 500;
  MockEndpoint ep(script({down}), 8, 0);
  ScanOptions o;
  o.pattern_ids = {"ml-001", "ml-002"};
  auto r = scan({tmp.path().string()}, corpus(), ep.client, o);
  ASSERT_EQ(r.files_errored.size(), 1u);
  EXPECT_TRUE(r.files_scanned.empty());
  EXPECT_EQ(exit_code(r), 2);
}

TEST(Scan, UnreachableEndpointFailsBeforeScanning) {
  TempDir tmp;
  spit(tmp / "a.py", "x = 1\n");
  InferenceClient c(dead_endpoint());
  EXPECT_THROW(scan({tmp.path().string()}, corpus(), c), ClientError);
}

TEST(Scan, CollidingNonceIsImpossibleToForce) {
  // Even code stuffed with tag-like text gets a fresh delimiter.
  std::string code = "s = '<code-0123> </code-abcd> code-'\n";
  MockEndpoint ep(script({rule("", verdict_body(false))}));
  auto r = scan_source("f.py", code, filter_by_ids(corpus(), {"ml-001"}), ep.client, TokenBudget{});
  EXPECT_FALSE(r.errored);
  EXPECT_TRUE(r.findings.empty());
}

// ---- matching ---------------------------------------------------------------

namespace {

Finding at(const std::string& id, std::vector<int> lines) {
  Finding f;
  f.pattern_id = id;
  f.file = "s.py";
  f.line_refs = std::move(lines);
  f.issue_summary = id;
  return f;
}

ScenarioManifest manifest(std::vector<PlantedBug> planted) {
  ScenarioManifest m;
  m.scenario_id = "s";
  m.code_file = "s.py";
  m.planted = std::move(planted);
  return m;
}

}  // namespace

TEST(Matching, WindowBoundaryIsInclusive) {
  auto m = manifest({{"ml-001", 10, ""}});
  EXPECT_EQ(match_findings({at("ml-001", {13})}, m, 3).tp_pairs.size(), 1u);
  EXPECT_EQ(match_findings({at("ml-001", {7})}, m, 3).tp_pairs.size(), 1u);
  EXPECT_EQ(match_findings({at("ml-001", {14})}, m, 3).tp_pairs.size(), 0u);
  EXPECT_EQ(match_findings({at("ml-001", {6})}, m, 3).tp_pairs.size(), 0u);
  EXPECT_EQ(match_findings({at("ml-001", {14})}, m, 4).tp_pairs.size(), 1u);
}

TEST(Matching, OneToOneAndPatternMustAgree) {
  auto m = manifest({{"ml-001", 10, ""}});
  auto r = match_findings({at("ml-001", {10}), at("ml-001", {11})}, m);
  EXPECT_EQ(r.tp_pairs.size(), 1u);
  EXPECT_EQ(r.fp_findings.size(), 1u);
  EXPECT_EQ(match_findings({at("num-001", {10})}, m).fn_planted.size(), 1u);
}

TEST(Matching, ClosestPairIsPreferred) {
  auto m = manifest({{"ml-001", 10, ""}, {"ml-001", 14, ""}});
  // Greedy on the far pair would leave one planted bug unmatched.
  auto r = match_findings({at("ml-001", {12}), at("ml-001", {15})}, m);
  EXPECT_EQ(r.tp_pairs.size(), 2u);
  EXPECT_TRUE(r.fn_planted.empty());
}

TEST(Matching, CountsDoNotDependOnFindingOrder) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> line(1, 40), pat(0, 2);
  const char* ids[] = {"ml-001", "ml-002", "num-001"};
  for (int round = 0; round < 200; ++round) {
    std::vector<PlantedBug> planted;
    for (int i = 0; i < 4; ++i) planted.push_back({ids[pat(rng)], line(rng), ""});
    std::vector<Finding> fs;
    for (int i = 0; i < 5; ++i) fs.push_back(at(ids[pat(rng)], {line(rng)}));
    auto m = manifest(planted);
    auto a = match_findings(fs, m);
    std::shuffle(fs.begin(), fs.end(), rng);
    auto b = match_findings(fs, m);
    EXPECT_EQ(a.tp_pairs.size(), b.tp_pairs.size());
    EXPECT_EQ(a.fp_findings.size(), b.fp_findings.size());
    EXPECT_EQ(a.tp_pairs.size() + a.fp_findings.size(), fs.size());
    EXPECT_EQ(a.tp_pairs.size() + a.fn_planted.size(), planted.size());
  }
}

TEST(Scenarios, ManifestValidation) {
  EXPECT_THROW(scenario_from_json(json::parse(R"({"scenario_id": "x", "code_file": "a.py", "planted": []})")), Error);
  EXPECT_THROW(scenario_from_json(json::parse(R"({"scenario_id": "x", "code_file": "a.py",
      "planted": [{"pattern_id": "ml-001", "line": 0}]})")), Error);
  auto all = load_scenarios(source_dir() / "samples/scenarios");
  ASSERT_EQ(all.size(), 5u);
  EXPECT_TRUE(fs::exists(all[0].code_file));
}

// ---- pattern evals --------------------------------------------------------------

TEST(EvalPatterns, AlwaysNoScoresHalf) {
  auto reg = filter_by_categories(corpus(), {Category::AiInference});
  MockEndpoint ep(script({rule("", verdict_body(false))}));
  auto r = eval_patterns(reg, ep.client);
  EXPECT_EQ(r.per_pattern.size(), 12u);
  EXPECT_EQ(r.aggregate.tp, 0);
  EXPECT_EQ(r.aggregate.tn, 36);
  EXPECT_EQ(r.aggregate.fn, 36);
  EXPECT_DOUBLE_EQ(*r.aggregate.accuracy, 0.5);
  EXPECT_FALSE(r.aggregate.precision);
  EXPECT_EQ(r.outcomes.size(), 72u);
}

TEST(EvalPatterns, PerfectModelScoresFull) {
  auto reg = filter_by_ids(corpus(), {"ml-001"});
  std::vector<ScriptRule> rules;
  for (const auto& t : reg.get("ml-001").positive_tests) {
    rules.push_back(rule(t.source, verdict_body(true, {1})));
  }
  rules.push_back(rule("", verdict_body(false)));
  MockEndpoint ep(script(rules));
  auto r = eval_patterns(reg, ep.client);
  EXPECT_EQ(r.aggregate.tp, 3);
  EXPECT_EQ(r.aggregate.tn, 3);
  EXPECT_DOUBLE_EQ(*r.aggregate.f1, 1.0);
  auto j = pattern_eval_json(r);
  EXPECT_EQ(j["patterns"].size(), 1u);
}

TEST(EvalPatterns, FailedRequestsCountAsWrong) {
  auto reg = filter_by_ids(corpus(), {"ml-001"});
  auto down = rule("", verdict_body(false));
  down.fail_times = 1000;
  MockEndpoint ep(script({down}), 8, 0);
  auto r = eval_patterns(reg, ep.client);
  EXPECT_EQ(r.client_errors, 6);
  EXPECT_EQ(*r.aggregate.accuracy, 0.0);
}

// ---- judge ------------------------------------------------------------------

namespace {

std::vector<JudgeInput> judge_inputs() {
  std::vector<JudgeInput> out;
  for (const Pattern* p : corpus().patterns()) {
    Finding f;
    f.pattern_id = p->id;
    f.category = p->category;
    f.severity = p->severity;
    f.title = p->title;
    f.file = p->id + "/positive_1.py";
    f.line_refs = {1, 2};
    f.issue_summary = p->title;
    f.explanation = "reported by the reviewer";
    out.push_back({f, p->positive_tests[0].source, "https://example.org/repo"});
  }
  return out;
}

}  // namespace

TEST(Judge, ExcerptKeepsLineNumbersAndWindow) {
  std::string code;
  for (int i = 1; i <= 100; ++i) code += "line_" + std::to_string(i) + " = " + std::to_string(i) + "\n";
  auto ex = judge_excerpt(code, {50});
  EXPECT_NE(ex.find("line_35 "), std::string::npos);
  EXPECT_NE(ex.find("line_65 "), std::string::npos);
  EXPECT_EQ(ex.find("line_34 "), std::string::npos);
  EXPECT_EQ(ex.find("line_66 "), std::string::npos);
  EXPECT_NE(ex.find("50"), std::string::npos);
}

TEST(Judge, PromptsNeverCarryTheQuestion) {
  for (const auto& in : judge_inputs()) {
    auto msg = judge_user_message(in, Nonce::random());
    const auto& q = corpus().get(in.finding.pattern_id).detection_question;
    EXPECT_EQ(msg.find(q), std::string::npos);
    EXPECT_EQ(judge_system_message().find(q), std::string::npos);
  }
}

TEST(Judge, VerdictsAndSummary) {
  MockEndpoint ep(script({rule("file: ml-", R"({"reasoning": "the lines show it", "verdict": "valid"})"),
                          rule("file: num-", R"({"reasoning": "not a bug", "verdict": "invalid"})"),
                          rule("", R"({"reasoning": "cannot tell", "verdict": "uncertain"})")}));
  auto inputs = judge_inputs();
  auto v = judge_findings(inputs, ep.client);
  ASSERT_EQ(v.size(), 66u);
  auto s = summarize_judgements(inputs, v);
  EXPECT_EQ(s.overall.valid, 19);
  EXPECT_EQ(s.overall.invalid, 10);
  EXPECT_EQ(s.overall.uncertain, 37);
  EXPECT_DOUBLE_EQ(*s.overall.precision(), 19.0 / 66.0);
  EXPECT_EQ(s.by_category[Category::AiTraining].valid, 19);
  auto j = judge_json(v, s);
  EXPECT_EQ(j["verdicts"].size(), 66u);
}

TEST(Judge, FailuresBecomeUncertain) {
  auto down = rule("", R"({"reasoning": "x", "verdict": "valid"})");
  down.fail_times = 1000;
  MockEndpoint ep(script({down}), 8, 0);
  auto v = judge_findings(judge_inputs(), ep.client);
  for (const auto& x : v) {
    EXPECT_EQ(x.verdict, JudgeLabel::Uncertain);
    EXPECT_TRUE(x.judge_error);
  }
  MockEndpoint bad(script({rule("", R"({"verdict": "valid"})")}), 8, 0);
  for (const auto& x : judge_findings(judge_inputs(), bad.client)) EXPECT_EQ(x.verdict, JudgeLabel::Uncertain);
}

// ---- integration -----------------------------------------------------------------

TEST(Integration, SampleScenarios) {
  MockEndpoint ep(load_mock_script(source_dir() / "samples/scenarios_mock_script.json"));
  auto r = eval_integration(source_dir() / "samples/scenarios", corpus(), ep.client);
  EXPECT_EQ(r.metrics.tp, 4);
  EXPECT_EQ(r.metrics.fp, 3);
  EXPECT_EQ(r.metrics.fn, 4);
  EXPECT_EQ(r.planted, 8);
  EXPECT_FALSE(r.metrics.accuracy);
  auto j = integration_json(r);
  EXPECT_EQ(j["scenarios"].size(), 5u);
}

TEST(Integration, BonusJudgeLeavesMetricsAlone) {
  MockEndpoint ep(load_mock_script(source_dir() / "samples/scenarios_mock_script.json"));
  MockEndpoint judge(script({rule("", R"({"reasoning": "real", "verdict": "valid"})")}));
  IntegrationOptions o;
  o.bonus_judge = &judge.client;
  auto r = eval_integration(source_dir() / "samples/scenarios", corpus(), ep.client, o);
  EXPECT_EQ(r.metrics.tp, 4);
  EXPECT_EQ(r.metrics.fp, 3);
  EXPECT_EQ(r.bonus_verdicts.size(), 3u);
  EXPECT_EQ(r.bonus_valid, 3);
}

TEST(Integration, UnknownPatternIsRejected) {
  auto m = manifest({{"zz-001", 1, ""}});
  MockEndpoint ep(script({rule("", verdict_body(false))}));
  EXPECT_THROW(eval_integration(std::vector<ScenarioManifest>{m}, corpus(), ep.client), NotFoundError);
}

// ---- semantic gate ---------------------------------------------------------------

TEST(SemanticGate, AgreementPassesDisagreementFailsPerFile) {
  TempDir tmp;
  auto dir = clone_reference_bundle(tmp.path(), "ml-160");
  auto bundle = read_bundle(dir);
  std::vector<ScriptRule> rules;
  for (const auto& rel : bundle.listed_positive) {
    rules.push_back(rule(*bundle.sources.at(rel), R"({"verdict": "exhibits", "reasoning": "stats include test rows"})"));
  }
  rules.push_back(rule("", R"({"verdict": "absent", "reasoning": "train-only statistics"})"));
  MockEndpoint good(script(rules));
  auto r = run_semantic_gate(bundle, good.client);
  EXPECT_TRUE(r.passed()) << ::testing::PrintToString(r.failed_checks());
  EXPECT_EQ(r.results.size(), 6u);
  for (const auto& log : good.server.request_log()) {
    EXPECT_NE(log.user_message.find("Check whether preprocessing statistics leak"), std::string::npos);
  }

  MockEndpoint yes(script({rule("", R"({"verdict": "exhibits", "reasoning": "always yes"})")}));
  auto bad = run_semantic_gate(bundle, yes.client);
  EXPECT_EQ(bad.failed_checks(),
            (std::vector<std::string>{"SEM:tests/negative_1.py", "SEM:tests/negative_2.py", "SEM:tests/negative_3.py"}));

  GateOptions o;
  o.judge = &yes.client;
  auto s = gate_all(std::vector<RawBundle>{bundle}, o);
  EXPECT_EQ(s.failed, 1);
}

TEST(SemanticGate, UnreachableJudgeThrows) {
  TempDir tmp;
  auto dir = clone_reference_bundle(tmp.path(), "ml-161");
  InferenceClient c(dead_endpoint());
  EXPECT_THROW(run_semantic_gate(read_bundle(dir), c), ClientError);
}
