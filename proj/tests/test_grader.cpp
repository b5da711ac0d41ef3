#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "formlab/error.hpp"
#include "formlab/grader.hpp"
#include "support/oracles.hpp"

using namespace formlab;
using namespace formlab::grader;
namespace fs = std::filesystem;
using namespace std::chrono_literals;

namespace {

const fs::path kData = DATA_DIR;
const fs::path kScripts = SCRIPT_DIR;
const fs::path kCandidates = CANDIDATE_DIR;

ExerciseSpec load(const std::string& name) { return load_exercise(kData / name); }

std::string joined(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

fs::path scratch_dir() {
  std::string tmpl = (fs::temp_directory_path() / "formlab-test-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  return tmpl;
}

void put(const fs::path& p, const std::string& text) { io::write_text_file(p, text); }

std::string dfa_text(const regular::Dfa& d) { return io::dump_pretty(io::automaton_to_json(d)); }

ExerciseSpec construction(const std::string& reference, Json inputs) {
  return exercise_from_json({{"id", reference + "-check"},
                             {"kind", "construction"},
                             {"answer_kind", object_kind_name(construction_output_kind(reference))},
                             {"verification", {{"rule", "construction_equiv"}, {"reference", reference}, {"inputs", inputs}}}});
}

Limits quick(std::chrono::milliseconds timeout = 1500ms) {
  Limits l;
  l.per_input_timeout = timeout;
  return l;
}

}  // namespace

TEST(Manifest, MultiplesExerciseLoads) {
  const auto s = load("multiples.json");
  EXPECT_EQ(s.kind, ExerciseKind::Construction);
  EXPECT_EQ(s.answer_kind, ObjectKind::Dfa);
  const auto& rule = std::get<ConstructionEquiv>(s.verification);
  EXPECT_EQ(rule.inputs.size(), 6u);
  EXPECT_EQ(rule.reference, "multiples");
}

TEST(Manifest, RuleMustFitAnswerKind) {
  Json j = io::parse_json(io::read_text_file(kData / "ambiguous.json"));
  j["answer_kind"] = "dfa";
  EXPECT_THROW(exercise_from_json(j), SchemaError);
}

TEST(Manifest, SolutionWithMissingTransitionIsInvalid) {
  Json j = io::parse_json(io::read_text_file(kData / "contains_b.json"));
  j["verification"]["solution"]["transitions"].erase(0);
  EXPECT_THROW(exercise_from_json(j), InvalidSolution);
}

TEST(Manifest, SchemaErrorsNameTheField) {
  Json j = io::parse_json(io::read_text_file(kData / "odd_binary.json"));
  j["verification"]["rule"] = "telepathy";
  try {
    exercise_from_json(j);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "verification.rule");
  }
  Json w = io::parse_json(io::read_text_file(kData / "odd_binary.json"));
  w["weights"] = {1.0};
  EXPECT_THROW(exercise_from_json(w), SchemaError);
  Json m = io::parse_json(io::read_text_file(kData / "multiples.json"));
  m["weights"] = {1, 1};
  EXPECT_THROW(exercise_from_json(m), SchemaError);
  m["weights"] = {0, 0, 0, 0, 0, 0};
  EXPECT_THROW(exercise_from_json(m), SchemaError);
  m.erase("weights");
  m["verification"]["reference"] = "nonsense";
  EXPECT_THROW(exercise_from_json(m), SchemaError);
  EXPECT_THROW(load_exercise(kData / "missing.json"), IoError);
}

TEST(Instance, OddBinaryCorrect) {
  const auto v = verify_instance(load("odd_binary.json"), "(0|1)((0|1)(0|1))*\n");
  EXPECT_EQ(v.category, Category::Correct);
  EXPECT_EQ(v.score, 1.0);
  EXPECT_FALSE(v.needs_human_review);
}

TEST(Instance, OddBinaryWrongWithCounterexamples) {
  const auto v = verify_instance(load("odd_binary.json"), "(0|1)*");
  EXPECT_EQ(v.category, Category::Wrong);
  EXPECT_EQ(v.score, 0.0);
  ASSERT_GE(v.feedback.size(), 2u);
  EXPECT_NE(v.feedback[0].find("accepts \"\""), std::string::npos) << joined(v.feedback);
  EXPECT_NE(v.feedback[1].find("accepts \"00\""), std::string::npos) << joined(v.feedback);
  EXPECT_NE(v.feedback[0].find("should be rejected"), std::string::npos);
}

TEST(Instance, HiddenCounterexamples) {
  auto spec = load("odd_binary.json");
  spec.feedback.reveal_counterexamples = false;
  const auto v = verify_instance(spec, "(0|1)*");
  EXPECT_EQ(v.category, Category::Wrong);
  EXPECT_EQ(joined(v.feedback).find("\"00\""), std::string::npos);
}

TEST(Instance, CounterexampleCap) {
  const auto v = verify_instance(load("contains_b.json"), dfa_text(regular::multiples_dfa(1)));
  // The answer uses only 'a'; its alphabet is widened with a dead state.
  EXPECT_EQ(v.category, Category::Wrong);
  EXPECT_EQ(v.feedback.size(), 2u) << joined(v.feedback);
}

TEST(Instance, NondeterministicDfaIsIllFormed) {
  Json j = io::automaton_to_json(oracle::contains_b());
  j["transitions"].push_back({0, "a", 1});
  const auto v = verify_instance(load("contains_b.json"), io::dump_pretty(j));
  EXPECT_EQ(v.category, Category::IllFormed);
  const std::string text = joined(v.feedback);
  EXPECT_NE(text.find("state 0"), std::string::npos) << text;
  EXPECT_NE(text.find("'a'"), std::string::npos) << text;
}

TEST(Instance, UnreadableAnswersNeedReview) {
  const auto v = verify_instance(load("odd_binary.json"), "(0|1");
  EXPECT_EQ(v.category, Category::MalformedAnswer);
  EXPECT_TRUE(v.needs_human_review);
  const auto d = verify_instance(load("contains_b.json"), "{\"states\": ");
  EXPECT_EQ(d.category, Category::MalformedAnswer);
}

TEST(Instance, RestrictedFormula) {
  const auto spec = load("impl_xor.json");
  EXPECT_EQ(verify_instance(spec, "X => (X ^ X)").category, Category::Correct);
  const auto conn = verify_instance(spec, "~X");
  EXPECT_EQ(conn.category, Category::Wrong);
  EXPECT_NE(joined(conn.feedback).find("{NOT}"), std::string::npos);
  const auto ne = verify_instance(spec, "X => X");
  EXPECT_EQ(ne.category, Category::Wrong);
  EXPECT_NE(joined(ne.feedback).find("X=1"), std::string::npos) << joined(ne.feedback);
}

TEST(Instance, AmbiguityWitness) {
  const auto spec = load("ambiguous.json");
  EXPECT_EQ(verify_instance(spec, "x+x+x\n").category, Category::Correct);
  const auto one = verify_instance(spec, "x");
  EXPECT_EQ(one.category, Category::Wrong);
  EXPECT_NE(joined(one.feedback).find("exactly one parse tree"), std::string::npos);
  EXPECT_EQ(verify_instance(spec, "x+").category, Category::Wrong);
  EXPECT_EQ(verify_instance(spec, "x*x").category, Category::IllFormed);
}

TEST(Instance, StringMembershipPartialScore) {
  const auto spec = load("membership.json");
  const auto good = verify_instance(spec, dfa_text(oracle::contains_b()));
  EXPECT_EQ(good.category, Category::Correct);
  EXPECT_EQ(good.score, 1.0);
  regular::Dfa all = oracle::contains_b();
  all.accepts = {0, 1};
  const auto half = verify_instance(spec, dfa_text(all));
  EXPECT_EQ(half.category, Category::Wrong);
  EXPECT_DOUBLE_EQ(half.score, 0.5);
}

TEST(Construction, ReferenceWrappedAsCandidate) {
  const auto v = run_construction(load("multiples.json"), kCandidates / "serve_multiples.sh", quick());
  EXPECT_EQ(v.category, Category::Correct) << render_verdict(v);
  EXPECT_EQ(v.score, 1.0);
  EXPECT_EQ(v.per_test.size(), 6u);
}

TEST(Construction, IllFormedOutputNamesTheInvariant) {
  const auto v = run_construction(load("multiples.json"), kScripts / "ill_formed.sh", quick());
  EXPECT_EQ(v.category, Category::IllFormed);
  ASSERT_FALSE(v.per_test.empty());
  const std::string text = joined(v.per_test[0].feedback);
  EXPECT_NE(text.find("-1"), std::string::npos) << text;
  EXPECT_NE(text.find("outside the state set"), std::string::npos) << text;
}

TEST(Construction, LoopOnFirstInputTimesOutAndRestPass) {
  const auto v = run_construction(load("multiples.json"), kCandidates / "loops_on_one.sh", quick(1000ms));
  EXPECT_EQ(v.category, Category::Timeout) << render_verdict(v);
  ASSERT_EQ(v.per_test.size(), 6u);
  EXPECT_EQ(v.per_test[0].category, Category::Timeout);
  for (std::size_t i = 1; i < 6; ++i) EXPECT_EQ(v.per_test[i].category, Category::Correct) << i;
  EXPECT_DOUBLE_EQ(v.score, 5.0 / 6.0);
}

TEST(Construction, SleeperTimesOutPromptly) {
  const auto spec = construction("multiples", Json::array({3}));
  const auto t0 = std::chrono::steady_clock::now();
  const auto v = run_construction(spec, kScripts / "sleeper.sh", quick(1000ms));
  const auto elapsed = std::chrono::steady_clock::now() - t0;
  EXPECT_EQ(v.category, Category::Timeout);
  EXPECT_LT(elapsed, 2000ms);
}

TEST(Construction, CrashIsFlaggedForReview) {
  const auto v = run_construction(load("multiples.json"), kScripts / "crasher.sh", quick());
  EXPECT_EQ(v.category, Category::Crash);
  EXPECT_TRUE(v.needs_human_review);
  EXPECT_NE(joined(v.per_test[0].feedback).find("status 3"), std::string::npos) << render_verdict(v);
}

TEST(Construction, OversizedAndGarbageOutput) {
  const auto spec = construction("multiples", Json::array({2}));
  const auto big = run_construction(spec, kScripts / "chatty.sh", quick(5000ms));
  EXPECT_EQ(big.category, Category::MalformedAnswer) << render_verdict(big);
  const auto junk = run_construction(spec, kScripts / "garbage.sh", quick());
  EXPECT_EQ(junk.category, Category::MalformedAnswer);
  EXPECT_TRUE(junk.needs_human_review);
}

TEST(Construction, NotExecutable) {
  EXPECT_THROW(run_construction(load("multiples.json"), kScripts / "missing.sh"), CandidateNotExecutable);
  EXPECT_THROW(run_construction(load("multiples.json"), kData / "multiples.json"), CandidateNotExecutable);
}

TEST(Construction, HiddenTestInputs) {
  auto spec = load("multiples.json");
  spec.feedback.reveal_test_inputs = false;
  const auto v = run_construction(spec, kScripts / "ill_formed.sh", quick());
  for (const auto& t : v.per_test) EXPECT_TRUE(t.input.empty());
}

TEST(Construction, WeightsScalePartialCredit) {
  Json m = io::parse_json(io::read_text_file(kData / "multiples.json"));
  m["weights"] = {5, 1, 1, 1, 1, 1};
  const auto v = run_construction(exercise_from_json(m), kCandidates / "loops_on_one.sh", quick(1000ms));
  EXPECT_DOUBLE_EQ(v.score, 5.0 / 10.0);
}

TEST(Construction, EveryReferencePassesItsOwnCheck) {
  const Json dfa = io::automaton_to_json(oracle::contains_b());
  const Json m3 = io::automaton_to_json(regular::multiples_dfa(3));
  std::mt19937 rng(5);
  const Json nfa = io::automaton_to_json(oracle::random_nfa(rng, 5, "ab"));
  const std::map<std::string, Json> inputs{
      {"skip", Json::array({dfa, m3})},
      {"multiples", Json::array({1, 7})},
      {"dfa2dpda3", Json::array({dfa, m3})},
      {"union_free", Json::array({"(a|b)*c", "a|b", "#"})},
      {"tr_impl_xor", Json::array({"X & Y", "~X | T", "X <=> F"})},
      {"determinize", Json::array({nfa})},
      {"minimize", Json::array({dfa, m3})},
      {"complement", Json::array({dfa})},
      {"dfa2cfg", Json::array({dfa, m3})},
  };
  for (const auto& name : registered_constructions()) {
    SCOPED_TRACE(name);
    if (name == "dfa2pda3") continue;
    ASSERT_TRUE(inputs.count(name)) << name;
    const auto v = run_construction(construction(name, inputs.at(name)), kCandidates / ("serve_" + name + ".sh"), quick(5000ms));
    EXPECT_EQ(v.category, Category::Correct) << name << "\n" << render_verdict(v);
  }
}

TEST(Construction, WrongConstructionIsCaught) {
  const Json dfa = io::automaton_to_json(oracle::contains_b());
  const auto v = run_construction(construction("minimize", Json::array({dfa})), kCandidates / "serve_complement.sh", quick());
  EXPECT_EQ(v.category, Category::Wrong);
  EXPECT_NE(joined(v.per_test[0].feedback).find("\"\""), std::string::npos) << render_verdict(v);
}

TEST(Serve, OneLinePerInput) {
  std::istringstream in("3\n\n1\n0\n");  // a blank line is a malformed input
  std::ostringstream out;
  serve_reference("multiples", in, out);
  std::istringstream lines(out.str());
  std::vector<std::string> got;
  for (std::string line; std::getline(lines, line);) got.push_back(line);
  ASSERT_EQ(got.size(), 4u);
  EXPECT_EQ(got[0], io::dump_compact(io::automaton_to_json(regular::multiples_dfa(3))));
  EXPECT_NE(got[1].find("\"error\""), std::string::npos);
  EXPECT_EQ(got[2], io::dump_compact(io::automaton_to_json(regular::multiples_dfa(1))));
  EXPECT_NE(got[3].find("\"error\""), std::string::npos);
}

TEST(Cluster, EquivalentRegexes) {
  const auto r = cluster_answers({{"p", "(0|1)*"}, {"q", "(1|0)*"}}, ObjectKind::Regex);
  ASSERT_EQ(r.clusters.size(), 1u);
  EXPECT_EQ(r.clusters[0].members, (std::vector<std::string>{"p", "q"}));
  EXPECT_EQ(r.clusters[0].representative, "p");
}

TEST(Cluster, FormulasByTruthTable) {
  const auto r = cluster_answers({{"a", "X&Y"}, {"b", "Y&X"}, {"c", "X|Y"}}, ObjectKind::Formula);
  ASSERT_EQ(r.clusters.size(), 2u);
  EXPECT_EQ(r.clusters[0].members, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(r.clusters[1].members, std::vector<std::string>{"c"});
}

TEST(Cluster, EmptyAndUnparseable) {
  EXPECT_TRUE(cluster_answers({}, ObjectKind::Regex).clusters.empty());
  const auto r = cluster_answers({{"a", "(("}, {"b", "a"}}, ObjectKind::Regex);
  ASSERT_EQ(r.clusters.size(), 2u);
  bool found = false;
  for (const auto& c : r.clusters) found = found || (c.key == kUnparseableKey && c.members == std::vector<std::string>{"a"});
  EXPECT_TRUE(found);
}

TEST(Batch, CountsIncludeAbsentStudents) {
  const fs::path dir = scratch_dir();
  const std::string good = dfa_text(oracle::contains_b());
  put(dir / "ann.json", good);
  put(dir / "bob.json", good);
  put(dir / "cat.json", good);
  Json bad = io::automaton_to_json(oracle::contains_b());
  bad["transitions"].push_back({1, "b", 0});
  put(dir / "dan.json", io::dump_pretty(bad));
  const auto report = grade_batch(load("contains_b.json"), dir, {}, {"ann", "bob", "cat", "dan", "eve"});
  EXPECT_EQ(report.counts, (std::map<Category, std::size_t>{
                               {Category::Correct, 3}, {Category::IllFormed, 1}, {Category::NoSubmission, 1}}));
  ASSERT_EQ(report.entries.size(), 5u);
  EXPECT_EQ(report.entries[4].id, "eve");
  fs::remove_all(dir);
}

TEST(Batch, EquivalentWrongAnswersShareACluster) {
  const fs::path dir = scratch_dir();
  put(dir / "s1.regex", "(0|1)*");
  put(dir / "s2.regex", "(1|0)*");
  put(dir / "s3.regex", "(0|1)((0|1)(0|1))*");
  put(dir / "s4.regex", "0");
  put(dir / "s5.regex", "");
  const auto report = grade_batch(load("odd_binary.json"), dir);
  ASSERT_EQ(report.clusters.clusters.size(), 2u);
  EXPECT_EQ(report.clusters.clusters[0].members, (std::vector<std::string>{"s1", "s2"}));
  EXPECT_EQ(report.clusters.clusters[0].representative, "s1");
  EXPECT_EQ(report.counts.at(Category::NoSubmission), 1u);
  fs::remove_all(dir);
}

TEST(Batch, ReportsAreReproducible) {
  const fs::path dir = scratch_dir();
  put(dir / "a.regex", "(0|1)*");
  put(dir / "b.regex", "(0|1)((0|1)(0|1))*");
  put(dir / "c.regex", "((");
  put(dir / "d.regex", "1(00)*");
  const auto spec = load("odd_binary.json");
  const auto first = grade_batch(spec, dir, {}, {"z"});
  const auto second = grade_batch(spec, dir, {}, {"z"});
  EXPECT_EQ(io::dump_pretty(batch_report_to_json(first)), io::dump_pretty(batch_report_to_json(second)));
  EXPECT_EQ(render_batch_report(first), render_batch_report(second));
  fs::remove_all(dir);
}

TEST(Verdicts, JsonShape) {
  const auto v = verify_instance(load("odd_binary.json"), "(0|1)*");
  const Json j = verdict_to_json(v);
  EXPECT_EQ(j["category"], "WRONG");
  EXPECT_TRUE(j["feedback"].is_array());
  EXPECT_EQ(j["needs_human_review"], false);
  EXPECT_EQ(render_verdict(v).rfind("WRONG (score 0.00)", 0), 0u);
}
