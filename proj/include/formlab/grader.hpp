#pragma once

// Exercise manifests, instance verification, construction grading against
// external candidate programs, answer clustering and batch reports.

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "formlab/automata.hpp"
#include "formlab/context.hpp"
#include "formlab/io.hpp"
#include "formlab/logic.hpp"
#include "formlab/regex.hpp"

namespace formlab::grader {

using io::Json;
using io::ObjectKind;

/// An embedded solution or reference input failed validation.
class InvalidSolution : public Error {
 public:
  using Error::Error;
};

/// The candidate path cannot be executed (an environment problem, not a crash).
class CandidateNotExecutable : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Answers

using Answer = std::variant<logic::Formula, regular::Regex, regular::Dfa, regular::Nfa,
                            context::Cfg, context::Dpda, std::string>;

/// Parses answer text of the given kind. Throws ParseError or SchemaError when
/// it cannot be read and IllFormed when it reads but breaks an invariant.
Answer parse_answer(ObjectKind kind, std::string_view text);
/// Same, for an answer that arrives as a JSON value (regexes, formulas and
/// strings as JSON strings).
Answer answer_from_json(ObjectKind kind, const Json& j);
Json answer_to_json(const Answer& a);
std::string render_answer(const Answer& a);

/// Symbols used by a regex, DFA or NFA answer.
std::string alphabet_of(const Answer& a);
/// DFA for a regex, DFA or NFA answer over `alphabet`, which must include
/// every symbol the answer uses.
regular::Dfa language_of(const Answer& a, std::string_view alphabet);

// ---------------------------------------------------------------------------
// Manifests

enum class ExerciseKind { Instance, Construction };

struct FeedbackPolicy {
  bool reveal_counterexamples = true;
  std::size_t max_counterexamples = 3;
  bool reveal_test_inputs = true;
};

struct LanguageEquiv {
  regular::Dfa solution;  // over the exercise alphabet
};

struct FormulaEquivRestricted {
  logic::Formula solution;
  logic::ConnectiveSet allowed;
};

struct AmbiguityWitness {
  context::Cfg grammar;
};

/// The answer machine must classify each listed word as stated.
struct StringMembership {
  std::vector<std::pair<std::string, bool>> expected;
};

struct ConstructionEquiv {
  std::vector<Json> inputs;
  std::optional<std::string> reference;  // a registered construction
  std::vector<Json> solutions;           // used when no reference is named
};

using VerificationRule = std::variant<LanguageEquiv, FormulaEquivRestricted, AmbiguityWitness,
                                      StringMembership, ConstructionEquiv>;

struct ExerciseSpec {
  std::string id;
  std::string title;
  std::string statement;
  ExerciseKind kind = ExerciseKind::Instance;
  ObjectKind answer_kind = ObjectKind::Regex;
  VerificationRule verification;
  FeedbackPolicy feedback;
  std::vector<double> weights;  // construction only; empty means uniform
};

/// Throws SchemaError (with a field path) or InvalidSolution.
ExerciseSpec load_exercise(const std::filesystem::path& path);
ExerciseSpec exercise_from_json(const Json& j);

// ---------------------------------------------------------------------------
// Verdicts

/// Ordered from best to worst; a construction's overall category is the worst
/// per-input category.
enum class Category { Correct, Wrong, IllFormed, MalformedAnswer, Timeout, Crash, NoSubmission };

std::string_view category_name(Category c);

struct TestRecord {
  std::size_t index = 0;
  Category category = Category::Correct;
  std::string input;  // empty when test inputs are hidden
  std::vector<std::string> feedback;
};

struct Verdict {
  Category category = Category::Correct;
  double score = 0;
  std::vector<std::string> feedback;
  std::vector<TestRecord> per_test;
  bool needs_human_review = false;
};

Json verdict_to_json(const Verdict& v);
std::string render_verdict(const Verdict& v);

/// Instance answers given as file text. Never throws for bad answers.
Verdict verify_instance(const ExerciseSpec& spec, std::string_view answer_text);

// ---------------------------------------------------------------------------
// Construction grading

struct Limits {
  std::chrono::milliseconds per_input_timeout{5000};
  std::size_t step_limit = context::kDefaultStepLimit;
  std::size_t max_output_bytes = 1 << 20;
};

/// Names accepted as ConstructionEquiv references.
std::vector<std::string> registered_constructions();
bool is_registered_construction(std::string_view name);
/// Kind of answer the named construction produces.
ObjectKind construction_output_kind(std::string_view name);
/// Reference output for one test input, as it would travel over the wire.
Json run_reference(std::string_view name, const Json& input);

/// Sends each test input to the candidate as one JSON line and reads one JSON
/// line back. Throws CandidateNotExecutable.
Verdict run_construction(const ExerciseSpec& spec, const std::filesystem::path& candidate,
                         const Limits& limits = {});

/// Serves a registered construction over the wire protocol until end of input.
void serve_reference(std::string_view name, std::istream& in, std::ostream& out);

// ---------------------------------------------------------------------------
// Clustering and batches

inline constexpr const char* kUnparseableKey = "UNPARSEABLE";

struct Cluster {
  std::string key;
  std::size_t size_bucket = 0;
  std::vector<std::string> members;  // sorted ids
  std::string representative;
};

struct ClusterReport {
  std::vector<Cluster> clusters;
};

struct Submission {
  std::string id;
  std::string text;
};

ClusterReport cluster_answers(const std::vector<Submission>& submissions, ObjectKind kind);
Json cluster_report_to_json(const ClusterReport& r);
std::string render_cluster_report(const ClusterReport& r);

struct BatchEntry {
  std::string id;
  Verdict verdict;
};

struct BatchReport {
  std::string exercise;
  std::vector<BatchEntry> entries;  // sorted by id
  std::map<Category, std::size_t> counts;
  ClusterReport clusters;  // WRONG instance answers
};

/// Submission id is the file name without extension. Ids on the roster with
/// no file, and empty files, are recorded as NO_SUBMISSION.
BatchReport grade_batch(const ExerciseSpec& spec, const std::filesystem::path& dir,
                        const Limits& limits = {},
                        const std::vector<std::string>& roster = {});

/// Reads the submissions of a directory (instance answers) for clustering.
std::vector<Submission> read_submissions(const std::filesystem::path& dir);

Json batch_report_to_json(const BatchReport& r);
std::string render_batch_report(const BatchReport& r);

}  // namespace formlab::grader
