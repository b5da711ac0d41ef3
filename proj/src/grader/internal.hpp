#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>

#include "formlab/grader.hpp"

namespace formlab::grader::detail {

enum class Membership { Yes, No, StepLimit };

/// Words with symbols outside the answer's alphabet are rejected.
Membership answer_membership(const Answer& a, std::string_view w, std::size_t step_limit);

/// DFA for a regex, DFA or NFA answer over exactly `alphabet`. Throws
/// AlphabetMismatch if the answer uses other symbols.
regular::Dfa language_dfa(const Answer& a, std::string_view alphabet);

/// Symbols used by a regex, DFA or NFA answer.
std::string answer_alphabet(const Answer& a);

/// Counterexample messages comparing `got` against `want`; empty when the
/// languages agree.
std::vector<std::string> language_feedback(const regular::Dfa& got, const regular::Dfa& want,
                                           const FeedbackPolicy& policy, std::string_view subject);

struct Outcome {
  Category category = Category::Correct;
  std::vector<std::string> feedback;
  bool review = false;
};

/// Parses, validates and verifies one construction output.
Outcome check_construction_output(const ExerciseSpec& spec, std::size_t index, std::string_view line,
                                  const Limits& limits);

/// A candidate program kept running across requests. Killed (with its
/// whole process group) after a timeout or bad output and restarted on the
/// next request.
class CandidateProcess {
 public:
  struct Reply {
    enum class Kind { Line, Timeout, Crash, TooLong } kind;
    std::string text;  // the line, or a description of the failure
  };

  /// Throws CandidateNotExecutable.
  explicit CandidateProcess(std::filesystem::path program);
  ~CandidateProcess();
  CandidateProcess(const CandidateProcess&) = delete;
  CandidateProcess& operator=(const CandidateProcess&) = delete;

  Reply request(std::string_view line, std::chrono::milliseconds timeout, std::size_t max_bytes);

 private:
  void spawn();
  void stop();
  std::string exit_description();

  std::filesystem::path program_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string pending_;
};

Outcome formula_outcome(const logic::Formula& got, const logic::Formula& want,
                        logic::ConnectiveSet allowed, const FeedbackPolicy& policy);

Category worst(Category a, Category b);
bool needs_review(Category c);

std::string show_assignment(const logic::Assignment& a);

/// Every word over the alphabet of length at most max_len, shortest first.
std::vector<std::string> all_words(std::string_view alphabet, std::size_t max_len);

}  // namespace formlab::grader::detail
