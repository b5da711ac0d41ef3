#include "formlab/error.hpp"
#include "internal.hpp"

namespace formlab::grader {

Verdict run_construction(const ExerciseSpec& spec, const std::filesystem::path& candidate,
                         const Limits& limits) {
  const auto* rule = std::get_if<ConstructionEquiv>(&spec.verification);
  if (spec.kind != ExerciseKind::Construction || !rule)
    throw DomainError("exercise " + spec.id + " is not a construction exercise");
  detail::CandidateProcess process(candidate);

  Verdict v;
  double earned = 0, total = 0;
  std::size_t passed = 0;
  for (std::size_t i = 0; i < rule->inputs.size(); ++i) {
    TestRecord t;
    t.index = i;
    const std::string line = io::dump_compact(rule->inputs[i]);
    if (spec.feedback.reveal_test_inputs) t.input = line;
    const auto reply = process.request(line, limits.per_input_timeout, limits.max_output_bytes);
    using Kind = detail::CandidateProcess::Reply::Kind;
    detail::Outcome o;
    switch (reply.kind) {
      case Kind::Line: o = detail::check_construction_output(spec, i, reply.text, limits); break;
      case Kind::Timeout:
        o.category = Category::Timeout;
        o.feedback.push_back("No answer within " +
                             std::to_string(limits.per_input_timeout.count()) + " ms.");
        break;
      case Kind::Crash:
        o.category = Category::Crash;
        o.feedback.push_back("The program crashed: " + reply.text + ".");
        break;
      case Kind::TooLong:
        o.category = Category::MalformedAnswer;
        o.feedback.push_back("Your output was too long: " + reply.text + ".");
        break;
    }
    t.category = o.category;
    if (o.category == Category::Correct && o.feedback.empty()) o.feedback.push_back("Correct.");
    t.feedback = std::move(o.feedback);
    v.needs_human_review = v.needs_human_review || o.review || detail::needs_review(o.category);
    v.category = detail::worst(v.category, t.category);

    const double w = spec.weights.empty() ? 1.0 : spec.weights[i];
    total += w;
    if (t.category == Category::Correct) {
      earned += w;
      ++passed;
    }
    v.per_test.push_back(std::move(t));
  }
  v.score = v.category == Category::Correct ? 1.0 : earned / total;
  v.feedback.push_back(std::to_string(passed) + " of " + std::to_string(rule->inputs.size()) +
                       " test inputs passed.");
  return v;
}

}  // namespace formlab::grader
