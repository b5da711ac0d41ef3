#include <cstdio>

#include "formlab/error.hpp"
#include "internal.hpp"

namespace formlab::grader {

namespace {

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};

Verdict from_outcome(detail::Outcome o) {
  Verdict v;
  v.category = o.category;
  v.score = o.category == Category::Correct ? 1.0 : 0.0;
  v.feedback = std::move(o.feedback);
  v.needs_human_review = o.review || detail::needs_review(o.category);
  if (v.category == Category::Correct && v.feedback.empty()) v.feedback.push_back("Correct.");
  return v;
}

detail::Outcome verify_language(const LanguageEquiv& rule, const Answer& a,
                                const FeedbackPolicy& policy) {
  detail::Outcome o;
  o.feedback = detail::language_feedback(detail::language_dfa(a, rule.solution.alphabet),
                                         rule.solution, policy, "Your answer");
  if (!o.feedback.empty()) o.category = Category::Wrong;
  return o;
}

detail::Outcome verify_ambiguity(const AmbiguityWitness& rule, const std::string& w) {
  detail::Outcome o;
  for (char c : w)
    if (rule.grammar.terminals.find(c) == std::string::npos) {
      o.category = Category::IllFormed;
      o.feedback.push_back("Your answer uses symbol '" + std::string(1, c) +
                           "', which is outside the terminals \"" + rule.grammar.terminals + "\".");
      return o;
    }
  const std::uint64_t trees = context::cyk_trees(context::cfg_to_cnf(rule.grammar), w, 2);
  if (trees >= 2) return o;
  o.category = Category::Wrong;
  o.feedback.push_back(trees == 1 ? regular::quote_word(w) + " has exactly one parse tree."
                                  : regular::quote_word(w) + " is not generated by the grammar.");
  return o;
}

Verdict verify_membership(const StringMembership& rule, const Answer& a,
                          const FeedbackPolicy& policy) {
  Verdict v;
  std::size_t passed = 0;
  for (std::size_t i = 0; i < rule.expected.size(); ++i) {
    const auto& [w, want] = rule.expected[i];
    const std::string label =
        policy.reveal_test_inputs ? regular::quote_word(w) : "test word " + std::to_string(i + 1);
    const auto got = detail::answer_membership(a, w, context::kDefaultStepLimit);
    if (got == detail::Membership::StepLimit) {
      v.category = detail::worst(v.category, Category::Timeout);
      v.feedback.push_back("Your answer did not halt within " +
                           std::to_string(context::kDefaultStepLimit) + " steps on " + label + ".");
    } else if ((got == detail::Membership::Yes) != want) {
      v.category = detail::worst(v.category, Category::Wrong);
      v.feedback.push_back("Your answer " + std::string(want ? "rejects " : "accepts ") + label +
                           ", which should be " + (want ? "accepted." : "rejected."));
    } else {
      ++passed;
    }
  }
  v.score = double(passed) / double(rule.expected.size());
  if (v.category == Category::Correct) v.feedback.push_back("Correct.");
  return v;
}

std::string score_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", s);
  return buf;
}

}  // namespace

Verdict verify_instance(const ExerciseSpec& spec, std::string_view answer_text) {
  if (spec.kind != ExerciseKind::Instance)
    throw DomainError("exercise " + spec.id + " is a construction exercise");
  detail::Outcome o;
  try {
    const Answer a = parse_answer(spec.answer_kind, answer_text);
    return std::visit(
        Overloaded{
            [&](const LanguageEquiv& r) { return from_outcome(verify_language(r, a, spec.feedback)); },
            [&](const FormulaEquivRestricted& r) {
              return from_outcome(detail::formula_outcome(std::get<logic::Formula>(a), r.solution,
                                                          r.allowed, spec.feedback));
            },
            [&](const AmbiguityWitness& r) {
              return from_outcome(verify_ambiguity(r, std::get<std::string>(a)));
            },
            [&](const StringMembership& r) { return verify_membership(r, a, spec.feedback); },
            [&](const ConstructionEquiv&) -> Verdict {
              throw DomainError("construction rule on an instance exercise");
            }},
        spec.verification);
  } catch (const IllFormed& e) {
    o.category = Category::IllFormed;
    o.feedback.push_back("Your answer is ill-formed:");
    for (const Defect& d : e.defects()) o.feedback.push_back(d.detail);
  } catch (const AlphabetMismatch& e) {
    o.category = Category::IllFormed;
    o.feedback.push_back(std::string("Your answer is ill-formed: ") + e.what());
  } catch (const ResourceLimit& e) {
    o.category = Category::Timeout;
    o.review = true;
    o.feedback.push_back(std::string("Checking your answer exceeded a resource limit: ") + e.what());
  } catch (const Error& e) {
    o.category = Category::MalformedAnswer;
    o.feedback.push_back(std::string("Your answer could not be read: ") + e.what());
  }
  return from_outcome(std::move(o));
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["category"] = category_name(v.category);
  j["score"] = v.score;
  j["feedback"] = v.feedback;
  j["needs_human_review"] = v.needs_human_review;
  j["per_test"] = Json::array();
  for (const TestRecord& t : v.per_test)
    j["per_test"].push_back({{"index", t.index},
                             {"category", category_name(t.category)},
                             {"input", t.input},
                             {"feedback", t.feedback}});
  return j;
}

std::string render_verdict(const Verdict& v) {
  std::string out = std::string(category_name(v.category)) + " (score " + score_text(v.score) + ")";
  if (v.needs_human_review) out += " [needs human review]";
  out += "\n";
  for (const auto& f : v.feedback) out += "  " + f + "\n";
  for (const TestRecord& t : v.per_test) {
    out += "  test " + std::to_string(t.index + 1) + ": " + std::string(category_name(t.category));
    if (!t.input.empty()) out += "  input " + t.input;
    out += "\n";
    for (const auto& f : t.feedback) out += "    " + f + "\n";
  }
  return out;
}

}  // namespace formlab::grader
