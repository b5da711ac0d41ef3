#include <algorithm>

#include "formlab/error.hpp"
#include "internal.hpp"

namespace formlab::grader {

std::string_view category_name(Category c) {
  switch (c) {
    case Category::Correct: return "CORRECT";
    case Category::Wrong: return "WRONG";
    case Category::IllFormed: return "ILL_FORMED";
    case Category::MalformedAnswer: return "MALFORMED_ANSWER";
    case Category::Timeout: return "TIMEOUT";
    case Category::Crash: return "CRASH";
    case Category::NoSubmission: return "NO_SUBMISSION";
  }
  return "?";
}

std::string alphabet_of(const Answer& a) { return detail::answer_alphabet(a); }

regular::Dfa language_of(const Answer& a, std::string_view alphabet) {
  return detail::language_dfa(a, alphabet);
}

namespace detail {

namespace {

regular::Dfa over_alphabet(regular::Dfa d, std::string_view alphabet) {
  for (char c : d.alphabet)
    if (alphabet.find(c) == std::string_view::npos)
      throw AlphabetMismatch("symbol '" + std::string(1, c) + "' is outside the alphabet \"" +
                             std::string(alphabet) + "\"");
  const regular::State dead = d.states.empty() ? 0 : *d.states.rbegin() + 1;
  bool used = false;
  for (char c : alphabet) {
    if (d.alphabet.find(c) != std::string::npos) continue;
    for (regular::State q : d.states) d.delta[{q, c}] = dead;
    used = true;
  }
  if (used) {
    d.states.insert(dead);
    for (char c : alphabet) d.delta[{dead, c}] = dead;
  }
  d.alphabet = std::string(alphabet);
  return d;
}

bool within(std::string_view w, std::string_view alphabet) {
  return std::all_of(w.begin(), w.end(),
                     [&](char c) { return alphabet.find(c) != std::string_view::npos; });
}

}  // namespace

Membership answer_membership(const Answer& a, std::string_view w, std::size_t step_limit) {
  auto yes = [](bool b) { return b ? Membership::Yes : Membership::No; };
  if (const auto* r = std::get_if<regular::Regex>(&a)) {
    const std::string sigma = regular::regex_symbols(*r);
    if (!within(w, sigma)) return Membership::No;
    return yes(regular::dfa_accepts(regular::regex_to_dfa(*r, sigma), w));
  }
  if (const auto* d = std::get_if<regular::Dfa>(&a))
    return yes(within(w, d->alphabet) && regular::dfa_accepts(*d, w));
  if (const auto* n = std::get_if<regular::Nfa>(&a)) return yes(regular::nfa_accepts(*n, w));
  if (const auto* g = std::get_if<context::Cfg>(&a))
    return yes(within(w, g->terminals) && context::cfg_member(*g, w));
  if (const auto* p = std::get_if<context::Dpda>(&a)) {
    if (!within(w, p->input_alphabet)) return Membership::No;
    switch (context::dpda_run(*p, w, step_limit).tag) {
      case context::RunTag::Accepted: return Membership::Yes;
      case context::RunTag::Rejected: return Membership::No;
      case context::RunTag::StepLimit: return Membership::StepLimit;
    }
  }
  throw DomainError("answer kind has no membership test");
}

regular::Dfa language_dfa(const Answer& a, std::string_view alphabet) {
  if (const auto* r = std::get_if<regular::Regex>(&a)) return regular::regex_to_dfa(*r, alphabet);
  if (const auto* d = std::get_if<regular::Dfa>(&a)) return over_alphabet(*d, alphabet);
  if (const auto* n = std::get_if<regular::Nfa>(&a))
    return over_alphabet(regular::determinize(*n), alphabet);
  throw DomainError("answer kind has no regular language");
}

std::string answer_alphabet(const Answer& a) {
  if (const auto* r = std::get_if<regular::Regex>(&a)) return regular::regex_symbols(*r);
  if (const auto* d = std::get_if<regular::Dfa>(&a)) return d->alphabet;
  if (const auto* n = std::get_if<regular::Nfa>(&a)) return n->alphabet;
  throw DomainError("answer kind has no alphabet");
}

std::vector<std::string> language_feedback(const regular::Dfa& got, const regular::Dfa& want,
                                           const FeedbackPolicy& policy, std::string_view subject) {
  const std::size_t limit = policy.reveal_counterexamples ? policy.max_counterexamples : 0;
  const auto result = regular::equivalence_counterexamples(got, want, limit);
  if (result.equivalent) return {};
  std::vector<std::string> out;
  if (result.examples.empty()) {
    out.push_back(std::string(subject) + " does not describe the required language.");
    return out;
  }
  for (const auto& ex : result.examples) {
    if (ex.side == regular::Side::OnlyFirst)
      out.push_back(std::string(subject) + " accepts " + regular::quote_word(ex.word) +
                    ", which should be rejected.");
    else
      out.push_back(std::string(subject) + " rejects " + regular::quote_word(ex.word) +
                    ", which should be accepted.");
  }
  return out;
}

Category worst(Category a, Category b) { return std::max(a, b); }

bool needs_review(Category c) {
  return c == Category::MalformedAnswer || c == Category::Crash;
}

std::string show_assignment(const logic::Assignment& a) {
  std::string out;
  for (const auto& [v, b] : a) out += (out.empty() ? "" : ", ") + v + "=" + (b ? "1" : "0");
  return out;
}

std::vector<std::string> all_words(std::string_view alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == max_len) continue;
    for (char c : alphabet) out.push_back(out[i] + c);
  }
  return out;
}

}  // namespace detail

}  // namespace formlab::grader
