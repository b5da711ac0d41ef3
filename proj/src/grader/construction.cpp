#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>

#include "formlab/error.hpp"
#include "internal.hpp"

namespace formlab::grader {

using detail::Outcome;

namespace {

using Check = std::function<Outcome(const Json& input, const Json& output, const FeedbackPolicy&,
                                    const Limits&)>;

struct Entry {
  ObjectKind output;
  std::function<Json(const Json&)> reference;
  Check check;
};

regular::Dfa input_dfa(const Json& j) {
  regular::RawAutomaton raw = io::automaton_from_json(j);
  raw.kind = regular::AutomatonKind::Dfa;
  return regular::to_dfa(raw);
}

regular::Nfa input_nfa(const Json& j) { return regular::to_nfa(io::automaton_from_json(j)); }

int input_int(const Json& j) {
  if (!j.is_number_integer()) throw SchemaError("", "expected an integer input");
  return j.get<int>();
}

regular::Regex input_regex(const Json& j) {
  if (!j.is_string()) throw SchemaError("", "expected a regular expression string");
  return regular::parse_regex(j.get<std::string>());
}

logic::Formula input_formula(const Json& j) {
  return std::get<logic::Formula>(answer_from_json(ObjectKind::Formula, j));
}

Outcome from_messages(std::vector<std::string> messages) {
  Outcome o;
  if (!messages.empty()) o.category = Category::Wrong;
  o.feedback = std::move(messages);
  return o;
}

Outcome language_outcome(const regular::Dfa& got, const regular::Dfa& want,
                         const FeedbackPolicy& policy) {
  return from_messages(detail::language_feedback(got, want, policy, "Your output"));
}

// Compares two membership predicates on every word up to max_len.
Outcome bounded_outcome(std::string_view alphabet, std::size_t max_len,
                        const std::function<detail::Membership(const std::string&)>& got,
                        const std::function<bool(const std::string&)>& want,
                        const FeedbackPolicy& policy, std::size_t step_limit) {
  Outcome o;
  std::size_t shown = 0;
  for (const std::string& w : detail::all_words(alphabet, max_len)) {
    const detail::Membership m = got(w);
    if (m == detail::Membership::StepLimit) {
      o.category = detail::worst(o.category, Category::Timeout);
      o.feedback.push_back("Your output did not halt within " + std::to_string(step_limit) +
                           " steps" +
                           (policy.reveal_counterexamples ? " on " + regular::quote_word(w) : "") +
                           ".");
      return o;
    }
    const bool accepted = m == detail::Membership::Yes;
    if (accepted == want(w)) continue;
    o.category = detail::worst(o.category, Category::Wrong);
    if (!policy.reveal_counterexamples) {
      o.feedback.push_back("Your output does not recognise the required language.");
      return o;
    }
    if (shown++ < policy.max_counterexamples)
      o.feedback.push_back(std::string("Your output ") + (accepted ? "accepts " : "rejects ") +
                           regular::quote_word(w) + ", which should be " +
                           (accepted ? "rejected." : "accepted."));
  }
  if (o.category == Category::Wrong && o.feedback.empty())
    o.feedback.push_back("Your output does not recognise the required language.");
  return o;
}

logic::ConnectiveSet all_connectives() {
  logic::ConnectiveSet s;
  for (auto c : logic::kAllConnectives) s.insert(c);
  return s;
}

Outcome cfg_outcome(const context::Cfg& got, std::string_view alphabet, std::size_t max_len,
                    const std::function<bool(const std::string&)>& want,
                    const FeedbackPolicy& policy) {
  const context::Cfg cnf = context::cfg_to_cnf(got);
  auto member = [&](const std::string& w) {
    const bool inside = std::all_of(w.begin(), w.end(), [&](char c) {
      return got.terminals.find(c) != std::string::npos;
    });
    return inside && context::cyk_trees(cnf, w, 1) > 0 ? detail::Membership::Yes
                                                       : detail::Membership::No;
  };
  return bounded_outcome(alphabet, max_len, member, want, policy, 0);
}

std::string merged(std::string a, std::string_view b) {
  for (char c : b)
    if (a.find(c) == std::string::npos) a += c;
  std::sort(a.begin(), a.end());
  return a;
}

Outcome check_dfa_output(const Json& output, const regular::Dfa& want,
                         const FeedbackPolicy& policy) {
  const Answer got = answer_from_json(ObjectKind::Dfa, output);
  return language_outcome(detail::language_dfa(got, want.alphabet), want, policy);
}

const std::map<std::string, Entry, std::less<>>& registry() {
  static const std::map<std::string, Entry, std::less<>> entries = [] {
    std::map<std::string, Entry, std::less<>> m;
    m["skip"] = {
        ObjectKind::Nfa,
        [](const Json& in) { return io::automaton_to_json(regular::skip_construction(input_dfa(in))); },
        [](const Json& in, const Json& out, const FeedbackPolicy& policy, const Limits&) {
          const regular::Dfa d = input_dfa(in);
          const regular::Dfa want = regular::determinize(regular::skip_construction(d));
          const Answer got = answer_from_json(ObjectKind::Nfa, out);
          return language_outcome(detail::language_dfa(got, d.alphabet), want, policy);
        }};
    m["multiples"] = {
        ObjectKind::Dfa,
        [](const Json& in) { return io::automaton_to_json(regular::multiples_dfa(input_int(in))); },
        [](const Json& in, const Json& out, const FeedbackPolicy& policy, const Limits&) {
          return check_dfa_output(out, regular::multiples_dfa(input_int(in)), policy);
        }};
    Entry dpda3{
        ObjectKind::Dpda,
        [](const Json& in) { return io::dpda_to_json(context::dfa_to_dpda3(input_dfa(in))); },
        [](const Json& in, const Json& out, const FeedbackPolicy& policy, const Limits& limits) {
          const regular::Dfa d = input_dfa(in);
          const Answer got = answer_from_json(ObjectKind::Dpda, out);
          const auto& p = std::get<context::Dpda>(got);
          const std::set<regular::State> states(p.states.begin(), p.states.end());
          if (states.size() != 3)
            return from_messages({"Your output has " + std::to_string(states.size()) +
                                  " states; exactly three are required."});
          return bounded_outcome(
              d.alphabet, 8,
              [&](const std::string& w) { return detail::answer_membership(got, w, limits.step_limit); },
              [&](const std::string& w) { return regular::dfa_accepts(d, w); }, policy,
              limits.step_limit);
        }};
    m["dfa2dpda3"] = dpda3;
    m["dfa2pda3"] = dpda3;
    m["union_free"] = {
        ObjectKind::Regex,
        [](const Json& in) {
          Json out = Json::array();
          for (const auto& part : regular::union_free_decomposition(input_regex(in)))
            out.push_back(regular::render_regex(part));
          return out;
        },
        [](const Json& in, const Json& out, const FeedbackPolicy& policy, const Limits&) {
          const regular::Regex r = input_regex(in);
          if (!out.is_array()) throw SchemaError("", "expected an array of regular expressions");
          std::vector<regular::Regex> parts;
          std::string sigma = regular::regex_symbols(r);
          for (std::size_t i = 0; i < out.size(); ++i) {
            if (!out[i].is_string())
              throw SchemaError("[" + std::to_string(i) + "]", "expected a regular expression string");
            parts.push_back(regular::parse_regex(out[i].get<std::string>()));
            sigma = merged(sigma, regular::regex_symbols(parts.back()));
          }
          std::vector<std::string> messages;
          for (std::size_t i = 0; i < parts.size(); ++i)
            if (!regular::is_union_free(parts[i]))
              messages.push_back("Part " + std::to_string(i + 1) + ", " +
                                 regular::render_regex(parts[i]) + ", contains a union.");
          if (!messages.empty()) return from_messages(std::move(messages));
          const regular::Dfa want = regular::regex_to_dfa(r, sigma);
          const regular::Dfa got = regular::regex_to_dfa(regular::union_all(parts), sigma);
          return language_outcome(got, want, policy);
        }};
    m["tr_impl_xor"] = {
        ObjectKind::Formula,
        [](const Json& in) {
          return Json(logic::render_formula(logic::translate_to_impl_xor(input_formula(in))));
        },
        [](const Json& in, const Json& out, const FeedbackPolicy& policy, const Limits&) {
          logic::ConnectiveSet allowed;
          allowed.insert(logic::Connective::Impl);
          allowed.insert(logic::Connective::Xor);
          const auto got = std::get<logic::Formula>(answer_from_json(ObjectKind::Formula, out));
          return detail::formula_outcome(got, input_formula(in), allowed, policy);
        }};
    m["determinize"] = {
        ObjectKind::Dfa,
        [](const Json& in) { return io::automaton_to_json(regular::determinize(input_nfa(in))); },
        [](const Json& in, const Json& out, const FeedbackPolicy& policy, const Limits&) {
          const regular::Nfa n = input_nfa(in);
          regular::Dfa want = regular::determinize(n);
          want.alphabet = n.alphabet;
          return check_dfa_output(out, want, policy);
        }};
    m["minimize"] = {
        ObjectKind::Dfa,
        [](const Json& in) {
          return io::automaton_to_json(regular::brzozowski_minimize(input_dfa(in)));
        },
        [](const Json& in, const Json& out, const FeedbackPolicy& policy, const Limits&) {
          const regular::Dfa d = input_dfa(in);
          Outcome o = check_dfa_output(out, d, policy);
          if (o.category != Category::Correct) return o;
          const auto got = std::get<regular::Dfa>(answer_from_json(ObjectKind::Dfa, out));
          if (!regular::is_minimal(got)) {
            const std::size_t minimum = regular::brzozowski_minimize(d).states.size();
            return from_messages({"Your output recognises the right language but has " +
                                  std::to_string(got.states.size()) + " states; the minimum is " +
                                  std::to_string(minimum) + "."});
          }
          return o;
        }};
    m["complement"] = {
        ObjectKind::Dfa,
        [](const Json& in) { return io::automaton_to_json(regular::dfa_complement(input_dfa(in))); },
        [](const Json& in, const Json& out, const FeedbackPolicy& policy, const Limits&) {
          return check_dfa_output(out, regular::dfa_complement(input_dfa(in)), policy);
        }};
    m["dfa2cfg"] = {
        ObjectKind::Cfg,
        [](const Json& in) { return io::grammar_to_json(context::dfa_to_cfg(input_dfa(in))); },
        [](const Json& in, const Json& out, const FeedbackPolicy& policy, const Limits&) {
          const regular::Dfa d = input_dfa(in);
          const auto g = std::get<context::Cfg>(answer_from_json(ObjectKind::Cfg, out));
          return cfg_outcome(g, d.alphabet, 6,
                             [&](const std::string& w) { return regular::dfa_accepts(d, w); },
                             policy);
        }};
    return m;
  }();
  return entries;
}

const Entry& entry(std::string_view name) {
  auto it = registry().find(name);
  if (it == registry().end())
    throw DomainError("unknown construction '" + std::string(name) + "'");
  return it->second;
}

Outcome compare_answers(ObjectKind kind, const Answer& got, const Answer& want,
                        const FeedbackPolicy& policy, const Limits& limits) {
  switch (kind) {
    case ObjectKind::Regex:
    case ObjectKind::Dfa:
    case ObjectKind::Nfa: {
      const std::string sigma = merged(detail::answer_alphabet(want), detail::answer_alphabet(got));
      return language_outcome(detail::language_dfa(got, sigma), detail::language_dfa(want, sigma),
                              policy);
    }
    case ObjectKind::Formula:
      return detail::formula_outcome(std::get<logic::Formula>(got), std::get<logic::Formula>(want),
                             all_connectives(), policy);
    case ObjectKind::String: {
      const auto& g = std::get<std::string>(got);
      const auto& w = std::get<std::string>(want);
      if (g == w) return {};
      return from_messages({policy.reveal_counterexamples
                                ? "Your output is " + regular::quote_word(g) + ", expected " +
                                      regular::quote_word(w) + "."
                                : std::string("Your output is not the expected string.")});
    }
    case ObjectKind::Cfg: {
      const auto& g = std::get<context::Cfg>(got);
      const auto& w = std::get<context::Cfg>(want);
      const context::Cfg want_cnf = context::cfg_to_cnf(w);
      return cfg_outcome(g, merged(g.terminals, w.terminals), 6,
                         [&](const std::string& s) {
                           return std::all_of(s.begin(), s.end(), [&](char c) {
                                    return w.terminals.find(c) != std::string::npos;
                                  }) &&
                                  context::cyk_trees(want_cnf, s, 1) > 0;
                         },
                         policy);
    }
    case ObjectKind::Dpda: {
      const auto& g = std::get<context::Dpda>(got);
      const auto& w = std::get<context::Dpda>(want);
      return bounded_outcome(
          merged(g.input_alphabet, w.input_alphabet), 8,
          [&](const std::string& s) { return detail::answer_membership(got, s, limits.step_limit); },
          [&](const std::string& s) {
            return detail::answer_membership(want, s, limits.step_limit) == detail::Membership::Yes;
          },
          policy, limits.step_limit);
    }
  }
  return {};
}

}  // namespace

std::vector<std::string> registered_constructions() {
  std::vector<std::string> out;
  for (const auto& [name, e] : registry()) out.push_back(name);
  return out;
}

bool is_registered_construction(std::string_view name) {
  return registry().find(name) != registry().end();
}

ObjectKind construction_output_kind(std::string_view name) { return entry(name).output; }

Json run_reference(std::string_view name, const Json& input) { return entry(name).reference(input); }

namespace detail {

Outcome formula_outcome(const logic::Formula& got, const logic::Formula& want,
                        logic::ConnectiveSet allowed, const FeedbackPolicy& policy) {
  const auto v = logic::restricted_equivalent(got, want, allowed);
  using Kind = logic::RestrictedVerdict::Kind;
  if (v.kind == Kind::Correct) return {};
  if (v.kind == Kind::WrongConnectives)
    return from_messages({"Your formula uses " + logic::to_string(v.offending) +
                          ", which are outside the allowed connectives " +
                          logic::to_string(allowed) + "."});
  std::vector<std::string> messages{"Your formula is not equivalent to the required one."};
  if (policy.reveal_counterexamples && !v.witness.empty())
    messages.push_back("They differ under " + detail::show_assignment(v.witness) + ".");
  return from_messages(std::move(messages));
}

Outcome check_construction_output(const ExerciseSpec& spec, std::size_t index, std::string_view line,
                                  const Limits& limits) {
  const auto& rule = std::get<ConstructionEquiv>(spec.verification);
  const Json& input = rule.inputs.at(index);
  Outcome o;
  try {
    const Json out = io::parse_json(line, "output");
    if (rule.reference) return entry(*rule.reference).check(input, out, spec.feedback, limits);
    const Answer want = answer_from_json(spec.answer_kind, rule.solutions.at(index));
    const Answer got = answer_from_json(spec.answer_kind, out);
    return compare_answers(spec.answer_kind, got, want, spec.feedback, limits);
  } catch (const IllFormed& e) {
    o.category = Category::IllFormed;
    o.feedback.push_back("Your output is ill-formed:");
    for (const Defect& d : e.defects()) o.feedback.push_back(d.detail);
  } catch (const AlphabetMismatch& e) {
    o.category = Category::IllFormed;
    o.feedback.push_back(std::string("Your output is ill-formed: ") + e.what());
  } catch (const ResourceLimit& e) {
    o.category = Category::Timeout;
    o.review = true;
    o.feedback.push_back(std::string("Checking your output exceeded a resource limit: ") + e.what());
  } catch (const Error& e) {
    o.category = Category::MalformedAnswer;
    o.review = true;
    o.feedback.push_back(std::string("Your output could not be read: ") + e.what());
  } catch (const Json::exception& e) {
    o.category = Category::MalformedAnswer;
    o.review = true;
    o.feedback.push_back(std::string("Your output could not be read: ") + e.what());
  }
  return o;
}

}  // namespace detail

void serve_reference(std::string_view name, std::istream& in, std::ostream& out) {
  const Entry& e = entry(name);
  std::string line;
  while (std::getline(in, line)) {
    try {
      out << io::dump_compact(e.reference(io::parse_json(line, "input"))) << '\n';
    } catch (const std::exception& ex) {
      out << io::dump_compact(Json{{"error", ex.what()}}) << '\n';
    }
    out.flush();
  }
}

}  // namespace formlab::grader
