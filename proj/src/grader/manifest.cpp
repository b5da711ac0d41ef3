#include <algorithm>

#include "formlab/error.hpp"
#include "internal.hpp"

namespace formlab::grader {

namespace {

const Json& required(const Json& j, const std::string& path, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

bool flag(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw SchemaError(path, "expected true or false");
  return j.get<bool>();
}

std::string describe(const Error& e) {
  if (const auto* ill = dynamic_cast<const IllFormed*>(&e)) {
    std::string out;
    for (const Defect& d : ill->defects()) out += (out.empty() ? "" : "; ") + d.detail;
    return out;
  }
  return e.what();
}

// Parses an embedded object of the given kind; any failure is an invalid solution.
Answer embedded(ObjectKind kind, const Json& j, const std::string& path) {
  try {
    return answer_from_json(kind, j);
  } catch (const Error& e) {
    throw InvalidSolution(path + ": " + describe(e));
  }
}

ObjectKind solution_kind(const Json& j) {
  if (j.is_string()) return ObjectKind::Regex;
  if (j.is_object() && j.contains("start") && j["start"].is_array() &&
      !(j.contains("kind") && j["kind"] == "dfa"))
    return ObjectKind::Nfa;
  if (j.is_object() && j.contains("kind") && j["kind"] == "nfa") return ObjectKind::Nfa;
  return ObjectKind::Dfa;
}

std::string sorted_unique(std::string s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

void require_answer_kind(ObjectKind actual, std::initializer_list<ObjectKind> allowed,
                         const std::string& rule) {
  if (std::find(allowed.begin(), allowed.end(), actual) == allowed.end())
    throw SchemaError("answer_kind", "answer kind " + std::string(io::object_kind_name(actual)) +
                                         " cannot be checked by rule " + rule);
}

VerificationRule read_rule(const Json& v, ExerciseKind kind, ObjectKind answer) {
  if (!v.is_object()) throw SchemaError("verification", "expected an object");
  const std::string rule = text(required(v, "verification", "rule"), "verification.rule");
  const bool construction = rule == "construction_equiv";
  if (construction != (kind == ExerciseKind::Construction))
    throw SchemaError("verification.rule", "rule " + rule + " does not fit a " +
                                               (kind == ExerciseKind::Construction
                                                    ? "construction"
                                                    : "instance") +
                                               " exercise");

  if (rule == "language_equiv") {
    require_answer_kind(answer, {ObjectKind::Regex, ObjectKind::Dfa, ObjectKind::Nfa}, rule);
    const Json& sol = required(v, "verification", "solution");
    const Answer a = embedded(solution_kind(sol), sol, "verification.solution");
    std::string sigma = detail::answer_alphabet(a);
    if (v.contains("alphabet")) {
      const std::string declared = text(v["alphabet"], "verification.alphabet");
      for (char c : sigma)
        if (declared.find(c) == std::string::npos)
          throw InvalidSolution("verification.solution: symbol '" + std::string(1, c) +
                                "' is outside the alphabet \"" + declared + "\"");
      sigma = declared;
    }
    sigma = sorted_unique(sigma);
    return LanguageEquiv{regular::brzozowski_minimize(detail::language_dfa(a, sigma))};
  }
  if (rule == "formula_equiv_restricted") {
    require_answer_kind(answer, {ObjectKind::Formula}, rule);
    const Json& sol = required(v, "verification", "solution");
    const auto f = std::get<logic::Formula>(embedded(ObjectKind::Formula, sol, "verification.solution"));
    logic::ConnectiveSet allowed;
    const Json& names = required(v, "verification", "allowed");
    if (!names.is_array()) throw SchemaError("verification.allowed", "expected an array");
    for (std::size_t i = 0; i < names.size(); ++i) {
      const std::string path = "verification.allowed[" + std::to_string(i) + "]";
      const auto c = logic::connective_from_name(text(names[i], path));
      if (!c) throw SchemaError(path, "unknown connective");
      allowed.insert(*c);
    }
    return FormulaEquivRestricted{f, allowed};
  }
  if (rule == "ambiguity_witness") {
    require_answer_kind(answer, {ObjectKind::String}, rule);
    const Json& g = required(v, "verification", "grammar");
    return AmbiguityWitness{std::get<context::Cfg>(embedded(ObjectKind::Cfg, g, "verification.grammar"))};
  }
  if (rule == "string_membership") {
    require_answer_kind(answer, {ObjectKind::Regex, ObjectKind::Dfa, ObjectKind::Nfa,
                                 ObjectKind::Cfg, ObjectKind::Dpda},
                        rule);
    StringMembership m;
    const Json& expected = required(v, "verification", "expected");
    if (!expected.is_array() || expected.empty())
      throw SchemaError("verification.expected", "expected a non-empty array of [word, bool] pairs");
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const std::string path = "verification.expected[" + std::to_string(i) + "]";
      if (!expected[i].is_array() || expected[i].size() != 2)
        throw SchemaError(path, "expected a [word, bool] pair");
      m.expected.emplace_back(text(expected[i][0], path + "[0]"), flag(expected[i][1], path + "[1]"));
    }
    if (v.contains("machine")) {
      const Answer machine = embedded(answer, v["machine"], "verification.machine");
      for (const auto& [w, accept] : m.expected) {
        const auto got = detail::answer_membership(machine, w, context::kDefaultStepLimit);
        if ((got == detail::Membership::Yes) != accept)
          throw InvalidSolution("verification.machine: disagrees with the expected verdict on " +
                                regular::quote_word(w));
      }
    }
    return m;
  }
  if (construction) {
    ConstructionEquiv c;
    const Json& inputs = required(v, "verification", "inputs");
    if (!inputs.is_array() || inputs.empty())
      throw SchemaError("verification.inputs", "a construction needs a non-empty list of test inputs");
    c.inputs.assign(inputs.begin(), inputs.end());
    if (v.contains("reference")) {
      const std::string name = text(v["reference"], "verification.reference");
      if (!is_registered_construction(name))
        throw SchemaError("verification.reference", "unknown construction '" + name + "'");
      if (construction_output_kind(name) != answer)
        throw SchemaError("answer_kind", "construction " + name + " produces " +
                                             std::string(io::object_kind_name(construction_output_kind(name))));
      for (std::size_t i = 0; i < c.inputs.size(); ++i) {
        try {
          run_reference(name, c.inputs[i]);
        } catch (const Error& e) {
          throw InvalidSolution("verification.inputs[" + std::to_string(i) + "]: " + describe(e));
        } catch (const Json::exception& e) {
          throw InvalidSolution("verification.inputs[" + std::to_string(i) + "]: " + e.what());
        }
      }
      c.reference = name;
    } else {
      const Json& sols = required(v, "verification", "solutions");
      if (!sols.is_array() || sols.size() != c.inputs.size())
        throw SchemaError("verification.solutions", "expected one solution per test input");
      for (std::size_t i = 0; i < sols.size(); ++i)
        embedded(answer, sols[i], "verification.solutions[" + std::to_string(i) + "]");
      c.solutions.assign(sols.begin(), sols.end());
    }
    return c;
  }
  throw SchemaError("verification.rule", "unknown rule \"" + rule + "\"");
}

}  // namespace

ExerciseSpec exercise_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("", "an exercise manifest must be an object");
  ExerciseSpec s;
  s.id = text(required(j, "", "id"), "id");
  s.title = j.contains("title") ? text(j["title"], "title") : s.id;
  s.statement = j.contains("statement") ? text(j["statement"], "statement") : "";
  const std::string kind = text(required(j, "", "kind"), "kind");
  if (kind == "instance") s.kind = ExerciseKind::Instance;
  else if (kind == "construction") s.kind = ExerciseKind::Construction;
  else throw SchemaError("kind", "expected \"instance\" or \"construction\"");
  try {
    s.answer_kind = io::object_kind_from_name(text(required(j, "", "answer_kind"), "answer_kind"));
  } catch (const DomainError& e) {
    throw SchemaError("answer_kind", e.what());
  }
  if (j.contains("feedback")) {
    const Json& f = j["feedback"];
    if (!f.is_object()) throw SchemaError("feedback", "expected an object");
    if (f.contains("reveal_counterexamples"))
      s.feedback.reveal_counterexamples = flag(f["reveal_counterexamples"], "feedback.reveal_counterexamples");
    if (f.contains("reveal_test_inputs"))
      s.feedback.reveal_test_inputs = flag(f["reveal_test_inputs"], "feedback.reveal_test_inputs");
    if (f.contains("max_counterexamples")) {
      if (!f["max_counterexamples"].is_number_unsigned())
        throw SchemaError("feedback.max_counterexamples", "expected a non-negative integer");
      s.feedback.max_counterexamples = f["max_counterexamples"].get<std::size_t>();
    }
  }
  s.verification = read_rule(required(j, "", "verification"), s.kind, s.answer_kind);
  if (j.contains("weights")) {
    const Json& w = j["weights"];
    const auto* c = std::get_if<ConstructionEquiv>(&s.verification);
    if (!c) throw SchemaError("weights", "weights apply to construction exercises only");
    if (!w.is_array() || w.size() != c->inputs.size())
      throw SchemaError("weights", "expected one weight per test input");
    double total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!w[i].is_number() || w[i].get<double>() < 0)
        throw SchemaError("weights[" + std::to_string(i) + "]", "expected a non-negative number");
      s.weights.push_back(w[i].get<double>());
      total += s.weights.back();
    }
    if (total <= 0) throw SchemaError("weights", "weights must not all be zero");
  }
  return s;
}

ExerciseSpec load_exercise(const std::filesystem::path& path) {
  return exercise_from_json(io::parse_json(io::read_text_file(path), path.string()));
}

}  // namespace formlab::grader
