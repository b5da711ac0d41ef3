#include "formlab/error.hpp"
#include "formlab/grader.hpp"

namespace formlab::grader {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};

Answer checked(ObjectKind kind, const Json& j) {
  switch (kind) {
    case ObjectKind::Dfa: {
      regular::RawAutomaton raw = io::automaton_from_json(j);
      raw.kind = regular::AutomatonKind::Dfa;
      return regular::to_dfa(raw);
    }
    case ObjectKind::Nfa: return regular::to_nfa(io::automaton_from_json(j));
    case ObjectKind::Cfg: {
      context::Cfg g = io::grammar_from_json(j);
      if (auto defects = context::validate_cfg(g); !defects.empty()) throw IllFormed(std::move(defects));
      return g;
    }
    case ObjectKind::Dpda: {
      context::Dpda p = io::dpda_from_json(j);
      if (auto defects = context::validate_dpda(p); !defects.empty())
        throw IllFormed(std::move(defects));
      return p;
    }
    default: break;
  }
  throw DomainError("not a structured answer kind");
}

}  // namespace

Answer parse_answer(ObjectKind kind, std::string_view text) {
  switch (kind) {
    case ObjectKind::Formula: {
      const std::string_view t = trim(text);
      if (!t.empty() && t.front() == '{') return io::formula_from_json(io::parse_json(t, "answer"));
      return logic::parse_formula(t);
    }
    case ObjectKind::Regex: return regular::parse_regex(trim(text));
    case ObjectKind::String: {
      std::string_view t = text;
      if (t.ends_with('\n')) t.remove_suffix(1);
      if (t.ends_with('\r')) t.remove_suffix(1);
      return std::string(t);
    }
    default: return checked(kind, io::parse_json(text, "answer"));
  }
}

Answer answer_from_json(ObjectKind kind, const Json& j) {
  switch (kind) {
    case ObjectKind::Formula:
      if (j.is_object()) return io::formula_from_json(j);
      if (!j.is_string()) throw SchemaError("", "expected a formula string or object");
      return logic::parse_formula(j.get<std::string>());
    case ObjectKind::Regex:
      if (!j.is_string()) throw SchemaError("", "expected a regular expression string");
      return regular::parse_regex(j.get<std::string>());
    case ObjectKind::String:
      if (!j.is_string()) throw SchemaError("", "expected a string");
      return j.get<std::string>();
    default:
      if (!j.is_object()) throw SchemaError("", "expected an object");
      return checked(kind, j);
  }
}

Json answer_to_json(const Answer& a) {
  return std::visit(
      Overloaded{[](const logic::Formula& f) { return Json(logic::render_formula(f)); },
                 [](const regular::Regex& r) { return Json(regular::render_regex(r)); },
                 [](const regular::Dfa& d) { return io::automaton_to_json(d); },
                 [](const regular::Nfa& n) { return io::automaton_to_json(n); },
                 [](const context::Cfg& g) { return io::grammar_to_json(g); },
                 [](const context::Dpda& p) { return io::dpda_to_json(p); },
                 [](const std::string& s) { return Json(s); }},
      a);
}

std::string render_answer(const Answer& a) {
  if (const auto* s = std::get_if<std::string>(&a)) return regular::quote_word(*s);
  const Json j = answer_to_json(a);
  return j.is_string() ? j.get<std::string>() : io::dump_compact(j);
}

}  // namespace formlab::grader
