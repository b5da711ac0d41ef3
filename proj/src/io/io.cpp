#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "formlab/error.hpp"
#include "formlab/io.hpp"

namespace formlab::io {

using context::Cfg;
using context::Dpda;
using context::DpdaTransition;
using context::Rule;
using context::StackSymbol;
using logic::Formula;
using regular::AutomatonKind;
using regular::RawAutomaton;
using regular::RawTransition;
using regular::State;

namespace {

std::string at(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& field(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at(path, key), "missing required field");
  return *it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

const Json& tuple(const Json& j, const std::string& path, std::size_t n) {
  if (!j.is_array() || j.size() != n)
    throw SchemaError(path, "expected an array of " + std::to_string(n) + " elements");
  return j;
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw SchemaError(path, "integer out of range");
  return int(v);
}

std::string string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<int> integers(const Json& j, const std::string& path) {
  std::vector<int> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(integer(j[i], at(path, i)));
  return out;
}

// An alphabet is a string of symbols or an array of one-character strings.
std::string symbols(const Json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  std::string out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) {
    std::string s = string(j[i], at(path, i));
    if (s.size() != 1) throw SchemaError(at(path, i), "symbols must be single characters");
    out += s;
  }
  return out;
}

bool integer_like(const std::string& s) {
  if (s.empty() || s.size() > 9) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  if (s[i] == '0' && s.size() > i + 1) return false;
  if (s == "-0") return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

StackSymbol stack_symbol(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return std::to_string(integer(j, path));
  std::string s = string(j, path);
  if (s.empty()) throw SchemaError(path, "stack symbols must be non-empty");
  return s;
}

Json stack_symbol_json(const StackSymbol& s) {
  if (integer_like(s)) return std::stoi(s);
  return s;
}

Json sorted_states(std::vector<State> states) {
  std::sort(states.begin(), states.end());
  return states;
}

}  // namespace

std::string_view object_kind_name(ObjectKind k) {
  switch (k) {
    case ObjectKind::Formula: return "formula";
    case ObjectKind::Regex: return "regex";
    case ObjectKind::Dfa: return "dfa";
    case ObjectKind::Nfa: return "nfa";
    case ObjectKind::Cfg: return "cfg";
    case ObjectKind::Dpda: return "dpda";
    case ObjectKind::String: return "string";
  }
  return "?";
}

ObjectKind object_kind_from_name(std::string_view name) {
  for (ObjectKind k : {ObjectKind::Formula, ObjectKind::Regex, ObjectKind::Dfa, ObjectKind::Nfa,
                       ObjectKind::Cfg, ObjectKind::Dpda, ObjectKind::String})
    if (object_kind_name(k) == name) return k;
  throw DomainError("unknown object kind '" + std::string(name) + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string(what) + " is not valid JSON: " + e.what());
  }
}

RawAutomaton automaton_from_json(const Json& j) {
  RawAutomaton raw;
  const Json& start = field(j, "", "start");
  if (j.contains("kind")) {
    const std::string kind = string(j["kind"], "kind");
    if (kind == "dfa") raw.kind = AutomatonKind::Dfa;
    else if (kind == "nfa") raw.kind = AutomatonKind::Nfa;
    else throw SchemaError("kind", "expected \"dfa\" or \"nfa\", got \"" + kind + "\"");
  } else {
    raw.kind = start.is_array() ? AutomatonKind::Nfa : AutomatonKind::Dfa;
  }
  raw.states = integers(field(j, "", "states"), "states");
  raw.alphabet = symbols(field(j, "", "alphabet"), "alphabet");
  const Json& ts = array(field(j, "", "transitions"), "transitions");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string p = at("transitions", i);
    const Json& t = tuple(ts[i], p, 3);
    raw.transitions.push_back(
        {integer(t[0], at(p, 0)), string(t[1], at(p, 1)), integer(t[2], at(p, 2))});
  }
  raw.starts = start.is_array() ? integers(start, "start")
                                : std::vector<State>{integer(start, "start")};
  const char* accept_key = j.contains("accept") || !j.contains("accepts") ? "accept" : "accepts";
  raw.accepts = integers(field(j, "", accept_key), accept_key);
  return raw;
}

Json automaton_to_json(const RawAutomaton& raw) {
  Json j;
  j["kind"] = raw.kind == AutomatonKind::Dfa ? "dfa" : "nfa";
  j["states"] = raw.states;
  j["alphabet"] = raw.alphabet;
  j["transitions"] = Json::array();
  for (const RawTransition& t : raw.transitions)
    j["transitions"].push_back(Json::array({t.from, t.label, t.to}));
  if (raw.kind == AutomatonKind::Dfa && raw.starts.size() == 1)
    j["start"] = raw.starts.front();
  else
    j["start"] = raw.starts;
  j["accept"] = raw.accepts;
  return j;
}

Json automaton_to_json(const regular::Dfa& d) { return automaton_to_json(regular::to_raw(d)); }

Json automaton_to_json(const regular::Nfa& n) { return automaton_to_json(regular::to_raw(n)); }

Cfg grammar_from_json(const Json& j) {
  Cfg g;
  if (j.contains("kind") && string(j["kind"], "kind") != "cfg")
    throw SchemaError("kind", "expected \"cfg\"");
  const Json& vars = array(field(j, "", "variables"), "variables");
  for (std::size_t i = 0; i < vars.size(); ++i) g.variables.push_back(string(vars[i], at("variables", i)));
  g.terminals = symbols(field(j, "", "terminals"), "terminals");
  const Json& rules = array(field(j, "", "rules"), "rules");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const std::string p = at("rules", i);
    const Json& r = tuple(rules[i], p, 2);
    Rule rule{string(r[0], at(p, 0)), {}};
    const Json& rhs = array(r[1], at(p, 1));
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      std::string s = string(rhs[k], at(at(p, 1), k));
      if (s.empty()) throw SchemaError(at(at(p, 1), k), "symbols must be non-empty");
      rule.rhs.push_back(std::move(s));
    }
    g.rules.push_back(std::move(rule));
  }
  g.start = string(field(j, "", "start"), "start");
  return g;
}

Json grammar_to_json(const Cfg& g) {
  Json j;
  j["kind"] = "cfg";
  j["variables"] = g.variables;
  j["terminals"] = g.terminals;
  j["rules"] = Json::array();
  for (const Rule& r : g.rules) j["rules"].push_back(Json::array({r.lhs, r.rhs}));
  j["start"] = g.start;
  return j;
}

Dpda dpda_from_json(const Json& j) {
  Dpda p;
  if (j.contains("kind") && string(j["kind"], "kind") != "dpda")
    throw SchemaError("kind", "expected \"dpda\"");
  p.states = integers(field(j, "", "states"), "states");
  p.input_alphabet = symbols(field(j, "", "input_alphabet"), "input_alphabet");
  const Json& stack = array(field(j, "", "stack_alphabet"), "stack_alphabet");
  for (std::size_t i = 0; i < stack.size(); ++i)
    p.stack_alphabet.push_back(stack_symbol(stack[i], at("stack_alphabet", i)));
  const Json& ts = array(field(j, "", "transitions"), "transitions");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string path = at("transitions", i);
    const Json& t = tuple(ts[i], path, 2);
    const Json& trigger = tuple(t[0], at(path, 0), 3);
    const Json& effect = tuple(t[1], at(path, 1), 2);
    DpdaTransition tr;
    tr.from = integer(trigger[0], at(at(path, 0), 0));
    const std::string input = string(trigger[1], at(at(path, 0), 1));
    if (input.size() > 1) throw SchemaError(at(at(path, 0), 1), "input must be one symbol or \"\"");
    if (!input.empty()) tr.input = input[0];
    if (!(trigger[2].is_string() && trigger[2].get<std::string>().empty()))
      tr.pop = stack_symbol(trigger[2], at(at(path, 0), 2));
    tr.to = integer(effect[0], at(at(path, 1), 0));
    const Json& push = array(effect[1], at(at(path, 1), 1));
    for (std::size_t k = 0; k < push.size(); ++k)
      tr.push.push_back(stack_symbol(push[k], at(at(path, 1), k)));
    p.transitions.push_back(std::move(tr));
  }
  p.start = integer(field(j, "", "start"), "start");
  p.accepts = integers(field(j, "", "accept"), "accept");
  return p;
}

Json dpda_to_json(const Dpda& p) {
  Json j;
  j["kind"] = "dpda";
  j["states"] = p.states;
  j["input_alphabet"] = p.input_alphabet;
  j["stack_alphabet"] = Json::array();
  for (const auto& s : p.stack_alphabet) j["stack_alphabet"].push_back(stack_symbol_json(s));
  j["transitions"] = Json::array();
  for (const DpdaTransition& t : p.transitions) {
    Json push = Json::array();
    for (const auto& s : t.push) push.push_back(stack_symbol_json(s));
    j["transitions"].push_back(Json::array(
        {Json::array({t.from, t.input ? std::string(1, *t.input) : std::string(),
                      t.pop ? stack_symbol_json(*t.pop) : Json("")}),
         Json::array({t.to, push})}));
  }
  j["start"] = p.start;
  j["accept"] = sorted_states(p.accepts);
  return j;
}

namespace {

Formula formula_at(const Json& j, const std::string& path) {
  using Kind = Formula::Kind;
  const std::string op = string(field(j, path, "op"), at(path, "op"));
  if (op == "VAR") {
    const std::string name = string(field(j, path, "name"), at(path, "name"));
    if (name.size() != 1 || name[0] < 'A' || name[0] > 'Z')
      throw SchemaError(at(path, "name"), "variable names are single letters A-Z");
    return Formula::var(name[0]);
  }
  if (op == "TRUE") return Formula::constant(true);
  if (op == "FALSE") return Formula::constant(false);
  const std::string args_path = at(path, "args");
  const Json& args = array(field(j, path, "args"), args_path);
  if (op == "NOT") {
    tuple(args, args_path, 1);
    return Formula::negation(formula_at(args[0], at(args_path, 0)));
  }
  static const std::map<std::string, Kind> binary{{"AND", Kind::And}, {"OR", Kind::Or},
                                                 {"IMPL", Kind::Impl}, {"BIIM", Kind::Biim},
                                                 {"XOR", Kind::Xor}};
  auto it = binary.find(op);
  if (it == binary.end()) throw SchemaError(at(path, "op"), "unknown connective \"" + op + "\"");
  tuple(args, args_path, 2);
  return Formula::binary(it->second, formula_at(args[0], at(args_path, 0)),
                         formula_at(args[1], at(args_path, 1)));
}

}  // namespace

Formula formula_from_json(const Json& j) { return formula_at(j, ""); }

Json formula_to_json(const Formula& f) {
  using Kind = Formula::Kind;
  switch (f.kind()) {
    case Kind::Var: return {{"op", "VAR"}, {"name", std::string(1, f.name())}};
    case Kind::True: return {{"op", "TRUE"}};
    case Kind::False: return {{"op", "FALSE"}};
    case Kind::Not: return {{"op", "NOT"}, {"args", Json::array({formula_to_json(f.lhs())})}};
    default: break;
  }
  static const std::map<Kind, const char*> names{{Kind::And, "AND"}, {Kind::Or, "OR"},
                                                {Kind::Impl, "IMPL"}, {Kind::Biim, "BIIM"},
                                                {Kind::Xor, "XOR"}};
  return {{"op", names.at(f.kind())},
          {"args", Json::array({formula_to_json(f.lhs()), formula_to_json(f.rhs())})}};
}

ObjectKind detect_kind(const std::filesystem::path& path, std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    const Json j = parse_json(text, path.string());
    if (j.contains("kind") && j["kind"].is_string())
      return object_kind_from_name(j["kind"].get<std::string>());
    if (j.contains("op")) return ObjectKind::Formula;
    if (j.contains("rules")) return ObjectKind::Cfg;
    if (j.contains("input_alphabet")) return ObjectKind::Dpda;
    if (j.contains("start") && j["start"].is_array()) return ObjectKind::Nfa;
    return ObjectKind::Dfa;
  }
  const std::string ext = path.extension().string();
  if (ext == ".formula" || ext == ".fml" || ext == ".prop") return ObjectKind::Formula;
  return ObjectKind::Regex;
}

std::string dump_compact(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::replace); }

std::string dump_pretty(const Json& j) { return j.dump(2, ' ', false, Json::error_handler_t::replace); }

}  // namespace formlab::io
