#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "formlab/context.hpp"
#include "formlab/error.hpp"
#include "formlab/grader.hpp"
#include "formlab/io.hpp"
#include "formlab/logic.hpp"
#include "formlab/regex.hpp"

namespace {

using namespace formlab;
using grader::Answer;
using io::Json;
using io::ObjectKind;

/// Bad invocation or unusable input: exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::string output;
  std::string alphabet;
  std::string as;
  double timeout = 5.0;
  std::size_t step_limit = context::kDefaultStepLimit;
  std::size_t counterexamples = 3;
  bool no_counterexamples = false;
  std::size_t max_len = 5;
  std::string roster;
  std::string to;
  std::vector<std::string> files;
  std::string name;
  std::vector<std::string> args;
};

bool structured(const Options& o) { return o.format == "structured"; }

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    io::write_text_file(o.output, text);
  }
}

void emit_json(const Options& o, const Json& j) {
  emit(o, (structured(o) ? io::dump_compact(j) : io::dump_pretty(j)) + "\n");
}

struct Loaded {
  ObjectKind kind;
  std::string text;
};

Loaded read_object(const Options& o, const std::string& path) {
  Loaded l;
  l.text = io::read_text_file(path);
  l.kind = o.as.empty() ? io::detect_kind(path, l.text) : io::object_kind_from_name(o.as);
  return l;
}

Answer load(const Options& o, const std::string& path) {
  const Loaded l = read_object(o, path);
  return grader::parse_answer(l.kind, l.text);
}

bool is_regular(const Answer& a) {
  return std::holds_alternative<regular::Regex>(a) || std::holds_alternative<regular::Dfa>(a) ||
         std::holds_alternative<regular::Nfa>(a);
}

std::string sorted_symbols(std::string s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

regular::Dfa regular_dfa(const Options& o, const Answer& a) {
  if (!is_regular(a)) throw UsageError("expected a regular expression, DFA or NFA");
  return grader::language_of(
      a, sorted_symbols(o.alphabet.empty() ? grader::alphabet_of(a) : o.alphabet));
}

// A command-line value that names a file is read from it; otherwise it is the text itself.
std::string text_or_file(const std::string& value) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(value, ec)) {
    std::string t = io::read_text_file(value);
    while (!t.empty() && (t.back() == '\n' || t.back() == '\r')) t.pop_back();
    return t;
  }
  return value;
}

regular::Dfa dfa_argument(const Options& o, const std::string& path) {
  const Answer a = load(o, path);
  if (const auto* d = std::get_if<regular::Dfa>(&a)) return *d;
  return regular_dfa(o, a);
}

int cmd_check(const Options& o) {
  const Loaded l = read_object(o, o.files.at(0));
  Json j{{"kind", io::object_kind_name(l.kind)}, {"well_formed", true}, {"defects", Json::array()}};
  std::string text;
  try {
    grader::parse_answer(l.kind, l.text);
    text = std::string(io::object_kind_name(l.kind)) + ": well-formed\n";
  } catch (const IllFormed& e) {
    j["well_formed"] = false;
    text = std::string(io::object_kind_name(l.kind)) + ": ill-formed\n";
    for (const Defect& d : e.defects()) {
      j["defects"].push_back({{"kind", defect_kind_name(d.kind)}, {"detail", d.detail}});
      text += "  " + std::string(defect_kind_name(d.kind)) + ": " + d.detail + "\n";
    }
  } catch (const Error& e) {
    j["well_formed"] = false;
    j["error"] = e.what();
    text = std::string(io::object_kind_name(l.kind)) + ": unreadable\n  " + e.what() + "\n";
  }
  if (structured(o)) emit(o, io::dump_compact(j) + "\n");
  else emit(o, text);
  return j["well_formed"].get<bool>() ? 0 : 1;
}

int cmd_equiv(const Options& o) {
  const Answer a = load(o, o.files.at(0));
  const Answer b = load(o, o.files.at(1));
  const auto* fa = std::get_if<logic::Formula>(&a);
  const auto* fb = std::get_if<logic::Formula>(&b);
  if (fa && fb) {
    logic::ConnectiveSet all;
    for (auto c : logic::kAllConnectives) all.insert(c);
    const auto v = logic::restricted_equivalent(*fa, *fb, all);
    const bool same = v.kind == logic::RestrictedVerdict::Kind::Correct;
    Json j{{"equivalent", same}};
    std::string text = same ? "equivalent\n" : "not equivalent\n";
    if (!same && !o.no_counterexamples) {
      j["witness"] = v.witness;
      std::string shown;
      for (const auto& [var, val] : v.witness) shown += (shown.empty() ? "" : ", ") + var + "=" + (val ? "1" : "0");
      text += "  they differ under " + shown + "\n";
    }
    if (structured(o)) emit(o, io::dump_compact(j) + "\n");
    else emit(o, text);
    return same ? 0 : 1;
  }
  if (!is_regular(a) || !is_regular(b))
    throw UsageError("equiv compares two formulas or two regular languages");
  const std::string sigma = sorted_symbols(
      o.alphabet.empty() ? grader::alphabet_of(a) + grader::alphabet_of(b) : o.alphabet);
  const auto result = regular::equivalence_counterexamples(
      grader::language_of(a, sigma), grader::language_of(b, sigma),
      o.no_counterexamples ? 0 : o.counterexamples);
  Json j{{"equivalent", result.equivalent}, {"counterexamples", Json::array()}};
  std::string text = result.equivalent ? "equivalent\n" : "not equivalent\n";
  for (const auto& ex : result.examples) {
    const bool first = ex.side == regular::Side::OnlyFirst;
    j["counterexamples"].push_back({{"word", ex.word}, {"accepted_by", first ? "first" : "second"}});
    text += "  " + regular::quote_word(ex.word) + " is accepted only by the " +
            (first ? "first" : "second") + "\n";
  }
  if (structured(o)) emit(o, io::dump_compact(j) + "\n");
  else emit(o, text);
  return result.equivalent ? 0 : 1;
}

int cmd_minimize(const Options& o) {
  const regular::Dfa d = regular_dfa(o, load(o, o.files.at(0)));
  emit_json(o, io::automaton_to_json(regular::canonical_form(regular::brzozowski_minimize(d))));
  return 0;
}

int cmd_convert(const Options& o) {
  const Answer a = load(o, o.files.at(0));
  if (o.to == "cnf") {
    if (const auto* g = std::get_if<context::Cfg>(&a)) {
      const context::Cfg cnf = context::cfg_to_cnf(*g);
      if (structured(o)) emit_json(o, io::grammar_to_json(cnf));
      else emit(o, context::render_cfg(cnf));
      return 0;
    }
    if (const auto* f = std::get_if<logic::Formula>(&a)) {
      const auto t = logic::tseitin_3cnf(*f);
      if (structured(o)) {
        Json clauses = Json::array();
        for (const auto& c : t.cnf) {
          Json lits = Json::array();
          for (const auto& l : c) lits.push_back(logic::render_literal(l));
          clauses.push_back(lits);
        }
        emit(o, io::dump_compact(clauses) + "\n");
      } else {
        emit(o, logic::render_cnf(t.cnf) + "\n");
      }
      return 0;
    }
    throw UsageError("--to cnf needs a grammar or a formula");
  }
  const regular::Dfa d = std::holds_alternative<regular::Dfa>(a) && o.alphabet.empty()
                             ? std::get<regular::Dfa>(a)
                             : regular_dfa(o, a);
  if (o.to == "dfa") emit_json(o, io::automaton_to_json(d));
  else if (o.to == "nfa")
    emit_json(o, io::automaton_to_json(std::holds_alternative<regular::Nfa>(a) ? std::get<regular::Nfa>(a)
                                                                               : regular::as_nfa(d)));
  else if (o.to == "cfg") emit_json(o, io::grammar_to_json(context::dfa_to_cfg(d)));
  else if (o.to == "dpda3") emit_json(o, io::dpda_to_json(context::dfa_to_dpda3(d)));
  else throw UsageError("unknown target " + o.to);
  return 0;
}

int cmd_construct(const Options& o) {
  auto arg = [&]() -> const std::string& {
    if (o.args.empty()) throw UsageError("construct " + o.name + " needs an argument");
    return o.args.front();
  };
  if (o.name == "multiples") {
    int d = 0;
    try {
      std::size_t used = 0;
      d = std::stoi(arg(), &used);
      if (used != arg().size()) throw std::invalid_argument(arg());
    } catch (const std::logic_error&) {
      throw UsageError("multiples needs an integer, got " + arg());
    }
    emit_json(o, io::automaton_to_json(regular::multiples_dfa(d)));
  } else if (o.name == "skip") {
    emit_json(o, io::automaton_to_json(regular::skip_construction(dfa_argument(o, arg()))));
  } else if (o.name == "dfa2cfg") {
    emit_json(o, io::grammar_to_json(context::dfa_to_cfg(dfa_argument(o, arg()))));
  } else if (o.name == "dfa2dpda3") {
    emit_json(o, io::dpda_to_json(context::dfa_to_dpda3(dfa_argument(o, arg()))));
  } else if (o.name == "uf") {
    const auto parts = regular::union_free_decomposition(regular::parse_regex(text_or_file(arg())));
    Json j = Json::array();
    std::string text;
    for (const auto& p : parts) {
      j.push_back(regular::render_regex(p));
      text += regular::render_regex(p) + "\n";
    }
    if (structured(o)) emit(o, io::dump_compact(j) + "\n");
    else emit(o, text);
  } else if (o.name == "tr") {
    const auto f = logic::translate_to_impl_xor(logic::parse_formula(text_or_file(arg())));
    if (structured(o)) emit(o, io::dump_compact(io::formula_to_json(f)) + "\n");
    else emit(o, logic::render_formula(f) + "\n");
  } else {
    throw UsageError("unknown construction " + o.name);
  }
  return 0;
}

int cmd_enumerate(const Options& o) {
  const Answer a = load(o, o.files.at(0));
  std::vector<std::string> words;
  if (is_regular(a)) {
    words = regular::enumerate_language(regular_dfa(o, a), o.max_len);
  } else if (const auto* g = std::get_if<context::Cfg>(&a)) {
    const context::Cfg cnf = context::cfg_to_cnf(*g);
    std::vector<std::string> all{""};
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all[i].size() < o.max_len)
        for (char c : sorted_symbols(g->terminals)) all.push_back(all[i] + c);
    for (const auto& w : all)
      if (context::cyk_trees(cnf, w, 1) > 0) words.push_back(w);
  } else if (const auto* p = std::get_if<context::Dpda>(&a)) {
    std::vector<std::string> all{""};
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all[i].size() < o.max_len)
        for (char c : sorted_symbols(p->input_alphabet)) all.push_back(all[i] + c);
    for (const auto& w : all)
      if (context::dpda_run(*p, w, o.step_limit).tag == context::RunTag::Accepted) words.push_back(w);
  } else {
    throw UsageError("enumerate needs a machine, a regular expression or a grammar");
  }
  if (structured(o)) {
    emit(o, io::dump_compact(Json(words)) + "\n");
  } else {
    std::string text;
    for (const auto& w : words) text += "\"" + w + "\"\n";
    emit(o, text);
  }
  return 0;
}

grader::Limits limits_of(const Options& o) {
  grader::Limits l;
  l.per_input_timeout = std::chrono::milliseconds(static_cast<long long>(o.timeout * 1000));
  l.step_limit = o.step_limit;
  return l;
}

grader::ExerciseSpec manifest(const Options& o, std::size_t at) {
  grader::ExerciseSpec spec = grader::load_exercise(o.files.at(at));
  if (o.no_counterexamples) spec.feedback.reveal_counterexamples = false;
  return spec;
}

int cmd_grade(const Options& o) {
  const grader::ExerciseSpec spec = manifest(o, 0);
  const std::string& submission = o.files.at(1);
  const grader::Verdict v = spec.kind == grader::ExerciseKind::Instance
                                ? grader::verify_instance(spec, io::read_text_file(submission))
                                : grader::run_construction(spec, submission, limits_of(o));
  if (structured(o)) emit(o, io::dump_compact(grader::verdict_to_json(v)) + "\n");
  else emit(o, grader::render_verdict(v));
  return v.category == grader::Category::Correct ? 0 : 1;
}

int cmd_grade_batch(const Options& o) {
  const grader::ExerciseSpec spec = manifest(o, 0);
  std::vector<std::string> roster;
  if (!o.roster.empty()) {
    std::istringstream in(io::read_text_file(o.roster));
    for (std::string line; std::getline(in, line);) {
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      roster.push_back(line.substr(b, line.find_last_not_of(" \t\r") - b + 1));
    }
  }
  const auto report = grader::grade_batch(spec, o.files.at(1), limits_of(o), roster);
  if (structured(o)) emit(o, io::dump_pretty(grader::batch_report_to_json(report)) + "\n");
  else emit(o, grader::render_batch_report(report));
  return 0;
}

int cmd_cluster(const Options& o) {
  const grader::ExerciseSpec spec = manifest(o, 0);
  const auto report = grader::cluster_answers(grader::read_submissions(o.files.at(1)), spec.answer_kind);
  if (structured(o)) emit(o, io::dump_pretty(grader::cluster_report_to_json(report)) + "\n");
  else emit(o, grader::render_cluster_report(report));
  return 0;
}

int cmd_serve(const Options& o) {
  if (!grader::is_registered_construction(o.name)) throw UsageError("unknown construction " + o.name);
  grader::serve_reference(o.name, std::cin, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"formlab: automata, grammars and propositional logic, with an exercise grader"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  app.add_option("-o,--output", o.output, "Write output to this file");
  app.add_option("--as", o.as, "Read input files as this kind (formula, regex, dfa, nfa, cfg, dpda)")
      ->check(CLI::IsMember({"formula", "regex", "dfa", "nfa", "cfg", "dpda", "string"}));
  app.add_option("--alphabet", o.alphabet, "Alphabet for regular expressions");

  std::map<CLI::App*, int (*)(const Options&)> handlers;

  auto* check = app.add_subcommand("check", "Validate a file and list its defects");
  check->add_option("file", o.files, "Input file")->required()->expected(1);
  handlers[check] = cmd_check;

  auto* equiv = app.add_subcommand("equiv", "Compare two languages or two formulas");
  equiv->add_option("files", o.files, "Two input files")->required()->expected(2);
  equiv->add_option("--counterexamples", o.counterexamples, "How many witnesses to show")
      ->capture_default_str();
  equiv->add_flag("--no-counterexamples", o.no_counterexamples, "Do not show witnesses");
  handlers[equiv] = cmd_equiv;

  auto* minimize = app.add_subcommand("minimize", "Minimal DFA in canonical numbering");
  minimize->add_option("file", o.files, "Input file")->required()->expected(1);
  handlers[minimize] = cmd_minimize;

  auto* convert = app.add_subcommand("convert", "Convert between representations");
  convert->add_option("file", o.files, "Input file")->required()->expected(1);
  convert->add_option("--to", o.to, "Target representation")
      ->required()
      ->check(CLI::IsMember({"dfa", "nfa", "cfg", "dpda3", "cnf"}));
  handlers[convert] = cmd_convert;

  auto* construct = app.add_subcommand("construct", "Run a named construction");
  construct->add_option("name", o.name, "skip, multiples, uf, tr, dfa2cfg or dfa2dpda3")
      ->required()
      ->check(CLI::IsMember({"skip", "multiples", "uf", "tr", "dfa2cfg", "dfa2dpda3"}));
  construct->add_option("args", o.args, "Argument: a file, a number or an expression")->required();
  handlers[construct] = cmd_construct;

  auto* enumerate = app.add_subcommand("enumerate", "List accepted words up to a length");
  enumerate->add_option("file", o.files, "Input file")->required()->expected(1);
  enumerate->add_option("--max-len", o.max_len, "Longest word to list")->capture_default_str();
  enumerate->add_option("--step-limit", o.step_limit, "Step budget for pushdown machines")
      ->capture_default_str();
  handlers[enumerate] = cmd_enumerate;

  auto add_limits = [&](CLI::App* sub) {
    sub->add_option("--timeout", o.timeout, "Seconds per test input")->capture_default_str();
    sub->add_option("--step-limit", o.step_limit, "Step budget for pushdown machines")
        ->capture_default_str();
    sub->add_flag("--no-counterexamples", o.no_counterexamples, "Hide counterexamples in feedback");
  };

  auto* grade = app.add_subcommand("grade", "Grade one submission");
  grade->add_option("files", o.files, "Manifest and submission")->required()->expected(2);
  add_limits(grade);
  handlers[grade] = cmd_grade;

  auto* batch = app.add_subcommand("grade-batch", "Grade every submission in a directory");
  batch->add_option("files", o.files, "Manifest and directory")->required()->expected(2);
  batch->add_option("--roster", o.roster, "File listing expected submission ids, one per line");
  add_limits(batch);
  handlers[batch] = cmd_grade_batch;

  auto* cluster = app.add_subcommand("cluster", "Group equivalent answers in a directory");
  cluster->add_option("files", o.files, "Manifest and directory")->required()->expected(2);
  handlers[cluster] = cmd_cluster;

  auto* serve = app.add_subcommand("serve", "Answer test inputs on stdin with a reference construction");
  serve->add_option("name", o.name, "Registered construction")->required();
  handlers[serve] = cmd_serve;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    if (status == 0) return 0;
    std::cerr << app.help();
    return 2;
  }

  for (const auto& [sub, handler] : handlers) {
    if (!sub->parsed()) continue;
    try {
      return handler(o);
    } catch (const UsageError& e) {
      std::cerr << "error: " << e.what() << "\n" << sub->help();
      return 2;
    } catch (const IoError& e) {
      std::cerr << "error: " << e.what() << "\n" << sub->help();
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return 2;
}
