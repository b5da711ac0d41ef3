#include <algorithm>
#include <set>

#include "formlab/context.hpp"

namespace formlab::context {

namespace {

std::string show_transition(const DpdaTransition& t) {
  std::string out = "((" + std::to_string(t.from) + ", ";
  out += t.input ? "'" + std::string(1, *t.input) + "'" : std::string("eps");
  out += ", " + (t.pop ? *t.pop : std::string("eps")) + ") -> (" + std::to_string(t.to) + ", [";
  for (std::size_t i = 0; i < t.push.size(); ++i) out += (i ? " " : "") + t.push[i];
  return out + "]))";
}

bool overlap(const auto& x, const auto& y) { return !x || !y || *x == *y; }

}  // namespace

std::vector<Defect> validate_dpda(const Dpda& p) {
  std::vector<Defect> out;
  std::set<State> states;
  for (State q : p.states)
    if (!states.insert(q).second)
      out.push_back({DefectKind::DuplicateState,
                     "state " + std::to_string(q) + " is listed more than once in the state set"});
  const std::set<StackSymbol> stack(p.stack_alphabet.begin(), p.stack_alphabet.end());
  if (!states.count(p.start))
    out.push_back({DefectKind::BadStart,
                   "start state " + std::to_string(p.start) + " is outside the state set"});
  for (State q : p.accepts)
    if (!states.count(q))
      out.push_back({DefectKind::BadAccept,
                     "accept state " + std::to_string(q) + " is outside the state set"});

  for (const DpdaTransition& t : p.transitions) {
    const std::string shown = "transition " + show_transition(t);
    for (State q : {t.from, t.to})
      if (!states.count(q))
        out.push_back({DefectKind::StateOutsideStateSet,
                       shown + " uses state " + std::to_string(q) + ", which is outside the state set"});
    if (t.input && p.input_alphabet.find(*t.input) == std::string::npos)
      out.push_back({DefectKind::SymbolOutsideAlphabet,
                     shown + " reads '" + std::string(1, *t.input) +
                         "', which is outside the input alphabet \"" + p.input_alphabet + "\""});
    std::vector<StackSymbol> used(t.push);
    if (t.pop) used.push_back(*t.pop);
    for (const auto& s : used)
      if (!stack.count(s))
        out.push_back({DefectKind::SymbolOutsideAlphabet,
                       shown + " uses stack symbol " + s + ", which is outside the stack alphabet"});
  }

  for (std::size_t i = 0; i < p.transitions.size(); ++i)
    for (std::size_t j = i + 1; j < p.transitions.size(); ++j) {
      const auto& a = p.transitions[i];
      const auto& b = p.transitions[j];
      if (a.from != b.from || a == b) continue;
      if (overlap(a.input, b.input) && overlap(a.pop, b.pop))
        out.push_back({DefectKind::NotDeterministic,
                       "not deterministic: " + show_transition(a) + " and " + show_transition(b) +
                           " can both fire from state " + std::to_string(a.from)});
    }
  return out;
}

RunOutcome dpda_run(const Dpda& p, std::string_view w, std::size_t step_limit) {
  const std::set<State> accepts(p.accepts.begin(), p.accepts.end());
  State state = p.start;
  std::size_t pos = 0;
  std::vector<StackSymbol> stack;  // back is the top
  std::size_t steps = 0;
  for (;;) {
    if (pos == w.size() && accepts.count(state)) return {RunTag::Accepted, steps};
    const DpdaTransition* move = nullptr;
    for (const DpdaTransition& t : p.transitions) {
      if (t.from != state) continue;
      if (t.input && (pos == w.size() || w[pos] != *t.input)) continue;
      if (t.pop && (stack.empty() || stack.back() != *t.pop)) continue;
      move = &t;
      break;
    }
    if (!move) return {RunTag::Rejected, steps};
    if (steps == step_limit) return {RunTag::StepLimit, steps};
    ++steps;
    if (move->input) ++pos;
    if (move->pop) stack.pop_back();
    stack.insert(stack.end(), move->push.rbegin(), move->push.rend());
    state = move->to;
  }
}

Dpda dfa_to_dpda3(const Dfa& d) {
  auto ready = [&](State q) { return d.accepts.count(q) ? 2 : 1; };
  Dpda out;
  out.states = {0, 1, 2};
  out.input_alphabet = d.alphabet;
  for (State q : d.states) out.stack_alphabet.push_back(std::to_string(q));
  for (const auto& [key, to] : d.delta) {
    const auto [from, a] = key;
    out.transitions.push_back({ready(from), a, std::to_string(from), ready(to), {std::to_string(to)}});
  }
  for (const auto& [key, to] : d.delta)
    if (key.first == d.start)
      out.transitions.push_back({0, key.second, std::nullopt, ready(to), {std::to_string(to)}});
  out.start = 0;
  out.accepts = d.accepts.count(d.start) ? std::vector<State>{0, 2} : std::vector<State>{2};
  return out;
}

std::string_view run_tag_name(RunTag tag) {
  switch (tag) {
    case RunTag::Accepted: return "Accepted";
    case RunTag::Rejected: return "Rejected";
    case RunTag::StepLimit: return "StepLimit";
  }
  return "?";
}

}  // namespace formlab::context
