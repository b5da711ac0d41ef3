#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>

#include "formlab/automata.hpp"
#include "formlab/error.hpp"

namespace formlab::regular {

namespace {

std::string show_symbol(const std::string& label) {
  return label.empty() ? std::string("epsilon") : "'" + label + "'";
}

std::string show_transition(const RawTransition& t) {
  return "((" + std::to_string(t.from) + "," + show_symbol(t.label) + ")," +
         std::to_string(t.to) + ")";
}

std::string dedupe_alphabet(std::string_view alphabet) {
  std::string out;
  for (char c : alphabet)
    if (out.find(c) == std::string::npos) out += c;
  return out;
}

}  // namespace

std::string quote_word(std::string_view w) {
  if (w.empty()) return "\"\" (the empty string)";
  return "\"" + std::string(w) + "\"";
}

State Dfa::next(State q, Symbol a) const {
  auto it = delta.find({q, a});
  if (it == delta.end())
    throw DomainError("no transition from state " + std::to_string(q) + " on '" +
                      std::string(1, a) + "'");
  return it->second;
}

std::vector<Defect> validate_automaton(const RawAutomaton& raw) {
  std::vector<Defect> out;
  const bool is_dfa = raw.kind == AutomatonKind::Dfa;
  std::set<State> states;
  for (State q : raw.states) {
    if (!states.insert(q).second)
      out.push_back({DefectKind::DuplicateState,
                     "state " + std::to_string(q) + " is listed more than once in the state set"});
  }
  const std::string alphabet = dedupe_alphabet(raw.alphabet);

  if (is_dfa && raw.starts.size() != 1)
    out.push_back({DefectKind::BadStart, "a DFA needs exactly one start state, got " +
                                             std::to_string(raw.starts.size())});
  for (State q : raw.starts)
    if (!states.count(q))
      out.push_back({DefectKind::BadStart,
                     "start state " + std::to_string(q) + " is outside the state set"});
  for (State q : raw.accepts)
    if (!states.count(q))
      out.push_back({DefectKind::BadAccept,
                     "accept state " + std::to_string(q) + " is outside the state set"});

  // Targets seen per (state, symbol), only for transitions that are otherwise sound.
  std::map<std::pair<State, Symbol>, std::set<State>> targets;
  for (const RawTransition& t : raw.transitions) {
    bool sound = true;
    for (State q : {t.from, t.to}) {
      if (!states.count(q)) {
        out.push_back({DefectKind::StateOutsideStateSet,
                       "transition " + show_transition(t) + " uses state " + std::to_string(q) +
                           ", which is outside the state set"});
        sound = false;
        if (t.from == t.to) break;
      }
    }
    if (t.label.empty()) {
      if (is_dfa) {
        out.push_back({DefectKind::SymbolOutsideAlphabet,
                       "transition " + show_transition(t) +
                           " is an epsilon move, which a DFA cannot have"});
        sound = false;
      }
    } else if (t.label.size() != 1) {
      out.push_back({DefectKind::SymbolOutsideAlphabet,
                     "transition " + show_transition(t) + " has label \"" + t.label +
                         "\", which is not a single symbol"});
      sound = false;
    } else if (alphabet.find(t.label[0]) == std::string::npos) {
      out.push_back({DefectKind::SymbolOutsideAlphabet,
                     "transition " + show_transition(t) + " uses symbol '" + t.label +
                         "', which is outside the alphabet \"" + alphabet + "\""});
      sound = false;
    }
    if (sound && is_dfa) targets[{t.from, t.label[0]}].insert(t.to);
  }

  if (is_dfa) {
    for (State q : states) {
      for (char a : alphabet) {
        auto it = targets.find({q, a});
        if (it == targets.end()) {
          out.push_back({DefectKind::MissingTransition, "missing transition from state " +
                                                            std::to_string(q) + " on '" +
                                                            std::string(1, a) + "'"});
        } else if (it->second.size() > 1) {
          std::string to;
          for (State r : it->second) to += (to.empty() ? "" : " and ") + std::to_string(r);
          out.push_back({DefectKind::NotDeterministic,
                         "not deterministic: state " + std::to_string(q) +
                             " has more than one transition on '" + std::string(1, a) +
                             "' (to " + to + ")"});
        }
      }
    }
  }
  return out;
}

Dfa to_dfa(const RawAutomaton& raw) {
  if (raw.kind != AutomatonKind::Dfa)
    throw IllFormed({{DefectKind::NotDeterministic, "expected a DFA but got an NFA description"}});
  auto defects = validate_automaton(raw);
  if (!defects.empty()) throw IllFormed(std::move(defects));
  Dfa d;
  d.states.insert(raw.states.begin(), raw.states.end());
  d.alphabet = dedupe_alphabet(raw.alphabet);
  for (const RawTransition& t : raw.transitions) d.delta[{t.from, t.label[0]}] = t.to;
  d.start = raw.starts.front();
  d.accepts.insert(raw.accepts.begin(), raw.accepts.end());
  return d;
}

Nfa to_nfa(const RawAutomaton& raw) {
  RawAutomaton relaxed = raw;
  relaxed.kind = AutomatonKind::Nfa;
  auto defects = validate_automaton(relaxed);
  if (!defects.empty()) throw IllFormed(std::move(defects));
  Nfa n;
  n.states.insert(raw.states.begin(), raw.states.end());
  n.alphabet = dedupe_alphabet(raw.alphabet);
  for (const RawTransition& t : raw.transitions)
    n.edges.insert({t.from, t.label.empty() ? kEpsilon : t.label[0], t.to});
  n.starts.insert(raw.starts.begin(), raw.starts.end());
  n.accepts.insert(raw.accepts.begin(), raw.accepts.end());
  return n;
}

RawAutomaton to_raw(const Dfa& d) {
  RawAutomaton raw;
  raw.kind = AutomatonKind::Dfa;
  raw.states.assign(d.states.begin(), d.states.end());
  raw.alphabet = d.alphabet;
  for (const auto& [key, to] : d.delta)
    raw.transitions.push_back({key.first, std::string(1, key.second), to});
  raw.starts = {d.start};
  raw.accepts.assign(d.accepts.begin(), d.accepts.end());
  return raw;
}

RawAutomaton to_raw(const Nfa& n) {
  RawAutomaton raw;
  raw.kind = AutomatonKind::Nfa;
  raw.states.assign(n.states.begin(), n.states.end());
  raw.alphabet = n.alphabet;
  for (const NfaEdge& e : n.edges)
    raw.transitions.push_back(
        {e.from, e.symbol == kEpsilon ? std::string() : std::string(1, e.symbol), e.to});
  raw.starts.assign(n.starts.begin(), n.starts.end());
  raw.accepts.assign(n.accepts.begin(), n.accepts.end());
  return raw;
}

Nfa as_nfa(const Dfa& d) {
  Nfa n;
  n.states = d.states;
  n.alphabet = d.alphabet;
  for (const auto& [key, to] : d.delta) n.edges.insert({key.first, key.second, to});
  n.starts = {d.start};
  n.accepts = d.accepts;
  return n;
}

bool dfa_accepts(const Dfa& d, std::string_view w) {
  State q = d.start;
  for (char a : w) {
    if (d.alphabet.find(a) == std::string::npos)
      throw DomainError("symbol '" + std::string(1, a) + "' is outside the alphabet \"" +
                        d.alphabet + "\"");
    q = d.next(q, a);
  }
  return d.accepts.count(q) > 0;
}

std::set<State> epsilon_closure(const Nfa& n, std::set<State> states) {
  std::vector<State> work(states.begin(), states.end());
  while (!work.empty()) {
    State q = work.back();
    work.pop_back();
    for (auto it = n.edges.lower_bound({q, kEpsilon, std::numeric_limits<State>::min()});
         it != n.edges.end() && it->from == q && it->symbol == kEpsilon; ++it)
      if (states.insert(it->to).second) work.push_back(it->to);
  }
  return states;
}

bool nfa_accepts(const Nfa& n, std::string_view w) {
  std::set<State> current = epsilon_closure(n, n.starts);
  for (char a : w) {
    if (a == kEpsilon || n.alphabet.find(a) == std::string::npos) return false;
    std::set<State> moved;
    for (State q : current)
      for (auto it = n.edges.lower_bound({q, a, std::numeric_limits<State>::min()});
           it != n.edges.end() && it->from == q && it->symbol == a; ++it)
        moved.insert(it->to);
    current = epsilon_closure(n, std::move(moved));
    if (current.empty()) return false;
  }
  return std::any_of(current.begin(), current.end(),
                     [&](State q) { return n.accepts.count(q) > 0; });
}

Dfa determinize(const Nfa& n, std::size_t max_states) {
  // Dense indices for the NFA states.
  std::vector<State> ids(n.states.begin(), n.states.end());
  auto index = [&](State q) {
    return int(std::lower_bound(ids.begin(), ids.end(), q) - ids.begin());
  };
  const std::size_t k = n.alphabet.size();
  std::vector<std::vector<std::vector<int>>> move(ids.size(), std::vector<std::vector<int>>(k));
  std::vector<std::vector<int>> eps(ids.size());
  for (const NfaEdge& e : n.edges) {
    if (e.symbol == kEpsilon) {
      eps[std::size_t(index(e.from))].push_back(index(e.to));
    } else {
      auto pos = n.alphabet.find(e.symbol);
      if (pos != std::string::npos) move[std::size_t(index(e.from))][pos].push_back(index(e.to));
    }
  }
  std::vector<char> accepting(ids.size(), 0);
  for (State q : n.accepts) accepting[std::size_t(index(q))] = 1;

  auto close = [&](std::vector<int> set) {
    std::vector<char> in(ids.size(), 0);
    for (int q : set) in[std::size_t(q)] = 1;
    for (std::size_t i = 0; i < set.size(); ++i)
      for (int r : eps[std::size_t(set[i])])
        if (!in[std::size_t(r)]) {
          in[std::size_t(r)] = 1;
          set.push_back(r);
        }
    std::sort(set.begin(), set.end());
    return set;
  };

  std::vector<int> initial;
  for (State q : n.starts) initial.push_back(index(q));
  std::map<std::vector<int>, State> number;
  std::vector<std::vector<int>> subsets;
  subsets.push_back(close(std::move(initial)));
  number.emplace(subsets.front(), 0);

  Dfa d;
  d.alphabet = n.alphabet;
  d.start = 0;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    d.states.insert(State(i));
    const std::vector<int> current = subsets[i];
    if (std::any_of(current.begin(), current.end(),
                    [&](int q) { return accepting[std::size_t(q)] != 0; }))
      d.accepts.insert(State(i));
    for (std::size_t s = 0; s < k; ++s) {
      std::vector<int> target;
      for (int q : current)
        for (int r : move[std::size_t(q)][s]) target.push_back(r);
      std::sort(target.begin(), target.end());
      target.erase(std::unique(target.begin(), target.end()), target.end());
      target = close(std::move(target));
      auto [it, fresh] = number.emplace(target, State(subsets.size()));
      if (fresh) {
        if (subsets.size() >= max_states)
          throw ResourceLimit("determinization exceeded " + std::to_string(max_states) +
                              " subset states");
        subsets.push_back(target);
      }
      d.delta[{State(i), n.alphabet[s]}] = it->second;
    }
  }
  return d;
}

Nfa reverse(const Nfa& n) {
  Nfa r;
  r.states = n.states;
  r.alphabet = n.alphabet;
  for (const NfaEdge& e : n.edges) r.edges.insert({e.to, e.symbol, e.from});
  r.starts = n.accepts;
  r.accepts = n.starts;
  return r;
}

Dfa brzozowski_minimize(const Dfa& d) {
  return determinize(reverse(as_nfa(determinize(reverse(as_nfa(d))))));
}

std::set<State> reachable_states(const Dfa& d) {
  std::set<State> seen{d.start};
  std::vector<State> work{d.start};
  while (!work.empty()) {
    State q = work.back();
    work.pop_back();
    for (char a : d.alphabet) {
      auto it = d.delta.find({q, a});
      if (it != d.delta.end() && seen.insert(it->second).second) work.push_back(it->second);
    }
  }
  return seen;
}

std::set<std::pair<State, State>> distinguishable_pairs(const Dfa& d) {
  const std::vector<State> ids(d.states.begin(), d.states.end());
  const std::size_t n = ids.size();
  auto index = [&](State q) {
    return std::size_t(std::lower_bound(ids.begin(), ids.end(), q) - ids.begin());
  };
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (char a : d.alphabet) succ[i].push_back(index(d.next(ids[i], a)));

  std::vector<std::vector<char>> marked(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (d.accepts.count(ids[i]) != d.accepts.count(ids[j])) marked[i][j] = marked[j][i] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (marked[i][j]) continue;
        for (std::size_t s = 0; s < d.alphabet.size(); ++s)
          if (marked[succ[i][s]][succ[j][s]]) {
            marked[i][j] = marked[j][i] = 1;
            changed = true;
            break;
          }
      }
  }
  std::set<std::pair<State, State>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (marked[i][j]) out.emplace(ids[i], ids[j]);
  return out;
}

bool is_minimal(const Dfa& d) {
  const std::size_t n = d.states.size();
  return reachable_states(d).size() == n && distinguishable_pairs(d).size() == n * (n - 1) / 2;
}

Dfa canonical_form(const Dfa& d) {
  Dfa c;
  c.alphabet = d.alphabet;
  std::sort(c.alphabet.begin(), c.alphabet.end());
  std::map<State, State> number{{d.start, 0}};
  std::deque<State> queue{d.start};
  std::vector<State> order;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    order.push_back(q);
    for (char a : c.alphabet) {
      State r = d.next(q, a);
      if (number.emplace(r, State(number.size())).second) queue.push_back(r);
    }
  }
  c.start = 0;
  for (State q : order) {
    const State id = number.at(q);
    c.states.insert(id);
    if (d.accepts.count(q)) c.accepts.insert(id);
    for (char a : c.alphabet) c.delta[{id, a}] = number.at(d.next(q, a));
  }
  return c;
}

}  // namespace formlab::regular
