#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "fresh_names.hpp"
#include "formlab/context.hpp"
#include "formlab/error.hpp"

namespace formlab::context {

namespace {

void require_well_formed(const Cfg& g) {
  if (auto defects = validate_cfg(g); !defects.empty()) throw IllFormed(std::move(defects));
}

std::string merge_terminals(const std::string& a, const std::string& b) {
  std::string out = a;
  for (char c : b)
    if (out.find(c) == std::string::npos) out += c;
  return out;
}

Cfg rename(const Cfg& g, const std::map<std::string, std::string>& to) {
  auto name = [&](const std::string& s) {
    auto it = to.find(s);
    return it == to.end() ? s : it->second;
  };
  Cfg out;
  out.terminals = g.terminals;
  out.start = name(g.start);
  for (const auto& v : g.variables) out.variables.push_back(name(v));
  for (const Rule& r : g.rules) {
    Rule nr{name(r.lhs), {}};
    for (const auto& s : r.rhs) nr.rhs.push_back(g.is_variable(s) ? name(s) : s);
    out.rules.push_back(std::move(nr));
  }
  return out;
}

}  // namespace

Cfg cfg_closure_op(CfgOp op, std::span<const Cfg> operands) {
  const bool unary = op == CfgOp::Star || op == CfgOp::Reverse;
  const std::size_t arity = unary ? 1 : 2;
  if (operands.size() != arity)
    throw DomainError("grammar operation expects " + std::to_string(arity) + " operand(s), got " +
                      std::to_string(operands.size()));
  for (const Cfg& g : operands) require_well_formed(g);
  const Cfg& a = operands[0];

  if (op == CfgOp::Reverse) {
    Cfg out = a;
    for (Rule& r : out.rules) std::reverse(r.rhs.begin(), r.rhs.end());
    return out;
  }

  std::set<std::string> taken(a.variables.begin(), a.variables.end());
  if (!unary) taken.insert(operands[1].variables.begin(), operands[1].variables.end());
  detail::FreshNames fresh(taken);
  const std::string start = fresh.next();

  Cfg out;
  out.start = start;
  out.variables.push_back(start);
  out.variables.insert(out.variables.end(), a.variables.begin(), a.variables.end());
  out.terminals = a.terminals;

  if (op == CfgOp::Star) {
    out.rules.push_back({start, {start, a.start}});
    out.rules.push_back({start, {}});
    out.rules.insert(out.rules.end(), a.rules.begin(), a.rules.end());
    return out;
  }

  std::map<std::string, std::string> clash;
  const std::set<std::string> first(a.variables.begin(), a.variables.end());
  for (const auto& v : operands[1].variables)
    if (first.count(v)) clash.emplace(v, fresh.next());
  const Cfg b = rename(operands[1], clash);

  out.terminals = merge_terminals(a.terminals, b.terminals);
  out.variables.insert(out.variables.end(), b.variables.begin(), b.variables.end());
  if (op == CfgOp::Union) {
    out.rules.push_back({start, {a.start}});
    out.rules.push_back({start, {b.start}});
  } else {
    out.rules.push_back({start, {a.start, b.start}});
  }
  out.rules.insert(out.rules.end(), a.rules.begin(), a.rules.end());
  out.rules.insert(out.rules.end(), b.rules.begin(), b.rules.end());
  return out;
}

Cfg cfg_intersect_dfa(const Cfg& g, const Dfa& d, std::size_t cap) {
  const Cfg cnf = cfg_to_cnf(g);
  const std::size_t q = d.states.size();
  const std::size_t v = cnf.variables.size();
  if (q != 0 && (q * q > cap || q * q * v > cap))
    throw ResourceLimit("intersection needs " + std::to_string(q) + "^2 * " + std::to_string(v) +
                        " triples, above the cap of " + std::to_string(cap));

  using Triple = std::tuple<State, std::string, State>;
  std::map<Triple, std::string> names;
  std::deque<Triple> work;
  Cfg raw;
  raw.terminals = merge_terminals(cnf.terminals, d.alphabet);
  raw.start = "#0";
  raw.variables.push_back(raw.start);

  auto name_of = [&](const Triple& t) {
    auto [it, fresh] = names.emplace(t, "#" + std::to_string(names.size() + 1));
    if (fresh) {
      raw.variables.push_back(it->second);
      work.push_back(t);
    }
    return it->second;
  };

  std::map<std::string, std::vector<const Rule*>> by_lhs;
  for (const Rule& r : cnf.rules) by_lhs[r.lhs].push_back(&r);

  for (State f : d.accepts) raw.rules.push_back({raw.start, {name_of({d.start, cnf.start, f})}});
  if (d.accepts.count(d.start))
    for (const Rule* r : by_lhs[cnf.start])
      if (r->rhs.empty()) raw.rules.push_back({raw.start, {}});

  while (!work.empty()) {
    const Triple t = work.front();
    work.pop_front();
    const auto& [p, a, r] = t;
    const std::string lhs = names.at(t);
    for (const Rule* rule : by_lhs[a]) {
      if (rule->rhs.size() == 1) {
        const char c = rule->rhs[0][0];
        if (d.alphabet.find(c) != std::string::npos && d.next(p, c) == r)
          raw.rules.push_back({lhs, {rule->rhs[0]}});
      } else if (rule->rhs.size() == 2) {
        for (State mid : d.states) {
          std::string left = name_of({p, rule->rhs[0], mid});
          std::string right = name_of({mid, rule->rhs[1], r});
          raw.rules.push_back({lhs, {std::move(left), std::move(right)}});
        }
      }
    }
  }

  const Cfg useful = detail::remove_useless(std::move(raw));
  std::map<std::string, std::string> final_names;
  detail::FreshNames fresh({});
  for (const auto& var : useful.variables) final_names.emplace(var, fresh.next());
  return rename(useful, final_names);
}

Cfg dfa_to_cfg(const Dfa& d) {
  auto name = [](State q) {
    return q < 0 ? "QN" + std::to_string(-static_cast<long long>(q)) : "Q" + std::to_string(q);
  };
  Cfg out;
  out.terminals = d.alphabet;
  out.start = name(d.start);
  for (State q : d.states) {
    out.variables.push_back(name(q));
    for (char a : d.alphabet) {
      auto it = d.delta.find({q, a});
      if (it != d.delta.end()) out.rules.push_back({name(q), {std::string(1, a), name(it->second)}});
    }
    if (d.accepts.count(q)) out.rules.push_back({name(q), {}});
  }
  return out;
}

}  // namespace formlab::context
