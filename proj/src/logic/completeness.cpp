#include "formlab/logic.hpp"

namespace formlab::logic {

Formula translate_to_impl_xor(const Formula& f) {
  using Kind = Formula::Kind;
  const Formula p = make_var('P');
  const Formula falsum = make_xor(p, p);
  switch (f.kind()) {
    case Kind::Var: return f;
    case Kind::True: return make_impl(p, p);
    case Kind::False: return falsum;
    case Kind::Not: return make_impl(translate_to_impl_xor(f.lhs()), falsum);
    default: break;
  }
  const Formula a = translate_to_impl_xor(f.lhs());
  const Formula b = translate_to_impl_xor(f.rhs());
  switch (f.kind()) {
    case Kind::Impl: return make_impl(a, b);
    case Kind::Xor: return make_xor(a, b);
    case Kind::And: return make_impl(make_impl(a, make_impl(b, falsum)), falsum);
    case Kind::Or: return make_impl(make_impl(a, falsum), b);
    default: return make_impl(make_xor(a, b), falsum);  // Biim
  }
}

RestrictedVerdict restricted_equivalent(const Formula& candidate, const Formula& reference,
                                        ConnectiveSet allowed) {
  RestrictedVerdict v;
  const ConnectiveSet used = connectives_of(candidate);
  if (!used.subset_of(allowed)) {
    v.kind = RestrictedVerdict::Kind::WrongConnectives;
    v.offending = used.minus(allowed);
    return v;
  }
  if (equivalent(candidate, reference)) return v;

  v.kind = RestrictedVerdict::Kind::NotEquivalent;
  const TseitinResult enc = tseitin_3cnf(make_xor(candidate, reference));
  // The XOR is satisfiable here, so a model exists; keep the original letters only.
  if (auto model = dpll_satisfiable(enc.cnf)) {
    for (char c : variables_of(make_xor(candidate, reference))) {
      const std::string name(1, c);
      auto it = model->find(name);
      v.witness[name] = it != model->end() && it->second;
    }
  }
  return v;
}

}  // namespace formlab::logic
