#include <algorithm>
#include <cctype>
#include <deque>
#include <map>

#include "formlab/error.hpp"
#include "formlab/regex.hpp"

namespace formlab::regular {

using Kind = Regex::Kind;

Regex Regex::symbol(Symbol c) {
  return Regex(std::make_shared<const Node>(Node{Kind::Symbol, c, nullptr, nullptr, 1}));
}

Regex Regex::empty_str() {
  static const auto n = std::make_shared<const Node>(Node{Kind::EmptyStr, 0, nullptr, nullptr, 1});
  return Regex(n);
}

Regex Regex::empty_set() {
  static const auto n = std::make_shared<const Node>(Node{Kind::EmptySet, 0, nullptr, nullptr, 1});
  return Regex(n);
}

Regex Regex::concat(Regex a, Regex b) {
  const std::size_t size = a.size() + b.size() + 1;
  return Regex(std::make_shared<const Node>(
      Node{Kind::Concat, 0, std::move(a.node_), std::move(b.node_), size}));
}

Regex Regex::alt(Regex a, Regex b) {
  const std::size_t size = a.size() + b.size() + 1;
  return Regex(std::make_shared<const Node>(
      Node{Kind::Union, 0, std::move(a.node_), std::move(b.node_), size}));
}

Regex Regex::star(Regex a) {
  const std::size_t size = a.size() + 1;
  return Regex(
      std::make_shared<const Node>(Node{Kind::Star, 0, std::move(a.node_), nullptr, size}));
}

std::strong_ordering operator<=>(const Regex& a, const Regex& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Kind::Symbol: return a.sym() <=> b.sym();
    case Kind::EmptyStr:
    case Kind::EmptySet: return std::strong_ordering::equal;
    case Kind::Star: return a.lhs() <=> b.lhs();
    default:
      if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
      return a.rhs() <=> b.rhs();
  }
}

namespace {

class RegexParser {
 public:
  explicit RegexParser(std::string_view text) : text_(text) {}

  Regex parse() {
    Regex r = parse_union();
    skip_ws();
    if (pos_ != text_.size()) fail("'|' or end of input", "unbalanced ')'");
    return r;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& expected, const std::string& message) const {
    throw ParseError(pos_, expected, message);
  }

  bool starts_atom() {
    char c = peek();
    return pos_ < text_.size() && c != '|' && c != ')' && c != '*';
  }

  Regex parse_union() {
    Regex r = parse_concat();
    while (peek() == '|' && pos_ < text_.size()) {
      ++pos_;
      r = Regex::alt(r, parse_concat());
    }
    return r;
  }

  Regex parse_concat() {
    if (!starts_atom()) {
      if (pos_ < text_.size() && text_[pos_] == '*') fail("an expression", "'*' with no operand");
      fail("an expression", pos_ == text_.size() ? "unexpected end of input" : "empty expression");
    }
    Regex r = parse_postfix();
    while (starts_atom()) r = Regex::concat(r, parse_postfix());
    return r;
  }

  Regex parse_postfix() {
    Regex r = parse_atom();
    while (peek() == '*' && pos_ < text_.size()) {
      ++pos_;
      r = Regex::star(r);
    }
    return r;
  }

  Regex parse_atom() {
    char c = peek();
    ++pos_;
    switch (c) {
      case '(': {
        Regex r = parse_union();
        if (peek() != ')' || pos_ == text_.size()) fail("')'", "unbalanced parenthesis");
        ++pos_;
        return r;
      }
      case '_': return Regex::empty_str();
      case '#': return Regex::empty_set();
      default: return Regex::symbol(c);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render_into(const Regex& r, std::string& out) {
  switch (r.kind()) {
    case Kind::Symbol: out += r.sym(); return;
    case Kind::EmptyStr: out += '_'; return;
    case Kind::EmptySet: out += '#'; return;
    case Kind::Star:
      render_into(r.lhs(), out);
      out += '*';
      return;
    case Kind::Concat:
      out += '(';
      render_into(r.lhs(), out);
      render_into(r.rhs(), out);
      out += ')';
      return;
    case Kind::Union:
      out += '(';
      render_into(r.lhs(), out);
      out += '|';
      render_into(r.rhs(), out);
      out += ')';
      return;
  }
}

void collect_symbols(const Regex& r, std::string& out) {
  switch (r.kind()) {
    case Kind::Symbol:
      if (out.find(r.sym()) == std::string::npos) out += r.sym();
      return;
    case Kind::EmptyStr:
    case Kind::EmptySet: return;
    case Kind::Star: collect_symbols(r.lhs(), out); return;
    default:
      collect_symbols(r.lhs(), out);
      collect_symbols(r.rhs(), out);
  }
}

// Smart constructors keeping expressions in similarity-normal form:
// unions are flattened, sorted, deduplicated and right-nested with no
// empty-set member; concatenations are right-nested with no unit or zero.

void flatten_union(const Regex& r, std::vector<Regex>& out) {
  if (r.kind() == Kind::Union) {
    flatten_union(r.lhs(), out);
    flatten_union(r.rhs(), out);
  } else if (r.kind() != Kind::EmptySet) {
    out.push_back(r);
  }
}

Regex norm_union(const Regex& a, const Regex& b) {
  std::vector<Regex> parts;
  flatten_union(a, parts);
  flatten_union(b, parts);
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  return union_all(parts);
}

Regex norm_concat(const Regex& a, const Regex& b) {
  if (a.kind() == Kind::EmptySet || b.kind() == Kind::EmptySet) return Regex::empty_set();
  if (a.kind() == Kind::EmptyStr) return b;
  if (b.kind() == Kind::EmptyStr) return a;
  if (a.kind() == Kind::Concat) return norm_concat(a.lhs(), norm_concat(a.rhs(), b));
  return Regex::concat(a, b);
}

Regex norm_star(const Regex& a) {
  if (a.kind() == Kind::Star) return a;
  if (a.kind() == Kind::EmptyStr || a.kind() == Kind::EmptySet) return Regex::empty_str();
  return Regex::star(a);
}

}  // namespace

Regex parse_regex(std::string_view text) { return RegexParser(text).parse(); }

std::string render_regex(const Regex& r) {
  std::string out;
  render_into(r, out);
  return out;
}

std::string regex_symbols(const Regex& r) {
  std::string out;
  collect_symbols(r, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool nullable(const Regex& r) {
  switch (r.kind()) {
    case Kind::Symbol:
    case Kind::EmptySet: return false;
    case Kind::EmptyStr:
    case Kind::Star: return true;
    case Kind::Concat: return nullable(r.lhs()) && nullable(r.rhs());
    case Kind::Union: return nullable(r.lhs()) || nullable(r.rhs());
  }
  return false;
}

bool is_union_free(const Regex& r) {
  switch (r.kind()) {
    case Kind::Union: return false;
    case Kind::Star: return is_union_free(r.lhs());
    case Kind::Concat: return is_union_free(r.lhs()) && is_union_free(r.rhs());
    default: return true;
  }
}

Regex concat_all(std::span<const Regex> parts) {
  if (parts.empty()) return Regex::empty_str();
  Regex r = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) r = Regex::concat(parts[i], r);
  return r;
}

Regex union_all(std::span<const Regex> parts) {
  if (parts.empty()) return Regex::empty_set();
  Regex r = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) r = Regex::alt(parts[i], r);
  return r;
}

Regex similarity_normalize(const Regex& r) {
  switch (r.kind()) {
    case Kind::Symbol:
    case Kind::EmptyStr:
    case Kind::EmptySet: return r;
    case Kind::Star: return norm_star(similarity_normalize(r.lhs()));
    case Kind::Concat:
      return norm_concat(similarity_normalize(r.lhs()), similarity_normalize(r.rhs()));
    case Kind::Union:
      return norm_union(similarity_normalize(r.lhs()), similarity_normalize(r.rhs()));
  }
  return r;
}

Regex derivative(const Regex& r, Symbol a) {
  switch (r.kind()) {
    case Kind::Symbol: return r.sym() == a ? Regex::empty_str() : Regex::empty_set();
    case Kind::EmptyStr:
    case Kind::EmptySet: return Regex::empty_set();
    case Kind::Star: return norm_concat(derivative(r.lhs(), a), norm_star(r.lhs()));
    case Kind::Union: return norm_union(derivative(r.lhs(), a), derivative(r.rhs(), a));
    case Kind::Concat: {
      Regex left = norm_concat(derivative(r.lhs(), a), r.rhs());
      if (!nullable(r.lhs())) return left;
      return norm_union(left, derivative(r.rhs(), a));
    }
  }
  return Regex::empty_set();
}

Dfa regex_to_dfa(const Regex& r, std::string_view alphabet, std::size_t max_states) {
  std::string sigma;
  for (char c : alphabet)
    if (sigma.find(c) == std::string::npos) sigma += c;
  for (char c : regex_symbols(r))
    if (sigma.find(c) == std::string::npos)
      throw AlphabetMismatch("regular expression uses symbol '" + std::string(1, c) +
                             "' outside the alphabet \"" + sigma + "\"");

  Dfa d;
  d.alphabet = sigma;
  d.start = 0;
  std::map<Regex, State> number;
  std::vector<Regex> states{similarity_normalize(r)};
  number.emplace(states.front(), 0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Regex current = states[i];
    d.states.insert(State(i));
    if (nullable(current)) d.accepts.insert(State(i));
    for (char a : sigma) {
      Regex next = derivative(current, a);
      auto [it, fresh] = number.emplace(next, State(states.size()));
      if (fresh) {
        if (states.size() >= max_states)
          throw ResourceLimit("derivative automaton exceeded " + std::to_string(max_states) +
                              " states");
        states.push_back(next);
      }
      d.delta[{State(i), a}] = it->second;
    }
  }
  return d;
}

std::vector<Regex> union_free_decomposition(const Regex& r) {
  switch (r.kind()) {
    case Kind::Symbol:
    case Kind::EmptyStr:
    case Kind::EmptySet: return {r};
    case Kind::Union: {
      auto parts = union_free_decomposition(r.lhs());
      auto rest = union_free_decomposition(r.rhs());
      parts.insert(parts.end(), rest.begin(), rest.end());
      return parts;
    }
    case Kind::Concat: {
      std::vector<Regex> out;
      const auto left = union_free_decomposition(r.lhs());
      const auto right = union_free_decomposition(r.rhs());
      for (const Regex& a : left)
        for (const Regex& b : right) out.push_back(Regex::concat(a, b));
      return out;
    }
    case Kind::Star: {
      std::vector<Regex> starred;
      for (const Regex& s : union_free_decomposition(r.lhs())) starred.push_back(Regex::star(s));
      return {Regex::star(concat_all(starred))};
    }
  }
  return {r};
}

}  // namespace formlab::regular
