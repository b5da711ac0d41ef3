#include <cctype>

#include "formlab/error.hpp"
#include "formlab/logic.hpp"

namespace formlab::logic {

namespace {

// Precedence climbing over the levels, loosest first:
//   <=>  (left)   =>  (right)   ^  (left)   |  (left)   &  (left)   ~  (prefix)
class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = parse_biim();
    skip_ws();
    if (pos_ != text_.size()) fail("operator or end of input", "unexpected character");
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& expected, const std::string& message) const {
    throw ParseError(pos_, expected, message);
  }

  Formula parse_biim() {
    Formula f = parse_impl();
    while (accept("<=>")) f = make_biim(f, parse_impl());
    return f;
  }

  Formula parse_impl() {
    Formula f = parse_xor();
    skip_ws();
    // "<=>" must not be read as "<" followed by "=>".
    if (accept("=>")) return make_impl(f, parse_impl());
    return f;
  }

  Formula parse_xor() {
    Formula f = parse_or();
    while (accept("^")) f = make_xor(f, parse_or());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|")) f = make_or(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&")) f = make_and(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept("~")) return make_not(parse_unary());
    return parse_atom();
  }

  Formula parse_atom() {
    skip_ws();
    if (pos_ == text_.size()) fail("variable, constant, '~' or '('", "unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Formula f = parse_biim();
      if (!accept(")")) fail("')'", "unbalanced parenthesis");
      return f;
    }
    if (c == 'T' || c == 'F') {
      ++pos_;
      return Formula::constant(c == 'T');
    }
    if (c >= 'A' && c <= 'Z') {
      ++pos_;
      return make_var(c);
    }
    fail("variable, constant, '~' or '('", std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

}  // namespace formlab::logic
