#include <gtest/gtest.h>

#include <random>

#include "formlab/automata.hpp"
#include "formlab/error.hpp"
#include "formlab/regex.hpp"
#include "support/oracles.hpp"

using namespace formlab;
using namespace formlab::regular;

namespace {

RawAutomaton example_raw() { return to_raw(oracle::contains_b()); }

bool has_kind(const std::vector<Defect>& ds, DefectKind k) {
  for (const auto& d : ds)
    if (d.kind == k) return true;
  return false;
}

std::vector<std::string> accepted(const Nfa& n, const std::string& alphabet, std::size_t len) {
  std::vector<std::string> out;
  for (const auto& w : oracle::words(alphabet, len))
    if (oracle::nfa_path(n, w)) out.push_back(w);
  return out;
}

Dfa table_minimal_check(const Dfa& d) {
  EXPECT_TRUE(oracle::table_minimal(d));
  return d;
}

}  // namespace

TEST(Validate, ExampleMachineIsWellFormed) { EXPECT_TRUE(validate_automaton(example_raw()).empty()); }

TEST(Validate, DuplicatedTransitionIsNondeterministic) {
  RawAutomaton raw = example_raw();
  raw.transitions.push_back({0, "a", 1});
  const auto ds = validate_automaton(raw);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].kind, DefectKind::NotDeterministic);
  EXPECT_NE(ds[0].detail.find("'a'"), std::string::npos) << ds[0].detail;
}

TEST(Validate, SymbolOutsideAlphabet) {
  RawAutomaton raw = example_raw();
  raw.transitions.push_back({0, "c", 1});
  const auto ds = validate_automaton(raw);
  ASSERT_FALSE(ds.empty());
  EXPECT_EQ(ds[0].kind, DefectKind::SymbolOutsideAlphabet);
}

TEST(Validate, ReportsEveryDefect) {
  RawAutomaton raw = example_raw();
  raw.transitions.erase(raw.transitions.begin());  // (0,'a') missing
  raw.transitions.push_back({1, "a", -1});        // unknown state
  raw.transitions.push_back({1, "b", 0});         // (1,'b') doubled
  raw.accepts.push_back(7);
  raw.states.push_back(1);
  const auto ds = validate_automaton(raw);
  EXPECT_TRUE(has_kind(ds, DefectKind::MissingTransition));
  EXPECT_TRUE(has_kind(ds, DefectKind::StateOutsideStateSet));
  EXPECT_TRUE(has_kind(ds, DefectKind::BadAccept));
  EXPECT_TRUE(has_kind(ds, DefectKind::DuplicateState));
  EXPECT_TRUE(has_kind(ds, DefectKind::NotDeterministic));
  for (const auto& d : ds) EXPECT_FALSE(d.detail.empty());
  EXPECT_THROW(to_dfa(raw), IllFormed);
}

TEST(Validate, StateOutsideStateSetMessage) {
  RawAutomaton raw = example_raw();
  raw.transitions.back().to = -1;
  const auto ds = validate_automaton(raw);
  ASSERT_TRUE(has_kind(ds, DefectKind::StateOutsideStateSet));
  bool named = false;
  for (const auto& d : ds) named = named || d.detail.find("-1") != std::string::npos;
  EXPECT_TRUE(named);
}

TEST(Validate, BadStartAndNfaRules) {
  RawAutomaton raw = example_raw();
  raw.starts = {5};
  EXPECT_TRUE(has_kind(validate_automaton(raw), DefectKind::BadStart));
  RawAutomaton n = example_raw();
  n.kind = AutomatonKind::Nfa;
  n.transitions.push_back({0, "a", 1});
  n.transitions.push_back({0, "", 1});
  n.transitions.erase(n.transitions.begin() + 1);
  EXPECT_TRUE(validate_automaton(n).empty());
  RawAutomaton e = example_raw();
  e.transitions.push_back({0, "", 1});
  EXPECT_FALSE(validate_automaton(e).empty());
}

TEST(Acceptance, ExampleMachine) {
  const Dfa d = oracle::contains_b();
  EXPECT_TRUE(dfa_accepts(d, "aab"));
  EXPECT_FALSE(dfa_accepts(d, "aaa"));
  EXPECT_FALSE(dfa_accepts(d, ""));
  EXPECT_THROW(dfa_accepts(d, "c"), DomainError);
  Nfa n;
  n.alphabet = "a";
  n.states = {0, 1};
  n.starts = {0};
  n.accepts = {1};
  n.edges = {{0, kEpsilon, 1}};
  EXPECT_TRUE(nfa_accepts(n, ""));
  EXPECT_FALSE(nfa_accepts(n, "z"));
}

TEST(Determinize, DfaShapedNfaIsIsomorphic) {
  const Dfa d = oracle::contains_b();
  EXPECT_EQ(canonical_form(determinize(as_nfa(d))), canonical_form(d));
  EXPECT_EQ(determinize(as_nfa(d)).states.size(), 2u);
}

TEST(Determinize, EndsWithB) {
  Nfa n;
  n.alphabet = "ab";
  n.states = {0, 1};
  n.starts = {0};
  n.accepts = {1};
  n.edges = {{0, 'a', 0}, {0, 'b', 0}, {0, 'b', 1}};
  const Dfa d = determinize(n);
  EXPECT_EQ(d.states.size(), 2u);
  for (const auto& w : oracle::words("ab", 10)) EXPECT_EQ(dfa_accepts(d, w), !w.empty() && w.back() == 'b');
  const auto r = equivalence_counterexamples(d, oracle::contains_b(), 3);
  EXPECT_FALSE(r.equivalent);
  ASSERT_FALSE(r.examples.empty());
  EXPECT_EQ(r.examples[0].word, "ba");
}

TEST(Determinize, RandomNfasAgreeWithPathSearch) {
  std::mt19937 rng(101);
  for (int i = 0; i < 60; ++i) {
    const Nfa n = oracle::random_nfa(rng, 8, "ab");
    const Dfa d = determinize(n);
    for (const auto& w : oracle::words("ab", 8)) ASSERT_EQ(dfa_accepts(d, w), oracle::nfa_path(n, w)) << w;
  }
}

TEST(Determinize, SubsetCap) {
  std::mt19937 rng(4);
  EXPECT_THROW(determinize(oracle::random_nfa(rng, 10, "ab"), 1), ResourceLimit);
}

TEST(Reverse, Examples) {
  const Nfa ab = oracle::nfa_of_words({"ab"}, "ab");
  EXPECT_EQ(accepted(reverse(ab), "ab", 4), std::vector<std::string>{"ba"});
  Nfa two;
  two.alphabet = "a";
  two.states = {0, 1, 2};
  two.starts = {0, 1};
  two.accepts = {2};
  EXPECT_EQ(reverse(two).accepts, (std::set<State>{0, 1}));
  EXPECT_EQ(reverse(two).starts, (std::set<State>{2}));
  std::mt19937 rng(8);
  for (int i = 0; i < 30; ++i) {
    const Nfa n = oracle::random_nfa(rng, 6, "ab");
    EXPECT_EQ(accepted(reverse(reverse(n)), "ab", 8), accepted(n, "ab", 8));
  }
}

TEST(Minimize, Examples) {
  EXPECT_EQ(brzozowski_minimize(oracle::contains_b()).states.size(), 2u);
  Dfa dup = oracle::contains_b();
  dup.states.insert(2);
  dup.delta[{0, 'b'}] = 2;
  dup.delta[{2, 'a'}] = 1;
  dup.delta[{2, 'b'}] = 2;
  dup.accepts.insert(2);
  EXPECT_EQ(brzozowski_minimize(dup).states.size(), 2u);
  EXPECT_FALSE(is_minimal(dup));
  for (int d = 1; d <= 12; ++d) EXPECT_EQ(brzozowski_minimize(multiples_dfa(d)).states.size(), std::size_t(d));
}

TEST(Minimize, RandomOutputsPassTableFilling) {
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    const Dfa d = oracle::random_dfa(rng, 1 + rng() % 7, "ab");
    const Dfa m = table_minimal_check(brzozowski_minimize(d));
    EXPECT_TRUE(is_minimal(m));
    EXPECT_TRUE(equivalence_counterexamples(d, m, 1).equivalent);
  }
}

TEST(Distinguishable, Examples) {
  Dfa one;
  one.alphabet = "a";
  one.states = {0};
  one.delta[{0, 'a'}] = 0;
  EXPECT_TRUE(distinguishable_pairs(one).empty());
  EXPECT_EQ(distinguishable_pairs(oracle::contains_b()), (std::set<std::pair<State, State>>{{0, 1}}));
}

TEST(RegexParse, Examples) {
  const Regex zero = Regex::symbol('0'), one = Regex::symbol('1');
  EXPECT_EQ(parse_regex("0*(1|_)"), Regex::concat(Regex::star(zero), Regex::alt(one, Regex::empty_str())));
  EXPECT_EQ(parse_regex("#").kind(), Regex::Kind::EmptySet);
  const Regex bit = Regex::alt(zero, one);
  EXPECT_EQ(parse_regex("(0|1)((0|1)(0|1))*"), Regex::concat(bit, Regex::star(Regex::concat(bit, bit))));
  EXPECT_THROW(parse_regex("(a"), ParseError);
  EXPECT_THROW(parse_regex("a|"), ParseError);
  EXPECT_THROW(parse_regex("*a"), ParseError);
}

TEST(RegexParse, RenderRoundTrip) {
  std::mt19937 rng(31);
  for (int i = 0; i < 300; ++i) {
    const Regex r = oracle::random_regex(rng, 1 + rng() % 12, "ab");
    EXPECT_EQ(parse_regex(render_regex(r)), r) << render_regex(r);
  }
}

TEST(RegexToDfa, Examples) {
  const Dfa none = regex_to_dfa(Regex::empty_set(), "ab");
  EXPECT_EQ(none.states.size(), 1u);
  EXPECT_TRUE(enumerate_language(none, 4).empty());
  EXPECT_EQ(enumerate_language(regex_to_dfa(Regex::empty_str(), "ab"), 4), std::vector<std::string>{""});
  const Dfa odd = regex_to_dfa(parse_regex("(0|1)((0|1)(0|1))*"), "01");
  EXPECT_EQ(brzozowski_minimize(odd).states.size(), 2u);
  for (const auto& w : oracle::words("01", 9)) EXPECT_EQ(dfa_accepts(odd, w), w.size() % 2 == 1);
  EXPECT_THROW(regex_to_dfa(parse_regex("abc"), "ab"), AlphabetMismatch);
}

TEST(RegexToDfa, RandomAgreesWithMatcher) {
  std::mt19937 rng(37);
  for (int i = 0; i < 200; ++i) {
    const Regex r = oracle::random_regex(rng, 1 + rng() % 10, "ab");
    const Dfa d = regex_to_dfa(r, "ab");
    for (const auto& w : oracle::words("ab", 7)) ASSERT_EQ(dfa_accepts(d, w), oracle::matches(r, w)) << render_regex(r) << " on " << w;
  }
}

TEST(RegexToDfa, DerivativeAndNullable) {
  const Regex r = parse_regex("ab*");
  EXPECT_FALSE(nullable(r));
  EXPECT_TRUE(nullable(derivative(r, 'a')));
  EXPECT_EQ(derivative(r, 'b').kind(), Regex::Kind::EmptySet);
}

TEST(RegularOps, Examples) {
  const Nfa a = oracle::nfa_of_words({"a"}, "ab"), b = oracle::nfa_of_words({"b"}, "ab");
  const Nfa ab[] = {a, b};
  EXPECT_EQ(accepted(nfa_regular_op(RegularOp::Union, ab), "ab", 4), (std::vector<std::string>{"a", "b"}));
  Nfa empty;
  empty.alphabet = "ab";
  empty.states = {0};
  empty.starts = {0};
  const Nfa e1[] = {empty};
  EXPECT_EQ(accepted(nfa_regular_op(RegularOp::Star, e1), "ab", 4), std::vector<std::string>{""});
  const Nfa cat[] = {oracle::nfa_of_words({"", "ab"}, "ab"), oracle::nfa_of_words({"a", "b"}, "ab")};
  EXPECT_EQ(accepted(nfa_regular_op(RegularOp::Concat, cat), "ab", 4),
            (std::vector<std::string>{"a", "b", "aba", "abb"}));
  const Nfa mismatch[] = {a, oracle::nfa_of_words({"c"}, "c")};
  EXPECT_THROW(nfa_regular_op(RegularOp::Union, mismatch), AlphabetMismatch);
  EXPECT_THROW(nfa_regular_op(RegularOp::Star, ab), DomainError);
}

TEST(Product, Examples) {
  const Dfa d = oracle::contains_b();
  EXPECT_TRUE(equivalence_counterexamples(dfa_product(d, d, Combine::And), d, 1).equivalent);
  EXPECT_TRUE(enumerate_language(dfa_product(d, d, Combine::Xor), 6).empty());
  const Dfa even_a = oracle::machine({0, 1}, "ab", {{0, 'a', 1}, {0, 'b', 0}, {1, 'a', 0}, {1, 'b', 1}}, 0, {0});
  const Dfa both = dfa_product(even_a, d, Combine::And);
  const Dfa diff = dfa_product(even_a, d, Combine::Diff);
  for (const auto& w : oracle::words("ab", 8)) {
    EXPECT_EQ(dfa_accepts(both, w), oracle::dfa_trace(even_a, w) && oracle::dfa_trace(d, w));
    EXPECT_EQ(dfa_accepts(diff, w), oracle::dfa_trace(even_a, w) && !oracle::dfa_trace(d, w));
  }
}

TEST(Complement, Examples) {
  const Dfa d = oracle::contains_b();
  EXPECT_EQ(dfa_complement(dfa_complement(d)), d);
  Dfa all = d;
  all.accepts = {0, 1};
  EXPECT_TRUE(enumerate_language(dfa_complement(all), 6).empty());
  for (const auto& w : oracle::words("ab", 6))
    EXPECT_EQ(dfa_accepts(dfa_complement(d), w), w.find('b') == std::string::npos);
}

TEST(Equivalence, Examples) {
  const Dfa d = oracle::contains_b();
  const auto same = equivalence_counterexamples(d, d, 5);
  EXPECT_TRUE(same.equivalent);
  EXPECT_TRUE(same.examples.empty());
  Dfa all = d;
  all.accepts = {0, 1};
  const auto r = equivalence_counterexamples(d, all, 3);
  EXPECT_FALSE(r.equivalent);
  EXPECT_EQ(r.examples, (std::vector<Counterexample>{
                            {"", Side::OnlySecond}, {"a", Side::OnlySecond}, {"aa", Side::OnlySecond}}));
  const auto m = equivalence_counterexamples(multiples_dfa(2), multiples_dfa(4), 2);
  EXPECT_EQ(m.examples, (std::vector<Counterexample>{{"aa", Side::OnlyFirst}, {"aaaaaa", Side::OnlyFirst}}));
}

TEST(Equivalence, RandomPairsAgainstExhaustiveComparison) {
  std::mt19937 rng(41);
  for (int i = 0; i < 150; ++i) {
    const Dfa a = regex_to_dfa(oracle::random_regex(rng, 1 + rng() % 8, "ab"), "ab");
    const Dfa b = determinize(oracle::random_nfa(rng, 1 + rng() % 6, "ab"));
    const auto r = equivalence_counterexamples(a, b, 4);
    bool differ = false;
    for (const auto& w : oracle::words("ab", 8)) differ = differ || dfa_accepts(a, w) != dfa_accepts(b, w);
    if (differ) EXPECT_FALSE(r.equivalent);
    for (const auto& c : r.examples) {
      EXPECT_EQ(oracle::dfa_trace(a, c.word), c.side == Side::OnlyFirst);
      EXPECT_EQ(oracle::dfa_trace(b, c.word), c.side == Side::OnlySecond);
    }
  }
}

TEST(Enumerate, Examples) {
  Dfa none = oracle::contains_b();
  none.accepts.clear();
  EXPECT_TRUE(enumerate_language(none, 5).empty());
  EXPECT_EQ(enumerate_language(multiples_dfa(2), 5), (std::vector<std::string>{"", "aa", "aaaa"}));
  EXPECT_EQ(enumerate_language(oracle::contains_b(), 2), (std::vector<std::string>{"b", "ab", "ba", "bb"}));
}

TEST(Skip, WorkedExamples) {
  const Dfa eps_ab = determinize(oracle::nfa_of_words({"", "ab"}, "ab"));
  EXPECT_EQ(enumerate_language(determinize(skip_construction(eps_ab)), 4), (std::vector<std::string>{"a", "b"}));
  const Dfa a_b = determinize(oracle::nfa_of_words({"a", "b"}, "ab"));
  EXPECT_EQ(enumerate_language(determinize(skip_construction(a_b)), 4), std::vector<std::string>{""});
}

TEST(Skip, RandomAgainstInsertionOracle) {
  std::mt19937 rng(43);
  for (int i = 0; i < 50; ++i) {
    const Dfa d = oracle::random_dfa(rng, 4, "ab");
    const Nfa s = skip_construction(d);
    for (const auto& w : oracle::words("ab", 5)) {
      bool expected = false;
      for (std::size_t k = 0; k <= w.size() && !expected; ++k)
        for (char c : std::string("ab"))
          expected = expected || oracle::dfa_trace(d, w.substr(0, k) + c + w.substr(k));
      ASSERT_EQ(oracle::nfa_path(s, w), expected) << w;
    }
  }
}

TEST(Multiples, Examples) {
  const Dfa one = multiples_dfa(1);
  EXPECT_EQ(one.states.size(), 1u);
  for (int n = 0; n <= 10; ++n) EXPECT_TRUE(dfa_accepts(one, std::string(n, 'a')));
  const Dfa five = multiples_dfa(5);
  EXPECT_EQ(five.states, (std::set<State>{0, 1, 2, 3, 4}));
  EXPECT_TRUE(dfa_accepts(five, "aaaaa"));
  EXPECT_FALSE(dfa_accepts(five, "aaaa"));
  EXPECT_THROW(multiples_dfa(0), DomainError);
  EXPECT_THROW(multiples_dfa(-3), DomainError);
}

TEST(UnionFree, Examples) {
  const Regex a = Regex::symbol('a'), b = Regex::symbol('b');
  EXPECT_EQ(union_free_decomposition(Regex::alt(a, b)), (std::vector<Regex>{a, b}));
  EXPECT_EQ(union_free_decomposition(a), std::vector<Regex>{a});
  const auto parts = union_free_decomposition(Regex::star(Regex::alt(a, b)));
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0], Regex::star(Regex::concat(Regex::star(a), Regex::star(b))));
  EXPECT_TRUE(is_union_free(parts[0]));
}

TEST(UnionFree, RandomPartsCoverTheLanguage) {
  std::mt19937 rng(47);
  for (int i = 0; i < 150; ++i) {
    const Regex r = oracle::random_regex(rng, 1 + rng() % 8, "ab");
    const auto parts = union_free_decomposition(r);
    for (const auto& p : parts) EXPECT_TRUE(is_union_free(p)) << render_regex(p);
    for (const auto& w : oracle::words("ab", 6)) {
      bool any = false;
      for (const auto& p : parts) any = any || oracle::matches(p, w);
      ASSERT_EQ(any, oracle::matches(r, w)) << render_regex(r) << " on " << w;
    }
  }
}

TEST(Canonical, EqualLanguagesGiveEqualForms) {
  const Dfa x = brzozowski_minimize(regex_to_dfa(parse_regex("(0|1)*"), "01"));
  const Dfa y = brzozowski_minimize(regex_to_dfa(parse_regex("(1|0)*"), "10"));
  EXPECT_EQ(canonical_form(x), canonical_form(y));
}

TEST(QuoteWord, Forms) {
  EXPECT_EQ(quote_word("ab"), "\"ab\"");
  EXPECT_NE(quote_word("").find("\"\""), std::string::npos);
}
