#include <gtest/gtest.h>

#include <random>

#include "formlab/error.hpp"
#include "formlab/io.hpp"
#include "support/oracles.hpp"

using namespace formlab;
using namespace formlab::io;

TEST(AutomatonJson, DfaRoundTrip) {
  const auto d = oracle::contains_b();
  const Json j = automaton_to_json(d);
  EXPECT_EQ(j["kind"], "dfa");
  EXPECT_EQ(j["start"], 0);
  EXPECT_EQ(regular::to_dfa(automaton_from_json(j)), d);
  EXPECT_EQ(regular::to_dfa(automaton_from_json(parse_json(dump_compact(j)))), d);
}

TEST(AutomatonJson, NfaRoundTripWithEpsilon) {
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto n = oracle::random_nfa(rng, 5, "ab");
    const Json j = automaton_to_json(n);
    EXPECT_TRUE(j["start"].is_array());
    EXPECT_EQ(regular::to_nfa(automaton_from_json(j)), n);
  }
}

TEST(AutomatonJson, KindInferredAndAcceptAlias) {
  const Json j = parse_json(R"({"states":[0,1],"alphabet":"ab",
    "transitions":[[0,"a",0],[0,"b",1],[1,"a",1],[1,"b",1]],"start":0,"accepts":[1]})");
  const auto raw = automaton_from_json(j);
  EXPECT_EQ(raw.kind, regular::AutomatonKind::Dfa);
  EXPECT_EQ(regular::to_dfa(raw), oracle::contains_b());
  const Json n = parse_json(R"({"states":[0],"alphabet":"a","transitions":[],"start":[0],"accept":[]})");
  EXPECT_EQ(automaton_from_json(n).kind, regular::AutomatonKind::Nfa);
}

TEST(AutomatonJson, SchemaErrorsCarryPaths) {
  try {
    automaton_from_json(parse_json(R"({"states":[0],"alphabet":"a","transitions":[[0,"a"]],"start":0,"accept":[]})"));
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "transitions[0]");
  }
  EXPECT_THROW(automaton_from_json(parse_json(R"({"alphabet":"a"})")), SchemaError);
  EXPECT_THROW(parse_json("{nope"), SchemaError);
}

TEST(GrammarJson, RoundTrip) {
  context::Cfg g;
  g.variables = {"S"};
  g.terminals = "ab";
  g.rules = {{"S", {"a", "S", "b"}}, {"S", {}}};
  g.start = "S";
  const Json j = grammar_to_json(g);
  EXPECT_EQ(j["kind"], "cfg");
  const auto back = grammar_from_json(j);
  EXPECT_EQ(back.variables, g.variables);
  EXPECT_EQ(back.rules.size(), 2u);
  EXPECT_EQ(back.rules[0].rhs, (std::vector<std::string>{"a", "S", "b"}));
  EXPECT_TRUE(back.rules[1].rhs.empty());
}

TEST(DpdaJson, RoundTripAndIntegerStackSymbols) {
  const auto p = context::dfa_to_dpda3(oracle::contains_b());
  const Json j = dpda_to_json(p);
  const auto back = dpda_from_json(parse_json(dump_compact(j)));
  EXPECT_EQ(back.states, p.states);
  EXPECT_EQ(back.stack_alphabet, p.stack_alphabet);
  ASSERT_EQ(back.transitions.size(), p.transitions.size());
  for (std::size_t i = 0; i < p.transitions.size(); ++i) {
    EXPECT_EQ(back.transitions[i].input, p.transitions[i].input);
    EXPECT_EQ(back.transitions[i].pop, p.transitions[i].pop);
    EXPECT_EQ(back.transitions[i].push, p.transitions[i].push);
  }
  for (const auto& t : j["transitions"]) {
    const Json& pop = t[0][2];
    EXPECT_TRUE(pop.is_number_integer() || pop == "") << t.dump();
  }
}

TEST(FormulaJson, RoundTrip) {
  const auto f = logic::parse_formula("~(X & T) => (Y ^ F) <=> X | Y");
  const Json j = formula_to_json(f);
  EXPECT_EQ(j["op"], "BIIM");
  EXPECT_EQ(formula_from_json(j), f);
  EXPECT_THROW(formula_from_json(parse_json(R"({"op":"NAND","args":[]})")), SchemaError);
}

TEST(DetectKind, ByContentAndExtension) {
  EXPECT_EQ(detect_kind("x.json", R"({"kind":"dfa"})"), ObjectKind::Dfa);
  EXPECT_EQ(detect_kind("x.json", R"({"states":[0],"start":[0]})"), ObjectKind::Nfa);
  EXPECT_EQ(detect_kind("x.json", R"({"rules":[],"variables":[]})"), ObjectKind::Cfg);
  EXPECT_EQ(detect_kind("x.json", R"({"input_alphabet":"a"})"), ObjectKind::Dpda);
  EXPECT_EQ(detect_kind("x.json", R"({"op":"VAR","name":"X"})"), ObjectKind::Formula);
  EXPECT_EQ(detect_kind("x.formula", "X & Y"), ObjectKind::Formula);
  EXPECT_EQ(detect_kind("x.regex", "(a|b)*"), ObjectKind::Regex);
  EXPECT_EQ(object_kind_from_name("cfg"), ObjectKind::Cfg);
  EXPECT_THROW(object_kind_from_name("pda"), DomainError);
}

TEST(Files, ReadWriteAndErrors) {
  const auto path = std::filesystem::temp_directory_path() / "formlab_io_test.txt";
  write_text_file(path, "hello\n");
  EXPECT_EQ(read_text_file(path), "hello\n");
  std::filesystem::remove(path);
  EXPECT_THROW(read_text_file(path), IoError);
  EXPECT_THROW(write_text_file("/nonexistent-dir/x", "y"), IoError);
}
