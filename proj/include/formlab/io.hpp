#pragma once

// JSON documents for machines, grammars, DPDAs and formulas, plus file helpers.
// Readers throw SchemaError with a field path; writers produce sorted,
// deterministic output.

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "formlab/automata.hpp"
#include "formlab/context.hpp"
#include "formlab/logic.hpp"

namespace formlab::io {

using Json = nlohmann::json;

enum class ObjectKind { Formula, Regex, Dfa, Nfa, Cfg, Dpda, String };

std::string_view object_kind_name(ObjectKind k);
/// Accepts "formula", "regex", "dfa", "nfa", "cfg", "dpda", "string".
ObjectKind object_kind_from_name(std::string_view name);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Throws SchemaError on malformed JSON text.
Json parse_json(std::string_view text, std::string_view what = "document");

regular::RawAutomaton automaton_from_json(const Json& j);
Json automaton_to_json(const regular::RawAutomaton& raw);
Json automaton_to_json(const regular::Dfa& d);
Json automaton_to_json(const regular::Nfa& n);

context::Cfg grammar_from_json(const Json& j);
Json grammar_to_json(const context::Cfg& g);

/// Reads the DPDA document without checking invariants; see validate_dpda.
context::Dpda dpda_from_json(const Json& j);
Json dpda_to_json(const context::Dpda& p);

logic::Formula formula_from_json(const Json& j);
Json formula_to_json(const logic::Formula& f);

/// Guess what a file holds: JSON documents by their keys, text by extension
/// (.formula/.fml/.prop are formulas, anything else a regex).
ObjectKind detect_kind(const std::filesystem::path& path, std::string_view text);

/// Single-line JSON, used by the wire protocol and structured output.
std::string dump_compact(const Json& j);
std::string dump_pretty(const Json& j);

}  // namespace formlab::io
