#include <algorithm>
#include <cstdio>
#include <set>

#include "formlab/error.hpp"
#include "internal.hpp"

namespace formlab::grader {

namespace fs = std::filesystem;

namespace {

struct Keyed {
  std::string id;
  std::string key;
  std::size_t bucket = 0;
};

std::string dfa_key(const regular::Dfa& d) {
  return io::dump_compact(
      io::automaton_to_json(regular::canonical_form(regular::brzozowski_minimize(d))));
}

std::string sorted_union(const std::vector<std::string>& parts) {
  std::set<char> all;
  for (const auto& p : parts) all.insert(p.begin(), p.end());
  return {all.begin(), all.end()};
}

std::string padded(std::string s, std::size_t width) {
  if (s.size() < width) s.resize(width, ' ');
  return s;
}

std::string score_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", s);
  return buf;
}

bool blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

// Regular files in name order, skipping hidden ones, keyed by submission id.
std::vector<std::pair<std::string, fs::path>> submission_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.empty() || name[0] == '.' || !e.is_regular_file()) continue;
    files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, int> stems;
  for (const auto& f : files) ++stems[f.stem().string()];
  std::vector<std::pair<std::string, fs::path>> out;
  for (const auto& f : files) {
    const std::string stem = f.stem().string();
    out.emplace_back(stems[stem] > 1 ? f.filename().string() : stem, f);
  }
  return out;
}

Verdict no_submission() {
  Verdict v;
  v.category = Category::NoSubmission;
  v.feedback.push_back("No submission.");
  return v;
}

}  // namespace

ClusterReport cluster_answers(const std::vector<Submission>& submissions, ObjectKind kind) {
  std::vector<std::pair<std::string, Answer>> parsed;
  std::vector<Keyed> keyed;
  for (const Submission& s : submissions) {
    try {
      parsed.emplace_back(s.id, parse_answer(kind, s.text));
    } catch (const Error&) {
      keyed.push_back({s.id, kUnparseableKey, 0});
    }
  }

  std::string letters, sigma;
  if (kind == ObjectKind::Formula) {
    std::vector<std::string> vars;
    for (const auto& [id, a] : parsed) vars.push_back(logic::variables_of(std::get<logic::Formula>(a)));
    letters = sorted_union(vars);
  } else if (kind == ObjectKind::Regex || kind == ObjectKind::Dfa || kind == ObjectKind::Nfa) {
    std::vector<std::string> alphabets;
    for (const auto& [id, a] : parsed) alphabets.push_back(detail::answer_alphabet(a));
    sigma = sorted_union(alphabets);
  }

  for (const auto& [id, a] : parsed) {
    Keyed k{id, kUnparseableKey, 0};
    try {
      if (const auto* f = std::get_if<logic::Formula>(&a)) {
        k.key = "truth:" + letters + ":" + logic::truth_signature(*f, letters);
        k.bucket = f->size();
      } else if (const auto* r = std::get_if<regular::Regex>(&a)) {
        k.key = dfa_key(regular::regex_to_dfa(*r, sigma));
        k.bucket = r->size();
      } else if (const auto* d = std::get_if<regular::Dfa>(&a)) {
        k.key = dfa_key(detail::language_dfa(a, sigma));
        k.bucket = d->states.size();
      } else if (const auto* n = std::get_if<regular::Nfa>(&a)) {
        k.key = dfa_key(detail::language_dfa(a, sigma));
        k.bucket = n->states.size();
      } else if (const auto* g = std::get_if<context::Cfg>(&a)) {
        k.key = io::dump_compact(io::grammar_to_json(*g));
        k.bucket = g->rules.size();
      } else if (const auto* p = std::get_if<context::Dpda>(&a)) {
        k.key = io::dump_compact(io::dpda_to_json(*p));
        k.bucket = p->states.size();
      } else {
        const auto& s = std::get<std::string>(a);
        k.key = "string:" + s;
        k.bucket = s.size();
      }
    } catch (const Error&) {
      k.key = kUnparseableKey;
      k.bucket = 0;
    }
    keyed.push_back(std::move(k));
  }

  std::map<std::pair<std::string, std::size_t>, std::vector<std::string>> groups;
  for (const Keyed& k : keyed) groups[{k.key, k.bucket}].push_back(k.id);
  ClusterReport report;
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end());
    report.clusters.push_back({key.first, key.second, members, members.front()});
  }
  std::stable_sort(report.clusters.begin(), report.clusters.end(),
                   [](const Cluster& a, const Cluster& b) {
                     if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
                     return a.representative < b.representative;
                   });
  return report;
}

Json cluster_report_to_json(const ClusterReport& r) {
  Json j = Json::array();
  for (const Cluster& c : r.clusters)
    j.push_back({{"key", c.key},
                 {"size_bucket", c.size_bucket},
                 {"members", c.members},
                 {"representative", c.representative}});
  return j;
}

std::string render_cluster_report(const ClusterReport& r) {
  std::string out;
  for (std::size_t i = 0; i < r.clusters.size(); ++i) {
    const Cluster& c = r.clusters[i];
    out += "cluster " + std::to_string(i + 1) + ": " + std::to_string(c.members.size()) +
           " member(s), size " + std::to_string(c.size_bucket) + ", representative " +
           c.representative + "\n";
    std::string key = c.key;
    if (key.size() > 72) key = key.substr(0, 69) + "...";
    out += "  key: " + key + "\n  members:";
    for (const auto& m : c.members) out += " " + m;
    out += "\n";
  }
  if (r.clusters.empty()) out += "no answers to cluster\n";
  return out;
}

std::vector<Submission> read_submissions(const fs::path& dir) {
  std::vector<Submission> out;
  for (const auto& [id, path] : submission_files(dir)) {
    std::string text = io::read_text_file(path);
    if (text.empty()) continue;
    out.push_back({id, std::move(text)});
  }
  return out;
}

BatchReport grade_batch(const ExerciseSpec& spec, const fs::path& dir, const Limits& limits,
                        const std::vector<std::string>& roster) {
  BatchReport report;
  report.exercise = spec.id;
  std::vector<Submission> wrong;
  std::set<std::string> seen;
  for (const auto& [id, path] : submission_files(dir)) {
    seen.insert(id);
    Verdict v;
    if (spec.kind == ExerciseKind::Instance) {
      try {
        const std::string text = io::read_text_file(path);
        if (text.empty() || (spec.answer_kind != ObjectKind::String && blank(text))) {
          v = no_submission();
        } else {
          v = verify_instance(spec, text);
          if (v.category == Category::Wrong) wrong.push_back({id, text});
        }
      } catch (const IoError& e) {
        v.category = Category::MalformedAnswer;
        v.needs_human_review = true;
        v.feedback.push_back(e.what());
      }
    } else {
      try {
        v = run_construction(spec, path, limits);
      } catch (const Error& e) {
        v = Verdict{};
        v.category = Category::Crash;
        v.needs_human_review = true;
        v.feedback.push_back(e.what());
      }
    }
    report.entries.push_back({id, std::move(v)});
  }
  for (const auto& id : roster)
    if (!seen.count(id)) {
      seen.insert(id);
      report.entries.push_back({id, no_submission()});
    }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const BatchEntry& a, const BatchEntry& b) { return a.id < b.id; });
  for (const BatchEntry& e : report.entries) ++report.counts[e.verdict.category];
  report.clusters = cluster_answers(wrong, spec.answer_kind);
  return report;
}

Json batch_report_to_json(const BatchReport& r) {
  Json j;
  j["exercise"] = r.exercise;
  j["submissions"] = Json::array();
  for (const BatchEntry& e : r.entries) {
    Json s = verdict_to_json(e.verdict);
    s["id"] = e.id;
    j["submissions"].push_back(std::move(s));
  }
  j["counts"] = Json::object();
  for (const auto& [c, n] : r.counts) j["counts"][std::string(category_name(c))] = n;
  j["clusters"] = cluster_report_to_json(r.clusters);
  return j;
}

std::string render_batch_report(const BatchReport& r) {
  std::size_t width = 10;
  for (const BatchEntry& e : r.entries) width = std::max(width, e.id.size() + 2);
  std::string out = "exercise " + r.exercise + "\n\n";
  out += padded("id", width) + padded("category", 18) + padded("score", 7) + "review\n";
  for (const BatchEntry& e : r.entries)
    out += padded(e.id, width) + padded(std::string(category_name(e.verdict.category)), 18) +
           padded(score_text(e.verdict.score), 7) + (e.verdict.needs_human_review ? "yes" : "") +
           "\n";
  out += "\ncounts\n";
  for (const auto& [c, n] : r.counts)
    out += "  " + padded(std::string(category_name(c)), 18) + std::to_string(n) + "\n";
  if (!r.clusters.clusters.empty()) out += "\nclusters of wrong answers\n" + render_cluster_report(r.clusters);
  return out;
}

}  // namespace formlab::grader
