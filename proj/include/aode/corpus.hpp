#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aode/json.hpp"
#include "aode/parser.hpp"

namespace aode {

/// Recorded labels; an absent entry means "not recorded", a present
/// std::nullopt value means "expected null".
using ExpectedLabels = std::map<std::string, std::optional<bool>>;

struct CorpusEntry {
  std::size_t line = 0;
  std::string id;
  std::string equation;
  ExpectedLabels expected;
};

struct CorpusFailure {
  std::size_t line = 0;
  std::string id;
  std::string error;
};

struct Corpus {
  std::vector<CorpusEntry> entries;
  std::vector<CorpusFailure> failures;  // malformed lines, duplicate ids
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline const std::set<std::string>& label_names() {
  static const std::set<std::string> names{"noncritical", "maximally_comparable", "completely"};
  return names;
}

inline ExpectedLabels parse_labels(const std::string& text) {
  ExpectedLabels out;
  for (const std::string& raw : split(text, ',')) {
    const std::string item = trim(raw);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("label '" + item + "' is not of the form name=value");
    const std::string name = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    if (label_names().count(name) == 0) throw UsageError("unknown label '" + name + "'");
    if (value == "true") {
      out[name] = true;
    } else if (value == "false") {
      out[name] = false;
    } else if (value == "null") {
      out[name] = std::nullopt;
    } else {
      throw UsageError("label value '" + value + "' must be true, false or null");
    }
  }
  return out;
}

}  // namespace detail

/// One entry per line: `id ; equation [; labels]`; '#' starts a comment line.
inline Corpus read_corpus(std::istream& in) {
  Corpus c;
  std::set<std::string> ids;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const std::string body = detail::trim(text);
    if (body.empty() || body[0] == '#') continue;
    const auto parts = detail::split(body, ';');
    const std::string id = parts.empty() ? "" : detail::trim(parts[0]);
    if (parts.size() < 2 || parts.size() > 3 || id.empty()) {
      c.failures.push_back({line, id.empty() ? "line " + std::to_string(line) : id,
                            "malformed entry, expected 'id ; equation [; labels]'"});
      continue;
    }
    if (!ids.insert(id).second) {
      c.failures.push_back({line, id, "duplicate id"});
      continue;
    }
    CorpusEntry e;
    e.line = line;
    e.id = id;
    e.equation = detail::trim(parts[1]);
    try {
      if (parts.size() == 3) e.expected = detail::parse_labels(parts[2]);
    } catch (const Error& err) {
      c.failures.push_back({line, id, err.what()});
      continue;
    }
    c.entries.push_back(std::move(e));
  }
  return c;
}

struct EntryResult {
  bool ok = false;
  std::string error;
  bool noncritical = false;
  bool maximally_comparable = false;
  std::optional<bool> completely;
};

inline EntryResult classify_entry(const CorpusEntry& e, const FactorOptions& fopts = {}) {
  EntryResult r;
  try {
    const Classification c = classify(parse_diffpoly(e.equation), fopts);
    r.ok = true;
    r.noncritical = c.noncritical;
    r.maximally_comparable = c.maximally_comparable;
    r.completely = c.completely;
  } catch (const Error& err) {
    r.error = err.what();
  }
  return r;
}

struct LabelMismatch {
  std::string id;
  std::string label;
  std::optional<bool> expected;
  std::optional<bool> actual;
};

struct CorpusStats {
  std::size_t entries = 0;
  std::size_t classified = 0;
  std::size_t noncritical = 0;
  std::size_t maximally_comparable = 0;
  std::size_t completely = 0;
  std::vector<CorpusFailure> failures;
  std::vector<LabelMismatch> mismatches;
};

/// Classify every entry with up to `jobs` threads; the merge runs in file order.
inline CorpusStats corpus_stats(const Corpus& corpus, unsigned jobs = 1, const FactorOptions& fopts = {}) {
  const std::size_t n = corpus.entries.size();
  std::vector<EntryResult> results(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) results[i] = classify_entry(corpus.entries[i], fopts);
  };
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  CorpusStats s;
  s.entries = n + corpus.failures.size();
  std::vector<CorpusFailure> failures = corpus.failures;
  for (std::size_t i = 0; i < n; ++i) {
    const CorpusEntry& e = corpus.entries[i];
    const EntryResult& r = results[i];
    if (!r.ok) {
      failures.push_back({e.line, e.id, r.error});
      continue;
    }
    ++s.classified;
    s.noncritical += r.noncritical;
    s.maximally_comparable += r.maximally_comparable;
    s.completely += r.completely.value_or(false);
    const std::map<std::string, std::optional<bool>> actual{
        {"noncritical", r.noncritical}, {"maximally_comparable", r.maximally_comparable}, {"completely", r.completely}};
    for (const auto& [label, want] : e.expected) {
      const auto& got = actual.at(label);
      if (got != want) s.mismatches.push_back({e.id, label, want, got});
    }
  }
  std::sort(failures.begin(), failures.end(),
            [](const CorpusFailure& a, const CorpusFailure& b) { return a.line < b.line; });
  s.failures = std::move(failures);
  return s;
}

inline double percent(std::size_t part, std::size_t whole) {
  if (whole == 0) return 0.0;
  return std::round(10000.0 * static_cast<double>(part) / static_cast<double>(whole)) / 100.0;
}

inline Json label_json(const std::optional<bool>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json to_json(const CorpusStats& s) {
  Json j;
  j["entries"] = s.entries;
  j["classified"] = s.classified;
  auto count = [&](std::size_t k) {
    Json c;
    c["count"] = k;
    c["percent"] = percent(k, s.classified);
    return c;
  };
  j["noncritical"] = count(s.noncritical);
  j["maximally_comparable"] = count(s.maximally_comparable);
  j["completely_maximally_comparable"] = count(s.completely);
  Json fails = Json::array();
  for (const CorpusFailure& f : s.failures) {
    Json e;
    e["line"] = f.line;
    e["id"] = f.id;
    e["error"] = f.error;
    fails.push_back(e);
  }
  j["failures"] = fails;
  Json mism = Json::array();
  for (const LabelMismatch& m : s.mismatches) {
    Json e;
    e["id"] = m.id;
    e["label"] = m.label;
    e["expected"] = label_json(m.expected);
    e["actual"] = label_json(m.actual);
    mism.push_back(e);
  }
  j["mismatches"] = mism;
  return j;
}

}  // namespace aode
