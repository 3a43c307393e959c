#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "encore/dataset.hpp"
#include "encore/error.hpp"

namespace encore {

enum class Format { jsonl, csv };

namespace detail {

// Fixed 6-decimal score serialization: canonical and byte-stable round trips.
inline std::string score6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline void json_escape_to(std::string& out, const std::string& s) {
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_score(const std::string& tok, const std::string& where) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') fail(errc::parse, where + ": not a number: '" + tok + "'");
  return v;
}

inline void csv_safe(const std::string& field, const std::string& what) {
  if (field.find_first_of(",\"\n\r") != std::string::npos) {
    fail(errc::schema, "CSV cannot encode " + what + " containing commas, quotes or newlines");
  }
}

}  // namespace detail

// Canonical JSONL: one record per line, key order pair_id, prompt, category,
// chosen, rejected; scores as %.6f. save(load(x)) is byte-stable for files
// already in this form.
inline std::string to_jsonl(const RatedDataset& d) {
  std::string out;
  for (const auto& p : d.pairs) {
    out += "{\"pair_id\":\"";
    detail::json_escape_to(out, p.pair_id);
    out += "\",\"prompt\":\"";
    detail::json_escape_to(out, p.prompt);
    out += "\",\"category\":\"";
    detail::json_escape_to(out, p.category);
    out += "\",\"chosen\":[";
    for (std::size_t k = 0; k < p.chosen.size(); ++k) {
      if (k) out += ',';
      out += detail::score6(p.chosen[k]);
    }
    out += "],\"rejected\":[";
    for (std::size_t k = 0; k < p.rejected.size(); ++k) {
      if (k) out += ',';
      out += detail::score6(p.rejected[k]);
    }
    out += "]}\n";
  }
  return out;
}

// CSV projection: header pair_id,category,chosen_0..,rejected_0..; prompts are
// not representable in this format and are dropped.
inline std::string to_csv(const RatedDataset& d) {
  std::string out = "pair_id,category";
  const std::size_t r = d.rule_count();
  for (std::size_t k = 0; k < r; ++k) out += ",chosen_" + std::to_string(k);
  for (std::size_t k = 0; k < r; ++k) out += ",rejected_" + std::to_string(k);
  out += '\n';
  for (const auto& p : d.pairs) {
    detail::csv_safe(p.pair_id, "pair_id '" + p.pair_id + "'");
    detail::csv_safe(p.category, "category '" + p.category + "'");
    out += p.pair_id;
    out += ',';
    out += p.category;
    for (double s : p.chosen) out += ',' + detail::score6(s);
    for (double s : p.rejected) out += ',' + detail::score6(s);
    out += '\n';
  }
  return out;
}

inline void save_dataset(const RatedDataset& d, const std::string& path, Format format) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::io, "cannot open for writing: " + path);
  f << (format == Format::jsonl ? to_jsonl(d) : to_csv(d));
  if (!f) fail(errc::io, "write failed: " + path);
}

namespace detail {

inline RatedDataset load_jsonl(std::istream& in, const std::string& path) {
  RatedDataset d;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(errc::parse, where + ": " + e.what());
    }
    if (!j.is_object()) fail(errc::parse, where + ": record is not an object");
    if (!j.contains("pair_id") || !j["pair_id"].is_string()) {
      fail(errc::parse, where + ": missing string field 'pair_id'");
    }
    PreferencePair p;
    p.pair_id = j["pair_id"].get<std::string>();
    if (j.contains("prompt")) {
      if (!j["prompt"].is_string()) fail(errc::parse, where + ": 'prompt' must be a string");
      p.prompt = j["prompt"].get<std::string>();
    }
    if (j.contains("category")) {
      if (!j["category"].is_string()) fail(errc::parse, where + ": 'category' must be a string");
      p.category = j["category"].get<std::string>();
    }
    for (const char* key : {"chosen", "rejected"}) {
      if (!j.contains(key) || !j[key].is_array()) {
        fail(errc::parse, where + ": missing array field '" + std::string(key) + "'");
      }
      ScoreVector& v = key[0] == 'c' ? p.chosen : p.rejected;
      for (const auto& x : j[key]) {
        if (!x.is_number()) fail(errc::parse, where + ": non-numeric score in '" + std::string(key) + "'");
        v.push_back(x.get<double>());
      }
    }
    d.pairs.push_back(std::move(p));
  }
  return d;
}

inline RatedDataset load_csv(std::istream& in, const std::string& path) {
  RatedDataset d;
  std::string line;
  if (!std::getline(in, line)) fail(errc::empty_input, path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv_line(line);
  if (header.size() < 4 || header[0] != "pair_id" || header[1] != "category" ||
      (header.size() - 2) % 2 != 0) {
    fail(errc::parse, path + ":1: malformed CSV header");
  }
  const std::size_t r = (header.size() - 2) / 2;
  for (std::size_t k = 0; k < r; ++k) {
    if (header[2 + k] != "chosen_" + std::to_string(k) ||
        header[2 + r + k] != "rejected_" + std::to_string(k)) {
      fail(errc::parse, path + ":1: malformed CSV header");
    }
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    auto tok = split_csv_line(line);
    if (tok.size() != 2 + 2 * r) {
      fail(errc::parse, where + ": expected " + std::to_string(2 + 2 * r) + " fields, got " +
                            std::to_string(tok.size()));
    }
    PreferencePair p;
    p.pair_id = tok[0];
    p.category = tok[1];
    for (std::size_t k = 0; k < r; ++k) p.chosen.push_back(parse_score(tok[2 + k], where));
    for (std::size_t k = 0; k < r; ++k) p.rejected.push_back(parse_score(tok[2 + r + k], where));
    d.pairs.push_back(std::move(p));
  }
  return d;
}

}  // namespace detail

// Loads and validates. Without a catalog, R is inferred from the first record
// and placeholder rules are attached; with one, the data must conform to it.
inline RatedDataset load_dataset(const std::string& path, Format format,
                                 std::optional<std::vector<RuleSpec>> catalog = std::nullopt) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(errc::io, "cannot open: " + path);
  RatedDataset d = format == Format::jsonl ? detail::load_jsonl(f, path) : detail::load_csv(f, path);
  if (d.pairs.empty()) fail(errc::empty_input, path + ": no preference pairs");
  d.rules = catalog ? std::move(*catalog) : placeholder_rules(d.pairs.front().chosen.size());
  validate_dataset(d);
  return d;
}

inline std::vector<RuleSpec> load_rule_catalog(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(errc::io, "cannot open: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse, path + ": " + e.what());
  }
  if (!j.is_array()) fail(errc::parse, path + ": catalog must be a JSON array");
  std::vector<RuleSpec> rules;
  for (const auto& item : j) {
    for (const char* key : {"index", "title", "description", "preference_rule", "rating_rule"}) {
      if (!item.contains(key)) {
        fail(errc::schema, path + ": rule entry missing field '" + std::string(key) + "'");
      }
    }
    if (!item["index"].is_number_integer()) fail(errc::schema, path + ": 'index' must be an integer");
    for (const char* key : {"title", "description", "preference_rule", "rating_rule"}) {
      if (!item[key].is_string()) {
        fail(errc::schema, path + ": rule field '" + std::string(key) + "' must be a string");
      }
    }
    RuleSpec r;
    r.index = item["index"].get<int>();
    r.title = item["title"].get<std::string>();
    r.description = item["description"].get<std::string>();
    r.preference_rule = item["preference_rule"].get<std::string>();
    r.rating_rule = item["rating_rule"].get<std::string>();
    rules.push_back(std::move(r));
  }
  validate_catalog(rules);
  std::sort(rules.begin(), rules.end(),
            [](const RuleSpec& a, const RuleSpec& b) { return a.index < b.index; });
  return rules;
}

}  // namespace encore
