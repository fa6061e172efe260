// Copyright 2026 The drskit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "drskit/corpus.h"

#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "drskit/util.h"
#include "json.hpp"

namespace drskit {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::optional<AnnotationStatus> ParseStatus(const std::string& s) {
  if (s == "gold") return AnnotationStatus::kGold;
  if (s == "silver") return AnnotationStatus::kSilver;
  if (s == "bronze") return AnnotationStatus::kBronze;
  return std::nullopt;
}

bool IsLanguageCode(const std::string& s) {
  return s.size() == 2 && s[0] >= 'a' && s[0] <= 'z' && s[1] >= 'a' && s[1] <= 'z';
}

const json& Require(const json& record, const char* field, size_t line) {
  auto it = record.find(field);
  if (it == record.end()) throw CorpusError(line, field, "missing field");
  return *it;
}

std::string RequireString(const json& record, const char* field, size_t line) {
  const json& v = Require(record, field, line);
  if (!v.is_string()) throw CorpusError(line, field, "expected a string");
  return v.get<std::string>();
}

std::optional<std::string> OptionalString(const json& record, const char* field,
                                          size_t line) {
  auto it = record.find(field);
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw CorpusError(line, field, "expected a string or null");
  return it->get<std::string>();
}

Document ParseRecord(const std::string& text, size_t line) {
  json record;
  try {
    record = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CorpusError(line, "", std::string("invalid JSON: ") + e.what());
  }
  if (!record.is_object()) throw CorpusError(line, "", "record is not an object");

  Document doc;
  doc.id = RequireString(record, "id", line);
  if (doc.id.empty()) throw CorpusError(line, "id", "empty id");
  doc.lang = RequireString(record, "lang", line);
  if (!IsLanguageCode(doc.lang)) {
    throw CorpusError(line, "lang", "not a two-letter language code: " + doc.lang);
  }
  doc.text = RequireString(record, "text", line);
  if (doc.text.empty()) throw CorpusError(line, "text", "empty text");

  const json& tokens = Require(record, "tokens", line);
  if (!tokens.is_array()) throw CorpusError(line, "tokens", "expected an array");
  for (const auto& t : tokens) {
    if (!t.is_string()) throw CorpusError(line, "tokens", "non-string token");
    doc.tokens.push_back(t.get<std::string>());
  }
  if (doc.tokens.empty()) throw CorpusError(line, "tokens", "empty token layer");

  doc.sbn = OptionalString(record, "sbn", line);
  doc.ccg = OptionalString(record, "ccg", line);

  std::string status = RequireString(record, "status", line);
  auto parsed = ParseStatus(status);
  if (!parsed) throw CorpusError(line, "status", "unknown status: " + status);
  doc.status = *parsed;
  return doc;
}

}  // namespace

const char* AnnotationStatusName(AnnotationStatus status) {
  switch (status) {
    case AnnotationStatus::kGold: return "gold";
    case AnnotationStatus::kSilver: return "silver";
    case AnnotationStatus::kBronze: return "bronze";
  }
  return "gold";
}

static std::string FormatCorpusError(size_t line, const std::string& field,
                                     const std::string& message) {
  std::ostringstream ss;
  if (line > 0) ss << "line " << line << ": ";
  if (!field.empty()) ss << "field '" << field << "': ";
  ss << message;
  return ss.str();
}

CorpusError::CorpusError(size_t line, std::string field, const std::string& message)
    : DataError(FormatCorpusError(line, field, message)),
      line_(line),
      field_(std::move(field)) {}

std::vector<Document> ReadCorpus(std::istream& in) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Document doc = ParseRecord(line, lineno);
    if (!seen.insert(doc.id).second) {
      throw CorpusError(lineno, "id", "duplicate id: " + doc.id);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> LoadCorpus(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus: " + manifest_path.string());
  return ReadCorpus(in);
}

std::string SerializeDocument(const Document& doc) {
  ordered_json record;
  record["id"] = doc.id;
  record["lang"] = doc.lang;
  record["text"] = doc.text;
  record["tokens"] = doc.tokens;
  record["sbn"] = doc.sbn ? ordered_json(*doc.sbn) : ordered_json(nullptr);
  record["ccg"] = doc.ccg ? ordered_json(*doc.ccg) : ordered_json(nullptr);
  record["status"] = AnnotationStatusName(doc.status);
  return record.dump();
}

void WriteCorpus(std::span<const Document> docs, std::ostream& out) {
  for (const auto& doc : docs) out << SerializeDocument(doc) << '\n';
}

void SaveCorpus(std::span<const Document> docs, const std::filesystem::path& path) {
  std::ostringstream ss;
  WriteCorpus(docs, ss);
  WriteFileAtomic(path, ss.str());
}

CorpusStats ComputeCorpusStats(std::span<const Document* const> docs) {
  CorpusStats stats;
  stats.doc_count = docs.size();
  if (docs.empty()) return stats;
  size_t tokens = 0;
  size_t chars = 0;
  for (const Document* doc : docs) {
    tokens += doc->tokens.size();
    chars += CharLength(doc->text);
  }
  stats.avg_sentence_length = static_cast<double>(tokens) / docs.size();
  stats.avg_char_length = static_cast<double>(chars) / docs.size();
  return stats;
}

CorpusStats ComputeCorpusStats(std::span<const Document> docs) {
  std::vector<const Document*> ptrs;
  ptrs.reserve(docs.size());
  for (const auto& d : docs) ptrs.push_back(&d);
  return ComputeCorpusStats(std::span<const Document* const>(ptrs));
}

}  // namespace drskit
