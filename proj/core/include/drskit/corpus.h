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

#ifndef DRSKIT_CORPUS_H_
#define DRSKIT_CORPUS_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drskit/error.h"

namespace drskit {

enum class AnnotationStatus { kGold, kSilver, kBronze };

const char* AnnotationStatusName(AnnotationStatus status);

// One corpus item. Documents are the unit of splitting and recombination.
struct Document {
  std::string id;
  std::string lang;  // ISO 639-1, lower case
  std::string text;
  std::vector<std::string> tokens;
  std::optional<std::string> sbn;
  std::optional<std::string> ccg;
  AnnotationStatus status = AnnotationStatus::kGold;

  bool operator==(const Document&) const = default;
};

struct CorpusStats {
  size_t doc_count = 0;
  double avg_sentence_length = 0;  // tokens per document, punctuation included
  double avg_char_length = 0;      // code points per document

  bool operator==(const CorpusStats&) const = default;
};

// Raised for malformed manifest records. `line` is 1-based; 0 when the
// problem is not tied to one record.
class CorpusError : public DataError {
 public:
  CorpusError(size_t line, std::string field, const std::string& message);

  size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  size_t line_;
  std::string field_;
};

// Manifest: one JSON object per line with fields id, lang, text, tokens,
// sbn, ccg, status. Blank lines are ignored.
std::vector<Document> ReadCorpus(std::istream& in);
std::vector<Document> LoadCorpus(const std::filesystem::path& manifest_path);

// Canonical serialization: fixed field order, one record per line, LF.
std::string SerializeDocument(const Document& doc);
void WriteCorpus(std::span<const Document> docs, std::ostream& out);
void SaveCorpus(std::span<const Document> docs, const std::filesystem::path& path);

CorpusStats ComputeCorpusStats(std::span<const Document> docs);
CorpusStats ComputeCorpusStats(std::span<const Document* const> docs);

}  // namespace drskit

#endif  // DRSKIT_CORPUS_H_
