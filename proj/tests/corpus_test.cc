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

#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"
#include "support/synthetic.h"

namespace drskit {
namespace {

const char* kGood =
    R"({"id":"a1","lang":"en","text":"Mary runs.","tokens":["Mary","runs","."],"sbn":null,"ccg":null,"status":"gold"})"
    "\n\n"
    R"({"id":"a2","lang":"de","text":"Straße.","tokens":["Straße","."],"sbn":"street.n.01\n","ccg":null,"status":"silver"})"
    "\n";

TEST(Corpus, ReadsRecords) {
  std::istringstream in(kGood);
  auto docs = ReadCorpus(in);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].tokens, (std::vector<std::string>{"Mary", "runs", "."}));
  EXPECT_FALSE(docs[0].sbn);
  EXPECT_EQ(docs[1].lang, "de");
  EXPECT_EQ(*docs[1].sbn, "street.n.01\n");
  EXPECT_EQ(docs[1].status, AnnotationStatus::kSilver);
}

TEST(Corpus, RoundTrip) {
  auto docs = testing::GrammarCorpus(40, 2);
  std::ostringstream out;
  WriteCorpus(docs, out);
  std::istringstream in(out.str());
  EXPECT_EQ(ReadCorpus(in), docs);
  auto path = std::filesystem::temp_directory_path() / "drskit_corpus_test.jsonl";
  SaveCorpus(docs, path);
  EXPECT_EQ(LoadCorpus(path), docs);
  std::filesystem::remove(path);
}

void ExpectError(const std::string& text, size_t line, const std::string& field) {
  std::istringstream in(text);
  try {
    ReadCorpus(in);
    ADD_FAILURE() << "no error for " << text;
  } catch (const CorpusError& e) {
    EXPECT_EQ(e.line(), line) << text;
    EXPECT_EQ(e.field(), field) << text;
  }
}

TEST(Corpus, ErrorsNameLineAndField) {
  const std::string ok =
      R"({"id":"a","lang":"en","text":"x","tokens":["x"],"sbn":null,"ccg":null,"status":"gold"})"
      "\n";
  ExpectError(ok + "{not json\n", 2, "");
  ExpectError(ok + ok, 2, "id");
  ExpectError(R"({"lang":"en","text":"x","tokens":["x"],"status":"gold"})", 1, "id");
  ExpectError(R"({"id":"a","lang":"eng","text":"x","tokens":["x"],"status":"gold"})", 1,
              "lang");
  ExpectError(R"({"id":"a","lang":"en","text":"","tokens":["x"],"status":"gold"})", 1, "text");
  ExpectError(R"({"id":"a","lang":"en","text":"x","tokens":[],"status":"gold"})", 1, "tokens");
  ExpectError(R"({"id":"a","lang":"en","text":"x","tokens":[1],"status":"gold"})", 1, "tokens");
  ExpectError(R"({"id":"a","lang":"en","text":"x","tokens":["x"],"sbn":3,"status":"gold"})", 1,
              "sbn");
  ExpectError(R"({"id":"a","lang":"en","text":"x","tokens":["x"],"status":"tin"})", 1,
              "status");
  ExpectError("[1,2]", 1, "");
}

TEST(Corpus, MissingFileIsIoError) {
  EXPECT_THROW(LoadCorpus("/nonexistent/corpus.jsonl"), IoError);
}

TEST(CorpusStats, Averages) {
  std::istringstream in(kGood);
  auto docs = ReadCorpus(in);
  CorpusStats s = ComputeCorpusStats(docs);
  EXPECT_EQ(s.doc_count, 2u);
  EXPECT_DOUBLE_EQ(s.avg_sentence_length, 2.5);
  EXPECT_DOUBLE_EQ(s.avg_char_length, (10.0 + 7.0) / 2);  // code points
  EXPECT_EQ(ComputeCorpusStats(std::vector<Document>{}).doc_count, 0u);
  std::vector<const Document*> ptrs = {&docs[1]};
  EXPECT_DOUBLE_EQ(ComputeCorpusStats(ptrs).avg_char_length, 7.0);
}

}  // namespace
}  // namespace drskit
