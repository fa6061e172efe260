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

#include "cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "CLI11.hpp"
#include "drskit/ccg.h"
#include "drskit/corpus.h"
#include "drskit/metrics.h"
#include "drskit/plausibility.h"
#include "drskit/recombine.h"
#include "drskit/sbn.h"
#include "drskit/split.h"
#include "drskit/subtree_index.h"
#include "drskit/util.h"
#include "json.hpp"

namespace drskit::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  uint64_t seed = 0;
  int workers = 1;
  std::string corpus;
  std::string out = "drskit_out";
  std::string assignment;
  // split
  std::string method = "systematic";
  std::optional<SplitRatio> ratio;  // unset: per-language default
  int group_size = 10;
  std::string tail = "train";
  // recombine
  size_t pool_size = 200;
  double fraction = 0.05;
  bool per_stratum = false;
  ScorerSpec scorer;
  // eval
  std::string pred;
  std::string gold;
  std::string task = "parse";
  int smatch_restarts = 10;
  int bleu_max_n = 4;
  std::string bleu_smoothing = "none";

  json ToJson() const;
  void Merge(const json& j);
  void Validate() const;
};

json RunConfig::ToJson() const {
  json j;
  j["seed"] = seed;
  j["workers"] = workers;
  j["corpus"] = corpus;
  j["out"] = out;
  j["assignment"] = assignment;
  j["split"] = {{"method", method},
                {"ratio", ratio ? json(ratio->ToString()) : json(nullptr)},
                {"group_size", group_size},
                {"tail", tail}};
  j["recombine"] = {
      {"pool_size", pool_size}, {"fraction", fraction}, {"per_stratum", per_stratum}};
  j["scorer"] = {
      {"kind", scorer.kind == ScorerSpec::Kind::kExternal ? "external" : "ngram"},
      {"order", scorer.order},
      {"alpha", scorer.alpha},
      {"command", scorer.command},
      {"timeout_seconds", scorer.timeout_seconds},
      {"normalization", NormalizationName(scorer.normalization)}};
  j["eval"] = {{"pred", pred},
               {"gold", gold},
               {"task", task},
               {"smatch_restarts", smatch_restarts},
               {"bleu_max_n", bleu_max_n},
               {"bleu_smoothing", bleu_smoothing}};
  return j;
}

void CheckKeys(const json& j, const std::string& where, std::set<std::string> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("unknown config key " + where + "." + item.key());
    }
  }
}

template <typename T>
void Take(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

void RunConfig::Merge(const json& j) {
  try {
    CheckKeys(j, "config",
              {"seed", "workers", "corpus", "out", "assignment", "split", "recombine",
               "scorer", "eval"});
    Take(j, "seed", seed);
    Take(j, "workers", workers);
    Take(j, "corpus", corpus);
    Take(j, "out", out);
    Take(j, "assignment", assignment);
    if (j.contains("split")) {
      const json& s = j["split"];
      CheckKeys(s, "split", {"method", "ratio", "group_size", "tail"});
      Take(s, "method", method);
      if (s.contains("ratio")) {
        if (s["ratio"].is_null()) {
          ratio.reset();
        } else {
          ratio = ParseRatio(s["ratio"].get<std::string>());
        }
      }
      Take(s, "group_size", group_size);
      Take(s, "tail", tail);
    }
    if (j.contains("recombine")) {
      const json& r = j["recombine"];
      CheckKeys(r, "recombine", {"pool_size", "fraction", "per_stratum"});
      Take(r, "pool_size", pool_size);
      Take(r, "fraction", fraction);
      Take(r, "per_stratum", per_stratum);
    }
    if (j.contains("scorer")) {
      const json& s = j["scorer"];
      CheckKeys(s, "scorer",
                {"kind", "order", "alpha", "command", "timeout_seconds", "normalization"});
      if (s.contains("kind")) {
        std::string kind = s["kind"].get<std::string>();
        if (kind == "ngram") {
          scorer.kind = ScorerSpec::Kind::kReferenceNgram;
        } else if (kind == "external") {
          scorer.kind = ScorerSpec::Kind::kExternal;
        } else {
          throw ConfigError("scorer.kind must be ngram or external");
        }
      }
      Take(s, "order", scorer.order);
      Take(s, "alpha", scorer.alpha);
      Take(s, "command", scorer.command);
      Take(s, "timeout_seconds", scorer.timeout_seconds);
      if (s.contains("normalization")) {
        std::string n = s["normalization"].get<std::string>();
        if (n == "total") {
          scorer.normalization = Normalization::kTotal;
        } else if (n == "per_token") {
          scorer.normalization = Normalization::kPerToken;
        } else {
          throw ConfigError("scorer.normalization must be total or per_token");
        }
      }
    }
    if (j.contains("eval")) {
      const json& e = j["eval"];
      CheckKeys(e, "eval",
                {"pred", "gold", "task", "smatch_restarts", "bleu_max_n", "bleu_smoothing"});
      Take(e, "pred", pred);
      Take(e, "gold", gold);
      Take(e, "task", task);
      Take(e, "smatch_restarts", smatch_restarts);
      Take(e, "bleu_max_n", bleu_max_n);
      Take(e, "bleu_smoothing", bleu_smoothing);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
}

void RunConfig::Validate() const {
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (method != "systematic" && method != "random") {
    throw ConfigError("method must be systematic or random");
  }
  if (tail != "train" && tail != "largest_remainder") {
    throw ConfigError("tail must be train or largest_remainder");
  }
  if (group_size < 1) throw ConfigError("group size must be at least 1");
  if (ratio && (ratio->train < 0 || ratio->dev < 0 || ratio->test < 0 || ratio->sum() == 0)) {
    throw ConfigError("ratio must be non-negative with a positive sum");
  }
  if (!(fraction > 0 && fraction <= 1)) throw ConfigError("fraction must lie in (0, 1]");
  if (task != "parse" && task != "generate") {
    throw ConfigError("task must be parse or generate");
  }
  if (smatch_restarts < 1) throw ConfigError("smatch restarts must be at least 1");
  if (bleu_max_n < 1) throw ConfigError("bleu max n must be at least 1");
  if (bleu_smoothing != "none" && bleu_smoothing != "add_one") {
    throw ConfigError("bleu smoothing must be none or add_one");
  }
  try {
    scorer.Validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

// Provenance ---------------------------------------------------------------

struct Run {
  std::string command;
  RunConfig config;
  std::string config_json;
  std::string digest;

  Run(std::string cmd, RunConfig cfg) : command(std::move(cmd)), config(std::move(cfg)) {
    config_json = config.ToJson().dump();
    digest = HexDigest(Fnv1a(config_json));
  }

  std::vector<std::string> HeaderLines() const {
    return {"command=" + command, "config=" + config_json, "digest=" + digest};
  }

  std::string CommentHeader() const {
    std::string s;
    for (const auto& line : HeaderLines()) s += "# " + line + "\n";
    return s;
  }

  json JsonHeader() const {
    return {{"command", command}, {"config", json::parse(config_json)}, {"digest", digest}};
  }

  fs::path OutPath(const std::string& name) const {
    fs::path dir(config.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());
    return dir / name;
  }
};

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// Shared steps --------------------------------------------------------------

std::vector<Document> LoadRequiredCorpus(const RunConfig& cfg) {
  if (cfg.corpus.empty()) throw ConfigError("no corpus given (--corpus or config.corpus)");
  return LoadCorpus(cfg.corpus);
}

SplitPolicy PolicyFor(const RunConfig& cfg, const std::string& lang) {
  SplitPolicy p;
  p.group_size = cfg.group_size;
  p.ratio = cfg.ratio.value_or(DefaultRatio(lang));
  p.seed = cfg.seed;
  p.tail = cfg.tail == "train" ? TailPolicy::kTrain : TailPolicy::kLargestRemainder;
  p.workers = cfg.workers;
  try {
    ValidatePolicy(p);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return p;
}

// Each language is split on its own; entries come back in corpus order.
SplitAssignment ComputeAssignment(const std::vector<Document>& docs, const RunConfig& cfg,
                                  const std::string& method,
                                  std::vector<std::string>* notes) {
  std::map<std::string, std::vector<Document>> by_lang;
  for (const Document& d : docs) by_lang[d.lang].push_back(d);
  std::unordered_map<std::string, SplitName> merged;
  SplitAssignment out;
  out.method = method == "random" ? SplitMethod::kRandom : SplitMethod::kSystematic;
  out.policy = PolicyFor(cfg, by_lang.empty() ? "en" : by_lang.begin()->first);
  for (const auto& [lang, lang_docs] : by_lang) {
    SplitPolicy policy = PolicyFor(cfg, lang);
    SplitAssignment a = method == "random" ? RandomSplit(lang_docs, policy.ratio, policy.seed)
                                           : SystematicSplit(lang_docs, policy);
    for (const auto& [id, split] : a.entries) merged.emplace(id, split);
    if (notes) notes->push_back("ratio." + lang + "=" + policy.ratio.ToString());
  }
  for (const Document& d : docs) out.entries.emplace_back(d.id, merged.at(d.id));
  return out;
}

std::unordered_map<std::string, SplitName> LoadOrComputeSplit(const std::vector<Document>& docs,
                                                              const RunConfig& cfg) {
  std::unordered_map<std::string, SplitName> map;
  if (cfg.assignment.empty()) {
    map = ComputeAssignment(docs, cfg, cfg.method, nullptr).AsMap();
  } else {
    map = LoadAssignment(cfg.assignment).AsMap();
  }
  size_t missing = 0;
  std::string first;
  for (const Document& d : docs) {
    if (!map.count(d.id)) {
      if (missing++ == 0) first = d.id;
    }
  }
  if (missing > 0) {
    throw DataError("assignment does not cover " + std::to_string(missing) +
                    " corpus documents (first: " + first + ")");
  }
  return map;
}

std::string StatsTable(const std::vector<Document>& docs,
                       const std::unordered_map<std::string, SplitName>* splits) {
  std::map<std::string, std::array<std::vector<const Document*>, 4>> groups;
  for (const Document& d : docs) {
    auto& g = groups[d.lang];
    g[0].push_back(&d);
    if (splits) g[1 + static_cast<int>(splits->at(d.id))].push_back(&d);
  }
  static const char* kNames[] = {"all", "train", "dev", "test"};
  std::string table = "lang\tsplit\tdocs\tavg_tokens\tavg_chars\n";
  for (const auto& [lang, g] : groups) {
    for (int i = 0; i < (splits ? 4 : 1); ++i) {
      CorpusStats s = ComputeCorpusStats(std::span<const Document* const>(g[i]));
      table += lang + "\t" + kNames[i] + "\t" + std::to_string(s.doc_count) + "\t" +
               Fixed(s.avg_sentence_length, 2) + "\t" + Fixed(s.avg_char_length, 2) + "\n";
    }
  }
  return table;
}

// Commands ------------------------------------------------------------------

int CmdSplit(const RunConfig& cfg, std::ostream& out) {
  Run run("split", cfg);
  std::vector<Document> docs = LoadRequiredCorpus(cfg);
  std::vector<std::string> header = run.HeaderLines();
  SplitAssignment a = ComputeAssignment(docs, cfg, cfg.method, &header);
  std::ostringstream assignment;
  WriteAssignment(a, assignment, header);
  WriteFileAtomic(run.OutPath("assignment.tsv"), assignment.str());
  auto map = a.AsMap();
  std::string table = StatsTable(docs, &map);
  WriteFileAtomic(run.OutPath("split_stats.tsv"), run.CommentHeader() + table);
  out << table;
  return kExitOk;
}

std::string PerDocTable(const OverlapReport& report, const Run& run) {
  std::string s = run.CommentHeader() + "test_id\tmax_overlap\ttrain_id\n";
  for (const OverlapEntry& e : report.per_doc) {
    s += e.test_id + "\t" + Fixed(e.max_overlap, 6) + "\t" + e.train_id + "\n";
  }
  return s;
}

int CmdOverlap(const RunConfig& cfg, std::ostream& out) {
  Run run("overlap", cfg);
  std::vector<Document> docs = LoadRequiredCorpus(cfg);
  auto assigned = LoadOrComputeSplit(docs, cfg);
  auto random = ComputeAssignment(docs, cfg, "random", nullptr).AsMap();

  auto reports = [&](const std::unordered_map<std::string, SplitName>& map) {
    std::array<std::vector<const Document*>, 3> parts;
    for (const Document& d : docs) parts[static_cast<int>(map.at(d.id))].push_back(&d);
    OverlapReport test = ComputeOverlapReport(parts[0], parts[2], cfg.workers);
    OverlapReport dev = ComputeOverlapReport(parts[0], parts[1], cfg.workers);
    return std::make_pair(test, dev);
  };
  auto [test, dev] = reports(assigned);
  auto [random_test, random_dev] = reports(random);

  std::vector<std::string> header = run.HeaderLines();
  WriteFileAtomic(run.OutPath("overlap_test.tsv"), PerDocTable(test, run));
  WriteFileAtomic(run.OutPath("overlap_dev.tsv"), PerDocTable(dev, run));
  EmitHistogram(test, run.OutPath("histogram_test.tsv"), header);
  EmitHistogram(dev, run.OutPath("histogram_dev.tsv"), header);

  std::string summary = "pair\tdocs\tmean_max_overlap\trandom_mean_max_overlap\n";
  summary += "train-test\t" + std::to_string(test.per_doc.size()) + "\t" +
             Fixed(test.mean, 6) + "\t" + Fixed(random_test.mean, 6) + "\n";
  summary += "train-dev\t" + std::to_string(dev.per_doc.size()) + "\t" + Fixed(dev.mean, 6) +
             "\t" + Fixed(random_dev.mean, 6) + "\n";
  WriteFileAtomic(run.OutPath("overlap_summary.tsv"), run.CommentHeader() + summary);
  out << summary;
  return kExitOk;
}

std::string YieldText(const CcgTree& tree) {
  std::vector<std::string> y = tree.Yield();
  return Detokenize(y);
}

json CandidateJson(const Candidate& c) {
  json ops = json::array();
  for (const RecombinationOp& op : c.ops) {
    ops.push_back({{"kind", OpKindName(op.kind)},
                   {"site_span", {op.site_span.first, op.site_span.second}},
                   {"site_category", op.site_category.ToString()},
                   {"removed", YieldText(op.removed)},
                   {"replacement", YieldText(op.replacement)},
                   {"donor_id", op.donor_id}});
  }
  json j;
  j["source_id"] = c.source_id;
  j["text"] = c.text;
  j["ops"] = std::move(ops);
  j["tree"] = SerializeTree(c.tree);
  j["sbn"] = c.sbn ? json(SerializeSbn(*c.sbn)) : json(nullptr);
  j["pll"] = c.pll ? json(*c.pll) : json(nullptr);
  return j;
}

std::string CandidateFile(const std::vector<Candidate>& cands, json header) {
  std::string s = json{{"run", std::move(header)}}.dump() + "\n";
  for (const Candidate& c : cands) s += CandidateJson(c).dump() + "\n";
  return s;
}

int CmdRecombine(const RunConfig& cfg, std::ostream& out) {
  Run run("recombine", cfg);
  std::vector<Document> docs = LoadRequiredCorpus(cfg);
  auto splits = LoadOrComputeSplit(docs, cfg);

  std::vector<const Document*> train;
  for (const Document& d : docs) {
    if (splits.at(d.id) == SplitName::kTrain) train.push_back(&d);
  }
  std::vector<IndexedTree> trees;
  std::vector<SourceTree> sources;
  std::unordered_map<std::string, DocSemantics> semantics;
  for (const Document* d : train) {
    if (!d->ccg) continue;
    CcgTree tree;
    try {
      tree = ParseTree(*d->ccg);
    } catch (const Error& e) {
      throw DataError("document " + d->id + ": " + e.what());
    }
    trees.push_back({d->id, tree});
    sources.push_back({d->id, tree, StartsUpper(d->text)});
    if (d->sbn) {
      std::string why;
      if (auto graph = TryParseSbn(*d->sbn, &why)) semantics.emplace(d->id, DocSemantics{tree, *graph});
    }
  }
  if (cfg.pool_size > 0 && sources.empty()) {
    throw DataError("no training document carries a derivation tree");
  }

  std::vector<Candidate> pool;
  bool underfull = false;
  std::string provenance;
  if (cfg.pool_size > 0) {
    SubtreeIndex index = ExtractSubtrees(trees);
    SemanticLookup lookup = [&](const std::string& id) -> const DocSemantics* {
      auto it = semantics.find(id);
      return it == semantics.end() ? nullptr : &it->second;
    };
    GenerateConfig gen;
    gen.target = cfg.pool_size;
    gen.seed = cfg.seed;
    gen.workers = cfg.workers;
    gen.semantics = &lookup;
    GenerateResult result = GenerateSet(sources, index, gen);
    pool = std::move(result.candidates);
    underfull = result.underfull;
  }
  std::vector<Candidate> filtered;
  if (!pool.empty()) {
    std::vector<std::vector<std::string>> training;
    for (const Document* d : train) training.push_back(d->tokens);
    std::unique_ptr<Scorer> scorer = MakeScorer(cfg.scorer, training);
    provenance = scorer->Provenance();
    ScoreCandidates(pool, *scorer, cfg.scorer.normalization, cfg.workers);
    filtered = cfg.per_stratum ? FilterTopPerStratum(pool, cfg.fraction)
                               : FilterTop(pool, cfg.fraction);
  }
  json header = run.JsonHeader();
  header["scorer"] = provenance.empty() ? cfg.scorer.Describe() : provenance;
  header["pool"] = pool.size();
  header["filtered"] = filtered.size();
  header["underfull"] = underfull;
  WriteFileAtomic(run.OutPath("candidates.jsonl"), CandidateFile(pool, header));
  WriteFileAtomic(run.OutPath("filtered.jsonl"), CandidateFile(filtered, header));
  out << "pool\t" << pool.size() << "\nfiltered\t" << filtered.size() << "\n";
  if (underfull) out << "warning: pool is smaller than requested\n";
  return kExitOk;
}

struct PredRecord {
  std::string text;  // sbn for parse, surface text for generate
  std::optional<std::vector<std::string>> tokens;
};

std::map<std::string, PredRecord> LoadPredictions(const std::string& path,
                                                  const std::string& task) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open predictions: " + path);
  std::map<std::string, PredRecord> preds;
  std::string line;
  size_t lineno = 0;
  const char* field = task == "parse" ? "sbn" : "text";
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    auto fail = [&](const std::string& why) {
      throw DataError("predictions line " + std::to_string(lineno) + ": " + why);
    };
    if (!j.is_object()) fail("not a JSON object");
    if (j.contains("run") && !j.contains("id")) continue;
    if (!j.contains("id") || !j["id"].is_string()) fail("missing string id");
    if (!j.contains(field) || !j[field].is_string()) fail(std::string("missing ") + field);
    PredRecord r;
    r.text = j[field].get<std::string>();
    if (j.contains("tokens")) {
      if (!j["tokens"].is_array()) fail("tokens must be an array");
      r.tokens = j["tokens"].get<std::vector<std::string>>();
    }
    if (!preds.emplace(j["id"].get<std::string>(), std::move(r)).second) {
      fail("duplicate id " + j["id"].get<std::string>());
    }
  }
  return preds;
}

int CmdEval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Run run("eval", cfg);
  if (cfg.pred.empty() || cfg.gold.empty()) throw ConfigError("eval needs --pred and --gold");
  std::vector<Document> gold = LoadCorpus(cfg.gold);
  std::map<std::string, PredRecord> preds = LoadPredictions(cfg.pred, cfg.task);

  std::vector<std::string> missing, extra;
  std::set<std::string> gold_ids;
  for (const Document& d : gold) {
    gold_ids.insert(d.id);
    if (!preds.count(d.id)) missing.push_back(d.id);
  }
  for (const auto& [id, r] : preds) {
    if (!gold_ids.count(id)) extra.push_back(id);
  }
  if (!missing.empty() || !extra.empty()) {
    for (const auto& id : missing) err << "missing prediction\t" << id << "\n";
    for (const auto& id : extra) err << "unknown prediction id\t" << id << "\n";
    throw DataError("prediction ids do not match gold ids (" + std::to_string(missing.size()) +
                    " missing, " + std::to_string(extra.size()) + " unknown)");
  }

  json report = {{"run", run.JsonHeader()}, {"task", cfg.task}, {"documents", gold.size()}};
  if (cfg.task == "parse") {
    std::vector<MatchResult> results(gold.size());
    std::vector<char> well_formed(gold.size(), 0);
    std::vector<TripleSet> gold_triples(gold.size());
    for (size_t i = 0; i < gold.size(); ++i) {
      if (!gold[i].sbn) throw DataError("gold document " + gold[i].id + " has no sbn");
      std::string why;
      auto g = TryParseSbn(*gold[i].sbn, &why);
      if (!g) throw DataError("gold document " + gold[i].id + ": " + why);
      gold_triples[i] = ToTriples(*g);
    }
    ParallelFor(gold.size(), cfg.workers, [&](size_t i) {
      const std::string& text = preds.at(gold[i].id).text;
      std::string why;
      auto p = TryParseSbn(text, &why);
      if (!p) {
        results[i] = ScoreFromCounts(0, 0, gold_triples[i].size());
        return;
      }
      well_formed[i] = 1;
      SmatchOptions opts;
      opts.restarts = cfg.smatch_restarts;
      opts.seed = DeriveSeed(cfg.seed, gold[i].id);
      results[i] = SmatchF1(ToTriples(*p), gold_triples[i], opts);
    });
    size_t matched = 0, pred_total = 0, gold_total = 0, ill = 0;
    json per_doc = json::array();
    for (size_t i = 0; i < gold.size(); ++i) {
      const MatchResult& r = results[i];
      matched += r.matched;
      pred_total += r.pred_triples;
      gold_total += r.gold_triples;
      if (!well_formed[i]) ++ill;
      per_doc.push_back({{"id", gold[i].id},
                         {"well_formed", well_formed[i] != 0},
                         {"precision", r.precision},
                         {"recall", r.recall},
                         {"f1", r.f1}});
    }
    MatchResult corpus = ScoreFromCounts(matched, pred_total, gold_total);
    double err_rate = gold.empty() ? 0.0 : 100.0 * static_cast<double>(ill) / gold.size();
    report["corpus"] = {
        {"precision", corpus.precision}, {"recall", corpus.recall}, {"f1", corpus.f1}};
    report["err"] = err_rate;
    report["per_doc"] = std::move(per_doc);
    out << "f1\t" << Fixed(corpus.f1, 4) << "\nerr\t" << Fixed(err_rate, 2) << "\n";
  } else {
    std::vector<std::vector<std::string>> hyps, refs;
    for (const Document& d : gold) {
      const PredRecord& r = preds.at(d.id);
      hyps.push_back(r.tokens ? *r.tokens : TokenizeText(r.text));
      refs.push_back(d.tokens);
    }
    BleuOptions opts;
    opts.max_n = cfg.bleu_max_n;
    opts.smoothing = cfg.bleu_smoothing == "add_one" ? BleuSmoothing::kAddOne : BleuSmoothing::kNone;
    double bleu = gold.empty() ? 0.0 : CorpusBleu(hyps, refs, opts);
    report["bleu"] = bleu;
    out << "bleu\t" << Fixed(bleu, 4) << "\n";
  }
  WriteFileAtomic(run.OutPath("eval_" + cfg.task + ".json"), report.dump(2) + "\n");
  return kExitOk;
}

int CmdStats(const RunConfig& cfg, std::ostream& out) {
  Run run("stats", cfg);
  std::vector<Document> docs = LoadRequiredCorpus(cfg);
  std::string table;
  if (cfg.assignment.empty()) {
    table = StatsTable(docs, nullptr);
  } else {
    auto map = LoadOrComputeSplit(docs, cfg);
    table = StatsTable(docs, &map);
  }
  WriteFileAtomic(run.OutPath("stats.tsv"), run.CommentHeader() + table);
  out << table;
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"drskit: corpus splits, recombination and evaluation for SBN data", "drskit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, ratio, scorer_kind, scorer_cmd, method, tail;
  uint64_t seed = 0;
  int group_size = 0, workers = 0, restarts = 0;
  double fraction = 0;
  size_t pool_size = 0;
  std::string out_dir, corpus, assignment, pred, gold, task;
  bool per_stratum = false;

  auto* o_config = app.add_option("--config", config_path, "JSON run config");
  auto* o_seed = app.add_option("--seed", seed, "random seed");
  auto* o_method = app.add_option("--method", method, "systematic|random")
                       ->check(CLI::IsMember({"systematic", "random"}));
  auto* o_ratio = app.add_option("--ratio", ratio, "train:dev:test, e.g. 8:1:1");
  auto* o_group = app.add_option("--group-size", group_size, "systematic group size");
  auto* o_fraction = app.add_option("--fraction", fraction, "kept fraction of the pool");
  auto* o_scorer = app.add_option("--scorer", scorer_kind, "ngram|external")
                       ->check(CLI::IsMember({"ngram", "external"}));
  auto* o_scorer_cmd = app.add_option("--scorer-cmd", scorer_cmd, "external scorer command");
  auto* o_workers = app.add_option("--workers", workers, "worker threads");
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_corpus = app.add_option("--corpus", corpus, "corpus manifest (JSONL)");
  auto* o_assignment = app.add_option("--assignment", assignment, "split assignment file");
  auto* o_pred = app.add_option("--pred", pred, "predictions (JSONL)");
  auto* o_gold = app.add_option("--gold", gold, "gold corpus manifest");
  auto* o_task = app.add_option("--task", task, "parse|generate")
                     ->check(CLI::IsMember({"parse", "generate"}));
  auto* o_pool = app.add_option("--pool-size", pool_size, "candidates to generate");
  auto* o_tail = app.add_option("--tail", tail, "train|largest_remainder")
                     ->check(CLI::IsMember({"train", "largest_remainder"}));
  auto* o_restarts = app.add_option("--restarts", restarts, "SMATCH restarts");
  auto* o_stratum = app.add_flag("--per-stratum", per_stratum,
                                 "filter each (operation, iterations) stratum separately");

  app.add_subcommand("split", "assign documents to train/dev/test");
  app.add_subcommand("overlap", "word-overlap leakage report");
  app.add_subcommand("recombine", "generate and filter recombined candidates");
  app.add_subcommand("eval", "score predictions against gold");
  app.add_subcommand("stats", "corpus statistics");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg;
    if (o_config->count()) {
      json j;
      try {
        j = json::parse(ReadFile(config_path));
      } catch (const json::exception& e) {
        throw ConfigError("config " + config_path + ": " + e.what());
      } catch (const IoError& e) {
        throw ConfigError(e.what());
      }
      cfg.Merge(j);
    }
    if (o_seed->count()) cfg.seed = seed;
    if (o_method->count()) cfg.method = method;
    if (o_ratio->count()) {
      try {
        cfg.ratio = ParseRatio(ratio);
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
    }
    if (o_group->count()) cfg.group_size = group_size;
    if (o_fraction->count()) cfg.fraction = fraction;
    if (o_scorer->count()) {
      cfg.scorer.kind = scorer_kind == "external" ? ScorerSpec::Kind::kExternal
                                                  : ScorerSpec::Kind::kReferenceNgram;
    }
    if (o_scorer_cmd->count()) cfg.scorer.command = scorer_cmd;
    if (o_workers->count()) cfg.workers = workers;
    if (o_out->count()) cfg.out = out_dir;
    if (o_corpus->count()) cfg.corpus = corpus;
    if (o_assignment->count()) cfg.assignment = assignment;
    if (o_pred->count()) cfg.pred = pred;
    if (o_gold->count()) cfg.gold = gold;
    if (o_task->count()) cfg.task = task;
    if (o_pool->count()) cfg.pool_size = pool_size;
    if (o_tail->count()) cfg.tail = tail;
    if (o_restarts->count()) cfg.smatch_restarts = restarts;
    if (o_stratum->count()) cfg.per_stratum = per_stratum;
    cfg.Validate();

    std::string name = app.get_subcommands().front()->get_name();
    if (name == "split") return CmdSplit(cfg, out);
    if (name == "overlap") return CmdOverlap(cfg, out);
    if (name == "recombine") return CmdRecombine(cfg, out);
    if (name == "eval") return CmdEval(cfg, out, err);
    return CmdStats(cfg, out);
  } catch (const ConfigError& e) {
    err << "drskit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ScorerError& e) {
    err << "drskit: scorer: " << e.what() << "\n";
    return kExitScorer;
  } catch (const std::exception& e) {
    err << "drskit: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace drskit::cli
