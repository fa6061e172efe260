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

#include "support/synthetic.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "drskit/ccg.h"
#include "drskit/recombine.h"

namespace drskit::testing {

namespace {

const char* const kSyllables[] = {"ka", "lo", "mi", "ren", "tas", "vo", "shi", "dun",
                                  "pe", "gra", "nol", "fi", "zu", "bar", "ek", "mo"};

std::string RandomWord(Rng& rng) {
  std::string w;
  size_t n = 1 + rng.Uniform(3);
  for (size_t i = 0; i < n; ++i) w += kSyllables[rng.Uniform(std::size(kSyllables))];
  return w;
}

Document MakeDoc(std::string id, std::vector<std::string> tokens, const std::string& lang) {
  Document d;
  d.id = std::move(id);
  d.lang = lang;
  d.tokens = std::move(tokens);
  d.text = Detokenize(d.tokens);
  return d;
}

std::string DocId(const char* prefix, size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%05zu", prefix, i);
  return buf;
}

}  // namespace

std::vector<Document> LeakyCorpus(size_t docs, size_t clusters, uint64_t seed) {
  Rng rng(DeriveSeed(seed, "leaky-corpus"));
  std::vector<std::string> vocab;
  for (int i = 0; i < 600; ++i) vocab.push_back(RandomWord(rng));
  auto sentence = [&](size_t lo, size_t hi) {
    std::vector<std::string> t;
    size_t n = lo + rng.Uniform(hi - lo + 1);
    for (size_t i = 0; i < n; ++i) t.push_back(vocab[rng.Uniform(vocab.size())]);
    return t;
  };
  std::vector<std::vector<std::string>> all;
  for (size_t c = 0; c < clusters && all.size() < docs; ++c) {
    std::vector<std::string> base = sentence(5, 12);
    for (int m = 0; m < 5 && all.size() < docs; ++m) {
      std::vector<std::string> v = base;
      v[rng.Uniform(v.size())] = vocab[rng.Uniform(vocab.size())];
      v.push_back(".");
      all.push_back(std::move(v));
    }
  }
  while (all.size() < docs) {
    std::vector<std::string> v = sentence(3, 14);
    v.push_back(".");
    all.push_back(std::move(v));
  }
  rng.Shuffle(all);
  std::vector<Document> out;
  for (size_t i = 0; i < all.size(); ++i) out.push_back(MakeDoc(DocId("l", i), all[i], "en"));
  return out;
}

std::vector<Document> RandomCorpus(size_t docs, uint64_t seed, const std::string& lang) {
  Rng rng(DeriveSeed(seed, "random-corpus"));
  std::vector<Document> out;
  for (size_t i = 0; i < docs; ++i) {
    std::vector<std::string> t;
    size_t n = 2 + rng.Uniform(13);
    for (size_t k = 0; k < n; ++k) t.push_back(RandomWord(rng));
    t.push_back(".");
    out.push_back(MakeDoc(DocId(lang == "en" ? "r" : "q", i), t, lang));
  }
  return out;
}

std::string RandomSbnText(Rng& rng, size_t max_variables) {
  static const char* const kLemmas[] = {"dog.n.01", "person.n.01", "see.v.01", "time.n.08",
                                        "big.a.01"};
  static const char* const kRoles[] = {"Agent", "Theme", "Patient", "Attribute"};
  static const char* const kConstants[] = {"now", "speaker", "\"Tom\"", "3"};
  static const char* const kRelations[] = {"NEGATION", "CONTINUATION", "RESULT"};
  if (max_variables < 1) max_variables = 1;
  size_t entities = 1 + rng.Uniform(std::max<size_t>(1, max_variables - 1));
  size_t budget = max_variables - std::min(max_variables, entities + 1);
  size_t relations = budget == 0 ? 0 : rng.Uniform(std::min<size_t>(budget, 2) + 1);

  // Positions (in entity order) before which a discourse line opens a box.
  std::vector<size_t> opens;
  for (size_t r = 0; r < relations; ++r) opens.push_back(1 + rng.Uniform(entities));
  std::sort(opens.begin(), opens.end());

  std::string text;
  size_t box = 0, next_open = 0;
  for (size_t e = 0; e <= entities; ++e) {
    while (next_open < opens.size() && opens[next_open] == e) {
      ++box;
      size_t back = 1 + rng.Uniform(box);
      text += std::string(kRelations[rng.Uniform(std::size(kRelations))]) + " <" +
              std::to_string(back) + "\n";
      ++next_open;
    }
    if (e == entities) break;
    text += kLemmas[rng.Uniform(std::size(kLemmas))];
    size_t edges = rng.Uniform(3);
    for (size_t k = 0; k < edges; ++k) {
      text += std::string(" ") + kRoles[rng.Uniform(std::size(kRoles))] + " ";
      if (entities > 1 && rng.Uniform(3) != 0) {
        long target;
        do {
          target = static_cast<long>(rng.Uniform(entities));
        } while (target == static_cast<long>(e));
        long off = target - static_cast<long>(e);
        text += (off > 0 ? "+" : "") + std::to_string(off);
      } else {
        text += kConstants[rng.Uniform(std::size(kConstants))];
      }
    }
    text += "\n";
  }
  return text;
}

namespace {

struct Phrase {
  CcgTree tree;
  size_t head = 0;  // SBN node of the head noun
};

struct Lexicon {
  std::vector<std::pair<std::string, std::string>> names = {
      {"Tom", "male.n.02"}, {"Mary", "female.n.02"}, {"Anna", "female.n.02"},
      {"Bill", "male.n.02"}, {"Paris", "city.n.01"}};
  std::vector<std::string> dets = {"the", "a", "every", "this"};
  std::vector<std::string> adjs = {"big", "old", "red", "happy", "small", "strong"};
  std::vector<std::string> nouns = {"dog", "cat", "man", "woman", "car", "book",
                                    "house", "bird", "child", "letter"};
  std::vector<std::pair<std::string, std::string>> tvs = {
      {"saw", "see"}, {"liked", "like"}, {"chased", "chase"}, {"found", "find"},
      {"bought", "buy"}, {"wrote", "write"}};
  std::vector<std::pair<std::string, std::string>> ivs = {
      {"slept", "sleep"}, {"left", "leave"}, {"ran", "run"}, {"smiled", "smile"}};
  std::vector<std::pair<std::string, std::string>> preps = {
      {"in", "Location"}, {"near", "Location"}, {"with", "Instrument"}, {"after", "Time"}};
};

Category Cat(const char* s) { return ParseCategory(s); }

}  // namespace

std::vector<Document> GrammarCorpus(size_t docs, uint64_t seed) {
  Rng rng(DeriveSeed(seed, "grammar-corpus"));
  Lexicon lex;
  std::vector<Document> out;
  std::set<std::string> seen;
  size_t guard = 0;
  while (out.size() < docs && guard++ < docs * 50) {
    std::vector<std::string> sbn;  // one line per node, edges filled later
    std::vector<std::vector<std::pair<std::string, size_t>>> links;  // label -> target node

    auto add_node = [&](std::string line) {
      sbn.push_back(std::move(line));
      links.emplace_back();
      return sbn.size() - 1;
    };

    auto make_np = [&]() -> Phrase {
      if (rng.Uniform(3) == 0) {
        const auto& [name, synset] = lex.names[rng.Uniform(lex.names.size())];
        size_t node = add_node(synset + " Name \"" + name + "\"");
        return {CcgTree::Leaf(Cat("NP"), name, {node}), node};
      }
      CcgTree det = CcgTree::Leaf(Cat("NP/N"), lex.dets[rng.Uniform(lex.dets.size())]);
      std::optional<size_t> adj_node;
      std::string adj;
      if (rng.Uniform(2) == 0) {
        adj = lex.adjs[rng.Uniform(lex.adjs.size())];
        adj_node = add_node(adj + ".a.01");
      }
      const std::string& noun = lex.nouns[rng.Uniform(lex.nouns.size())];
      size_t noun_node = add_node(noun + ".n.01");
      CcgTree n = CcgTree::Leaf(Cat("N"), noun, {noun_node});
      if (adj_node) {
        links[*adj_node].emplace_back("AttributeOf", noun_node);
        n = CcgTree::Node(Cat("N"), Rule::kForwardApp,
                          CcgTree::Leaf(Cat("N/N"), adj, {*adj_node}), n);
      }
      return {CcgTree::Node(Cat("NP"), Rule::kForwardApp, det, n), noun_node};
    };

    Phrase subj = make_np();
    bool transitive = rng.Uniform(3) != 0;
    std::string verb, lemma;
    if (transitive) {
      std::tie(verb, lemma) = lex.tvs[rng.Uniform(lex.tvs.size())];
    } else {
      std::tie(verb, lemma) = lex.ivs[rng.Uniform(lex.ivs.size())];
    }
    size_t verb_node = add_node(lemma + ".v.01");
    links[verb_node].emplace_back(transitive ? "Agent" : "Theme", subj.head);
    CcgTree vp;
    if (transitive) {
      Phrase obj = make_np();
      links[verb_node].emplace_back("Patient", obj.head);
      vp = CcgTree::Node(Cat("S\\NP"), Rule::kForwardApp,
                         CcgTree::Leaf(Cat("(S\\NP)/NP"), verb, {verb_node}), obj.tree);
    } else {
      vp = CcgTree::Leaf(Cat("S\\NP"), verb, {verb_node});
    }
    if (rng.Uniform(3) == 0) {
      const auto& [prep, role] = lex.preps[rng.Uniform(lex.preps.size())];
      Phrase pobj = make_np();
      links[verb_node].emplace_back(role, pobj.head);
      CcgTree pp = CcgTree::Node(Cat("(S\\NP)\\(S\\NP)"), Rule::kForwardApp,
                                 CcgTree::Leaf(Cat("((S\\NP)\\(S\\NP))/NP"), prep), pobj.tree);
      vp = CcgTree::Node(Cat("S\\NP"), Rule::kBackwardApp, vp, pp);
    }
    size_t time_node = add_node("time.n.08 TPR now");
    links[verb_node].emplace_back("Time", time_node);

    CcgTree s = CcgTree::Node(Cat("S"), Rule::kBackwardApp, subj.tree, vp);
    CcgTree root = CcgTree::Node(Cat("S"), Rule::kGiven, s, CcgTree::Leaf(Cat("."), "."));

    std::string sbn_text;
    for (size_t i = 0; i < sbn.size(); ++i) {
      sbn_text += sbn[i];
      for (const auto& [label, target] : links[i]) {
        long off = static_cast<long>(target) - static_cast<long>(i);
        sbn_text += " " + label + " " + (off > 0 ? "+" : "") + std::to_string(off);
      }
      sbn_text += "\n";
    }
    Document d;
    d.lang = "en";
    d.tokens = root.Yield();
    d.text = RealizeText(root, true);
    if (!seen.insert(d.text).second) continue;
    d.id = DocId("g", out.size());
    d.ccg = SerializeTree(root);
    d.sbn = sbn_text;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Document> WorkedExamples() {
  struct Raw {
    const char* id;
    const char* ccg;
    const char* sbn;
  };
  static const Raw kRaw[] = {
      {"w_mary",
       R"((gen S (ba S (NP "Mary" 0) (fa S\NP ((S\NP)/NP "has" 1) (fa NP (NP/N "a") (N "dog" 2)))) (. ".")))",
       "female.n.02 Name \"Mary\"\nhave.v.01 Pivot -1 Theme +1 Time +2\ndog.n.01\ntime.n.08 EQU now\n"},
      {"w_tom",
       R"((gen S (ba S (NP "Tom" 0) (fa S\NP ((S\NP)/NP "wants" 1) (fa NP (NP/N "a") (N "cat" 2)))) (. ".")))",
       "male.n.02 Name \"Tom\"\nwant.v.01 Pivot -1 Theme +1 Time +2\ncat.n.01\ntime.n.08 EQU now\n"},
      {"w_horse",
       R"((gen S (ba S (fa NP (NP/N "The") (fa N (ba N/N (N/N "big" 0) (fa (N/N)\(N/N) (((N/N)\(N/N))/(N/N) "and") (N/N "strong" 1))) (N "horse" 2))) (S\NP "runs" 3)) (. ".")))",
       "big.a.01 AttributeOf +2\nstrong.a.01 AttributeOf +1\nhorse.n.01\nrun.v.01 Theme -1 Time +1\ntime.n.08 EQU now\n"},
      {"w_bill",
       R"((gen S (ba S (NP "Bill" 0) (fa S\NP ((S\NP)/(S\NP) "was") (ba S\NP (S\NP "killed" 1) (fa (S\NP)\(S\NP) (((S\NP)\(S\NP))/NP "by") (fa NP (NP/N "an") (N "intruder" 2)))))) (. ".")))",
       "male.n.02 Name \"Bill\"\nkill.v.01 Patient -1 Agent +1 Time +2\nintruder.n.01\ntime.n.08 TPR now\n"},
      {"w_irishman",
       R"((gen S (ba S (fa NP (NP/N "The") (N "Irishman" 0)) (S\NP "left" 1)) (. ".")))",
       "irishman.n.01\nleave.v.01 Theme -1 Time +1\ntime.n.08 TPR now\n"},
      {"w_brother",
       R"((gen S (ba S (fa NP (NP/N "My" 0) (N "brother" 1)) (fa S\NP ((S\NP)/(S[adj]\NP) "is" 2) (S[adj]\NP "rich" 3))) (. ".")))",
       "person.n.01 EQU speaker\nbrother.n.01 Of -1\ntime.n.08 EQU now\nrich.a.01 AttributeOf -2 Time -1\n"},
      {"w_boy",
       R"((gen S (ba S (fa NP (NP/N "The") (fa N (N/N "bad" 0) (N "boy" 1))) (S\NP "cried" 2)) (. ".")))",
       "bad.a.01 AttributeOf +1\nboy.n.01\ncry.v.01 Agent -1 Time +1\ntime.n.08 TPR now\n"},
  };
  std::vector<Document> out;
  for (const Raw& r : kRaw) {
    CcgTree tree = ParseTree(r.ccg);
    Document d;
    d.id = r.id;
    d.lang = "en";
    d.tokens = tree.Yield();
    d.text = RealizeText(tree, true);
    d.ccg = r.ccg;
    d.sbn = r.sbn;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace drskit::testing
