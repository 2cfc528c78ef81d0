// Copyright 2026 The FtF Toolkit Authors.
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

#include "ftf/metrics.h"

#include <array>
#include <cctype>
#include <cmath>
#include <random>

#include "doctest.h"
#include "ftf/text.h"

namespace ftf {
namespace {

AnnotationRecord Gold(std::string id, FallacyType type, int number, SlotMap slots,
                      std::string annotator = "gold") {
  AnnotationRecord a;
  a.argument_id = std::move(id);
  a.annotator_id = std::move(annotator);
  a.instantiation = {type, number, std::move(slots)};
  return a;
}

PredictionRecord Pred(std::string id, std::optional<Instantiation> parsed) {
  PredictionRecord p;
  p.argument_id = std::move(id);
  p.model_id = "mock";
  p.parse_ok = parsed.has_value();
  p.parsed = std::move(parsed);
  return p;
}

std::string ToUpper(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

// ---- Independent per-item oracle. Deliberately naive: no shared helpers
// with the library beyond Tokenize, and a different overlap computation.

double OracleOverlap(const std::string& pred, const std::string& gold) {
  auto g = Tokenize(gold);
  auto p = Tokenize(pred);
  if (g.empty()) return p.empty() ? 1.0 : 0.0;
  std::vector<bool> used(p.size(), false);
  int shared = 0;
  for (const auto& tok : g) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!used[i] && p[i] == tok) {
        used[i] = true;
        ++shared;
        break;
      }
    }
  }
  return static_cast<double>(shared) / static_cast<double>(g.size());
}

std::string OracleNorm(const std::string& s) {
  std::string out;
  bool space = false;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

struct OracleItem {
  bool in_x = false, exact = false, partial = false;
};

OracleItem OracleJudge(const PredictionRecord* p, const AnnotationRecord& g) {
  OracleItem item;
  if (p == nullptr || !p->parse_ok) return item;
  const Instantiation& pi = *p->parsed;
  item.in_x = pi.fallacy_type == g.instantiation.fallacy_type &&
              pi.template_number == g.instantiation.template_number;
  item.exact = true;
  item.partial = true;
  for (SlotRole role : kAllSlotRoles) {
    auto pit = pi.slots.find(role);
    auto git = g.instantiation.slots.find(role);
    if (pit == pi.slots.end() && git == g.instantiation.slots.end()) continue;
    std::string pv = pit == pi.slots.end() ? "" : pit->second;
    std::string gv = git == g.instantiation.slots.end() ? "" : git->second;
    if (OracleNorm(pv) != OracleNorm(gv)) item.exact = false;
    if (!(OracleOverlap(pv, gv) > 0.5)) item.partial = false;
  }
  return item;
}

struct OracleResult {
  std::map<FallacyType, double> ts, sf_exact, sf_partial;
  double macro_ts = 0, macro_exact = 0, macro_partial = 0;
  double pooled_ts = 0, pooled_exact = 0;
  std::size_t x = 0, xy_exact = 0, xy_partial = 0;
  std::vector<std::string> x_ids, y_exact_ids;
};

OracleResult Oracle(const std::vector<PredictionRecord>& preds,
                    const std::vector<AnnotationRecord>& gold) {
  std::map<FallacyType, std::array<int, 4>> c;  // n, x, exact, partial
  OracleResult r;
  std::size_t n = 0;
  std::vector<const AnnotationRecord*> sorted;
  for (const auto& g : gold) sorted.push_back(&g);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->argument_id < b->argument_id; });
  for (const auto* g : sorted) {
    const PredictionRecord* p = nullptr;
    for (const auto& cand : preds) {
      if (cand.argument_id == g->argument_id) p = &cand;
    }
    OracleItem item = OracleJudge(p, *g);
    auto& k = c[g->instantiation.fallacy_type];
    ++k[0];
    ++n;
    if (item.in_x) {
      ++k[1];
      ++r.x;
      r.x_ids.push_back(g->argument_id);
    }
    if (item.exact) r.y_exact_ids.push_back(g->argument_id);
    if (item.in_x && item.exact) ++k[2], ++r.xy_exact;
    if (item.in_x && item.partial) ++k[3], ++r.xy_partial;
  }
  for (const auto& [type, k] : c) {
    r.ts[type] = static_cast<double>(k[1]) / k[0];
    r.sf_exact[type] = k[1] == 0 ? 0.0 : static_cast<double>(k[2]) / k[1];
    r.sf_partial[type] = k[1] == 0 ? 0.0 : static_cast<double>(k[3]) / k[1];
    r.macro_ts += r.ts[type];
    r.macro_exact += r.sf_exact[type];
    r.macro_partial += r.sf_partial[type];
  }
  r.macro_ts /= static_cast<double>(c.size());
  r.macro_exact /= static_cast<double>(c.size());
  r.macro_partial /= static_cast<double>(c.size());
  r.pooled_ts = static_cast<double>(r.x) / n;
  r.pooled_exact = r.x == 0 ? 0.0 : static_cast<double>(r.xy_exact) / r.x;
  return r;
}

// Candidate predictions for a gold item, covering every branch: missing,
// parse failure, wrong template, wrong type, right template with exact /
// partial / wrong / extra slots, and case variants.
std::vector<std::optional<PredictionRecord>> Candidates(const AnnotationRecord& g) {
  const auto& gi = g.instantiation;
  std::vector<std::optional<PredictionRecord>> out;
  out.push_back(std::nullopt);
  out.push_back(Pred(g.argument_id, std::nullopt));
  out.push_back(Pred(g.argument_id, gi));
  Instantiation wrong = gi;
  wrong.template_number = gi.template_number == 5 ? 1 : 5;
  if (wrong.template_number == 5) wrong.slots.clear();
  else wrong.slots = {{SlotRole::A, "x"}, {SlotRole::C, "y"}};
  out.push_back(Pred(g.argument_id, wrong));
  Instantiation shouted = gi;
  for (auto& [role, value] : shouted.slots) value = "  " + ToUpper(value) + " ";
  out.push_back(Pred(g.argument_id, shouted));
  Instantiation partial = gi;
  for (auto& [role, value] : partial.slots) value = "the " + value;
  out.push_back(Pred(g.argument_id, partial));
  Instantiation extra = gi;
  extra.slots[SlotRole::CPrime] = "more";
  out.push_back(Pred(g.argument_id, extra));
  return out;
}

TEST_CASE("word overlap examples") {
  CHECK(WordOverlap("cut taxes", "cut taxes") == 1.0);
  CHECK(WordOverlap("taxes", "cut taxes") == 0.5);
  CHECK(WordOverlap("huge debt", "leave a huge debt for our children") ==
        doctest::Approx(2.0 / 7.0).epsilon(1e-15));
  CHECK(WordOverlap("", "") == 1.0);
  CHECK(WordOverlap("x", "") == 0.0);
  CHECK(WordOverlap("Cut TAXES!", "cut taxes") == 1.0);
  CHECK(WordOverlap("taxes taxes", "taxes") == 1.0);
  CHECK(WordOverlap("taxes", "taxes taxes") == 0.5);
  CHECK(WordOverlap("ban hairspray", "hairspray", OverlapMode::Jaccard) == 0.5);
  CHECK(WordOverlap("ban hairspray", "hairspray", OverlapMode::Recall) == 1.0);
  CHECK(ParseOverlapMode("jaccard") == OverlapMode::Jaccard);
  CHECK_THROWS_AS(ParseOverlapMode("cosine"), UnknownValueError);
}

TEST_CASE("slot matching") {
  SlotMap gold{{SlotRole::A, "cut taxes"}, {SlotRole::C, "leave a huge debt for our children"}};
  CHECK(SlotsExactMatch(gold, gold));
  CHECK(SlotsExactMatch({{SlotRole::A, "Cut  Taxes"}, {SlotRole::C, "leave a huge debt for our children"}},
                        gold));
  CHECK_FALSE(SlotsExactMatch({{SlotRole::A, "cut taxes"}}, gold));
  CHECK(SlotsExactMatch({}, {}));
  // Exactly half is not "over 50%".
  CHECK_FALSE(SlotsPartialMatch({{SlotRole::A, "taxes"}, {SlotRole::C, "leave a huge debt for our children"}},
                                gold));
  CHECK(SlotsPartialMatch({{SlotRole::A, "cut taxes now"}, {SlotRole::C, "a huge debt for our children"}},
                          gold));
}

TEST_CASE("joint accuracy") {
  CHECK(JointAccuracy(0.47, 0.23) == doctest::Approx(0.1081).epsilon(1e-12));
  CHECK(std::round(JointAccuracy(0.47, 0.23) * 100) / 100 == doctest::Approx(0.11));
  CHECK(JointAccuracy(0.3, 0) == 0.0);
  CHECK(JointAccuracy(1, 1) == 1.0);
  CHECK_THROWS_AS(JointAccuracy(1.2, 0.5), std::invalid_argument);
}

TEST_CASE("template selection examples") {
  std::vector<AnnotationRecord> gold;
  std::vector<PredictionRecord> preds;
  for (int i = 0; i < 20; ++i) {
    std::string id = "i" + std::to_string(i);
    gold.push_back(Gold(id, FallacyType::FalseDilemma, 5, {}));
    preds.push_back(Pred(id, Instantiation{FallacyType::FalseDilemma, i < 9 ? 5 : 1,
                                           i < 9 ? SlotMap{} : SlotMap{{SlotRole::A, "a"}, {SlotRole::C, "c"}}}));
  }
  CHECK(TemplateSelectionAccuracy(preds, gold).overall == doctest::Approx(0.45));
  for (auto& p : preds) {
    p.parse_ok = false;
    p.parsed.reset();
  }
  CHECK(TemplateSelectionAccuracy(preds, gold).overall == 0.0);
  CHECK(TemplateSelectionAccuracy({}, gold).pooled == 0.0);
  CHECK_THROWS_AS(TemplateSelectionAccuracy(preds, std::vector<AnnotationRecord>{}), EmptyInput);
  preds.push_back(preds.front());
  CHECK_THROWS_AS(TemplateSelectionAccuracy(preds, gold), AmbiguousInput);
}

TEST_CASE("slot filling examples") {
  SlotMap taxes{{SlotRole::A, "cut taxes"}, {SlotRole::C, "leave a huge debt for our children"}};
  std::vector<AnnotationRecord> gold{
      Gold("a", FallacyType::FalseDilemma, 2, taxes),
      Gold("b", FallacyType::FalseDilemma, 2, taxes),
      Gold("c", FallacyType::FalseDilemma, 5, {}),
  };
  std::vector<PredictionRecord> preds{
      Pred("a", Instantiation{FallacyType::FalseDilemma, 2, taxes}),
      Pred("b", Instantiation{FallacyType::FalseDilemma, 1, taxes}),
      Pred("c", Instantiation{FallacyType::FalseDilemma, 5, {}}),
  };
  auto sf = SlotFillingAccuracy(preds, gold, MatchMode::Exact);
  CHECK(sf.x_ids == std::vector<std::string>{"a", "c"});
  CHECK(sf.y_ids == std::vector<std::string>{"a", "b", "c"});
  CHECK(sf.x_and_y_ids == std::vector<std::string>{"a", "c"});
  CHECK(sf.rates.pooled == 1.0);
  CHECK(sf.warnings.empty());

  std::vector<PredictionRecord> none;
  auto empty_x = SlotFillingAccuracy(none, gold, MatchMode::Partial);
  CHECK(empty_x.rates.overall == 0.0);
  CHECK(empty_x.warnings.size() == 1);
}

TEST_CASE("coverage") {
  std::vector<AnnotationRecord> anns;
  int i = 0;
  for (int n : {1, 2, 5, 3}) {
    anns.push_back(Gold("x" + std::to_string(i++), FallacyType::FalseCausality, n,
                        n == 5 ? SlotMap{} : SlotMap{{SlotRole::A, "a"}, {SlotRole::C, "c"}}));
  }
  auto cov = Coverage(anns);
  CHECK(cov.all.pooled == 0.75);
  CHECK(cov.all.overall == 0.75);
  for (auto& a : anns) a.instantiation = {FallacyType::FalseCausality, 5, {}};
  CHECK(Coverage(anns).all.pooled == 0.0);
  CHECK_THROWS_AS(Coverage({}), EmptyInput);

  // Annotator 2 row: per-type cells from 100-item groups, macro = 0.865.
  std::vector<AnnotationRecord> a2;
  const std::array<int, 4> covered{91, 76, 96, 83};
  for (std::size_t t = 0; t < 4; ++t) {
    for (int k = 0; k < 100; ++k) {
      const bool c = k < covered[t];
      a2.push_back(Gold("t" + std::to_string(t) + "-" + std::to_string(k), kAllFallacyTypes[t],
                        c ? 1 : 5, c ? SlotMap{{SlotRole::A, "a"}} : SlotMap{}, "annotator-2"));
    }
  }
  auto rep = Coverage(a2);
  const auto& row = rep.per_annotator.at("annotator-2");
  CHECK(row.per_type.at(FallacyType::FalseDilemma) == doctest::Approx(0.91));
  CHECK(row.overall == doctest::Approx(0.865).epsilon(1e-12));
  CHECK(row.n == 400);
  for (const auto& [type, v] : row.per_type) {
    std::size_t fives = 0, n = 0;
    for (const auto& a : a2) {
      if (a.instantiation.fallacy_type != type) continue;
      ++n;
      fives += a.instantiation.template_number == 5;
    }
    CHECK(v + static_cast<double>(fives) / n == 1.0);
  }
}

TEST_CASE("exhaustive oracle equality over small prediction sets") {
  SlotMap taxes{{SlotRole::A, "cut taxes"}, {SlotRole::C, "leave a huge debt for our children"}};
  SlotMap garage{{SlotRole::A, "leaving the garage door open"},
                 {SlotRole::C, "break-ins"},
                 {SlotRole::APrime, "the neighbours"}};
  SlotMap cred{{SlotRole::A, "vaccines"}, {SlotRole::C, "autism"}, {SlotRole::X, "my friend"}};
  std::vector<AnnotationRecord> gold{
      Gold("g1", FallacyType::FalseDilemma, 2, taxes),
      Gold("g2", FallacyType::FaultyGeneralization, 2, garage),
      Gold("g3", FallacyType::FallacyOfCredibility, 5, {}),
      Gold("g4", FallacyType::FallacyOfCredibility, 4, cred),
  };
  std::vector<std::vector<std::optional<PredictionRecord>>> options;
  for (const auto& g : gold) options.push_back(Candidates(g));

  std::size_t combos = 1;
  for (const auto& o : options) combos *= o.size();
  for (std::size_t code = 0; code < combos; ++code) {
    std::vector<PredictionRecord> preds;
    std::size_t rest = code;
    for (const auto& o : options) {
      const auto& choice = o[rest % o.size()];
      rest /= o.size();
      if (choice) preds.push_back(*choice);
    }
    const OracleResult want = Oracle(preds, gold);
    const EvalReport got = Evaluate(preds, gold);
    REQUIRE(got.correct_template_set_size == want.x);
    REQUIRE(got.exact_match_set_size == want.xy_exact);
    REQUIRE(got.partial_match_set_size == want.xy_partial);
    REQUIRE(got.overall.ts_accuracy == want.macro_ts);
    REQUIRE(got.overall.sf_exact == want.macro_exact);
    REQUIRE(got.overall.sf_partial == want.macro_partial);
    REQUIRE(got.pooled.ts_accuracy == want.pooled_ts);
    REQUIRE(got.pooled.sf_exact == want.pooled_exact);
    for (const auto& [type, b] : got.per_type) {
      REQUIRE(b.ts_accuracy == want.ts.at(type));
      REQUIRE(b.sf_exact == want.sf_exact.at(type));
      REQUIRE(std::abs(b.joint_exact - b.ts_accuracy * b.sf_exact) <= 1e-12);
      REQUIRE(std::abs(b.joint_partial - b.ts_accuracy * b.sf_partial) <= 1e-12);
      REQUIRE(b.joint_exact <= b.ts_accuracy);
      REQUIRE(b.joint_exact <= b.sf_exact);
    }
    REQUIRE(std::abs(got.overall.joint_exact - want.macro_ts * want.macro_exact) <= 1e-12);
    std::size_t n = 0;
    for (const auto& [type, b] : got.per_type) n += b.n;
    REQUIRE(n == got.overall.n);

    auto sf = SlotFillingAccuracy(preds, gold, MatchMode::Exact);
    REQUIRE(sf.x_ids == want.x_ids);
    REQUIRE(sf.y_ids == want.y_exact_ids);
    auto partial = SlotFillingAccuracy(preds, gold, MatchMode::Partial);
    for (const auto& id : sf.y_ids) {
      REQUIRE(std::find(partial.y_ids.begin(), partial.y_ids.end(), id) != partial.y_ids.end());
    }
    REQUIRE(TemplateSelectionAccuracy(preds, gold).overall == want.macro_ts);
  }
}

TEST_CASE("per-type partitions merge to the single-pass result") {
  std::mt19937 rng(11);
  std::vector<AnnotationRecord> gold;
  std::vector<PredictionRecord> preds;
  for (int i = 0; i < 40; ++i) {
    FallacyType type = kAllFallacyTypes[i % 4];
    std::string id = "m" + std::to_string(i);
    int gn = static_cast<int>(rng() % 5) + 1;
    SlotMap slots = gn == 5 ? SlotMap{} : SlotMap{{SlotRole::A, "alpha beta"}, {SlotRole::C, "gamma"}};
    gold.push_back(Gold(id, type, gn, slots));
    int pn = static_cast<int>(rng() % 5) + 1;
    preds.push_back(Pred(id, Instantiation{type, pn, pn == 5 ? SlotMap{} : slots}));
  }
  EvalReport whole = Evaluate(preds, gold);
  for (FallacyType type : kAllFallacyTypes) {
    std::vector<AnnotationRecord> g;
    for (const auto& a : gold)
      if (a.instantiation.fallacy_type == type) g.push_back(a);
    EvalReport part = Evaluate(preds, g);
    CHECK(part.per_type.at(type).ts_accuracy == whole.per_type.at(type).ts_accuracy);
    CHECK(part.per_type.at(type).sf_exact == whole.per_type.at(type).sf_exact);
  }
  // Letter case of predicted text never moves SF.
  for (auto& p : preds)
    if (p.parsed)
      for (auto& [role, v] : p.parsed->slots) v = ToUpper(v);
  EvalReport upper = Evaluate(preds, gold);
  CHECK(upper.overall.sf_exact == whole.overall.sf_exact);
  CHECK(upper.overall.sf_partial == whole.overall.sf_partial);
}

}  // namespace
}  // namespace ftf
