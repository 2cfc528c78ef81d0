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

#include <algorithm>
#include <set>

#include "ftf/text.h"

namespace ftf {
namespace {

struct Counts {
  std::size_t n = 0;
  std::size_t template_correct = 0;
  std::size_t exact = 0;    // within X
  std::size_t partial = 0;  // within X
};

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::map<std::string, const AnnotationRecord*> IndexGold(
    std::span<const AnnotationRecord> gold) {
  if (gold.empty()) throw EmptyInput("gold set is empty");
  std::map<std::string, const AnnotationRecord*> index;
  for (const auto& g : gold) {
    if (!index.emplace(g.argument_id, &g).second) {
      throw AmbiguousInput("gold holds more than one record for argument " +
                           g.argument_id);
    }
  }
  return index;
}

std::map<std::string, const PredictionRecord*> IndexPredictions(
    std::span<const PredictionRecord> preds) {
  std::map<std::string, const PredictionRecord*> index;
  for (const auto& p : preds) {
    if (!index.emplace(p.argument_id, &p).second) {
      throw AmbiguousInput("more than one prediction for argument " +
                           p.argument_id +
                           "; evaluate one model/style/shots configuration at a time");
    }
  }
  return index;
}

const Instantiation* Parsed(const std::map<std::string, const PredictionRecord*>& preds,
                            const std::string& id) {
  auto it = preds.find(id);
  if (it == preds.end() || !it->second->parse_ok || !it->second->parsed) return nullptr;
  return &*it->second->parsed;
}

bool TemplateCorrect(const Instantiation* pred, const Instantiation& gold) {
  return pred != nullptr && pred->fallacy_type == gold.fallacy_type &&
         pred->template_number == gold.template_number;
}

std::string SlotOrEmpty(const SlotMap& slots, SlotRole role) {
  auto it = slots.find(role);
  return it == slots.end() ? std::string() : it->second;
}

std::set<SlotRole> RoleUnion(const SlotMap& a, const SlotMap& b) {
  std::set<SlotRole> roles;
  for (const auto& [role, value] : a) roles.insert(role);
  for (const auto& [role, value] : b) roles.insert(role);
  return roles;
}

struct Tally {
  std::map<FallacyType, Counts> per_type;
  std::vector<std::string> x_ids, y_exact_ids, y_partial_ids;
  std::vector<std::string> x_exact_ids, x_partial_ids;
};

Tally Count(std::span<const PredictionRecord> preds,
            std::span<const AnnotationRecord> gold, OverlapMode overlap) {
  const auto gold_index = IndexGold(gold);
  const auto pred_index = IndexPredictions(preds);
  Tally tally;
  for (const auto& [id, g] : gold_index) {
    const Instantiation& gi = g->instantiation;
    Counts& c = tally.per_type[gi.fallacy_type];
    ++c.n;
    const Instantiation* p = Parsed(pred_index, id);
    const bool in_x = TemplateCorrect(p, gi);
    const bool exact = p != nullptr && SlotsExactMatch(p->slots, gi.slots);
    const bool partial = p != nullptr && SlotsPartialMatch(p->slots, gi.slots, overlap);
    if (in_x) {
      ++c.template_correct;
      tally.x_ids.push_back(id);
    }
    if (exact) tally.y_exact_ids.push_back(id);
    if (partial) tally.y_partial_ids.push_back(id);
    if (in_x && exact) {
      ++c.exact;
      tally.x_exact_ids.push_back(id);
    }
    if (in_x && partial) {
      ++c.partial;
      tally.x_partial_ids.push_back(id);
    }
  }
  return tally;
}

MetricBundle Bundle(double ts, double sf_exact, double sf_partial, std::size_t n) {
  MetricBundle b;
  b.ts_accuracy = ts;
  b.sf_exact = sf_exact;
  b.sf_partial = sf_partial;
  b.joint_exact = JointAccuracy(ts, sf_exact);
  b.joint_partial = JointAccuracy(ts, sf_partial);
  b.n = n;
  return b;
}

template <typename Map>
double MacroMean(const Map& per_type) {
  if (per_type.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [type, value] : per_type) sum += value;
  return sum / static_cast<double>(per_type.size());
}

std::string EmptyXWarning(FallacyType type) {
  return "no template-correct predictions for " + std::string(ToString(type)) +
         "; slot-filling accuracy reported as 0";
}

}  // namespace

std::string_view ToString(OverlapMode mode) {
  return mode == OverlapMode::Recall ? "recall" : "jaccard";
}

OverlapMode ParseOverlapMode(std::string_view text) {
  if (text == "recall") return OverlapMode::Recall;
  if (text == "jaccard") return OverlapMode::Jaccard;
  throw UnknownValueError("unknown overlap mode", std::string(text));
}

double WordOverlap(std::string_view pred, std::string_view gold, OverlapMode mode) {
  auto p = Tokenize(pred);
  auto g = Tokenize(gold);
  if (g.empty()) return p.empty() ? 1.0 : 0.0;
  std::sort(p.begin(), p.end());
  std::sort(g.begin(), g.end());
  std::vector<std::string> shared;
  std::set_intersection(p.begin(), p.end(), g.begin(), g.end(),
                        std::back_inserter(shared));
  if (mode == OverlapMode::Recall) return Ratio(shared.size(), g.size());
  const std::size_t union_size = p.size() + g.size() - shared.size();
  return Ratio(shared.size(), union_size);
}

bool SlotsExactMatch(const SlotMap& pred, const SlotMap& gold) {
  for (SlotRole role : RoleUnion(pred, gold)) {
    if (NormalizeForMatch(SlotOrEmpty(pred, role)) !=
        NormalizeForMatch(SlotOrEmpty(gold, role))) {
      return false;
    }
  }
  return true;
}

bool SlotsPartialMatch(const SlotMap& pred, const SlotMap& gold, OverlapMode mode) {
  for (SlotRole role : RoleUnion(pred, gold)) {
    if (!(WordOverlap(SlotOrEmpty(pred, role), SlotOrEmpty(gold, role), mode) > 0.5)) {
      return false;
    }
  }
  return true;
}

double JointAccuracy(double ts_rate, double sf_rate) {
  if (!(ts_rate >= 0.0 && ts_rate <= 1.0) || !(sf_rate >= 0.0 && sf_rate <= 1.0)) {
    throw std::invalid_argument("accuracies must lie in [0, 1]");
  }
  return ts_rate * sf_rate;
}

Rates TemplateSelectionAccuracy(std::span<const PredictionRecord> preds,
                                std::span<const AnnotationRecord> gold) {
  const Tally tally = Count(preds, gold, OverlapMode::Recall);
  Rates rates;
  std::size_t n = 0, correct = 0;
  for (const auto& [type, c] : tally.per_type) {
    rates.per_type[type] = Ratio(c.template_correct, c.n);
    n += c.n;
    correct += c.template_correct;
  }
  rates.overall = MacroMean(rates.per_type);
  rates.pooled = Ratio(correct, n);
  return rates;
}

SlotFillingResult SlotFillingAccuracy(std::span<const PredictionRecord> preds,
                                      std::span<const AnnotationRecord> gold,
                                      MatchMode mode, OverlapMode overlap) {
  const Tally tally = Count(preds, gold, overlap);
  SlotFillingResult result;
  std::size_t x = 0, xy = 0;
  for (const auto& [type, c] : tally.per_type) {
    const std::size_t hits = mode == MatchMode::Exact ? c.exact : c.partial;
    if (c.template_correct == 0) result.warnings.push_back(EmptyXWarning(type));
    result.rates.per_type[type] = Ratio(hits, c.template_correct);
    x += c.template_correct;
    xy += hits;
  }
  result.rates.overall = MacroMean(result.rates.per_type);
  result.rates.pooled = Ratio(xy, x);
  result.x_ids = tally.x_ids;
  result.y_ids = mode == MatchMode::Exact ? tally.y_exact_ids : tally.y_partial_ids;
  result.x_and_y_ids = mode == MatchMode::Exact ? tally.x_exact_ids : tally.x_partial_ids;
  return result;
}

EvalReport Evaluate(std::span<const PredictionRecord> preds,
                    std::span<const AnnotationRecord> gold,
                    const EvalOptions& options) {
  const Tally tally = Count(preds, gold, options.overlap);
  EvalReport report;
  Counts total;
  std::map<FallacyType, double> ts, sf_exact, sf_partial;
  for (const auto& [type, c] : tally.per_type) {
    if (c.template_correct == 0) report.warnings.push_back(EmptyXWarning(type));
    ts[type] = Ratio(c.template_correct, c.n);
    sf_exact[type] = Ratio(c.exact, c.template_correct);
    sf_partial[type] = Ratio(c.partial, c.template_correct);
    report.per_type[type] = Bundle(ts[type], sf_exact[type], sf_partial[type], c.n);
    total.n += c.n;
    total.template_correct += c.template_correct;
    total.exact += c.exact;
    total.partial += c.partial;
  }
  report.overall = Bundle(MacroMean(ts), MacroMean(sf_exact), MacroMean(sf_partial),
                          total.n);
  report.pooled = Bundle(Ratio(total.template_correct, total.n),
                         Ratio(total.exact, total.template_correct),
                         Ratio(total.partial, total.template_correct), total.n);
  report.correct_template_set_size = total.template_correct;
  report.exact_match_set_size = total.exact;
  report.partial_match_set_size = total.partial;
  return report;
}

CoverageReport Coverage(std::span<const AnnotationRecord> annotations) {
  if (annotations.empty()) throw EmptyInput("no annotations to compute coverage on");
  struct Acc {
    std::map<FallacyType, std::pair<std::size_t, std::size_t>> per_type;  // covered, n
  };
  auto finish = [](const Acc& acc) {
    CoverageBreakdown out;
    std::size_t covered = 0, n = 0;
    for (const auto& [type, counts] : acc.per_type) {
      out.per_type[type] = Ratio(counts.first, counts.second);
      covered += counts.first;
      n += counts.second;
    }
    out.overall = MacroMean(out.per_type);
    out.pooled = Ratio(covered, n);
    out.n = n;
    return out;
  };
  Acc all;
  std::map<std::string, Acc> by_annotator;
  for (const auto& a : annotations) {
    const bool covered = a.instantiation.template_number != kCatchAllTemplate;
    for (Acc* acc : {&all, &by_annotator[a.annotator_id]}) {
      auto& counts = acc->per_type[a.instantiation.fallacy_type];
      counts.first += covered ? 1 : 0;
      ++counts.second;
    }
  }
  CoverageReport report;
  report.all = finish(all);
  for (const auto& [annotator, acc] : by_annotator) {
    report.per_annotator[annotator] = finish(acc);
  }
  return report;
}

}  // namespace ftf
