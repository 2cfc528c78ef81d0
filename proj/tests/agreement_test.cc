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

#include "ftf/agreement.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"

namespace ftf {
namespace {

using Labels = std::vector<std::optional<int>>;  // one entry per item

LabelMatrix Matrix(const std::vector<Labels>& by_annotator) {
  LabelMatrix m;
  for (std::size_t a = 0; a < by_annotator.size(); ++a) {
    for (std::size_t i = 0; i < by_annotator[a].size(); ++i) {
      if (by_annotator[a][i]) {
        m.Set("item" + std::to_string(i), "ann" + std::to_string(a), *by_annotator[a][i]);
      }
    }
  }
  return m;
}

// Brute-force alpha from the pairwise-disagreement definition: observed
// disagreement over ordered within-item pairs (weighted 1/(m-1)), expected
// disagreement over every ordered pair of pairable values.
double OracleAlpha(const std::vector<Labels>& by_annotator) {
  const std::size_t items = by_annotator.front().size();
  std::vector<int> pool;
  double d_o = 0.0;
  for (std::size_t i = 0; i < items; ++i) {
    std::vector<int> v;
    for (const auto& a : by_annotator)
      if (a[i]) v.push_back(*a[i]);
    if (v.size() < 2) continue;
    pool.insert(pool.end(), v.begin(), v.end());
    for (std::size_t x = 0; x < v.size(); ++x)
      for (std::size_t y = 0; y < v.size(); ++y)
        if (x != y && v[x] != v[y]) d_o += 1.0 / (v.size() - 1);
  }
  const double n = static_cast<double>(pool.size());
  d_o /= n;
  double d_e = 0.0;
  for (std::size_t x = 0; x < pool.size(); ++x)
    for (std::size_t y = 0; y < pool.size(); ++y)
      if (x != y && pool[x] != pool[y]) d_e += 1.0;
  d_e /= n * (n - 1.0);
  if (d_e == 0.0) return 1.0;
  return 1.0 - d_o / d_e;
}

// Two complete raters, straight from the definition.
double OracleAc1(const std::vector<int>& a, const std::vector<int>& b) {
  const double n = static_cast<double>(a.size());
  double pa = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) pa += a[i] == b[i];
  pa /= n;
  double pe = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const double pi = (std::count(a.begin(), a.end(), k) + std::count(b.begin(), b.end(), k)) / (2 * n);
    pe += pi * (1 - pi);
  }
  pe /= 4.0;
  return (pa - pe) / (1 - pe);
}

Labels L(std::initializer_list<int> v) {
  Labels out;
  for (int x : v) out.push_back(x);
  return out;
}

TEST_CASE("hand-computed values") {
  auto same = L({1, 2, 3, 4, 5, 1, 2, 3, 4, 5});
  CHECK(KrippendorffAlphaNominal(Matrix({same, same})).value == 1.0);
  CHECK(GwetAc1(Matrix({same, same})).value == 1.0);

  auto zero = Matrix({L({1, 2, 3, 4}), L({2, 3, 4, 5})});
  CHECK(KrippendorffAlphaNominal(zero).value == doctest::Approx(-0.12).epsilon(1e-12));
  CHECK(std::abs(KrippendorffAlphaNominal(zero).value -
                 OracleAlpha({L({1, 2, 3, 4}), L({2, 3, 4, 5})})) < 1e-9);

  // p_a = 3/4; pi = (3/8, 5/8); p_e = (2 * 15/64) / 4 = 15/128 -> 81/113.
  auto ac1 = GwetAc1(Matrix({L({1, 1, 2, 2}), L({1, 2, 2, 2})}));
  CHECK(std::abs(ac1.value - 81.0 / 113.0) < 1e-12);
  CHECK_FALSE(ac1.degenerate);
}

TEST_CASE("degenerate and unusable matrices") {
  auto all_ones = Matrix({L({1, 1, 1}), L({1, 1, 1})});
  auto alpha = KrippendorffAlphaNominal(all_ones);
  CHECK(alpha.value == 1.0);
  CHECK(alpha.degenerate);
  CHECK(GwetAc1(all_ones).degenerate);

  CHECK_THROWS_AS(KrippendorffAlphaNominal(Matrix({L({1, 2, 3})})), InsufficientData);
  CHECK_THROWS_AS(GwetAc1(Matrix({L({1}), L({2})})), InsufficientData);
  CHECK_THROWS_AS(KrippendorffAlphaNominal(Matrix({{1, std::nullopt}, {std::nullopt, 2}})),
                  InsufficientData);
  LabelMatrix m;
  CHECK_THROWS_AS(m.Set("i", "a", 6), std::invalid_argument);
}

TEST_CASE("exhaustive two-annotator suite up to 3 items, sampled up to 5") {
  auto check = [](const Labels& a, const Labels& b) {
    const auto m = Matrix({a, b});
    std::vector<int> av, bv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      av.push_back(*a[i]);
      bv.push_back(*b[i]);
    }
    const bool constant = std::all_of(av.begin(), av.end(), [&](int x) { return x == av[0]; }) &&
                          std::all_of(bv.begin(), bv.end(), [&](int x) { return x == av[0]; });
    REQUIRE(std::abs(KrippendorffAlphaNominal(m).value - OracleAlpha({a, b})) < 1e-9);
    REQUIRE(std::abs(GwetAc1(m).value - (constant ? 1.0 : OracleAc1(av, bv))) < 1e-9);
  };
  for (int items = 2; items <= 3; ++items) {
    int total = 1;
    for (int i = 0; i < 2 * items; ++i) total *= 5;
    for (int code = 0; code < total; ++code) {
      Labels a, b;
      int rest = code;
      for (int i = 0; i < items; ++i, rest /= 5) a.push_back(rest % 5 + 1);
      for (int i = 0; i < items; ++i, rest /= 5) b.push_back(rest % 5 + 1);
      check(a, b);
    }
  }
  std::mt19937 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int items = 4 + static_cast<int>(rng() % 2);
    Labels a, b;
    for (int i = 0; i < items; ++i) {
      a.push_back(static_cast<int>(rng() % 5) + 1);
      b.push_back(static_cast<int>(rng() % 5) + 1);
    }
    check(a, b);
  }
}

TEST_CASE("alpha with missing labels and three annotators matches the oracle") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Labels> raters(3);
    for (auto& r : raters) {
      for (int i = 0; i < 5; ++i) {
        if (rng() % 4 == 0) r.push_back(std::nullopt);
        else r.push_back(static_cast<int>(rng() % 5) + 1);
      }
    }
    const auto m = Matrix(raters);
    try {
      m.CheckUsable();
    } catch (const InsufficientData&) {
      continue;
    }
    REQUIRE(std::abs(KrippendorffAlphaNominal(m).value - OracleAlpha(raters)) < 1e-9);
  }
}

TEST_CASE("permutation and relabeling invariance, 200 trials") {
  std::mt19937 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    const int items = 2 + static_cast<int>(rng() % 30);
    const int raters = 2 + static_cast<int>(rng() % 2);
    std::vector<Labels> labels(raters);
    for (auto& r : labels)
      for (int i = 0; i < items; ++i) r.push_back(static_cast<int>(rng() % 5) + 1);
    // Guarantee at least two categories so the statistics are not degenerate.
    labels[0][0] = 1;
    labels[1][0] = 2;
    const auto base = Matrix(labels);
    const double alpha = KrippendorffAlphaNominal(base).value;
    const double ac1 = GwetAc1(base).value;

    std::vector<int> order(items);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> relabel{1, 2, 3, 4, 5};
    std::shuffle(relabel.begin(), relabel.end(), rng);

    std::vector<Labels> permuted(labels.rbegin(), labels.rend());
    for (auto& r : permuted) {
      Labels next;
      for (int i : order) next.push_back(relabel[*r[i] - 1]);
      r = next;
    }
    const auto moved = Matrix(permuted);
    REQUIRE(std::abs(KrippendorffAlphaNominal(moved).value - alpha) < 1e-12);
    REQUIRE(std::abs(GwetAc1(moved).value - ac1) < 1e-12);
  }
}

AnnotationRecord Ann(std::string item, std::string annotator, FallacyType type, int n) {
  AnnotationRecord a;
  a.argument_id = std::move(item);
  a.annotator_id = std::move(annotator);
  a.instantiation.fallacy_type = type;
  a.instantiation.template_number = n;
  return a;
}

TEST_CASE("agreement report composes per-type calls") {
  std::vector<AnnotationRecord> anns;
  std::mt19937 rng(3);
  std::map<FallacyType, std::vector<AnnotationRecord>> groups;
  for (FallacyType type : kAllFallacyTypes) {
    for (int i = 0; i < 12; ++i) {
      for (const char* who : {"a1", "a2"}) {
        auto a = Ann(std::string(ToString(type)) + std::to_string(i), who, type,
                     static_cast<int>(rng() % 5) + 1);
        anns.push_back(a);
        groups[type].push_back(a);
      }
    }
  }
  const auto report = MakeAgreementReport(anns);
  REQUIRE(report.per_type.size() == 4);
  double alpha_sum = 0.0, ac1_sum = 0.0;
  for (const auto& [type, rows] : groups) {
    const auto m = MatrixFromAnnotations(rows);
    CHECK(report.per_type.at(type).alpha.value == KrippendorffAlphaNominal(m).value);
    CHECK(report.per_type.at(type).ac1.value == GwetAc1(m).value);
    CHECK(report.per_type.at(type).items == 12);
    alpha_sum += KrippendorffAlphaNominal(m).value;
    ac1_sum += GwetAc1(m).value;
  }
  CHECK(report.macro->alpha.value == doctest::Approx(alpha_sum / 4).epsilon(1e-12));
  CHECK(report.macro->ac1.value == doctest::Approx(ac1_sum / 4).epsilon(1e-12));
  CHECK(report.pooled->alpha.value == KrippendorffAlphaNominal(MatrixFromAnnotations(anns)).value);
  CHECK(report.pooled->items == 48);

  std::vector<AnnotationRecord> single{Ann("x1", "a1", FallacyType::FalseCausality, 1),
                                       Ann("x2", "a1", FallacyType::FalseCausality, 2)};
  try {
    MakeAgreementReport(single);
    FAIL("expected InsufficientData");
  } catch (const InsufficientData& e) {
    CHECK(e.fallacy_type() == FallacyType::FalseCausality);
    CHECK(std::string(e.what()).find("false_causality") != std::string::npos);
  }
  CHECK(MakeOverlapAgreementReport(single).empty());

  // Overlap variant ignores singly annotated items.
  auto partial = anns;
  partial.push_back(Ann("lonely", "a1", FallacyType::FalseDilemma, 3));
  const auto overlap = MakeOverlapAgreementReport(partial);
  CHECK(overlap.per_type.at(FallacyType::FalseDilemma).alpha.value ==
        report.per_type.at(FallacyType::FalseDilemma).alpha.value);
}

}  // namespace
}  // namespace ftf
