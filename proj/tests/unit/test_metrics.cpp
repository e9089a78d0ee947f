#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bodyshape/metrics.hpp"
#include "bodyshape/rng.hpp"

using namespace bodyshape;
using namespace bodyshape::eval;

namespace {

ConfusionMatrix from_rows(const std::vector<std::vector<std::size_t>>& rows) {
  ConfusionMatrix cm(rows.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t p = 0; p < rows.size(); ++p) cm.at(a, p) = rows[a][p];
  }
  return cm;
}

// Count-level reconstruction of the Inception v3 test split: the only
// integer matrix consistent with every displayed report value.
ConfusionMatrix inception_matrix() {
  return from_rows({{12, 4, 1, 0, 0},
                    {9, 75, 19, 36, 2},
                    {0, 22, 13, 15, 9},
                    {0, 20, 10, 79, 3},
                    {0, 0, 0, 12, 7}});
}

std::string squeeze_spaces(const std::string& text) {
  std::string out;
  bool in_space = false;
  for (char c : text) {
    if (c == ' ') {
      if (!in_space && !out.empty() && out.back() != '\n') out.push_back(' ');
      in_space = true;
    } else {
      out.push_back(c);
      in_space = false;
    }
  }
  return out;
}

ConfusionMatrix random_matrix(SplitMix64& rng) {
  ConfusionMatrix cm(5);
  for (std::size_t& c : cm.counts) c = rng.next_below(20);
  if (cm.total() == 0) cm.at(0, 0) = 1;
  return cm;
}

}  // namespace

TEST_CASE("confusion matrix counts actual rows against predicted columns") {
  const ConfusionMatrix identity = confusion_matrix({0, 1, 2, 3, 4}, {0, 1, 2, 3, 4});
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t p = 0; p < 5; ++p) CHECK(identity.at(a, p) == (a == p ? 1 : 0));
  }

  const ConfusionMatrix empty = confusion_matrix({}, {});
  CHECK(empty.total() == 0);

  const ConfusionMatrix hand = confusion_matrix({0, 0, 1}, {0, 1, 1});
  CHECK(hand.at(0, 0) == 1);
  CHECK(hand.at(0, 1) == 1);
  CHECK(hand.at(1, 1) == 1);
  CHECK(hand.row_sum(0) == 2);
  CHECK(hand.col_sum(1) == 2);

  CHECK_THROWS_AS(confusion_matrix({0}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(confusion_matrix({5}, {0}), std::invalid_argument);
}

TEST_CASE("the low-precision high-recall row reproduces its displayed f1") {
  // Class 2 engineered to display precision 0.19 and recall 0.76; the
  // full-precision f1 is 90/290 = 0.3103, which prints as 0.31.
  const ConfusionMatrix cm = from_rows({{0, 0, 17, 0, 0},
                                        {11, 11, 107, 10, 2},
                                        {0, 14, 45, 0, 0},
                                        {0, 0, 50, 62, 0},
                                        {0, 2, 12, 2, 3}});
  const ClassificationReport rep = report(cm);
  CHECK(round2(rep.per_class[2].precision) == doctest::Approx(0.19));
  CHECK(round2(rep.per_class[2].recall) == doctest::Approx(0.76));
  CHECK(rep.per_class[2].f1 == doctest::Approx(90.0 / 290.0).epsilon(1e-12));
  CHECK(std::abs(rep.per_class[2].f1 - 0.31) <= 0.005);
  CHECK(rep.per_class[2].support == 59);
}

TEST_CASE("class-3 recall of the residual-network row") {
  const ConfusionMatrix cm = from_rows({{8, 5, 1, 2, 1},
                                        {25, 79, 18, 14, 5},
                                        {5, 32, 6, 14, 2},
                                        {2, 23, 5, 63, 19},
                                        {0, 2, 1, 9, 5}});
  const ClassificationReport rep = report(cm);
  CHECK(rep.per_class[3].recall == doctest::Approx(63.0 / 112.0).epsilon(1e-12));
  CHECK(std::abs(rep.per_class[3].recall - 0.56) <= 0.005);
  CHECK(rep.per_class[3].support == 112);
}

TEST_CASE("the inception report reproduces every displayed value") {
  const ClassificationReport rep = report(inception_matrix());

  const double want_p[5] = {0.57, 0.62, 0.30, 0.56, 0.33};
  const double want_r[5] = {0.71, 0.53, 0.22, 0.71, 0.37};
  const double want_f[5] = {0.63, 0.57, 0.25, 0.62, 0.35};
  const std::size_t want_s[5] = {17, 141, 59, 112, 19};
  for (std::size_t c = 0; c < 5; ++c) {
    CHECK(round2(rep.per_class[c].precision) == doctest::Approx(want_p[c]));
    CHECK(round2(rep.per_class[c].recall) == doctest::Approx(want_r[c]));
    CHECK(round2(rep.per_class[c].f1) == doctest::Approx(want_f[c]));
    CHECK(rep.per_class[c].support == want_s[c]);
  }
  CHECK(rep.total == 348);
  CHECK(round2(rep.accuracy) == doctest::Approx(0.53));
  CHECK(round2(rep.macro_avg.precision) == doctest::Approx(0.48));
  CHECK(round2(rep.macro_avg.recall) == doctest::Approx(0.51));
  CHECK(round2(rep.macro_avg.f1) == doctest::Approx(0.49));
  CHECK(round2(rep.weighted_avg.precision) == doctest::Approx(0.53));
  CHECK(round2(rep.weighted_avg.recall) == doctest::Approx(0.53));
  CHECK(round2(rep.weighted_avg.f1) == doctest::Approx(0.53));
  CHECK(std::abs(rep.weighted_avg.f1 - 0.53) <= 0.005);
}

TEST_CASE("text rendering carries the accuracy line") {
  const std::string text = render_report_text(report(inception_matrix()));
  CHECK(squeeze_spaces(text).find("accuracy 0.53 348") != std::string::npos);
  CHECK(text.find("weighted avg") != std::string::npos);
  CHECK(text.find("InvertedTriangle") != std::string::npos);
}

TEST_CASE("a perfect report renders as all ones") {
  const ConfusionMatrix cm = confusion_matrix({0, 1, 2, 3, 4}, {0, 1, 2, 3, 4});
  const std::string text = render_report_text(report(cm));
  const std::string squeezed = squeeze_spaces(text);
  CHECK(squeezed.find("Apple 1.00 1.00 1.00 1") != std::string::npos);
  CHECK(squeezed.find("accuracy 1.00 5") != std::string::npos);
}

TEST_CASE("JSON rounded values agree with independently rounding full precision") {
  const std::string doc_text = render_report_json(report(inception_matrix()));
  const auto doc = nlohmann::json::parse(doc_text);

  CHECK(doc["rounded"]["accuracy"].get<double>() ==
        doctest::Approx(round2(doc["accuracy"].get<double>())));
  for (std::size_t c = 0; c < 5; ++c) {
    for (const char* key : {"precision", "recall", "f1"}) {
      const double full = doc["per_class"][c][key].get<double>();
      const double rounded = doc["rounded"]["per_class"][c][key].get<double>();
      CHECK(rounded == doctest::Approx(round2(full)));
    }
  }
  CHECK(doc["classes"][2].get<std::string>() == "InvertedTriangle");
  CHECK(doc["total"].get<std::size_t>() == 348);
}

TEST_CASE("zero columns and rows yield zero metrics") {
  // One class never predicted and never present.
  const ConfusionMatrix cm = from_rows({{3, 0, 0, 0, 0},
                                        {1, 2, 0, 0, 0},
                                        {0, 0, 0, 0, 0},
                                        {0, 1, 0, 2, 0},
                                        {0, 0, 0, 0, 1}});
  const ClassificationReport rep = report(cm);
  CHECK(rep.per_class[2].precision == 0.0);
  CHECK(rep.per_class[2].recall == 0.0);
  CHECK(rep.per_class[2].f1 == 0.0);
  CHECK(rep.per_class[2].support == 0);
}

TEST_CASE("report invariants on random matrices") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const ConfusionMatrix cm = random_matrix(rng);
    const ClassificationReport rep = report(cm);

    // accuracy = sum support_c * recall_c / total
    double acc = 0.0;
    for (std::size_t c = 0; c < 5; ++c) {
      acc += static_cast<double>(rep.per_class[c].support) * rep.per_class[c].recall;
    }
    acc /= static_cast<double>(rep.total);
    CHECK(rep.accuracy == doctest::Approx(acc).epsilon(1e-12));

    // weighted recall is exactly the accuracy
    CHECK(rep.weighted_avg.recall == doctest::Approx(rep.accuracy).epsilon(1e-12));

    // f1 equals its harmonic-mean recomputation, and all metrics are in [0, 1]
    for (const auto& m : rep.per_class) {
      const double recomputed =
          (m.precision + m.recall) == 0.0 ? 0.0
                                          : 2.0 * m.precision * m.recall / (m.precision + m.recall);
      CHECK(m.f1 == doctest::Approx(recomputed).epsilon(1e-12));
      for (double v : {m.precision, m.recall, m.f1}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
}

TEST_CASE("report is invariant under simultaneous label permutation") {
  SplitMix64 rng(55);
  const ConfusionMatrix cm = random_matrix(rng);
  const ClassificationReport rep = report(cm);

  const std::size_t perm[5] = {3, 0, 4, 1, 2};
  ConfusionMatrix permuted(5);
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t p = 0; p < 5; ++p) permuted.at(perm[a], perm[p]) = cm.at(a, p);
  }
  const ClassificationReport rep2 = report(permuted);

  CHECK(rep2.accuracy == doctest::Approx(rep.accuracy).epsilon(1e-12));
  CHECK(rep2.macro_avg.f1 == doctest::Approx(rep.macro_avg.f1).epsilon(1e-12));
  CHECK(rep2.weighted_avg.f1 == doctest::Approx(rep.weighted_avg.f1).epsilon(1e-12));
  for (std::size_t c = 0; c < 5; ++c) {
    CHECK(rep2.per_class[perm[c]].precision == doctest::Approx(rep.per_class[c].precision));
    CHECK(rep2.per_class[perm[c]].recall == doctest::Approx(rep.per_class[c].recall));
    CHECK(rep2.per_class[perm[c]].support == rep.per_class[c].support);
  }
}

TEST_CASE("display rounding is half away from zero") {
  CHECK(round2(0.125) == doctest::Approx(0.13));
  CHECK(round2(0.124999) == doctest::Approx(0.12));
  CHECK(round2(0.305) == doctest::Approx(0.31));
  CHECK(round2(0.0) == doctest::Approx(0.0));
}

TEST_CASE("empty matrices cannot be reported") {
  CHECK_THROWS_AS(report(ConfusionMatrix(5)), std::invalid_argument);
}

TEST_CASE("loss curves export and parse back exactly") {
  LossCurve curve;
  curve.train_loss = {1.5, 0.75, 1.0 / 3.0};
  curve.val_loss = {1.6, 0.8, 0.4000000000000001};
  curve.val_accuracy = {0.2, 0.7, 0.95};

  const auto dir = std::filesystem::temp_directory_path() / "bodyshape_test_metrics";
  std::filesystem::create_directories(dir);
  const auto path = dir / "curve.csv";
  export_curves(curve, path);

  const LossCurve back = load_curves(path);
  REQUIRE(back.epochs() == 3);
  for (std::size_t e = 0; e < 3; ++e) {
    CHECK(std::abs(back.train_loss[e] - curve.train_loss[e]) <= 1e-12);
    CHECK(std::abs(back.val_loss[e] - curve.val_loss[e]) <= 1e-12);
    CHECK(std::abs(back.val_accuracy[e] - curve.val_accuracy[e]) <= 1e-12);
  }

  CHECK_THROWS_AS(export_curves(LossCurve{}, path), std::invalid_argument);
}

TEST_CASE("single-epoch export is a two-line file") {
  LossCurve curve;
  curve.train_loss = {0.5};
  curve.val_loss = {0.6};
  curve.val_accuracy = {0.8};
  const auto dir = std::filesystem::temp_directory_path() / "bodyshape_test_metrics";
  std::filesystem::create_directories(dir);
  const auto path = dir / "one.csv";
  export_curves(curve, path);

  std::ifstream in(path);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 2);
}
