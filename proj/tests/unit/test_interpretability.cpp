#include "fixtures.hpp"
#include "oracles.hpp"

#include "semdisc/error.hpp"
#include "semdisc/interpretability.hpp"
#include "semdisc/semantic_distance.hpp"

#include <doctest.h>

#include <random>

using namespace semdisc;

namespace {

const std::vector<RegressionSpec>& presets()
{
   static const auto m = load_regression_models(fixture::data_dir() / kRegressionFile);
   return m;
}

std::vector<double> column(const std::vector<StimulusRow>& rows, double StimulusRow::*field)
{
   std::vector<double> v;
   for(const auto& r : rows) v.push_back(r.*field);
   return v;
}

double mean_of(const std::vector<double>& v)
{
   oracle::ld s = 0;
   for(double x : v) s += x;
   return double(s / v.size());
}

double sd_of(const std::vector<double>& v)
{
   const double m = mean_of(v);
   oracle::ld s = 0;
   for(double x : v) s += (x - m) * (x - m);
   return double(std::sqrt(s / (v.size() - 1)));
}

StimulusRow zrow(double zde, double zds, double za)
{
   StimulusRow r;
   r.z_delta_e = zde;
   r.z_delta_s = zds;
   r.z_assoc = za;
   return r;
}

std::vector<double> lower(const Matrix& m)
{
   std::vector<double> v;
   for(const auto& [i, j] : unordered_pairs(m.rows())) v.push_back(m(i, j));
   return v;
}

} // namespace

TEST_CASE("presets transcribe the published coefficient tables")
{
   struct Row
   {
      const char* label;
      RegressionKind kind;
      int experiment;
      double intercept, perc, sem;
      std::optional<double> assoc;
   };
   const RegressionKind acc = RegressionKind::logistic_accuracy, rt = RegressionKind::linear_rt;
   const std::vector<Row> table{
       {"Acc 1.1", acc, 1, 0.89, 0.22, 0.34, std::nullopt},
       {"Acc 1.2", acc, 1, 0.91, 0.26, 0.23, 0.23},
       {"Acc 2.1", acc, 2, 0.97, -0.06, 0.55, std::nullopt},
       {"Acc 2.2", acc, 2, 1.00, -0.06, 0.41, 0.37},
       {"Acc 1.A", acc, 1, 0.79, 0.0, 0.0, 0.37},
       {"Acc 2.A", acc, 2, 0.93, 0.0, 0.0, 0.53},
       {"RT 1.1", rt, 1, 1017.7, -29.3, -37.2, std::nullopt},
       {"RT 1.2", rt, 1, 1017.7, -42.8, 1.9, -68.3},
       {"RT 2.1", rt, 2, 1121.5, 12.1, -86.4, std::nullopt},
       {"RT 2.2", rt, 2, 1121.5, 9.0, -36.0, -120.6},
       {"RT 1.A", rt, 1, 1017.7, 0.0, 0.0, -76.4},
       {"RT 2.A", rt, 2, 1121.5, 0.0, 0.0, -135.7},
   };
   REQUIRE(presets().size() == table.size());
   for(const auto& row : table) {
      CAPTURE(row.label);
      const auto& m = find_model(presets(), row.label);
      CHECK(m.kind == row.kind);
      CHECK(m.experiment == row.experiment);
      CHECK(m.intercept == row.intercept);
      CHECK(m.beta_perc == row.perc);
      CHECK(m.beta_sem == row.sem);
      CHECK(m.beta_assoc == row.assoc);
   }
}

TEST_CASE("model lookup and parsing")
{
   CHECK(find_model(presets(), "acc2.2").label == "Acc 2.2");
   CHECK(find_model(presets(), " RT 1.A ").label == "RT 1.A");
   try {
      find_model(presets(), "Acc 3.1");
      FAIL("expected not_found");
   } catch(const Error& e) {
      CHECK(e.kind() == ErrorKind::not_found);
   }
   CHECK(to_string(RegressionKind::linear_rt) == "linear_rt");
   CHECK(parse_regression_kind("logistic_accuracy") == RegressionKind::logistic_accuracy);
   CHECK_THROWS_AS(parse_regression_kind("probit"), Error);
   CHECK_THROWS_AS(parse_regression_models(R"({"models":[{"label":"x","kind":"probit","experiment":1,
      "intercept":0,"beta_perc":0,"beta_sem":0}]})"),
                   Error);
   CHECK_THROWS_AS(parse_regression_models("{not json"), Error);
   CHECK_THROWS_AS(parse_regression_models(R"({"models":[{"label":"x","kind":"linear_rt"}]})"), Error);
   const auto one = parse_regression_models(R"({"models":[{"label":"M","kind":"linear_rt","experiment":3,
      "intercept":5,"beta_perc":1,"beta_sem":2,"beta_assoc":3}]})");
   REQUIRE(one.size() == 1);
   CHECK(one[0].linear_predictor(1, 1, 1) == 11.0);
   CHECK_THROWS_AS(load_regression_models("/nonexistent/models.json"), Error);
}

TEST_CASE("stimuli for the experiment tables")
{
   const auto& d = fixture::bundled();
   for(int e = 1; e <= 2; ++e) {
      const auto t = d.experiment_table(e);
      const auto rows = build_stimuli(t);
      REQUIRE(rows.size() == 56);
      const auto rep = pairwise_report(t);
      for(std::size_t k = 0; k < rows.size(); ++k) {
         const auto& r = rows[k];
         CHECK(r.target == t.concepts()[k / 28]);
         CHECK((r.correct_color == r.color_1 || r.correct_color == r.color_2));
         CHECK(r.assoc == t.mean(r.target, r.correct_color));
         const std::size_t i = t.color_index(r.color_1), j = t.color_index(r.color_2);
         CHECK(i < j);
         CHECK(r.delta_s == rep.delta_s(i, j));
         CHECK(r.delta_e == rep.delta_e(i, j));
         CHECK_FALSE(r.tie);
      }
   }
}

TEST_CASE("c2 is correct for cantaloupe against c4")
{
   const auto rows = build_stimuli(fixture::bundled().experiment_table(1));
   int found = 0;
   for(const auto& r : rows)
      if(r.target == "cantaloupe" && r.color_1 == ColorId{50} && r.color_2 == ColorId{46}) {
         CHECK(r.correct_color == ColorId{50});
         ++found;
      }
   CHECK(found == 1);
}

TEST_CASE("stimulus shapes")
{
   const auto t = fixture::toy_table({"a", "b"}, {{0.8, 0.2, 0.5}, {0.3, 0.7, 0.1}});
   const auto rows = build_stimuli(t);
   REQUIRE(rows.size() == 6);
   CHECK(rows[0].correct_color == ColorId{1}); // a, pair (1,2)
   CHECK(rows[3].correct_color == ColorId{2}); // b, pair (1,2)
   // one pair: both rows share delta_s and delta_e, so there is no spread
   try {
      build_stimuli(fixture::toy_table({"a", "b"}, {{0.8, 0.2}, {0.3, 0.7}}));
      FAIL("expected a degenerate error");
   } catch(const Error& e) {
      CHECK(e.kind() == ErrorKind::degenerate);
   }
   CHECK_THROWS_AS(build_stimuli(fixture::toy_table({"a"}, {{0.8, 0.2}})), Error);
   CHECK_THROWS_AS(build_stimuli(fixture::toy_table({"a", "b", "c"}, {{0.8, 0.2}, {0.3, 0.7}, {0.1, 0.1}})),
                   Error);
}

TEST_CASE("tied pairs are flagged and left out of the batch statistics")
{
   // Colors 1 and 2 tie for the pair (1,2); the other pairs are decisive.
   const auto t = fixture::toy_table({"a", "b"}, {{0.5, 0.5, 0.9, 0.1}, {0.5, 0.5, 0.2, 0.8}});
   auto rows = build_stimuli(t);
   REQUIRE(rows.size() == 12);
   CHECK(rows[0].tie);
   CHECK(rows[6].tie);
   const auto kept = prediction_rows(rows);
   CHECK(kept.size() == 10);
   CHECK(prediction_rows(rows, true).size() == 12);
   const auto z = column(kept, &StimulusRow::z_delta_s);
   CHECK(std::abs(mean_of(z)) < 1e-12);
   CHECK(sd_of(z) == doctest::Approx(1.0).epsilon(1e-12));
   // Tie rows use the same transform as the batch.
   const auto raw = column(kept, &StimulusRow::delta_s);
   CHECK(rows[0].z_delta_s == doctest::Approx((rows[0].delta_s - mean_of(raw)) / sd_of(raw)).epsilon(1e-12));
   CHECK(std::string(kZscoreScope).find("n-1") != std::string::npos);
}

TEST_CASE("zscore examples and properties")
{
   const std::vector<double> v{1, 2, 3};
   const auto z = zscore(v);
   CHECK(z == std::vector<double>{-1, 0, 1});
   CHECK_THROWS_AS(zscore(std::vector<double>{4, 4, 4}), Error);
   CHECK_THROWS_AS(zscore(std::vector<double>{4}), Error);

   std::mt19937_64 rng(31);
   std::normal_distribution<double> g(3, 2);
   std::uniform_real_distribution<double> shift(-100, 100);
   for(int trial = 0; trial < 200; ++trial) {
      std::vector<double> x(2 + trial % 60);
      for(auto& e : x) e = g(rng);
      const auto zx = zscore(x);
      CHECK(std::abs(mean_of(zx)) < 1e-12);
      CHECK(sd_of(zx) == doctest::Approx(1.0).epsilon(1e-12));
      const auto zz = zscore(zx);
      const double k = shift(rng);
      auto shifted = x;
      for(auto& e : shifted) e += k;
      const auto zs = zscore(shifted);
      for(std::size_t i = 0; i < x.size(); ++i) {
         CHECK(std::abs(zz[i] - zx[i]) < 1e-9);
         CHECK(std::abs(zs[i] - zx[i]) < 1e-9);
      }
   }

   const auto rows = build_stimuli(fixture::bundled().experiment_table(2));
   const auto zds = zscore(column(rows, &StimulusRow::delta_s));
   CHECK(std::abs(sd_of(zds) - 1.0) <= 1e-9);
   CHECK(zds == column(rows, &StimulusRow::z_delta_s));
}

TEST_CASE("accuracy presets at the batch mean")
{
   const auto zero = std::vector<StimulusRow>{zrow(0, 0, 0)};
   const auto p22 = predict_accuracy(zero, find_model(presets(), "Acc 2.2"));
   CHECK(std::abs(p22[0] - 0.7311) <= 1e-4);
   CHECK(p22[0] == doctest::Approx(0.7310585786300049).epsilon(1e-14));
   const auto p12 = predict_accuracy(zero, find_model(presets(), "Acc 1.2"));
   CHECK(std::abs(p12[0] - 0.7130) <= 1e-4);
   CHECK(p12[0] == doctest::Approx(0.7130001627522816).epsilon(1e-14));

   const auto& m = find_model(presets(), "Acc 2.2");
   CHECK(m.linear_predictor(0, 1, 0) - m.linear_predictor(0, 0, 0) == doctest::Approx(0.41).epsilon(1e-14));
   CHECK(m.linear_predictor(0, 0, 1) - m.linear_predictor(0, 0, 0) == doctest::Approx(0.37).epsilon(1e-14));
   CHECK(m.linear_predictor(1, 0, 0) - m.linear_predictor(0, 0, 0) == doctest::Approx(-0.06).epsilon(1e-14));
   CHECK(find_model(presets(), "Acc 2.1").linear_predictor(0, 0, 5) == 0.97);

   CHECK_THROWS_AS(predict_accuracy(zero, find_model(presets(), "RT 2.2")), Error);
}

TEST_CASE("rt presets at the batch mean")
{
   const auto zero = std::vector<StimulusRow>{zrow(0, 0, 0)};
   CHECK(predict_rt(zero, find_model(presets(), "RT 2.2"))[0] == 1121.5);
   CHECK(predict_rt(zero, find_model(presets(), "RT 1.2"))[0] == 1017.7);
   const auto& m = find_model(presets(), "RT 2.2");
   const auto one = predict_rt(std::vector<StimulusRow>{zrow(0, 0, 1)}, m);
   CHECK(one[0] == 1121.5 - 120.6);
   CHECK(m.linear_predictor(0, 0, 1) - m.linear_predictor(0, 0, 0) == doctest::Approx(-120.6).epsilon(1e-15));
   CHECK(m.linear_predictor(1, 0, 0) - m.linear_predictor(0, 0, 0) == doctest::Approx(9.0).epsilon(1e-15));
   CHECK(m.linear_predictor(0, 1, 0) - m.linear_predictor(0, 0, 0) == doctest::Approx(-36.0).epsilon(1e-15));
   CHECK_THROWS_AS(predict_rt(zero, find_model(presets(), "Acc 2.2")), Error);
}

TEST_CASE("predictions on bundled stimuli: range, monotonicity, shift invariance")
{
   const auto& acc = find_model(presets(), "Acc 2.2");
   auto rows = build_stimuli(fixture::bundled().experiment_table(2));
   const auto p = predict_accuracy(rows, acc);
   REQUIRE(p.size() == 56);
   for(std::size_t i = 0; i < p.size(); ++i) {
      CHECK(p[i] > 0.0);
      CHECK(p[i] < 1.0);
      CHECK(p[i] == doctest::Approx(1.0 / (1.0 + std::exp(-(acc.intercept + acc.beta_perc * rows[i].z_delta_e +
                                                              acc.beta_sem * rows[i].z_delta_s +
                                                              *acc.beta_assoc * rows[i].z_assoc))))
                        .epsilon(1e-14));
   }
   for(double z = -4; z < 4; z += 0.25) {
      const auto lo = predict_accuracy(std::vector<StimulusRow>{zrow(0.3, z, -0.2)}, acc);
      const auto hi = predict_accuracy(std::vector<StimulusRow>{zrow(0.3, z + 0.25, -0.2)}, acc);
      CHECK(hi[0] > lo[0]);
   }

   // Adding a constant to a raw predictor leaves the standardized batch unchanged.
   auto shifted = rows;
   for(auto& r : shifted) {
      r.delta_s += 3.0;
      r.delta_e -= 40.0;
      r.assoc += 0.5;
   }
   standardize(shifted);
   const auto p2 = predict_accuracy(shifted, acc);
   const auto rt1 = predict_rt(rows, find_model(presets(), "RT 2.2"));
   const auto rt2 = predict_rt(shifted, find_model(presets(), "RT 2.2"));
   for(std::size_t i = 0; i < p.size(); ++i) {
      CHECK(std::abs(p2[i] - p[i]) < 1e-9);
      CHECK(std::abs(rt2[i] - rt1[i]) < 1e-6);
   }
}

TEST_CASE("pearson_r")
{
   const std::vector<double> a{1, 2, 4, 7, 11};
   std::vector<double> neg;
   for(double x : a) neg.push_back(-x);
   CHECK(pearson_r(a, a) == doctest::Approx(1.0).epsilon(1e-15));
   CHECK(pearson_r(a, neg) == doctest::Approx(-1.0).epsilon(1e-15));
   CHECK_THROWS_AS(pearson_r(std::vector<double>{1, 2}, std::vector<double>{2, 1}), Error);
   CHECK_THROWS_AS(pearson_r(a, std::vector<double>{1, 2, 3}), Error);
   CHECK_THROWS_AS(pearson_r(a, std::vector<double>{3, 3, 3, 3, 3}), Error);

   std::mt19937_64 rng(6);
   std::normal_distribution<double> g;
   for(int trial = 0; trial < 100; ++trial) {
      std::vector<double> x(3 + trial), y(3 + trial);
      for(std::size_t i = 0; i < x.size(); ++i) {
         x[i] = g(rng);
         y[i] = 0.5 * x[i] + g(rng);
      }
      CHECK(pearson_r(x, y) == doctest::Approx(double(oracle::pearson(x, y))).epsilon(1e-12));
   }
}

TEST_CASE("bundled correlation suite")
{
   const auto& d = fixture::bundled();
   const auto r1 = pairwise_report(d.experiment_table(1));
   const auto r2 = pairwise_report(d.experiment_table(2));
   const auto s1 = lower(r1.delta_s), s2 = lower(r2.delta_s), e1 = lower(r1.delta_e), e2 = lower(r2.delta_e);
   CHECK(std::abs(pearson_r(s1, s2) - 0.99) <= 0.02);
   CHECK(std::abs(pearson_r(e1, s1) - 0.71) <= 0.03);
   CHECK(std::abs(pearson_r(e2, s2) - 0.02) <= 0.03);
   CHECK(std::abs(pearson_r(e1, e2) - 0.08) <= 0.03);
   // Values recomputed from the bundled means.
   CHECK(pearson_r(s1, s2) == doctest::Approx(0.98535).epsilon(1e-4));
   CHECK(pearson_r(e1, s1) == doctest::Approx(0.71060).epsilon(1e-4));
   CHECK(pearson_r(e2, s2) == doctest::Approx(0.01999).epsilon(1e-2));
   CHECK(pearson_r(e1, e2) == doctest::Approx(0.08349).epsilon(1e-3));
}
