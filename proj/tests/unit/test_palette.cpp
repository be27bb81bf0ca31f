#include "fixtures.hpp"
#include "oracles.hpp"

#include "semdisc/error.hpp"
#include "semdisc/palette.hpp"
#include "semdisc/semantic_distance.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace semdisc;

namespace {

using Pair = std::array<std::string, 2>;
using Groups = std::pair<std::set<int>, std::set<int>>;

std::vector<ColorId> ids(std::initializer_list<int> v)
{
   std::vector<ColorId> out;
   for(int i : v) out.push_back(ColorId{i});
   return out;
}

std::set<int> id_set(std::span<const ColorId> v)
{
   std::set<int> s;
   for(auto c : v) s.insert(c.value);
   return s;
}

Groups groups_of(const PaletteCandidate& c, std::size_t k)
{
   const std::span<const ColorId> all(c.colors);
   return {id_set(all.subspan(0, k)), id_set(all.subspan(k))};
}

/// Every ordered pair of disjoint k-subsets that meets the rules, checked
/// directly on the raw means.
std::set<Groups> brute_force_palettes(const AssociationTable& t, const Pair& concepts, const PaletteConstraints& c)
{
   const std::size_t n = t.color_count(), k = c.k_per_concept;
   const std::size_t ci[2] = {t.concept_index(concepts[0]), t.concept_index(concepts[1])};
   const double eps = 1e-12;
   auto group_ok = [&](const std::vector<std::size_t>& g, std::size_t own, std::size_t other) {
      std::vector<double> v;
      for(auto x : g) {
         if(t.mean(other, x) > c.max_cross_assoc + eps) return false;
         if(t.mean(own, x) < c.min_own_assoc - eps) return false;
         v.push_back(t.mean(own, x));
      }
      std::sort(v.rbegin(), v.rend());
      for(std::size_t i = 0; i + 1 < v.size(); ++i)
         if(v[i] - v[i + 1] < c.min_assoc_step - eps) return false;
      return true;
   };
   std::vector<std::vector<std::size_t>> subsets;
   for(std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if(std::size_t(__builtin_popcount(mask)) != k) continue;
      std::vector<std::size_t> s;
      for(std::size_t i = 0; i < n; ++i)
         if(mask >> i & 1u) s.push_back(i);
      subsets.push_back(s);
   }
   std::set<Groups> out;
   for(const auto& a : subsets) {
      if(!group_ok(a, ci[0], ci[1])) continue;
      for(const auto& b : subsets) {
         if(!group_ok(b, ci[1], ci[0])) continue;
         std::vector<std::size_t> all = a;
         all.insert(all.end(), b.begin(), b.end());
         std::set<std::size_t> uniq(all.begin(), all.end());
         if(uniq.size() != all.size()) continue;
         bool de_ok = true;
         for(std::size_t p = 0; p < all.size() && de_ok; ++p)
            for(std::size_t q = p + 1; q < all.size() && de_ok; ++q)
               de_ok = delta_e(t.colors()[all[p]], t.colors()[all[q]]) >= c.min_delta_e - c.delta_e_slack;
         if(!de_ok) continue;
         Groups g;
         for(auto x : a) g.first.insert(t.color_ids()[x].value);
         for(auto x : b) g.second.insert(t.color_ids()[x].value);
         out.insert(g);
      }
   }
   return out;
}

AssociationTable random_toy(std::mt19937_64& rng, std::size_t n)
{
   std::uniform_real_distribution<double> u(0, 1);
   std::vector<std::vector<double>> m(3, std::vector<double>(n));
   for(auto& row : m)
      for(auto& v : row) v = u(rng) * u(rng);
   return fixture::toy_table({"p", "q", "r"}, m);
}

PaletteConstraints toy_constraints(std::mt19937_64& rng)
{
   std::uniform_real_distribution<double> u(0, 1);
   PaletteConstraints c;
   c.k_per_concept = 1 + rng() % 3;
   c.min_assoc_step = 0.1 * u(rng);
   c.max_cross_assoc = 0.2 + 0.5 * u(rng);
   c.min_own_assoc = 0.2 * u(rng);
   c.min_delta_e = 10 + 30 * u(rng);
   c.delta_e_slack = 0.0;
   c.concept_blacklist.clear();
   return c;
}

const Pair kExp1{"cantaloupe", "strawberry"};
const Pair kExp2{"mango", "watermelon"};

} // namespace

TEST_CASE("objective names")
{
   CHECK(to_string(PaletteObjective::min_delta_e) == "min_delta_e");
   CHECK(parse_palette_objective("min_delta_s") == PaletteObjective::min_delta_s);
   CHECK_THROWS_AS(parse_palette_objective("beauty"), Error);
}

TEST_CASE("constraint parsing")
{
   const auto c = parse_palette_constraints(R"({"k_per_concept": 2, "min_delta_e": 30, "objective": "min_delta_e"})");
   CHECK(c.k_per_concept == 2);
   CHECK(c.min_delta_e == 30);
   CHECK(c.objective == PaletteObjective::min_delta_e);
   CHECK(c.max_cross_assoc == 0.30);
   CHECK_THROWS_AS(parse_palette_constraints(R"({"k": 2})"), Error);
   CHECK_THROWS_AS(parse_palette_constraints(R"({"min_delta_e": -1})"), Error);
   CHECK_THROWS_AS(parse_palette_constraints(R"({"k_per_concept": 0})"), Error);
   CHECK_THROWS_AS(parse_palette_constraints(R"({"k_per_concept": 1.5})"), Error);
   CHECK_THROWS_AS(parse_palette_constraints("[1,2]"), Error);
   CHECK_THROWS_AS(parse_palette_constraints("{"), Error);

   const auto file = load_palette_constraints(fixture::data_dir() / kPaletteDefaultsFile);
   const PaletteConstraints defaults;
   CHECK(file.k_per_concept == defaults.k_per_concept);
   CHECK(file.min_assoc_step == defaults.min_assoc_step);
   CHECK(file.max_cross_assoc == defaults.max_cross_assoc);
   CHECK(file.min_own_assoc == defaults.min_own_assoc);
   CHECK(file.min_delta_e == defaults.min_delta_e);
   CHECK(file.concept_blacklist == std::vector<std::string>{"orange", "blueberry"});
   CHECK_THROWS_AS(load_palette_constraints("/nonexistent.json"), Error);
}

TEST_CASE("the published palettes are feasible under the defaults")
{
   const auto& d = fixture::bundled();
   const auto c1 = score_palette(d.table, kExp1, d.experiment(1).colors);
   CHECK(c1.feasible);
   CHECK(c1.violations.empty());
   const auto c2 = score_palette(d.table, kExp2, d.experiment(2).colors);
   CHECK(c2.feasible);
   CHECK(std::abs(c2.min_delta_e - 25.0) <= 0.5);
}

TEST_CASE("enumeration contains the first experiment's palette")
{
   const auto& d = fixture::bundled();
   PaletteConstraints c;
   const auto all = enumerate_palettes(d.table, kExp1, c);
   REQUIRE_FALSE(all.empty());
   const Groups want{{58, 50, 39, 46}, {44, 32, 28, 8}};
   std::size_t rank = 0;
   for(std::size_t i = 0; i < all.size(); ++i)
      if(groups_of(all[i], 4) == want) rank = i + 1;
   CHECK(rank > 0);
   CHECK(all.size() == 23040);
   CHECK(rank == 106);

   const auto e2 = enumerate_palettes(d.table, kExp2, c);
   const Groups want2{{58, 53, 50, 49}, {44, 48, 10, 36}};
   bool found = false;
   for(const auto& p : e2) found = found || groups_of(p, 4) == want2;
   CHECK(found);
   CHECK(e2.size() == 39444);
}

TEST_CASE("no palette has zero cross association")
{
   PaletteConstraints c;
   c.max_cross_assoc = 0.0;
   CHECK(enumerate_palettes(fixture::bundled().table, kExp1, c).empty());
}

TEST_CASE("blacklisted and unknown concepts")
{
   const auto& t = fixture::bundled().table;
   try {
      enumerate_palettes(t, {"orange", "mango"}, {});
      FAIL("expected a validation error");
   } catch(const Error& e) {
      CHECK(e.kind() == ErrorKind::validation);
      CHECK(std::string(e.what()).find("orange") != std::string::npos);
   }
   try {
      enumerate_palettes(t, {"durian", "mango"}, {});
      FAIL("expected not_found");
   } catch(const Error& e) {
      CHECK(e.kind() == ErrorKind::not_found);
   }
   CHECK_THROWS_AS(enumerate_palettes(t, {"mango", "mango"}, {}), Error);
   const auto s = score_palette(t, {"blueberry", "mango"}, ids({1, 2}));
   CHECK_FALSE(s.feasible);
}

TEST_CASE("k = 1 with no step equals the cross-pair brute force")
{
   std::mt19937_64 rng(1);
   const auto t = random_toy(rng, 6);
   PaletteConstraints c;
   c.k_per_concept = 1;
   c.min_assoc_step = 0.0;
   c.min_own_assoc = 0.0;
   c.max_cross_assoc = 0.5;
   c.min_delta_e = 25;
   c.concept_blacklist.clear();
   std::set<Groups> want;
   for(std::size_t a = 0; a < 6; ++a)
      for(std::size_t b = 0; b < 6; ++b) {
         if(a == b || t.mean(1, a) > 0.5 || t.mean(0, b) > 0.5) continue;
         if(delta_e(t.colors()[a], t.colors()[b]) < 25 - c.delta_e_slack) continue;
         want.insert({{int(a) + 1}, {int(b) + 1}});
      }
   std::set<Groups> got;
   for(const auto& p : enumerate_palettes(t, {"p", "q"}, c)) got.insert(groups_of(p, 1));
   CHECK(got == want);
   CHECK_FALSE(want.empty());
}

TEST_CASE("enumeration equals a brute-force subset scan on small pools")
{
   std::mt19937_64 rng(17);
   int nonempty = 0;
   for(int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 6 + trial % 7;
      const auto t = random_toy(rng, n);
      const auto c = toy_constraints(rng);
      const Pair concepts{"p", trial % 2 ? "q" : "r"};
      const auto want = brute_force_palettes(t, concepts, c);
      const auto list = enumerate_palettes(t, concepts, c);
      std::set<Groups> got;
      for(const auto& p : list) got.insert(groups_of(p, c.k_per_concept));
      CHECK(got.size() == list.size());
      CHECK(got == want);
      nonempty += !want.empty();
   }
   CHECK(nonempty > 20);
}

TEST_CASE("candidates pass their own audit and are ranked")
{
   const auto& t = fixture::bundled().table;
   PaletteConstraints c;
   for(auto obj : {PaletteObjective::mean_delta_s, PaletteObjective::min_delta_s, PaletteObjective::min_delta_e}) {
      c.objective = obj;
      const auto list = enumerate_palettes(t, kExp2, c, 200);
      REQUIRE(list.size() == 200);
      for(std::size_t i = 0; i < list.size(); ++i) {
         const auto& p = list[i];
         CHECK(p.feasible);
         const auto again = score_palette(t, kExp2, p.colors, {}, c);
         CHECK(again.feasible);
         CHECK(again.mean_delta_s == p.mean_delta_s);
         CHECK(again.min_delta_s == p.min_delta_s);
         CHECK(again.min_delta_e == p.min_delta_e);
         if(i) {
            const auto& q = list[i - 1];
            CHECK((q.objective(obj) > p.objective(obj) || (q.objective(obj) == p.objective(obj) && q.colors < p.colors)));
         }
      }
   }
}

TEST_CASE("limit returns the head of the full ranking")
{
   const auto& t = fixture::bundled().table;
   const auto all = enumerate_palettes(t, kExp1, {});
   const auto head = enumerate_palettes(t, kExp1, {}, 25);
   REQUIRE(head.size() == 25);
   for(std::size_t i = 0; i < 25; ++i) CHECK(head[i].colors == all[i].colors);
   const auto again = enumerate_palettes(t, kExp1, {}, 25);
   for(std::size_t i = 0; i < 25; ++i) CHECK(again[i].colors == head[i].colors);
}

TEST_CASE("tightening a threshold never grows the feasible set")
{
   std::mt19937_64 rng(23);
   for(int trial = 0; trial < 40; ++trial) {
      const auto t = random_toy(rng, 10);
      const auto loose = toy_constraints(rng);
      const Pair concepts{"p", "q"};
      std::set<Groups> base;
      for(const auto& p : enumerate_palettes(t, concepts, loose)) base.insert(groups_of(p, loose.k_per_concept));
      for(int which = 0; which < 4; ++which) {
         auto tight = loose;
         if(which == 0) tight.min_assoc_step += 0.05;
         if(which == 1) tight.max_cross_assoc -= 0.1;
         if(which == 2) tight.min_delta_e += 5;
         if(which == 3) tight.min_own_assoc += 0.1;
         for(const auto& p : enumerate_palettes(t, concepts, tight))
            CHECK(base.count(groups_of(p, tight.k_per_concept)) == 1);
      }
   }
}

TEST_CASE("scoring examples")
{
   const auto& d = fixture::bundled();
   const auto two = score_palette(d.table, kExp1, ids({58, 44}));
   CHECK(two.min_delta_s == two.mean_delta_s);
   CHECK(two.min_delta_s ==
         semantic_distance(PairContext::from_table(d.table, "cantaloupe", "strawberry", ColorId{58}, ColorId{44})));
   CHECK_FALSE(two.feasible); // 2 colors, but the defaults expect 8

   const auto e1 = score_palette(d.table, kExp1, d.experiment(1).colors);
   const auto rep = pairwise_report(d.experiment_table(1));
   oracle::ld sum = 0;
   double lo = 1.0;
   for(const auto& [i, j] : unordered_pairs(8)) {
      sum += rep.delta_s(i, j);
      lo = std::min(lo, rep.delta_s(i, j));
   }
   CHECK(std::abs(e1.mean_delta_s - double(sum / 28)) <= 0.01);
   CHECK(e1.mean_delta_s == doctest::Approx(double(sum / 28)).epsilon(1e-12));
   CHECK(e1.min_delta_s == lo);
   CHECK(e1.mean_delta_s == doctest::Approx(0.63263).epsilon(1e-4));

   CHECK_THROWS_AS(score_palette(d.table, kExp1, ids({58, 58})), Error);
   CHECK_THROWS_AS(score_palette(d.table, kExp1, ids({58})), Error);
   CHECK_THROWS_AS(score_palette(d.table, kExp1, ids({58, 999})), Error);
}

TEST_CASE("audit names each violated rule")
{
   const auto& d = fixture::bundled();
   auto colors = d.experiment(1).colors;
   std::swap(colors[0], colors[7]); // 44 is strawberry-strong, 58 cantaloupe-strong
   const auto bad = score_palette(d.table, kExp1, colors);
   CHECK_FALSE(bad.feasible);
   bool cross = false;
   for(const auto& v : bad.violations) cross = cross || v.find("max_cross_assoc") != std::string::npos;
   CHECK(cross);

   PaletteConstraints strict;
   strict.min_delta_e = 40;
   const auto far = score_palette(d.table, kExp1, d.experiment(1).colors, {}, strict);
   bool de = false;
   for(const auto& v : far.violations) de = de || v.find("delta_e") != std::string::npos;
   CHECK(de);
}

TEST_CASE("swap what-if")
{
   const auto& d = fixture::bundled();
   const auto base = score_palette(d.table, kExp1, d.experiment(1).colors);
   CHECK_THROWS_AS(swap_what_if(base, ColorId{8}, ColorId{8}, d.table), Error);
   CHECK_THROWS_AS(swap_what_if(base, ColorId{8}, ColorId{28}, d.table), Error);
   try {
      swap_what_if(base, ColorId{8}, ColorId{999}, d.table);
      FAIL("expected not_found");
   } catch(const Error& e) {
      CHECK(e.kind() == ErrorKind::not_found);
   }
   CHECK_THROWS_AS(swap_what_if(base, ColorId{1}, ColorId{31}, d.table), Error);

   const auto before = base;
   const auto swapped = swap_what_if(base, ColorId{8}, ColorId{31}, d.table);
   CHECK(base.colors == before.colors);
   auto edited = d.experiment(1).colors;
   std::replace(edited.begin(), edited.end(), ColorId{8}, ColorId{31});
   const auto rescored = score_palette(d.table, kExp1, edited);
   CHECK(swapped.colors == edited);
   CHECK(swapped.mean_delta_s == rescored.mean_delta_s);
   CHECK(swapped.min_delta_s == rescored.min_delta_s);
   CHECK(swapped.min_delta_e == rescored.min_delta_e);
   CHECK(swapped.violations == rescored.violations);
   CHECK(swapped.feasible == rescored.feasible);
   CHECK(swapped.mean_delta_s != base.mean_delta_s);
}
