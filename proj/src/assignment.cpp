#include "semdisc/assignment.hpp"

#include "semdisc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace semdisc {

std::string_view to_string(MeritKind kind) noexcept
{
   return kind == MeritKind::isolated ? "isolated" : "balanced";
}

MeritKind parse_merit_kind(std::string_view text)
{
   if(text == "isolated") return MeritKind::isolated;
   if(text == "balanced") return MeritKind::balanced;
   fail(ErrorKind::validation,
        "merit must be 'isolated' or 'balanced', got '" + std::string(text) + "'");
}

MeritMatrix merit_isolated(const AssociationTable& table)
{
   if(table.concept_count() == 0 || table.color_count() == 0)
      fail(ErrorKind::validation, "merit: empty association table");
   return {table.concepts(), table.color_ids(), table.mean(), MeritKind::isolated};
}

MeritMatrix merit_balanced(const AssociationTable& table)
{
   if(table.concept_count() == 0 || table.color_count() == 0)
      fail(ErrorKind::validation, "merit: empty association table");
   if(table.color_count() < 2)
      fail(ErrorKind::validation, "balanced merit needs at least 2 colors");

   const std::size_t n = table.color_count();
   Matrix merit(table.concept_count(), n);
   for(std::size_t k = 0; k < table.concept_count(); ++k) {
      const auto row = table.mean().row(k);
      // Largest and second-largest give "max over the other colors" in O(n).
      std::size_t best = 0;
      for(std::size_t c = 1; c < n; ++c)
         if(row[c] > row[best]) best = c;
      double second = -std::numeric_limits<double>::infinity();
      for(std::size_t c = 0; c < n; ++c)
         if(c != best) second = std::max(second, row[c]);
      for(std::size_t c = 0; c < n; ++c) merit(k, c) = row[c] - (c == best ? second : row[best]);
   }
   return {table.concepts(), table.color_ids(), std::move(merit), MeritKind::balanced};
}

MeritMatrix make_merit(const AssociationTable& table, MeritKind kind)
{
   return kind == MeritKind::isolated ? merit_isolated(table) : merit_balanced(table);
}

ColorId AssignmentSolution::color_of(std::string_view name) const
{
   for(std::size_t i = 0; i < concepts.size(); ++i)
      if(concepts[i] == name) return colors[i];
   fail(ErrorKind::not_found, "concept '" + std::string(name) + "' not in solution");
}

double merit_tolerance(const Matrix& merit) noexcept
{
   double scale = 1.0;
   for(double v : merit.data()) scale = std::max(scale, std::abs(v));
   return 1e-10 * scale * static_cast<double>(std::max<std::size_t>(merit.rows(), 1));
}

namespace detail {

bool MaxAssignmentSolver::solve_into(std::span<const double> merit,
                                     std::size_t rows,
                                     std::size_t cols,
                                     std::span<std::size_t> out,
                                     std::span<const char> allowed)
{
   constexpr double inf = std::numeric_limits<double>::infinity();
   // 1-based potentials over a min-cost problem with cost = -merit.
   u_.assign(rows + 1, 0.0);
   v_.assign(cols + 1, 0.0);
   p_.assign(cols + 1, 0);
   way_.assign(cols + 1, 0);
   minv_.resize(cols + 1);
   used_.resize(cols + 1);

   auto cost = [&](std::size_t r, std::size_t c) {
      const std::size_t k = (r - 1) * cols + (c - 1);
      if(!allowed.empty() && !allowed[k]) return inf;
      return -merit[k];
   };

   for(std::size_t i = 1; i <= rows; ++i) {
      p_[0] = i;
      std::size_t j0 = 0;
      std::fill(minv_.begin(), minv_.end(), inf);
      std::fill(used_.begin(), used_.end(), char{0});
      do {
         used_[j0] = 1;
         const std::size_t i0 = p_[j0];
         double delta = inf;
         std::size_t j1 = 0;
         for(std::size_t j = 1; j <= cols; ++j) {
            if(used_[j]) continue;
            const double cur = cost(i0, j) - u_[i0] - v_[j];
            if(cur < minv_[j]) {
               minv_[j] = cur;
               way_[j] = j0;
            }
            if(minv_[j] < delta) {
               delta = minv_[j];
               j1 = j;
            }
         }
         if(delta == inf) return false;
         for(std::size_t j = 0; j <= cols; ++j) {
            if(used_[j]) {
               u_[p_[j]] += delta;
               v_[j] -= delta;
            } else {
               minv_[j] -= delta;
            }
         }
         j0 = j1;
      } while(p_[j0] != 0);
      do {
         const std::size_t j1 = way_[j0];
         p_[j0] = p_[j1];
         j0 = j1;
      } while(j0 != 0);
   }
   for(std::size_t j = 1; j <= cols; ++j)
      if(p_[j] != 0) out[p_[j] - 1] = j - 1;
   return true;
}

std::optional<MaxAssignmentSolver::Result> MaxAssignmentSolver::solve(std::span<const double> merit,
                                                                      std::size_t rows,
                                                                      std::size_t cols,
                                                                      std::span<const char> allowed)
{
   Result r;
   r.columns.resize(rows);
   if(!solve_into(merit, rows, cols, r.columns, allowed)) return std::nullopt;
   for(std::size_t i = 0; i < rows; ++i) r.total += merit[i * cols + r.columns[i]];
   return r;
}

} // namespace detail

namespace {

AssignmentSolution make_solution(const MeritMatrix& m, std::span<const std::size_t> columns, bool tie)
{
   const double eps = merit_tolerance(m.merit);
   AssignmentSolution s;
   s.merit_kind = m.kind;
   s.concepts = m.concepts;
   s.tie = tie;
   for(std::size_t i = 0; i < columns.size(); ++i) {
      s.colors.push_back(m.colors[columns[i]]);
      s.total_merit += m.merit(i, columns[i]);
      const auto row = m.merit.row(i);
      const double best = *std::max_element(row.begin(), row.end());
      if(row[columns[i]] < best - eps) s.local_conflicts.push_back(m.concepts[i]);
   }
   return s;
}

} // namespace

AssignmentSolution solve_2x2(const PairContext& ctx)
{
   const Matrix means{{ctx.means[0], ctx.means[1]}, {ctx.means[2], ctx.means[3]}};
   const MeritMatrix m{{ctx.concept_a, ctx.concept_b}, {ctx.color_1, ctx.color_2}, means, MeritKind::isolated};
   const double diff = ctx.mean_difference();
   const bool tie = std::abs(diff) <= merit_tolerance(means);
   const std::array<std::size_t, 2> identity{0, 1};
   const std::array<std::size_t, 2> swapped{1, 0};
   return make_solution(m, (tie || diff > 0.0) ? identity : swapped, tie);
}

AssignmentSolution solve_nxn(const MeritMatrix& m)
{
   const std::size_t rows = m.merit.rows();
   const std::size_t cols = m.merit.cols();
   if(rows == 0 || cols == 0) fail(ErrorKind::validation, "assignment: empty merit matrix");
   if(rows != m.concepts.size() || cols != m.colors.size())
      fail(ErrorKind::validation, "assignment: merit shape does not match labels");
   if(rows > cols)
      fail(ErrorKind::validation, "assignment: more concepts (" + std::to_string(rows)
                                      + ") than colors (" + std::to_string(cols) + ")");
   for(double v : m.merit.data())
      if(!std::isfinite(v)) fail(ErrorKind::validation, "assignment: non-finite merit entry");

   const auto merit = m.merit.data();
   const double eps = merit_tolerance(m.merit);
   detail::MaxAssignmentSolver solver;
   const auto best = *solver.solve(merit, rows, cols);

   // A different optimum differs from `best` in at least one row, so it
   // survives forbidding that row's chosen cell.
   bool tie = false;
   std::vector<char> allowed(rows * cols, 1);
   for(std::size_t i = 0; i < rows && !tie; ++i) {
      allowed[i * cols + best.columns[i]] = 0;
      const auto alt = solver.solve(merit, rows, cols, allowed);
      allowed[i * cols + best.columns[i]] = 1;
      tie = alt && alt->total >= best.total - eps;
   }
   if(!tie) return make_solution(m, best.columns, false);

   // Fix rows in order to the smallest column that still admits an optimum.
   std::vector<std::size_t> chosen(rows);
   for(std::size_t i = 0; i < rows; ++i) {
      bool fixed = false;
      for(std::size_t c = 0; c < cols && !fixed; ++c) {
         if(!allowed[i * cols + c]) continue;
         auto trial = allowed;
         for(std::size_t cc = 0; cc < cols; ++cc)
            if(cc != c) trial[i * cols + cc] = 0;
         for(std::size_t r = i + 1; r < rows; ++r) trial[r * cols + c] = 0;
         const auto res = solver.solve(merit, rows, cols, trial);
         if(res && res->total >= best.total - eps) {
            allowed = std::move(trial);
            chosen[i] = c;
            fixed = true;
         }
      }
      // Some optimum always survives the previous fixes.
      if(!fixed) throw std::logic_error("assignment: lexicographic tie-break lost the optimum");
   }
   return make_solution(m, chosen, true);
}

} // namespace semdisc
