#pragma once

#include "semdisc/associations.hpp"
#include "semdisc/matrix.hpp"
#include "semdisc/semantic_distance.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semdisc {

enum class MeritKind { isolated, balanced };

std::string_view to_string(MeritKind kind) noexcept;
/// "isolated" | "balanced"; throws Error(validation) otherwise.
MeritKind parse_merit_kind(std::string_view text);

struct MeritMatrix
{
   std::vector<std::string> concepts; // rows
   std::vector<ColorId> colors;       // columns
   Matrix merit;
   MeritKind kind = MeritKind::isolated;
};

/// merit = mean association, verbatim.
MeritMatrix merit_isolated(const AssociationTable& table);

/// merit[k][c] = x[k][c] - max_{c' != c} x[k][c'], over the table's colors.
MeritMatrix merit_balanced(const AssociationTable& table);

MeritMatrix make_merit(const AssociationTable& table, MeritKind kind);

struct AssignmentSolution
{
   MeritKind merit_kind = MeritKind::isolated;
   std::vector<std::string> concepts;
   std::vector<ColorId> colors; // colors[i] is assigned to concepts[i]
   double total_merit = 0.0;
   bool tie = false; // more than one mapping attains total_merit
   std::vector<std::string> local_conflicts;

   ColorId color_of(std::string_view name) const;
};

/// Closed-form 2 x 2 rule. A tie maps a -> color_1, b -> color_2 (the
/// lexicographically smallest mapping), matching solve_nxn.
AssignmentSolution solve_2x2(const PairContext& ctx);

/// Maximum-total-merit injective concept -> color mapping (rows <= cols).
/// Among equal optima the lexicographically smallest column sequence (in
/// concept order) is returned.
AssignmentSolution solve_nxn(const MeritMatrix& merit);

/// Equality tolerance used to declare two totals tied.
double merit_tolerance(const Matrix& merit) noexcept;

namespace detail {

/// Hungarian (Kuhn-Munkres, shortest augmenting path) on a rows x cols
/// row-major merit array, rows <= cols. Reuses its buffers across calls.
class MaxAssignmentSolver
{
 public:
   struct Result
   {
      std::vector<std::size_t> columns; // columns[row]
      double total = 0.0;
   };

   /// `allowed` (optional, rows*cols) masks usable cells. nullopt if no
   /// complete assignment exists on the allowed cells.
   std::optional<Result> solve(std::span<const double> merit,
                               std::size_t rows,
                               std::size_t cols,
                               std::span<const char> allowed = {});

   /// Allocation-free variant for hot loops; writes columns into `out`.
   bool solve_into(std::span<const double> merit,
                   std::size_t rows,
                   std::size_t cols,
                   std::span<std::size_t> out,
                   std::span<const char> allowed = {});

 private:
   std::vector<double> u_, v_, minv_;
   std::vector<std::size_t> p_, way_;
   std::vector<char> used_;
};

} // namespace detail

} // namespace semdisc
