#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace semdisc {

// Dense row-major matrix of doubles.
class Matrix
{
 public:
   Matrix() = default;
   Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
       : rows_(rows)
       , cols_(cols)
       , data_(rows * cols, fill)
   {}
   Matrix(std::initializer_list<std::initializer_list<double>> init);

   std::size_t rows() const noexcept { return rows_; }
   std::size_t cols() const noexcept { return cols_; }
   bool empty() const noexcept { return data_.empty(); }

   double& operator()(std::size_t r, std::size_t c) noexcept
   {
      assert(r < rows_ && c < cols_);
      return data_[r * cols_ + c];
   }
   double operator()(std::size_t r, std::size_t c) const noexcept
   {
      assert(r < rows_ && c < cols_);
      return data_[r * cols_ + c];
   }

   std::span<double> row(std::size_t r) noexcept
   {
      return {data_.data() + r * cols_, cols_};
   }
   std::span<const double> row(std::size_t r) const noexcept
   {
      return {data_.data() + r * cols_, cols_};
   }

   std::span<const double> data() const noexcept { return data_; }

   bool operator==(const Matrix&) const = default;

 private:
   std::size_t rows_ = 0;
   std::size_t cols_ = 0;
   std::vector<double> data_;
};

} // namespace semdisc
