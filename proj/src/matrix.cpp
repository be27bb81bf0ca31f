#include "semdisc/matrix.hpp"

#include "semdisc/error.hpp"

namespace semdisc {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> init)
    : rows_(init.size())
    , cols_(init.size() == 0 ? 0 : init.begin()->size())
{
   data_.reserve(rows_ * cols_);
   for(const auto& r : init) {
      if(r.size() != cols_) fail(ErrorKind::validation, "Matrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
   }
}

} // namespace semdisc
