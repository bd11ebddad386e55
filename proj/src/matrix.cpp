#include "tradenet/matrix.hpp"

namespace tradenet {

Matrix Matrix::transposed() const {
    Matrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

} // namespace tradenet
