#pragma once

#include <cstddef>
#include <vector>

#include "tradenet/matrix.hpp"

namespace tradenet {

// Strongly connected components of the digraph induced by positive entries
// (edge i -> j iff a(i,j) > 0). Returns one vector of vertex ids per
// component; components are in deterministic order.
std::vector<std::vector<std::size_t>> strongly_connected_components(const Matrix& a);

bool is_strongly_connected(const Matrix& a);

// Smallest component by size (ties: smallest contained vertex id), used to
// name offenders in ReducibleNetwork errors.
std::vector<std::size_t> smallest_component(const Matrix& a);

} // namespace tradenet
