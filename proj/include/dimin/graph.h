#pragma once

#include <cstddef>
#include <vector>

namespace dimin {

using Adjacency = std::vector<std::vector<std::size_t>>;

// Tarjan's algorithm without recursion. Returns the component of every node;
// components are numbered in reverse topological order (sinks first).
std::vector<std::size_t> strongly_connected(const Adjacency& successors, std::size_t& count);

} // namespace dimin
