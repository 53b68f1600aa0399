#pragma once

// graph6 encoding: size prefix, then the upper triangle in column order
// (0,1),(0,2),(1,2),(0,3),... packed big-endian into 6-bit groups, each
// offset by 63. Output carries no >>graph6<< header and ends in '\n'.

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

#include "isrg/graph.hpp"

namespace isrg::graph {

inline constexpr std::uint32_t kGraph6ShortLimit = 62;
inline constexpr std::uint32_t kGraph6LongLimit = 258047;

/// Encoded line (with trailing newline) for an n-vertex graph.
std::string encode_graph6(std::uint32_t n, const std::function<bool(std::uint32_t, std::uint32_t)>& adjacent);

void export_graph6(const IntegralGraph& g, std::ostream& out);
void export_graph6(const DenseGraph& g, std::ostream& out);

}  // namespace isrg::graph
