#include "isrg/graph6.hpp"

namespace isrg::graph {

std::string encode_graph6(std::uint32_t n, const std::function<bool(std::uint32_t, std::uint32_t)>& adjacent) {
  if (n > kGraph6LongLimit)
    throw Error(Errc::SizeBoundExceeded, "graph6 supports at most " + std::to_string(kGraph6LongLimit) + " vertices");
  std::string out;
  if (n <= kGraph6ShortLimit) {
    out.push_back(static_cast<char>(63 + n));
  } else {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
  const std::uint64_t bits = std::uint64_t{n} * (n - (n > 0 ? 1 : 0)) / 2;
  out.reserve(out.size() + (bits + 5) / 6 + 1);
  unsigned group = 0, filled = 0;
  for (std::uint32_t j = 1; j < n; ++j) {
    for (std::uint32_t i = 0; i < j; ++i) {
      group = (group << 1) | (adjacent(i, j) ? 1u : 0u);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + group));
        group = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (group << (6 - filled))));
  out.push_back('\n');
  return out;
}

namespace {

void write_checked(std::ostream& out, const std::string& line) {
  out << line;
  out.flush();
  if (!out) throw Error(Errc::Io, "failed to write graph6 output");
}

}  // namespace

void export_graph6(const IntegralGraph& g, std::ostream& out) {
  if (g.order() > kGraph6LongLimit)
    throw Error(Errc::SizeBoundExceeded, "graph6 supports at most " + std::to_string(kGraph6LongLimit) + " vertices");
  const auto table = g.norm_chars();
  write_checked(out, encode_graph6(g.order(), [&](std::uint32_t i, std::uint32_t j) {
    return table[g.difference(VertexId{j}, VertexId{i}).rank] >= 0;
  }));
}

void export_graph6(const DenseGraph& g, std::ostream& out) {
  write_checked(out, encode_graph6(g.order(), [&](std::uint32_t i, std::uint32_t j) { return g.adjacent(i, j); }));
}

}  // namespace isrg::graph
