#pragma once

// Plain-text formats:
//
//   instance   PAIRS n / CAPACITY Q / METRIC {ROUNDED|EXACT}, then one line
//              per node "id role pair_index x y load" for ids 0..2n.
//   tour       one node id per line, first line == last line == start.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mpdtsp/detail/text.hpp"
#include "mpdtsp/error.hpp"
#include "mpdtsp/instance.hpp"
#include "mpdtsp/tour.hpp"

namespace mpdtsp {

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading '" + path.string() + "'");
  return buf.str();
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw std::runtime_error("error writing '" + path.string() + "'");
}

inline std::string serialize_instance(const Instance& instance) {
  if (!instance.has_coords()) throw InputError("only coordinate instances have a canonical text form");
  std::string out;
  out += "PAIRS " + std::to_string(instance.pairs()) + "\n";
  out += "CAPACITY " + detail::format_number(instance.capacity()) + "\n";
  out += "METRIC " + to_string(instance.metric()) + "\n";
  for (NodeId id = 0; id < instance.node_count(); ++id) {
    const auto role = instance.role(id);
    const auto& p = instance.coords()[id];
    out += std::to_string(id) + ' ' + to_string(role.kind) + ' ' + std::to_string(role.pair) + ' ' +
           detail::format_number(p.x) + ' ' + detail::format_number(p.y) + ' ' +
           detail::format_number(instance.load(id)) + '\n';
  }
  return out;
}

inline Instance parse_instance(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::size_t i = 0;
  auto next_line = [&](const char* what) -> std::pair<std::vector<std::string_view>, int> {
    while (i < lines.size() && detail::trim(lines[i]).empty()) ++i;
    if (i >= lines.size()) throw ParseError(what, static_cast<int>(lines.size()), "unexpected end of input");
    const int line_no = static_cast<int>(i) + 1;
    return {detail::split_ws(lines[i++]), line_no};
  };
  auto header = [&](const char* keyword) -> std::pair<std::string_view, int> {
    auto [fields, line_no] = next_line(keyword);
    if (fields.size() != 2 || fields[0] != keyword) throw ParseError(keyword, line_no, "expected '" + std::string(keyword) + " value'");
    return {fields[1], line_no};
  };

  const auto [pairs_text, pairs_line] = header("PAIRS");
  const auto pairs = detail::to_integer(pairs_text);
  if (!pairs || *pairs < 0) throw ParseError("PAIRS", pairs_line, "expected a nonnegative integer");
  const auto [cap_text, cap_line] = header("CAPACITY");
  const auto capacity = detail::to_double(cap_text);
  if (!capacity) throw ParseError("CAPACITY", cap_line, "expected a number");
  const auto [metric_text, metric_line] = header("METRIC");
  MetricMode metric;
  if (metric_text == "ROUNDED") {
    metric = MetricMode::TsplibRounded;
  } else if (metric_text == "EXACT") {
    metric = MetricMode::ExactEuclidean;
  } else {
    throw ParseError("METRIC", metric_line, "expected ROUNDED or EXACT");
  }

  const auto n = static_cast<int>(*pairs);
  std::vector<Point> coords;
  std::vector<double> loads;
  for (int id = 0; id <= 2 * n; ++id) {
    auto [fields, line_no] = next_line("NODE");
    if (fields.size() != 6) throw ParseError("NODE", line_no, "expected 'id role pair_index x y load'");
    const auto parsed_id = detail::to_integer(fields[0]);
    if (!parsed_id || *parsed_id != id) throw ParseError("NODE", line_no, "expected node id " + std::to_string(id));
    const RoleKind kind = id == 0 ? RoleKind::Depot : (id <= n ? RoleKind::Pickup : RoleKind::Delivery);
    if (fields[1] != to_string(kind)) throw ParseError("NODE", line_no, "node " + std::to_string(id) + " must be " + to_string(kind));
    const int expected_pair = id == 0 ? 0 : (id <= n ? id : id - n);
    const auto pair = detail::to_integer(fields[2]);
    if (!pair || *pair != expected_pair) throw ParseError("NODE", line_no, "expected pair index " + std::to_string(expected_pair));
    const auto x = detail::to_double(fields[3]);
    const auto y = detail::to_double(fields[4]);
    const auto q = detail::to_double(fields[5]);
    if (!x || !y || !q) throw ParseError("NODE", line_no, "bad number");
    coords.push_back({*x, *y});
    loads.push_back(*q);
    if (id == 0 && *q != 0.0) throw ParseError("NODE", line_no, "depot load must be 0");
    if (id > n && *q != -loads[id - n]) throw ParseError("NODE", line_no, "delivery load must negate its pickup load");
  }
  while (i < lines.size()) {
    if (!detail::trim(lines[i]).empty()) throw ParseError("NODE", static_cast<int>(i) + 1, "trailing content");
    ++i;
  }

  std::vector<double> masses(loads.begin() + 1, loads.begin() + 1 + n);
  try {
    return Instance::from_points(std::move(coords), std::move(masses), *capacity, metric);
  } catch (const InputError& e) {
    throw ParseError("NODE", pairs_line, e.what());
  }
}

inline std::string serialize_tour(const Tour& tour) {
  std::string out;
  for (NodeId id : tour.sequence) out += std::to_string(id) + '\n';
  return out;
}

// Reads the id list only; validation is the caller's business.
inline std::vector<NodeId> parse_tour_sequence(std::string_view text) {
  std::vector<NodeId> sequence;
  int line_no = 0;
  for (const auto line : detail::split_lines(text)) {
    ++line_no;
    const auto t = detail::trim(line);
    if (t.empty()) continue;
    const auto v = detail::to_integer(t);
    if (!v) throw ParseError("TOUR", line_no, "expected a node id");
    sequence.push_back(static_cast<NodeId>(*v));
  }
  return sequence;
}

}  // namespace mpdtsp
