#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mpdtsp.hpp"

namespace fixtures {

using mpdtsp::Instance;
using mpdtsp::MetricMode;
using mpdtsp::NodeId;
using mpdtsp::Point;

inline const std::filesystem::path corpus_dir{MPDTSP_CORPUS_DIR};

// depot (0,0), P1 (1,0), P2 (2,0), D1 (1,1), D2 (2,1), unit loads
inline Instance two_pair(double capacity = 2.0, MetricMode metric = MetricMode::ExactEuclidean) {
  return Instance::from_points({{0, 0}, {1, 0}, {2, 0}, {1, 1}, {2, 1}}, {1.0, 1.0}, capacity, metric);
}

// depot (0,0), P (3,0), D (3,4): a 3-4-5 triangle
inline Instance one_pair(double capacity = 1.0) {
  return Instance::from_points({{0, 0}, {3, 0}, {3, 4}}, {1.0}, capacity);
}

inline Instance random_instance(std::uint64_t seed, int pairs, double capacity,
                                MetricMode metric = MetricMode::ExactEuclidean, double side = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Point> coords(static_cast<std::size_t>(2 * pairs + 1));
  for (auto& p : coords) {
    p.x = u(rng);
    p.y = u(rng);
  }
  return Instance::from_points(std::move(coords), std::vector<double>(static_cast<std::size_t>(pairs), 1.0), capacity, metric);
}

inline mpdtsp::PointCloud load_cloud(const std::string& name) {
  return mpdtsp::parse_tsplib(mpdtsp::read_text_file(corpus_dir / name));
}

// Second opinion on feasibility: walk the tour with a running load and a
// visited set. A delivery start unloads when the tour closes.
inline bool reference_feasible(const Instance& inst, const std::vector<NodeId>& seq) {
  const int n = inst.pairs();
  const int nodes = 2 * n + 1;
  auto canon = [&](NodeId v) { return v == 2 * n + 1 ? 0 : v; };
  auto in_range = [&](NodeId v) { return v >= 0 && v <= 2 * n + 1; };
  if (seq.size() != static_cast<std::size_t>(nodes) + 1) return false;
  for (NodeId v : seq) {
    if (!in_range(v)) return false;
  }
  const NodeId start = canon(seq.front());
  if (canon(seq.back()) != start) return false;
  auto q = [&](NodeId v) { return v == 0 ? 0.0 : (v <= n ? inst.masses()[v - 1] : -inst.masses()[v - n - 1]); };
  const double cap = inst.capacity();
  const double eps = 1e-9;

  std::set<NodeId> visited{start};
  double load = 0.0;
  const bool start_is_delivery = start > n;
  if (!start_is_delivery) load += q(start);
  if (load > cap + eps) return false;
  for (std::size_t r = 1; r + 1 < seq.size(); ++r) {
    const NodeId v = canon(seq[r]);
    if (visited.count(v)) return false;
    if (v > n && !visited.count(v - n)) return false;
    visited.insert(v);
    load += q(v);
    if (load > cap + eps || load < -eps) return false;
  }
  if (static_cast<int>(visited.size()) != nodes) return false;
  if (start_is_delivery) {
    load += q(start);
    if (load > cap + eps || load < -eps) return false;
  }
  return std::abs(load) <= eps;
}

// Every depot-rooted order, checked with the reference walker.
inline std::optional<double> enumerate_optimum(const Instance& inst) {
  std::vector<NodeId> interior;
  for (NodeId v = 1; v < inst.node_count(); ++v) interior.push_back(v);
  std::optional<double> best;
  do {
    std::vector<NodeId> seq{0};
    seq.insert(seq.end(), interior.begin(), interior.end());
    seq.push_back(0);
    if (!reference_feasible(inst, seq)) continue;
    double c = 0.0;
    for (std::size_t r = 0; r + 1 < seq.size(); ++r) c += inst.cost(seq[r], seq[r + 1]);
    if (!best || c < *best) best = c;
  } while (std::next_permutation(interior.begin(), interior.end()));
  return best;
}

}  // namespace fixtures
