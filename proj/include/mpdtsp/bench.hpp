#pragma once

// Corpus sweep: every EUC_2D file x precedence direction x capacity, both
// heuristics, with timings and summary statistics.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "mpdtsp/cih.hpp"
#include "mpdtsp/detail/text.hpp"
#include "mpdtsp/error.hpp"
#include "mpdtsp/generator.hpp"
#include "mpdtsp/instance_io.hpp"
#include "mpdtsp/nnh.hpp"
#include "mpdtsp/parallel.hpp"
#include "mpdtsp/tsplib.hpp"

namespace mpdtsp {

enum class Heuristic { NNH, CIH };
enum class InitPolicy { AllNodes, DepotOnly };

inline std::string to_string(Heuristic h) { return h == Heuristic::NNH ? "NNH" : "CIH"; }

struct ExperimentConfig {
  std::filesystem::path corpus_dir;
  std::vector<Direction> directions{Direction::PickupsCentral, Direction::DeliveriesCentral};
  std::vector<int> capacities{2, 4, 6, 8, 10};
  MetricMode metric = MetricMode::ExactEuclidean;
  InitPolicy init_policy = InitPolicy::AllNodes;
  std::optional<int> max_nodes;  // skip clouds with more points
  int threads = 1;
};

struct ResultRow {
  std::string instance;
  Direction direction = Direction::PickupsCentral;
  int capacity = 0;
  Heuristic heuristic = Heuristic::NNH;
  std::optional<double> best_cost;  // empty when every start dead-ended
  double wall_time_s = 0.0;
  int node_count = 0;
  NodeId init_of_best = 0;
  int dead_end_count = 0;
  std::optional<Tour> tour;
};

struct SkippedFile {
  std::string file;
  std::string reason;
};

struct CorpusRun {
  std::vector<ResultRow> rows;
  std::vector<SkippedFile> skipped;
};

inline ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig config;
  int line_no = 0;
  for (const auto raw : detail::split_lines(text)) {
    ++line_no;
    auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("CONFIG", line_no, "expected 'key = value'");
    const auto key = std::string(detail::trim(line.substr(0, eq)));
    const auto value = detail::trim(line.substr(eq + 1));
    auto list = [&] {
      std::vector<std::string_view> items;
      std::size_t start = 0;
      while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const auto item = detail::trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!item.empty()) items.push_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      return items;
    };
    if (key == "corpus_dir") {
      config.corpus_dir = std::string(value);
    } else if (key == "directions") {
      config.directions.clear();
      for (auto item : list()) {
        const auto d = parse_direction(item);
        if (!d) throw ParseError(key, line_no, "unknown direction '" + std::string(item) + "'");
        config.directions.push_back(*d);
      }
    } else if (key == "capacities") {
      config.capacities.clear();
      for (auto item : list()) {
        const auto q = detail::to_integer(item);
        if (!q || *q < 1) throw ParseError(key, line_no, "capacities must be positive integers");
        config.capacities.push_back(static_cast<int>(*q));
      }
    } else if (key == "metric") {
      if (value == "exact") {
        config.metric = MetricMode::ExactEuclidean;
      } else if (value == "rounded") {
        config.metric = MetricMode::TsplibRounded;
      } else {
        throw ParseError(key, line_no, "expected exact or rounded");
      }
    } else if (key == "init_policy") {
      if (value == "all") {
        config.init_policy = InitPolicy::AllNodes;
      } else if (value == "depot") {
        config.init_policy = InitPolicy::DepotOnly;
      } else {
        throw ParseError(key, line_no, "expected all or depot");
      }
    } else if (key == "max_nodes") {
      const auto v = detail::to_integer(value);
      if (!v || *v < 3) throw ParseError(key, line_no, "expected an integer >= 3");
      config.max_nodes = static_cast<int>(*v);
    } else if (key == "threads") {
      const auto v = detail::to_integer(value);
      if (!v || *v < 1) throw ParseError(key, line_no, "expected a positive integer");
      config.threads = static_cast<int>(*v);
    } else {
      throw ParseError(key, line_no, "unknown key");
    }
  }
  return config;
}

namespace detail {

inline void check_config(const ExperimentConfig& config) {
  if (config.capacities.empty()) throw InputError("no capacities configured");
  if (config.directions.empty()) throw InputError("no precedence directions configured");
  for (int q : config.capacities) {
    if (q < 1) throw InputError("capacities must be positive");
  }
}

template <typename Solve>
ResultRow timed_row(const Instance& instance, std::span<const NodeId> inits, Heuristic heuristic, Solve&& solve) {
  const auto t0 = std::chrono::steady_clock::now();
  const MultiStartResult result = solve(instance, inits);
  const auto t1 = std::chrono::steady_clock::now();
  ResultRow row;
  row.heuristic = heuristic;
  row.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
  row.node_count = instance.node_count();
  row.dead_end_count = result.dead_ends;
  if (result.best) {
    const auto report = validate(instance, *result.best);
    if (!report.feasible) throw InvariantError(to_string(heuristic) + " returned a tour the validator rejects");
    if (tour_cost(instance, *result.best) != result.best->cost) {
      throw InvariantError(to_string(heuristic) + " reported a cost that does not match its tour");
    }
    row.best_cost = result.best->cost;
    row.init_of_best = result.best_init;
    row.tour = result.best;
  }
  return row;
}

}  // namespace detail

// Files are visited in name order; rows come out ordered by
// (file, direction, Q, heuristic) whatever order the tasks finish in.
inline CorpusRun run_corpus(const ExperimentConfig& config, std::ostream* log = nullptr) {
  detail::check_config(config);
  namespace fs = std::filesystem;
  if (!fs::is_directory(config.corpus_dir)) throw InputError("corpus directory '" + config.corpus_dir.string() + "' not found");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(config.corpus_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tsp") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  CorpusRun run;
  struct Source {
    std::string name;
    PointCloud cloud;
  };
  std::vector<Source> sources;
  for (const auto& path : files) {
    const auto name = path.stem().string();
    try {
      auto cloud = parse_tsplib(read_text_file(path));
      if (config.max_nodes && static_cast<int>(cloud.points.size()) > *config.max_nodes) {
        run.skipped.push_back({path.filename().string(), "more than " + std::to_string(*config.max_nodes) + " points"});
      } else if (cloud.points.size() < 3) {
        run.skipped.push_back({path.filename().string(), "fewer than 3 points"});
      } else {
        sources.push_back({name, std::move(cloud)});
      }
    } catch (const std::exception& e) {
      run.skipped.push_back({path.filename().string(), e.what()});
    }
  }
  if (log) {
    for (const auto& s : run.skipped) *log << "warning: skipped " << s.file << ": " << s.reason << '\n';
  }
  if (sources.empty()) throw InputError("no instances");

  auto directions = config.directions;
  std::sort(directions.begin(), directions.end());
  directions.erase(std::unique(directions.begin(), directions.end()), directions.end());
  auto capacities = config.capacities;
  std::sort(capacities.begin(), capacities.end());
  capacities.erase(std::unique(capacities.begin(), capacities.end()), capacities.end());

  struct Task {
    std::size_t source;
    Direction direction;
    int capacity;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < sources.size(); ++s) {
    for (auto d : directions) {
      for (int q : capacities) tasks.push_back({s, d, q});
    }
  }

  std::vector<std::pair<ResultRow, ResultRow>> results(tasks.size());
  parallel_for(tasks.size(), config.threads, [&](std::size_t k) {
    const auto& task = tasks[k];
    const auto& src = sources[task.source];
    const auto generated = generate(src.cloud, {task.direction, task.capacity, 1.0, config.metric});
    const auto& instance = generated.instance;
    const auto inits = config.init_policy == InitPolicy::AllNodes ? all_nodes(instance) : std::vector<NodeId>{0};
    auto nnh = detail::timed_row(instance, inits, Heuristic::NNH,
                                 [](const Instance& inst, std::span<const NodeId> i) { return nnh_best(inst, i, 1); });
    auto cih = detail::timed_row(instance, inits, Heuristic::CIH,
                                 [](const Instance& inst, std::span<const NodeId> i) { return cih_best(inst, i, 1); });
    for (auto* row : {&nnh, &cih}) {
      row->instance = src.name;
      row->direction = task.direction;
      row->capacity = task.capacity;
    }
    results[k] = {std::move(nnh), std::move(cih)};
  });

  for (auto& [nnh, cih] : results) {
    run.rows.push_back(std::move(nnh));
    run.rows.push_back(std::move(cih));
  }
  return run;
}

inline constexpr const char* kCsvHeader =
    "instance,direction,Q,heuristic,best_cost,wall_time_s,node_count,init_of_best,dead_end_count";

inline std::string csv_text(std::span<const ResultRow> rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  char time_buf[32];
  for (const auto& r : rows) {
    std::snprintf(time_buf, sizeof(time_buf), "%.6f", r.wall_time_s);
    out += r.instance + ',' + to_string(r.direction) + ',' + std::to_string(r.capacity) + ',' + to_string(r.heuristic) +
           ',' + (r.best_cost ? detail::format_number(*r.best_cost) : std::string()) + ',' + time_buf + ',' +
           std::to_string(r.node_count) + ',' + std::to_string(r.init_of_best) + ',' + std::to_string(r.dead_end_count) +
           '\n';
  }
  return out;
}

inline void emit_csv(std::span<const ResultRow> rows, const std::filesystem::path& path) {
  write_text_file(path, csv_text(rows));
}

// ---------------------------------------------------------------------------
// Summary statistics

struct Quartiles {
  std::size_t count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

struct Bucket {
  long index = 0;  // covers [index * width, (index + 1) * width)
  double lower = 0.0;
  std::size_t count = 0;
};

struct Histogram {
  double width = 0.02;
  std::vector<Bucket> buckets;  // nonzero buckets, ascending
};

struct DirectionSummary {
  Direction direction = Direction::PickupsCentral;
  std::size_t pairs = 0;
  std::size_t nnh_not_worse = 0;  // NNH cost <= CIH cost, ties included
  double nnh_win_fraction = 0.0;
  double max_cost_reduction = 0.0;  // max of 1 - NNH/CIH
  Histogram cost_ratio;             // CIH / NNH
};

struct Summary {
  std::vector<DirectionSummary> by_direction;
  std::size_t pairs = 0;
  std::size_t nnh_not_worse = 0;
  double nnh_win_fraction = 0.0;
  double max_cost_reduction = 0.0;
  Histogram cost_ratio;
  std::map<int, Quartiles> cost_ratio_by_capacity;
  std::map<int, Quartiles> time_ratio_by_node_count;  // CIH time / NNH time
};

// Linear interpolation between order statistics.
inline Quartiles quartiles(std::vector<double> values) {
  Quartiles q;
  q.count = values.size();
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  q.min = values.front();
  q.q1 = at(0.25);
  q.median = at(0.5);
  q.q3 = at(0.75);
  q.max = values.back();
  return q;
}

inline Histogram histogram(std::span<const double> values, double width = 0.02) {
  std::map<long, std::size_t> counts;
  for (double v : values) {
    // The slack keeps exact multiples such as 1.0 / 0.02 out of the bucket below.
    ++counts[static_cast<long>(std::floor(v / width + 1e-9))];
  }
  Histogram h;
  h.width = width;
  for (const auto& [index, count] : counts) h.buckets.push_back({index, static_cast<double>(index) * width, count});
  return h;
}

inline Summary summarize(std::span<const ResultRow> rows) {
  using Key = std::tuple<std::string, Direction, int>;
  struct Pair {
    const ResultRow* nnh = nullptr;
    const ResultRow* cih = nullptr;
  };
  std::map<Key, Pair> paired;
  for (const auto& r : rows) {
    auto& slot = paired[{r.instance, r.direction, r.capacity}];
    auto& side = r.heuristic == Heuristic::NNH ? slot.nnh : slot.cih;
    if (side) throw StructuralError("duplicate " + to_string(r.heuristic) + " row for " + r.instance);
    side = &r;
  }

  Summary summary;
  std::map<Direction, std::vector<double>> ratios_by_direction;
  std::map<Direction, DirectionSummary> by_direction;
  std::map<int, std::vector<double>> by_capacity;
  std::map<int, std::vector<double>> time_by_nodes;
  std::vector<double> all_ratios;
  for (const auto& [key, pair] : paired) {
    if (!pair.nnh || !pair.cih) {
      throw StructuralError("unpaired row for " + std::get<0>(key) + " " + to_string(std::get<1>(key)) + " Q=" +
                            std::to_string(std::get<2>(key)));
    }
    if (!pair.nnh->best_cost || !pair.cih->best_cost) continue;
    const double nnh = *pair.nnh->best_cost;
    const double cih = *pair.cih->best_cost;
    const Direction dir = std::get<1>(key);
    auto& ds = by_direction[dir];
    ds.direction = dir;
    ++ds.pairs;
    ++summary.pairs;
    if (nnh <= cih) {
      ++ds.nnh_not_worse;
      ++summary.nnh_not_worse;
    }
    const double ratio = nnh > 0.0 ? cih / nnh : 1.0;
    const double reduction = cih > 0.0 ? 1.0 - nnh / cih : 0.0;
    ds.max_cost_reduction = std::max(ds.max_cost_reduction, reduction);
    summary.max_cost_reduction = std::max(summary.max_cost_reduction, reduction);
    ratios_by_direction[dir].push_back(ratio);
    all_ratios.push_back(ratio);
    by_capacity[std::get<2>(key)].push_back(ratio);
    const double nnh_time = std::max(pair.nnh->wall_time_s, 1e-9);
    time_by_nodes[pair.nnh->node_count].push_back(pair.cih->wall_time_s / nnh_time);
  }

  for (auto& [dir, ds] : by_direction) {
    ds.nnh_win_fraction = ds.pairs ? static_cast<double>(ds.nnh_not_worse) / static_cast<double>(ds.pairs) : 0.0;
    ds.cost_ratio = histogram(ratios_by_direction[dir]);
    summary.by_direction.push_back(ds);
  }
  summary.nnh_win_fraction =
      summary.pairs ? static_cast<double>(summary.nnh_not_worse) / static_cast<double>(summary.pairs) : 0.0;
  summary.cost_ratio = histogram(all_ratios);
  for (auto& [q, values] : by_capacity) summary.cost_ratio_by_capacity[q] = quartiles(values);
  for (auto& [nodes, values] : time_by_nodes) summary.time_ratio_by_node_count[nodes] = quartiles(values);
  return summary;
}

}  // namespace mpdtsp
