#pragma once

// The mpdtsp command line. dispatch() takes the arguments without the
// program name and writes everything to the given streams, so tests can
// drive it directly.
//
// exit status: 0 ok, 1 infeasible (no tour / rejected tour), 2 usage or
// input error, 3 internal invariant failure.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpdtsp/bench.hpp"
#include "mpdtsp/cih.hpp"
#include "mpdtsp/error.hpp"
#include "mpdtsp/exact.hpp"
#include "mpdtsp/generator.hpp"
#include "mpdtsp/instance_io.hpp"
#include "mpdtsp/nnh.hpp"
#include "mpdtsp/svg.hpp"
#include "mpdtsp/tsplib.hpp"

namespace mpdtsp::cli {

enum Exit : int { Ok = 0, Infeasible = 1, Usage = 2, Internal = 3 };

namespace detail {

using mpdtsp::detail::format_number;

inline std::string join(const std::vector<NodeId>& ids) {
  std::string out;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(ids[k]);
  }
  return out;
}

inline std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * v);
  return buf;
}

inline std::optional<MetricMode> parse_metric(const std::string& s) {
  if (s == "exact") return MetricMode::ExactEuclidean;
  if (s == "rounded") return MetricMode::TsplibRounded;
  return std::nullopt;
}

inline Instance load_instance(const std::string& path, const std::string& metric) {
  auto instance = parse_instance(read_text_file(path));
  if (!metric.empty()) instance = instance.with_metric(*parse_metric(metric));
  return instance;
}

inline std::vector<NodeId> resolve_inits(const Instance& instance, const std::string& init) {
  if (init == "all") return all_nodes(instance);
  if (init == "depot") return {0};
  const auto id = mpdtsp::detail::to_integer(init);
  if (!id || !instance.valid_id(static_cast<NodeId>(*id))) {
    throw InputError("--init expects all, depot or a node id in 0.." + std::to_string(instance.terminal_alias()));
  }
  return {instance.canonical(static_cast<NodeId>(*id))};
}

inline void print_tour(std::ostream& out, const std::string& label, const MultiStartResult& r) {
  if (!r.best) {
    out << label << ": no feasible tour (" << r.dead_ends << " of " << r.per_init.size() << " starts dead-ended)\n";
    return;
  }
  out << label << ": cost " << format_number(r.best->cost) << " from start " << r.best_init << ", " << r.dead_ends
      << " dead-end(s) over " << r.per_init.size() << " start(s)\n";
  out << "  tour " << join(r.best->sequence) << '\n';
}

inline void print_per_init(std::ostream& out, const MultiStartResult& r) {
  out << "  init  cost\n";
  for (const auto& c : r.per_init) {
    out << "  " << c.init << "  ";
    if (c.ok()) {
      out << format_number(c.tour->cost) << '\n';
    } else {
      out << "dead-end after " << c.dead_end->partial.size() << " nodes\n";
    }
  }
}

inline std::string per_init_csv(const std::vector<std::pair<std::string, MultiStartResult>>& runs) {
  std::string out = "heuristic,init,cost,status\n";
  for (const auto& [name, r] : runs) {
    for (const auto& c : r.per_init) {
      out += name + ',' + std::to_string(c.init) + ',' + (c.ok() ? format_number(c.tour->cost) : std::string()) + ',' +
             (c.ok() ? "ok" : "dead-end") + '\n';
    }
  }
  return out;
}

inline double gap(double value, double reference) { return reference > 0.0 ? value / reference - 1.0 : 0.0; }

}  // namespace detail

inline int run_inspect(const std::string& file, std::ostream& out) {
  const auto cloud = parse_tsplib(read_text_file(file));
  out << "name: " << cloud.name << '\n';
  out << "points: " << cloud.points.size() << '\n';
  if (cloud.declared_dimension > 0) out << "dimension: " << cloud.declared_dimension << '\n';
  if (cloud.points.empty()) return Ok;
  double x0 = cloud.points.front().point.x, x1 = x0;
  double y0 = cloud.points.front().point.y, y1 = y0;
  for (const auto& p : cloud.points) {
    x0 = std::min(x0, p.point.x);
    x1 = std::max(x1, p.point.x);
    y0 = std::min(y0, p.point.y);
    y1 = std::max(y1, p.point.y);
  }
  const Point c = centroid(cloud);
  const auto ranked = rank_by_centroid(cloud);
  out << "bbox: [" << detail::format_number(x0) << ", " << detail::format_number(x1) << "] x [" << detail::format_number(y0)
      << ", " << detail::format_number(y1) << "]\n";
  out << "centroid: " << detail::format_number(c.x) << ' ' << detail::format_number(c.y) << '\n';
  out << "centroid-nearest index: " << cloud.points[ranked.front()].index << '\n';
  const auto n = static_cast<int>(cloud.points.size());
  out << "pairs when generated: " << (n - 1) / 2 << '\n';
  if (n >= 3 && (n - 1) % 2 == 1) out << "dropped index: " << cloud.points[ranked[static_cast<std::size_t>((n - 1) / 2 + 1)]].index << '\n';
  return Ok;
}

inline int run_generate(const std::string& file, const std::string& direction, int capacity, const std::string& metric,
                        double unit_load, const std::string& out_path, std::ostream& out) {
  const auto cloud = parse_tsplib(read_text_file(file));
  const auto dir = parse_direction(direction);
  if (!dir) throw InputError("unknown direction '" + direction + "'");
  const auto generated = generate(cloud, {*dir, capacity, unit_load, *detail::parse_metric(metric)});
  write_text_file(out_path, serialize_instance(generated.instance));
  write_text_file(out_path + ".meta", serialize_metadata(generated.metadata));
  out << "wrote " << out_path << " (" << generated.metadata.pairs << " pairs, Q = "
      << detail::format_number(generated.instance.capacity()) << ") and " << out_path << ".meta\n";
  return Ok;
}

inline int run_solve(const std::string& path, const std::string& heuristic, const std::string& init,
                     const std::string& metric, const std::string& tour_out, const std::string& table,
                     std::ostream& out) {
  const auto instance = detail::load_instance(path, metric);
  const auto inits = detail::resolve_inits(instance, init);
  std::vector<std::pair<std::string, MultiStartResult>> runs;
  if (heuristic == "nnh" || heuristic == "both") runs.emplace_back("NNH", nnh_best(instance, inits));
  if (heuristic == "cih" || heuristic == "both") runs.emplace_back("CIH", cih_best(instance, inits));

  out << "instance: " << path << " (" << instance.pairs() << " pairs, Q = " << detail::format_number(instance.capacity())
      << ", metric " << to_string(instance.metric()) << ")\n";
  const Tour* overall = nullptr;
  for (const auto& [name, r] : runs) {
    detail::print_tour(out, name, r);
    detail::print_per_init(out, r);
    if (r.best && (!overall || r.best->cost < overall->cost)) overall = &*r.best;
  }
  if (!table.empty()) write_text_file(table, detail::per_init_csv(runs));
  if (!overall) return Infeasible;
  if (!tour_out.empty()) write_text_file(tour_out, serialize_tour(*overall));
  return Ok;
}

inline int run_exact(const std::string& path, const std::string& metric, int max_pairs, bool relax, std::ostream& out) {
  const auto instance = detail::load_instance(path, metric);
  const auto result = held_karp(instance, {max_pairs, !relax});
  if (!result.feasible()) {
    out << "infeasible: no depot-rooted tour satisfies " << (relax ? "precedence" : "precedence and capacity") << '\n';
    return Infeasible;
  }
  out << "optimum: " << detail::format_number(result.tour->cost) << '\n';
  out << "tour: " << detail::join(result.tour->sequence) << '\n';
  return Ok;
}

inline int run_validate(const std::string& path, const std::string& tour_path, const std::string& metric, std::ostream& out) {
  const auto instance = detail::load_instance(path, metric);
  const auto sequence = parse_tour_sequence(read_text_file(tour_path));
  const auto report = validate(instance, sequence);
  out << (report.feasible ? "feasible" : "infeasible") << '\n';
  for (const auto& v : report.violations) {
    out << "  " << to_string(v.kind) << " at position " << v.position << ": " << v.detail << '\n';
  }
  if (report.feasible) out << "cost: " << detail::format_number(tour_cost(instance, sequence)) << '\n';
  return report.feasible ? Ok : Infeasible;
}

struct BenchArgs {
  std::string config;
  std::string corpus;
  std::string csv;
  std::string svg_prefix;
  int threads = 0;
};

inline int run_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  if (!args.config.empty()) {
    config = parse_experiment_config(read_text_file(args.config));
    // relative corpus paths are taken from the config file's directory
    if (!config.corpus_dir.empty() && config.corpus_dir.is_relative()) {
      config.corpus_dir = std::filesystem::path(args.config).parent_path() / config.corpus_dir;
    }
  }
  if (!args.corpus.empty()) config.corpus_dir = args.corpus;
  if (config.corpus_dir.empty()) throw InputError("bench needs a corpus directory (--config or --corpus)");
  if (args.threads > 0) config.threads = args.threads;
  config.threads = std::min(config.threads, worker_count());

  const auto run = run_corpus(config, &err);
  const auto summary = summarize(run.rows);
  out << "rows: " << run.rows.size() << ", skipped files: " << run.skipped.size() << '\n';
  for (const auto& ds : summary.by_direction) {
    out << to_string(ds.direction) << ": NNH <= CIH in " << ds.nnh_not_worse << " of " << ds.pairs << " ("
        << detail::percent(ds.nnh_win_fraction) << "), max cost reduction " << detail::percent(ds.max_cost_reduction) << '\n';
  }
  out << "combined: NNH <= CIH in " << summary.nnh_not_worse << " of " << summary.pairs << " ("
      << detail::percent(summary.nnh_win_fraction) << "), max cost reduction "
      << detail::percent(summary.max_cost_reduction) << '\n';
  if (!args.csv.empty()) emit_csv(run.rows, args.csv);
  if (!args.svg_prefix.empty()) {
    emit_svg_histogram(summary, args.svg_prefix + "_ratio_hist.svg");
    emit_svg_boxplots(summary, args.svg_prefix + "_cost_box.svg", args.svg_prefix + "_time_box.svg");
  }
  for (const auto& r : run.rows) {
    if (!r.best_cost) return Infeasible;
  }
  return Ok;
}

// Multi-start tours may start anywhere, the oracle is rooted at the depot;
// the columns say which is which.
inline int run_compare(const std::string& path, const std::string& metric, int max_pairs, std::ostream& out) {
  const auto instance = detail::load_instance(path, metric);
  const std::vector<NodeId> depot{0};
  struct Line {
    std::string label;
    MultiStartResult result;
  };
  std::vector<Line> lines;
  lines.push_back({"NNH multi-start (any start)", nnh_best(instance)});
  lines.push_back({"CIH multi-start (any start)", cih_best(instance)});
  lines.push_back({"NNH depot start", nnh_best(instance, depot)});
  lines.push_back({"CIH depot start", cih_best(instance, depot)});

  std::optional<double> optimum;
  bool oracle_ran = false;
  if (instance.pairs() <= max_pairs) {
    oracle_ran = true;
    const auto exact = held_karp(instance, {max_pairs, true});
    if (exact.feasible()) optimum = exact.tour->cost;
  }

  out << "instance: " << path << " (" << instance.pairs() << " pairs)\n";
  if (!oracle_ran) {
    out << "depot-rooted optimum: skipped (more than " << max_pairs << " pairs)\n";
  } else if (optimum) {
    out << "depot-rooted optimum: " << detail::format_number(*optimum) << '\n';
  } else {
    out << "depot-rooted optimum: infeasible\n";
  }
  out << "heuristic,cost,start,gap_vs_depot_rooted_optimum\n";
  bool any = false;
  for (const auto& l : lines) {
    out << l.label << ',';
    if (!l.result.best) {
      out << "dead-end,,\n";
      continue;
    }
    any = true;
    out << detail::format_number(l.result.best->cost) << ',' << l.result.best_init << ',';
    if (optimum) out << detail::percent(detail::gap(l.result.best->cost, *optimum));
    out << '\n';
  }
  return any || optimum ? Ok : Infeasible;
}

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heuristics and exact solvers for the multi-commodity pickup and delivery TSP", "mpdtsp"};
  app.require_subcommand(1, 1);

  std::string file, instance_path, tour_path, metric, out_path, table, heuristic = "both", init = "all";
  std::string direction, gen_metric = "exact";
  int capacity = 0;
  double unit_load = 1.0;
  int max_pairs = 10;
  bool relax = false;
  BenchArgs bench;
  const auto metric_check = CLI::IsMember({"exact", "rounded"});

  auto* inspect = app.add_subcommand("inspect", "Print point-cloud statistics of a TSPLIB file");
  inspect->add_option("FILE", file, "TSPLIB EUC_2D file")->required();

  auto* gen = app.add_subcommand("generate", "Turn a TSPLIB file into an instance");
  gen->add_option("FILE", file, "TSPLIB EUC_2D file")->required();
  gen->add_option("--direction", direction, "pickups-central or deliveries-central")
      ->required()
      ->check(CLI::IsMember({"pickups-central", "deliveries-central"}));
  gen->add_option("--capacity", capacity, "capacity in items")->required()->check(CLI::PositiveNumber);
  gen->add_option("--out", out_path, "instance file to write (metadata goes to OUT.meta)")->required();
  gen->add_option("--metric", gen_metric, "distance convention")->check(metric_check);
  gen->add_option("--unit-load", unit_load, "mass of one item")->check(CLI::PositiveNumber);

  auto* solve = app.add_subcommand("solve", "Run the construction heuristics");
  solve->add_option("INSTANCE", instance_path, "instance file")->required();
  solve->add_option("--heuristic", heuristic, "nnh, cih or both")->check(CLI::IsMember({"nnh", "cih", "both"}));
  solve->add_option("--init", init, "all, depot or a node id");
  solve->add_option("--metric", metric, "override the instance metric")->check(metric_check);
  solve->add_option("--out", out_path, "write the best tour here");
  solve->add_option("--table", table, "write the per-start results as CSV");

  auto* exact = app.add_subcommand("exact", "Solve to optimality from the depot");
  exact->add_option("INSTANCE", instance_path, "instance file")->required();
  exact->add_option("--metric", metric, "override the instance metric")->check(metric_check);
  exact->add_option("--max-pairs", max_pairs, "refuse larger instances")->check(CLI::Range(0, 14));
  exact->add_flag("--no-capacity", relax, "ignore the capacity (precedence only)");

  auto* val = app.add_subcommand("validate", "Check a tour file against an instance");
  val->add_option("INSTANCE", instance_path, "instance file")->required();
  val->add_option("TOURFILE", tour_path, "one node id per line")->required();
  val->add_option("--metric", metric, "override the instance metric")->check(metric_check);

  auto* bench_cmd = app.add_subcommand("bench", "Sweep a corpus with both heuristics");
  bench_cmd->add_option("--config", bench.config, "key = value experiment file");
  bench_cmd->add_option("--corpus", bench.corpus, "directory of TSPLIB files");
  bench_cmd->add_option("--csv", bench.csv, "write result rows here");
  bench_cmd->add_option("--svg", bench.svg_prefix, "write PREFIX_ratio_hist.svg, PREFIX_cost_box.svg, PREFIX_time_box.svg");
  bench_cmd->add_option("--threads", bench.threads, "parallel tasks")->check(CLI::PositiveNumber);

  auto* cmp = app.add_subcommand("compare", "Heuristics against the exact optimum");
  cmp->add_option("INSTANCE", instance_path, "instance file")->required();
  cmp->add_option("--metric", metric, "override the instance metric")->check(metric_check);
  cmp->add_option("--max-pairs", max_pairs, "largest instance given to the exact solver")->check(CLI::Range(0, 14));

  std::vector<std::string> argv_storage{"mpdtsp"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }

  try {
    if (*inspect) return run_inspect(file, out);
    if (*gen) return run_generate(file, direction, capacity, gen_metric, unit_load, out_path, out);
    if (*solve) return run_solve(instance_path, heuristic, init, metric, out_path, table, out);
    if (*exact) return run_exact(instance_path, metric, max_pairs, relax, out);
    if (*val) return run_validate(instance_path, tour_path, metric, out);
    if (*bench_cmd) return run_bench(bench, out, err);
    if (*cmp) return run_compare(instance_path, metric, max_pairs, out);
  } catch (const std::logic_error& e) {  // InvariantError and library misuse
    err << "internal error: " << e.what() << '\n';
    return Internal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  }
  return Usage;
}

}  // namespace mpdtsp::cli
