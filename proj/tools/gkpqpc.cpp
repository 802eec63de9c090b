// Command-line front end: analytic HRM curves, Monte Carlo sweeps, threshold
// searches, danger-zone optimization and the exact small-code oracle. Every
// command writes a manifest next to its outputs; `rerun` replays a manifest.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gkpqpc/constants.hpp"
#include "gkpqpc/experiment.hpp"
#include "gkpqpc/manifest.hpp"
#include "gkpqpc/oracle.hpp"
#include "gkpqpc/svg_plot.hpp"
#include "gkpqpc/wrapped_noise.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gkpqpc;

namespace {

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_range(const std::string& spec) {
  // "lo:hi:step" inclusive grid, or a comma-separated list
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double lo, hi, step;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0)
      throw std::invalid_argument("bad range '" + spec + "', expected lo:hi:step");
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count < 1 || count > 100000) throw std::invalid_argument("bad range '" + spec + "'");
    for (int i = 0; i < count; ++i) out.push_back(lo + i * step);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list '" + spec + "'");
  return out;
}

std::vector<QpcShape> parse_shapes(const std::string& spec) {
  std::vector<QpcShape> shapes;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int n = 0, m = 0;
    if (std::sscanf(item.c_str(), "%dx%d", &n, &m) != 2)
      throw std::invalid_argument("bad shape '" + item + "', expected NxM");
    shapes.push_back(QpcShape::make(n, m));
  }
  if (shapes.empty()) throw std::invalid_argument("no shapes in '" + spec + "'");
  return shapes;
}

std::pair<double, double> parse_interval(const std::string& spec) {
  double lo = 0.0, hi = 0.0;
  if (std::sscanf(spec.c_str(), "%lf:%lf", &lo, &hi) != 2 || !(hi > lo))
    throw std::invalid_argument("bad interval '" + spec + "', expected lo:hi");
  return {lo, hi};
}

std::vector<int> parse_ints(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list '" + spec + "'");
  return out;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open for writing: " + path.string());
  return out;
}

void write_json_file(const fs::path& path, const json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

json shape_json(QpcShape s) { return json{{"n", s.blocks}, {"m", s.qubits_per_block}}; }

json report_json(const ThresholdReport& rep) {
  json pairs = json::array();
  for (const CrossoverEstimate& c : rep.pairs) {
    json p{{"smaller", shape_json(c.smaller)},
           {"larger", shape_json(c.larger)},
           {"crossed", c.crossed}};
    if (c.crossed) {
      p["xi_cross"] = c.xi_cross;
      p["ci_lo"] = c.ci_lo;
      p["ci_hi"] = c.ci_hi;
    }
    pairs.push_back(p);
  }
  json ladder = json::array();
  for (const QpcShape& s : rep.ladder) ladder.push_back(shape_json(s));
  json j{{"ladder", ladder},
         {"pairs", pairs},
         {"has_threshold", rep.has_threshold},
         {"delta", rep.delta},
         {"interval", {rep.interval_lo, rep.interval_hi}},
         {"trials_per_point", rep.trials_per_point},
         {"seed", rep.seed},
         {"hashing_bound", kHashingBoundStd}};
  if (rep.has_threshold) {
    j["threshold"] = rep.threshold;
    j["threshold_ci"] = {rep.threshold_ci_lo, rep.threshold_ci_hi};
    j["gap_to_hashing_bound"] = rep.threshold - kHashingBoundStd;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Command executors: take fully resolved parameters (as stored in manifests)
// and return the list of files written, so rerun replays them verbatim.

std::vector<std::string> execute_hrm_curves(const json& params, const fs::path& dir) {
  const std::vector<double> stds = params.at("std_grid").get<std::vector<double>>();
  const std::vector<double> deltas = params.at("deltas").get<std::vector<double>>();
  const bool svg = params.value("svg", false);

  std::vector<std::string> files;
  auto csv = open_output(dir / "hrm_curves.csv");
  csv << "squeezing_db,std_dev,delta,p_correct,p_incorrect,p_discard,success_prob,"
         "postselected_error\n";
  std::vector<PlotSeries> post_series, succ_series;
  for (double delta : deltas) {
    PlotSeries post{"delta=" + num17(delta).substr(0, 6), {}, {}};
    PlotSeries succ = post;
    for (double std_dev : stds) {
      const NoiseParams noise = NoiseParams::from_std(std_dev);
      const OutcomeProbabilities probs = outcome_probabilities(noise, delta);
      const double db = std_to_squeezing_db(noise);
      csv << num17(db) << ',' << num17(std_dev) << ',' << num17(delta) << ','
          << num17(probs.p_correct) << ',' << num17(probs.p_incorrect) << ','
          << num17(probs.p_discard) << ',' << num17(probs.success_probability()) << ','
          << num17(probs.postselected_error()) << '\n';
      post.x.push_back(db);
      post.y.push_back(probs.postselected_error());
      succ.x.push_back(db);
      succ.y.push_back(probs.success_probability());
    }
    post_series.push_back(std::move(post));
    succ_series.push_back(std::move(succ));
  }
  if (!csv) throw std::ios_base::failure("write failed: hrm_curves.csv");
  csv.close();
  files.push_back("hrm_curves.csv");

  if (svg) {
    PlotOptions post_opt;
    post_opt.title = "Postselected error probability";
    post_opt.x_label = "squeezing level (dB)";
    post_opt.y_label = "postselected error";
    post_opt.log_y = true;
    write_line_chart((dir / "hrm_postselected_error.svg").string(), post_series, post_opt);
    files.push_back("hrm_postselected_error.svg");

    PlotOptions succ_opt;
    succ_opt.title = "Success probability";
    succ_opt.x_label = "squeezing level (dB)";
    succ_opt.y_label = "success probability";
    write_line_chart((dir / "hrm_success_probability.svg").string(), succ_series, succ_opt);
    files.push_back("hrm_success_probability.svg");
  }
  return files;
}

std::vector<std::string> execute_sweep(const json& params, const fs::path& dir) {
  std::vector<QpcShape> shapes;
  for (const auto& s : params.at("shapes"))
    shapes.push_back(QpcShape::make(s.at("n"), s.at("m")));
  const std::vector<double> xi_grid = params.at("xi_grid").get<std::vector<double>>();
  const double delta = params.at("delta").get<double>();
  const std::uint64_t trials = params.at("trials").get<std::uint64_t>();
  const std::uint64_t seed = params.at("seed").get<std::uint64_t>();
  const int workers = params.value("workers", 0);
  const bool svg = params.value("svg", false);

  const auto table =
      sweep(shapes, xi_grid, HrmParams::from_delta(delta), trials, seed, workers);

  std::vector<std::string> files;
  auto csv = open_output(dir / "sweep.csv");
  csv << "n,m,xi,delta,trials,e_x,e_x_lo,e_x_hi,e_z,e_z_lo,e_z_hi,p_e,p_e_lo,p_e_hi,"
         "discard_rate\n";
  for (const SweepPoint& p : table) {
    csv << p.shape.blocks << ',' << p.shape.qubits_per_block << ',' << num17(p.xi) << ','
        << num17(p.delta) << ',' << p.estimate.trials << ',' << num17(p.estimate.e_x.value)
        << ',' << num17(p.estimate.e_x.lo) << ',' << num17(p.estimate.e_x.hi) << ','
        << num17(p.estimate.e_z.value) << ',' << num17(p.estimate.e_z.lo) << ','
        << num17(p.estimate.e_z.hi) << ',' << num17(p.estimate.p_e.value) << ','
        << num17(p.estimate.p_e.lo) << ',' << num17(p.estimate.p_e.hi) << ','
        << num17(p.estimate.discard_rate) << '\n';
  }
  if (!csv) throw std::ios_base::failure("write failed: sweep.csv");
  csv.close();
  files.push_back("sweep.csv");

  if (svg) {
    std::vector<PlotSeries> series;
    for (const QpcShape& shape : shapes) {
      PlotSeries s{"(" + std::to_string(shape.blocks) + "," +
                       std::to_string(shape.qubits_per_block) + ")",
                   {},
                   {}};
      for (const SweepPoint& p : table) {
        if (p.shape == shape) {
          s.x.push_back(p.xi);
          s.y.push_back(p.estimate.p_e.value);
        }
      }
      series.push_back(std::move(s));
    }
    PlotOptions opt;
    opt.title = "QPC failure probability vs channel noise";
    opt.x_label = "xi (shift std deviation)";
    opt.y_label = "p_E";
    opt.log_y = true;
    opt.reference_x = kHashingBoundStd;
    opt.reference_label = "1/sqrt(e)";
    write_line_chart((dir / "sweep.svg").string(), series, opt);
    files.push_back("sweep.svg");
  }
  return files;
}

std::vector<std::string> execute_threshold(const json& params, const fs::path& dir) {
  const double delta = params.at("delta").get<double>();
  const double lo = params.at("interval")[0].get<double>();
  const double hi = params.at("interval")[1].get<double>();
  const std::uint64_t trials = params.at("trials").get<std::uint64_t>();
  const std::uint64_t seed = params.at("seed").get<std::uint64_t>();
  const int workers = params.value("workers", 0);
  const HrmParams hrm = HrmParams::from_delta(delta);

  std::vector<QpcShape> ladder;
  json ladder_mode;
  if (params.contains("shapes")) {
    for (const auto& s : params.at("shapes"))
      ladder.push_back(QpcShape::make(s.at("n"), s.at("m")));
    ladder_mode = "explicit";
  } else {
    const std::vector<int> ns = params.at("ladder_ns").get<std::vector<int>>();
    const double probe = params.value("probe", 0.5 * (lo + hi));
    ladder = balance_shapes(ns, probe, hrm, trials,
                            derive_stream_key(seed, {0xBA1ull}), workers);
    ladder_mode = "auto";
  }

  const ThresholdReport rep = find_threshold(ladder, hrm, lo, hi, trials, seed, workers);
  json j = report_json(rep);
  j["ladder_mode"] = ladder_mode;
  write_json_file(dir / "threshold.json", j);
  return {"threshold.json"};
}

std::vector<std::string> execute_optimize_delta(const json& params, const fs::path& dir) {
  const std::vector<double> grid = params.at("delta_grid").get<std::vector<double>>();
  const double lo = params.at("interval")[0].get<double>();
  const double hi = params.at("interval")[1].get<double>();
  const std::uint64_t trials = params.at("trials").get<std::uint64_t>();
  const std::uint64_t seed = params.at("seed").get<std::uint64_t>();
  const int workers = params.value("workers", 0);

  DeltaOptimum opt;
  if (params.contains("shapes")) {
    std::vector<QpcShape> shapes;
    for (const auto& s : params.at("shapes"))
      shapes.push_back(QpcShape::make(s.at("n"), s.at("m")));
    opt = optimize_delta(shapes, grid, lo, hi, trials, seed, workers);
  } else {
    opt = optimize_delta_auto(params.at("ladder_ns").get<std::vector<int>>(), grid, lo, hi,
                              trials, seed, workers);
  }

  json per_delta = json::array();
  for (const DeltaThresholdPoint& p : opt.per_delta) {
    per_delta.push_back({{"delta", p.delta}, {"report", report_json(p.report)}});
  }
  json j{{"delta_grid", grid},
         {"per_delta", per_delta},
         {"delta_star", opt.delta_star},
         {"threshold_at_star", opt.threshold},
         {"best_index", opt.best_index}};
  write_json_file(dir / "optimize_delta.json", j);
  return {"optimize_delta.json"};
}

std::vector<std::string> execute_oracle(const json& params, const fs::path& dir) {
  const QpcShape shape =
      QpcShape::make(params.at("shape").at("n"), params.at("shape").at("m"));
  const double xi = params.at("xi").get<double>();
  const double delta = params.at("delta").get<double>();
  const OutcomeProbabilities probs =
      outcome_probabilities(NoiseParams::from_std(xi), delta);
  const ExactFailure exact = exact_failure(shape, probs);
  json j{{"shape", shape_json(shape)},
         {"xi", xi},
         {"delta", delta},
         {"probabilities",
          {{"p_correct", probs.p_correct},
           {"p_incorrect", probs.p_incorrect},
           {"p_discard", probs.p_discard},
           {"success_prob", probs.success_probability()},
           {"postselected_error", probs.postselected_error()}}},
         {"e_x", exact.e_x},
         {"e_z", exact.e_z},
         {"p_e", exact.p_e}};
  write_json_file(dir / "oracle.json", j);
  return {"oracle.json"};
}

std::vector<std::string> dispatch(const std::string& command, const json& params,
                                  const fs::path& dir) {
  if (command == "hrm-curves") return execute_hrm_curves(params, dir);
  if (command == "sweep") return execute_sweep(params, dir);
  if (command == "threshold") return execute_threshold(params, dir);
  if (command == "optimize-delta") return execute_optimize_delta(params, dir);
  if (command == "oracle") return execute_oracle(params, dir);
  throw std::invalid_argument("unknown command in manifest: " + command);
}

int run_command(const std::string& command, const json& params, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::ios_base::failure("cannot create output dir: " + out_dir);

  const std::vector<std::string> files = dispatch(command, params, dir);

  RunManifest manifest;
  manifest.command = command;
  manifest.parameters = params;
  manifest.seed = params.value("seed", 0ull);
  manifest.tool_version = kVersion;
  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const std::string& f : files)
    manifest.outputs.emplace_back(f, file_digest_hex((dir / f).string()));
  std::string manifest_name = command;
  for (char& c : manifest_name)
    if (c == '-') c = '_';
  write_manifest((dir / (manifest_name + "_manifest.json")).string(), manifest);

  for (const std::string& f : files) std::cout << (dir / f).string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GKP + quantum parity code simulator for additive Gaussian noise"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::uint64_t seed = 42;
  std::uint64_t trials = 100000;
  int workers = 0;
  bool svg = false;
  double delta = 0.0, delta_sqrtpi = 0.0;

  auto add_common = [&](CLI::App* cmd, bool with_trials) {
    cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
    if (with_trials) {
      cmd->add_option("--trials", trials, "Monte Carlo trials per point")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
      cmd->add_option("--workers", workers, "Worker threads (0 = hardware)")
          ->capture_default_str();
    }
  };
  auto add_delta = [&](CLI::App* cmd) {
    auto* d = cmd->add_option("--delta", delta, "Danger-zone half-width (absolute)");
    auto* ds = cmd->add_option("--delta-sqrtpi", delta_sqrtpi,
                               "Danger-zone half-width in units of sqrt(pi)");
    d->excludes(ds);
    ds->excludes(d);
  };
  auto resolved_delta = [&](const CLI::App* cmd) {
    return cmd->count("--delta-sqrtpi") ? delta_sqrtpi * kSqrtPi : delta;
  };

  // hrm-curves ---------------------------------------------------------------
  auto* hrm_cmd = app.add_subcommand("hrm-curves",
                                     "Analytic ternary-measurement curves vs squeezing");
  std::string db_spec, std_spec, deltas_spec = "0,0.2,0.3952572087519300";
  hrm_cmd->add_option("--db", db_spec, "Squeezing grid in dB (lo:hi:step or list)");
  hrm_cmd->add_option("--std", std_spec, "Std-dev grid (lo:hi:step or list)");
  hrm_cmd->add_option("--deltas", deltas_spec, "Comma list of danger-zone half-widths")
      ->capture_default_str();
  hrm_cmd->add_flag("--svg", svg, "Also write SVG plots");
  add_common(hrm_cmd, false);

  // sweep ---------------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo failure-probability sweep");
  std::string shapes_spec = "3x3,5x3,7x3", xi_spec = "0.45:0.65:0.02";
  sweep_cmd->add_option("--shapes", shapes_spec, "Shapes as NxM, comma separated")
      ->capture_default_str();
  sweep_cmd->add_option("--xi", xi_spec, "Channel noise grid (lo:hi:step or list)")
      ->capture_default_str();
  add_delta(sweep_cmd);
  sweep_cmd->add_flag("--svg", svg, "Also write an SVG plot");
  add_common(sweep_cmd, true);

  // threshold ------------------------------------------------------------------
  auto* thr_cmd = app.add_subcommand("threshold", "Crossover threshold search");
  std::string thr_shapes, ladder_mode = "auto", ns_spec = "3,5,7,9", interval_spec = "0.45:0.70";
  double probe = 0.0;
  thr_cmd->add_option("--shapes", thr_shapes, "Explicit ladder as NxM list");
  thr_cmd->add_option("--ladder", ladder_mode, "'auto' to balance shapes from --ns")
      ->capture_default_str();
  thr_cmd->add_option("--ns", ns_spec, "Block counts for the auto ladder")
      ->capture_default_str();
  thr_cmd->add_option("--interval", interval_spec, "Search interval lo:hi")
      ->capture_default_str();
  thr_cmd->add_option("--probe", probe, "Balance probe (default: interval midpoint)");
  add_delta(thr_cmd);
  add_common(thr_cmd, true);

  // optimize-delta --------------------------------------------------------------
  auto* opt_cmd = app.add_subcommand("optimize-delta",
                                     "Maximize the threshold over the danger-zone width");
  std::string grid_spec = "0:0.55:0.0916666666666666667", opt_shapes, opt_ns = "3,5,7";
  std::string opt_interval = "0.40:0.70";
  opt_cmd->add_option("--delta-grid", grid_spec, "Danger-zone grid (lo:hi:step or list)")
      ->capture_default_str();
  opt_cmd->add_option("--shapes", opt_shapes, "Fixed ladder as NxM list");
  opt_cmd->add_option("--ns", opt_ns, "Block counts for per-delta auto ladders")
      ->capture_default_str();
  opt_cmd->add_option("--interval", opt_interval, "Search interval lo:hi")
      ->capture_default_str();
  add_common(opt_cmd, true);

  // oracle ------------------------------------------------------------------------
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact failure probabilities (<= 16 qubits)");
  std::string oracle_shape = "2x2";
  double oracle_xi = 0.55;
  oracle_cmd->add_option("--shape", oracle_shape, "Shape as NxM")->capture_default_str();
  oracle_cmd->add_option("--xi", oracle_xi, "Channel noise std deviation")
      ->capture_default_str();
  add_delta(oracle_cmd);
  add_common(oracle_cmd, false);

  // rerun ----------------------------------------------------------------------------
  auto* rerun_cmd = app.add_subcommand("rerun", "Replay a command from its manifest");
  std::string manifest_path;
  rerun_cmd->add_option("--manifest", manifest_path, "Path to a *_manifest.json")->required();
  rerun_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (hrm_cmd->parsed()) {
      json params;
      std::vector<double> stds;
      if (!std_spec.empty()) {
        stds = parse_range(std_spec);
      } else {
        const std::string spec = db_spec.empty() ? "2:16:0.5" : db_spec;
        for (double db : parse_range(spec))
          stds.push_back(squeezing_db_to_std(db).std_dev);
      }
      params["std_grid"] = stds;
      params["deltas"] = parse_range(deltas_spec);
      params["svg"] = svg;
      params["seed"] = seed;
      return run_command("hrm-curves", params, out_dir);
    }
    if (sweep_cmd->parsed()) {
      json shapes = json::array();
      for (const QpcShape& s : parse_shapes(shapes_spec)) shapes.push_back(shape_json(s));
      json params{{"shapes", shapes},
                  {"xi_grid", parse_range(xi_spec)},
                  {"delta", resolved_delta(sweep_cmd)},
                  {"trials", trials},
                  {"seed", seed},
                  {"workers", workers},
                  {"svg", svg}};
      return run_command("sweep", params, out_dir);
    }
    if (thr_cmd->parsed()) {
      const auto [ilo, ihi] = parse_interval(interval_spec);
      json params{{"delta", resolved_delta(thr_cmd)},
                  {"interval", {ilo, ihi}},
                  {"trials", trials},
                  {"seed", seed},
                  {"workers", workers}};
      if (!thr_shapes.empty()) {
        json shapes = json::array();
        for (const QpcShape& s : parse_shapes(thr_shapes)) shapes.push_back(shape_json(s));
        params["shapes"] = shapes;
      } else {
        if (ladder_mode != "auto")
          throw std::invalid_argument("--ladder must be 'auto' or use --shapes");
        params["ladder_ns"] = parse_ints(ns_spec);
        if (thr_cmd->count("--probe")) params["probe"] = probe;
      }
      return run_command("threshold", params, out_dir);
    }
    if (opt_cmd->parsed()) {
      const auto [ilo, ihi] = parse_interval(opt_interval);
      json params{{"delta_grid", parse_range(grid_spec)},
                  {"interval", {ilo, ihi}},
                  {"trials", trials},
                  {"seed", seed},
                  {"workers", workers}};
      if (!opt_shapes.empty()) {
        json shapes = json::array();
        for (const QpcShape& s : parse_shapes(opt_shapes)) shapes.push_back(shape_json(s));
        params["shapes"] = shapes;
      } else {
        params["ladder_ns"] = parse_ints(opt_ns);
      }
      return run_command("optimize-delta", params, out_dir);
    }
    if (oracle_cmd->parsed()) {
      const std::vector<QpcShape> s = parse_shapes(oracle_shape);
      json params{{"shape", shape_json(s.front())},
                  {"xi", oracle_xi},
                  {"delta", resolved_delta(oracle_cmd)},
                  {"seed", seed}};
      return run_command("oracle", params, out_dir);
    }
    if (rerun_cmd->parsed()) {
      const RunManifest m = load_manifest(manifest_path);
      return run_command(m.command, m.parameters, out_dir);
    }
  } catch (const SizeBudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
