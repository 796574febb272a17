#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "localcut/graph_model.hpp"
#include "localcut/io.hpp"
#include "localcut/local_coloring.hpp"
#include "localcut/partition_checks.hpp"
#include "localcut/recoloring.hpp"
#include "localcut/rng.hpp"
#include "localcut/tree_engine.hpp"

namespace {

using nlohmann::json;
using namespace localcut;

constexpr int kOk = 0;
constexpr int kConfigError = 2;   // bad flags, bad files, preconditions
constexpr int kCheckFailed = 3;   // --check tolerance breach

struct Options {
  std::string subcommand;
  int d = 0;
  double eps = 0.0;
  EvolveMode mode = EvolveMode::kExact;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  int reps = 1;
  MiscolorCriterion criterion = MiscolorCriterion::kTerminal;
  SwapStrategy strategy = SwapStrategy::kGreedy;
  std::string schedule_path;
  std::string out_path;
  bool check = false;
  bool d_given = false, eps_given = false, mode_given = false;
  // Pinned in the defaults file only; no flags.
  SampleMode sample_mode = SampleMode::kErase;
  int kmax = 5;
  std::int64_t internal_max_moves = 0;
  int internal_max_sideways = 0;
  int config_version = 0;
  std::string config_file;
};

json config_echo(const Options& o) {
  return {{"subcommand", o.subcommand},
          {"config_version", o.config_version},
          {"config_file", o.config_file},
          {"d", o.d},
          {"eps", o.eps},
          {"mode", mode_name(o.mode)},
          {"n", o.n},
          {"reps", o.reps},
          {"criterion", criterion_name(o.criterion)},
          {"strategy", strategy_name(o.strategy)},
          {"schedule", o.schedule_path},
          {"out", o.out_path},
          {"sample_mode", o.sample_mode == SampleMode::kErase ? "erase" : "reject"},
          {"kmax", o.kmax},
          {"internal_max_moves", o.internal_max_moves},
          {"internal_max_sideways", o.internal_max_sideways}};
}

// report.json -> report<suffix>; used for the schedule and CSV siblings.
std::string sibling_path(const std::string& out, const std::string& suffix) {
  std::string base = out;
  if (base.size() >= 5 && base.compare(base.size() - 5, 5, ".json") == 0)
    base.resize(base.size() - 5);
  return base + suffix;
}

void write_with_dirs(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  write_text_file(path, text);
}

void write_report(const std::string& path, const json& j) {
  write_with_dirs(path, j.dump(2) + "\n");
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Resolves every parameter the user did not pass from the versioned
// defaults file: explicit --config, else defaults.json next to the binary,
// else configs/defaults.json relative to the working directory.
json load_defaults(Options& o, const std::string& explicit_path,
                   const char* argv0) {
  namespace fs = std::filesystem;
  std::vector<std::string> candidates;
  if (!explicit_path.empty()) {
    candidates.push_back(explicit_path);
  } else {
    fs::path exe_dir = fs::path(argv0).parent_path();
    if (!exe_dir.empty())
      candidates.push_back((exe_dir / "defaults.json").string());
    candidates.push_back("configs/defaults.json");
  }
  for (const std::string& c : candidates) {
    std::error_code ec;
    if (!fs::exists(c, ec)) continue;
    json j = json::parse(read_text_file(c));
    if (!j.contains("config_version") || !j["config_version"].is_number_integer())
      throw std::invalid_argument(c + ": missing integer config_version");
    if (j["config_version"].get<int>() != 1)
      throw std::invalid_argument(c + ": unsupported config_version");
    o.config_version = j["config_version"].get<int>();
    o.config_file = c;
    return j.at("defaults");
  }
  throw std::invalid_argument(
      "no defaults file found (next to the binary or at configs/defaults.json); "
      "pass --config PATH");
}

ScheduleFile load_schedule(Options& o) {
  if (o.schedule_path.empty())
    throw std::invalid_argument(o.subcommand + ": --schedule is required");
  ScheduleFile sf = schedule_from_json(json::parse(read_text_file(o.schedule_path)));
  if (o.d_given && o.d != sf.d)
    throw std::invalid_argument("--d disagrees with the schedule file");
  if (o.eps_given && std::abs(o.eps - sf.eps) > 1e-12 * sf.eps)
    throw std::invalid_argument("--eps disagrees with the schedule file");
  if (o.mode_given && o.mode != sf.mode)
    throw std::invalid_argument("--mode disagrees with the schedule file");
  o.d = sf.d;
  o.eps = sf.eps;
  o.mode = sf.mode;
  return sf;
}

int cmd_tree(Options o) {
  TreeRun run = run_tree(o.d, o.eps, o.mode);
  const TreeReport& r = run.report;
  std::uint64_t hash = schedule_hash(run.schedule);

  if (o.out_path.empty()) o.out_path = "tree_report.json";
  std::string sched_file = sibling_path(o.out_path, ".schedule.json");

  write_report(sched_file, schedule_to_json(o.d, o.eps, o.mode, run.schedule));
  json rep = report_envelope(config_echo(o), o.seed, hash);
  rep["result"] = tree_report_to_json(r);
  rep["schedule_file"] = sched_file;
  write_report(o.out_path, rep);
  write_with_dirs(
      sibling_path(o.out_path, ".csv"),
      to_csv({"d", "eps", "mode", "steps", "cut_per_vertex", "miscolored",
              "eligible", "improved_cut"},
             {{std::to_string(o.d), num(o.eps), mode_name(o.mode),
               std::to_string(r.steps), num(r.cut), num(r.miscolored),
               num(r.eligible), num(r.improved_cut_delta3)}}));

  std::printf("d=%d 1/eps=%.6g mode=%s steps=%d (%.1fs)\n", o.d, 1.0 / o.eps,
              mode_name(o.mode), r.steps, r.total_seconds);
  std::printf("cut/n %.6g  miscolored %.6g  improved %.6g\n", r.cut,
              r.miscolored, r.improved_cut_delta3);

  if (!o.check) return kOk;
  // Known-good headline rows at d=5; --check recomputes and compares.
  struct Golden {
    double eps;
    EvolveMode mode;
    double cut, miscolored, tol;
  };
  static constexpr Golden kGolden[] = {
      {1e-3, EvolveMode::kExact, 0.501778, 0.0199445, 5e-6},
      {1e-4, EvolveMode::kExact, 0.503125, 0.0190561, 5e-6},
      {2e-5, EvolveMode::kExact, 0.502832, 0.0187139, 5e-6},
      {2e-5, EvolveMode::kSimplified, 0.502803, 0.018679, 1e-4},
  };
  for (const Golden& g : kGolden) {
    if (o.d != 5 || o.mode != g.mode) continue;
    if (std::abs(o.eps - g.eps) > 1e-12 * g.eps) continue;
    double dc = std::abs(r.cut - g.cut);
    double dm = std::abs(r.miscolored - g.miscolored);
    bool ok = dc <= g.tol && dm <= g.tol;
    std::printf(
        "check: cut %.6g vs %.6g (|diff| %.2e), miscolored %.6g vs %.6g "
        "(|diff| %.2e), tol %.0e -> %s\n",
        r.cut, g.cut, dc, r.miscolored, g.miscolored, dm, g.tol,
        ok ? "ok" : "FAIL");
    return ok ? kOk : kCheckFailed;
  }
  std::fprintf(stderr, "check: no golden row for d=%d eps=%g mode=%s\n", o.d,
               o.eps, mode_name(o.mode));
  return kConfigError;
}

int cmd_graph(Options o) {
  ScheduleFile sf = load_schedule(o);
  std::uint64_t hash = schedule_hash(sf.steps);
  if (o.out_path.empty()) o.out_path = "graph_report.json";

  CounterRng master(o.seed);
  json runs = json::array();
  std::vector<std::vector<std::string>> rows;
  double cut_per_n_sum = 0.0;
  for (int rep = 0; rep < o.reps; ++rep) {
    std::uint64_t a = static_cast<std::uint64_t>(rep);
    std::uint64_t gseed = master.bits(Purpose::kGraphSample, a);
    std::uint64_t vseed = master.bits(Purpose::kVertexSeed, a);
    std::uint64_t sseed = master.bits(Purpose::kGreedyRestart, a);
    Graph g = sample_regular_graph(o.n, o.d, gseed, o.sample_mode);
    SeedTable seeds(vseed);
    RunStats stats;
    ColoringAssignment colored =
        run_schedule(g, sf.steps, seeds, Perception::kNormal, &stats);
    RepairResult repaired = balance_repair(g, colored, seeds);
    RecolorReport rec = recolor(g, repaired.coloring, o.criterion, o.strategy, sseed);
    std::int64_t red = 0;
    for (Color c : rec.coloring.color) red += c == Color::kRed;
    std::int64_t blue = o.n - red;
    std::int64_t imbalance = std::llabs(red - blue);
    double cut_per_n = static_cast<double>(rec.cut_after) / static_cast<double>(o.n);
    cut_per_n_sum += cut_per_n;

    runs.push_back({{"rep", rep},
                    {"seed_graph", gseed},
                    {"seed_vertices", vseed},
                    {"seed_swaps", sseed},
                    {"perception", "normal"},
                    {"colored_per_step", stats.colored_per_step},
                    {"repair_moves", repaired.moves},
                    {"class_sizes", {red, blue}},
                    {"recolor", recolor_report_to_json(rec)},
                    {"cut_per_n", round_sig(cut_per_n)}});
    rows.push_back({std::to_string(rep), std::to_string(gseed),
                    std::to_string(repaired.moves), std::to_string(imbalance),
                    std::to_string(rec.left_size), std::to_string(rec.right_size),
                    std::to_string(rec.swap_size), std::to_string(rec.cut_before),
                    std::to_string(rec.cut_after), num(cut_per_n)});
    std::printf("rep %d: cut/n %.6g  swap %lld  imbalance %lld  repair_moves %lld\n",
                rep, cut_per_n, static_cast<long long>(rec.swap_size),
                static_cast<long long>(imbalance),
                static_cast<long long>(repaired.moves));
  }
  json rep = report_envelope(config_echo(o), o.seed, hash);
  rep["runs"] = runs;
  rep["summary"] = {{"mean_cut_per_n", round_sig(cut_per_n_sum / o.reps)}};
  write_report(o.out_path, rep);
  write_with_dirs(sibling_path(o.out_path, ".csv"),
                  to_csv({"rep", "seed_graph", "repair_moves", "imbalance",
                          "miscolored_left", "miscolored_right", "swap_size",
                          "cut_before", "cut_after", "cut_per_n"},
                         rows));
  std::printf("mean cut/n %.6g over %d reps\n", cut_per_n_sum / o.reps, o.reps);
  return kOk;
}

int cmd_maxcut(Options o) {
  ScheduleFile sf = load_schedule(o);
  std::uint64_t hash = schedule_hash(sf.steps);
  if (o.out_path.empty()) o.out_path = "maxcut_report.json";

  CounterRng master(o.seed);
  json runs = json::array();
  std::vector<std::vector<std::string>> rows;
  double sum_b = 0.0, sum_a = 0.0, min_b = 1e300;
  for (int rep = 0; rep < o.reps; ++rep) {
    std::uint64_t a = static_cast<std::uint64_t>(rep);
    std::uint64_t gseed = master.bits(Purpose::kGraphSample, a);
    std::uint64_t vseed = master.bits(Purpose::kVertexSeed, a);
    std::uint64_t sseed = master.bits(Purpose::kGreedyRestart, a);
    Graph g = sample_regular_graph(o.n, o.d, gseed, o.sample_mode);
    SeedTable seeds(vseed);
    ColoringAssignment blind =
        run_schedule(g, sf.steps, seeds, Perception::kColorblind);
    std::int64_t cut_b_before = cut_size(g, blind);
    RepairResult repair = balance_repair_raising(g, blind, sseed);
    RaiseOutcome raised = raise_cut(g, repair.coloring, sseed);
    // Coupled run: same graph, same seed table, normal perception.
    ColoringAssignment normal =
        run_schedule(g, sf.steps, seeds, Perception::kNormal);
    std::int64_t cut_a = cut_size(g, normal);

    double nb = static_cast<double>(o.n);
    double b_per_n = raised.cut_after / nb;
    double a_per_n = cut_a / nb;
    sum_b += b_per_n;
    sum_a += a_per_n;
    min_b = std::min(min_b, b_per_n);
    runs.push_back({{"rep", rep},
                    {"seed_graph", gseed},
                    {"seed_vertices", vseed},
                    {"seed_swaps", sseed},
                    {"cut_b_before", cut_b_before},
                    {"cut_b_after", raised.cut_after},
                    {"cut_a", cut_a},
                    {"cut_b_per_n", round_sig(b_per_n)},
                    {"cut_a_per_n", round_sig(a_per_n)},
                    {"sum_per_n", round_sig(a_per_n + b_per_n)},
                    {"repair_moves", repair.moves},
                    {"aligned_red", raised.aligned_red},
                    {"aligned_blue", raised.aligned_blue},
                    {"swap_size", raised.swap_size}});
    rows.push_back({std::to_string(rep), std::to_string(gseed),
                    std::to_string(cut_b_before),
                    std::to_string(raised.cut_after), std::to_string(cut_a),
                    num(b_per_n), num(a_per_n), num(a_per_n + b_per_n)});
    std::printf("rep %d: cut_B/n %.6g  cut_A/n %.6g  repair %lld  swap %lld\n",
                rep, b_per_n, a_per_n, static_cast<long long>(repair.moves),
                static_cast<long long>(raised.swap_size));
  }
  json rep = report_envelope(config_echo(o), o.seed, hash);
  rep["runs"] = runs;
  rep["summary"] = {{"mean_cut_b_per_n", round_sig(sum_b / o.reps)},
                    {"mean_cut_a_per_n", round_sig(sum_a / o.reps)},
                    {"min_cut_b_per_n", round_sig(min_b)}};
  write_report(o.out_path, rep);
  write_with_dirs(sibling_path(o.out_path, ".csv"),
                  to_csv({"rep", "seed_graph", "cut_b_before", "cut_b_after",
                          "cut_a", "cut_b_per_n", "cut_a_per_n", "sum_per_n"},
                         rows));
  std::printf("mean cut_B/n %.6g  mean cut_A/n %.6g over %d reps\n",
              sum_b / o.reps, sum_a / o.reps, o.reps);
  return kOk;
}

int cmd_cycles(Options o) {
  if (o.out_path.empty()) o.out_path = "cycles_report.json";
  CounterRng master(o.seed);
  json runs = json::array();
  std::vector<std::vector<std::string>> rows;
  int nk = o.kmax - 2;  // k = 3..kmax
  std::vector<double> sum(nk, 0.0), sumsq(nk, 0.0);
  for (int rep = 0; rep < o.reps; ++rep) {
    std::uint64_t gseed = master.bits(Purpose::kGraphSample, static_cast<std::uint64_t>(rep));
    Graph g = sample_regular_graph(o.n, o.d, gseed, o.sample_mode);
    CycleCensus census = count_cycles(g, o.kmax);
    double treelike = treelike_fraction(g, 2);
    double bound = error_upper_bound(census, 2, o.d, o.n);
    json counts = json::object();
    std::vector<std::string> row{std::to_string(rep), std::to_string(gseed)};
    for (int k = 3; k <= o.kmax; ++k) {
      double x = static_cast<double>(census.of(k));
      sum[k - 3] += x;
      sumsq[k - 3] += x * x;
      counts[std::to_string(k)] = census.of(k);
      row.push_back(std::to_string(census.of(k)));
    }
    row.push_back(num(treelike));
    row.push_back(num(bound));
    runs.push_back({{"rep", rep},
                    {"seed_graph", gseed},
                    {"counts", counts},
                    {"treelike_r2", round_sig(treelike)},
                    {"error_bound_r2", round_sig(bound)}});
    rows.push_back(row);
  }
  json summary = json::object();
  for (int k = 3; k <= o.kmax; ++k) {
    double mean = sum[k - 3] / o.reps;
    double lambda = poisson_cycle_mean(o.d, k);
    json entry = {{"mean", round_sig(mean)}, {"lambda", round_sig(lambda)}};
    if (o.reps >= 2) {
      double var = (sumsq[k - 3] - o.reps * mean * mean) / (o.reps - 1);
      double se = std::sqrt(std::max(var, 0.0) / o.reps);
      entry["se"] = round_sig(se);
      if (se > 0) entry["z"] = round_sig((mean - lambda) / se);
    }
    summary[std::to_string(k)] = entry;
    std::printf("k=%d mean %.6g lambda %.6g%s\n", k, mean, lambda,
                o.reps >= 2 ? "" : " (single sample)");
  }
  json rep = report_envelope(config_echo(o), o.seed, 0);
  rep["runs"] = runs;
  rep["summary"] = summary;
  write_report(o.out_path, rep);
  std::vector<std::string> header{"rep", "seed_graph"};
  for (int k = 3; k <= o.kmax; ++k) header.push_back("k" + std::to_string(k));
  header.push_back("treelike_r2");
  header.push_back("error_bound_r2");
  write_with_dirs(sibling_path(o.out_path, ".csv"), to_csv(header, rows));
  return kOk;
}

int cmd_internal(Options o) {
  // Optional schedule: when given, the start partition is the repaired
  // bisection the local algorithm produces; otherwise a random balanced split.
  std::optional<ScheduleFile> sf;
  std::uint64_t hash = 0;
  if (!o.schedule_path.empty()) {
    sf = load_schedule(o);
    hash = schedule_hash(sf->steps);
  }
  if (o.out_path.empty()) o.out_path = "internal_report.json";

  CounterRng master(o.seed);
  json runs = json::array();
  std::vector<std::vector<std::string>> rows;
  int ok_count = 0;
  for (int rep = 0; rep < o.reps; ++rep) {
    std::uint64_t a = static_cast<std::uint64_t>(rep);
    std::uint64_t gseed = master.bits(Purpose::kGraphSample, a);
    std::uint64_t vseed = master.bits(Purpose::kVertexSeed, a);
    std::uint64_t iseed = master.bits(Purpose::kInternalSearch, a);
    Graph g = sample_regular_graph(o.n, o.d, gseed, o.sample_mode);

    Partition start;
    start.side.assign(static_cast<std::size_t>(o.n), 0);
    if (sf) {
      SeedTable seeds(vseed);
      ColoringAssignment colored =
          run_schedule(g, sf->steps, seeds, Perception::kNormal);
      RepairResult repaired = balance_repair(g, colored, seeds);
      for (std::int64_t v = 0; v < o.n; ++v)
        start.side[v] = repaired.coloring.color[v] == Color::kBlue;
    } else {
      for (std::int64_t v = 0; v < o.n / 2; ++v) start.side[v] = 1;
      CounterRng mixer(vseed);
      RngStream stream(mixer, Purpose::kBalanceRepair, 0);
      stream.shuffle(start.side);
    }

    std::optional<Partition> found =
        internal_search(g, start, o.internal_max_moves, iseed, o.internal_max_sideways);
    const Partition& result = found ? *found : start;
    InternalCheck cert = check_internal(g, result);
    ok_count += cert.ok;
    auto sizes = result.class_sizes();
    runs.push_back({{"rep", rep},
                    {"seed_graph", gseed},
                    {"seed_start", vseed},
                    {"seed_search", iseed},
                    {"found", static_cast<bool>(found)},
                    {"certificate", certificate_to_json(cert, result)}});
    rows.push_back({std::to_string(rep), std::to_string(gseed),
                    cert.ok ? "1" : "0", std::to_string(sizes.first),
                    std::to_string(sizes.second),
                    std::to_string(cert.violations.size())});
    std::printf("rep %d: %s\n", rep, cert.ok ? "internal" : "not internal");
  }
  json rep = report_envelope(config_echo(o), o.seed, hash);
  rep["runs"] = runs;
  rep["summary"] = {
      {"ok_count", ok_count},
      {"ok_fraction", round_sig(static_cast<double>(ok_count) / o.reps)}};
  write_report(o.out_path, rep);
  write_with_dirs(sibling_path(o.out_path, ".csv"),
                  to_csv({"rep", "seed_graph", "ok", "class_a", "class_b",
                          "violations"},
                         rows));
  std::printf("internal ok %d/%d\n", ok_count, o.reps);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local bisection / max-cut pipeline"};
  app.fallthrough();
  app.require_subcommand(1);

  int d = 0;
  double eps = 0.0;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  int reps = 0;
  std::string mode_s, criterion_s, strategy_s, schedule_path, out_path, config_path;
  bool check = false;

  app.add_option("--d", d, "vertex degree");
  app.add_option("--eps", eps, "mass colored per schedule step");
  app.add_option("--mode", mode_s, "evolution kernel: exact | simplified");
  app.add_option("--n", n, "graph size");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--reps", reps, "independent repetitions");
  app.add_option("--criterion", criterion_s, "miscolored test: terminal | strict");
  app.add_option("--strategy", strategy_s, "swap search: greedy | exact");
  app.add_option("--schedule", schedule_path, "schedule file to replay");
  app.add_option("--out", out_path, "report path (.json; CSV written alongside)");
  app.add_option("--config", config_path, "defaults file (versioned)");
  app.add_flag("--check", check, "tree only: compare against the golden headline rows");

  CLI::App* sub_tree = app.add_subcommand("tree", "evolve the measure; write schedule + statistics");
  CLI::App* sub_graph = app.add_subcommand("graph", "sample, run schedule, repair balance, recolor");
  CLI::App* sub_maxcut = app.add_subcommand("maxcut", "colorblind run + cut-raising swaps, coupled normal run");
  CLI::App* sub_cycles = app.add_subcommand("cycles", "short-cycle census vs limit means");
  CLI::App* sub_internal = app.add_subcommand("internal", "internal-partition search + certificate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  Options o;
  try {
    json defs = load_defaults(o, config_path, argv[0]);
    o.d = app.count("--d") ? d : defs.at("d").get<int>();
    o.eps = app.count("--eps") ? eps : defs.at("eps").get<double>();
    o.mode = mode_from_name(app.count("--mode") ? mode_s
                                                : defs.at("mode").get<std::string>());
    o.n = app.count("--n") ? n : defs.at("n").get<std::int64_t>();
    o.seed = app.count("--seed") ? seed : defs.at("seed").get<std::uint64_t>();
    o.reps = app.count("--reps") ? reps : defs.at("reps").get<int>();
    o.criterion = criterion_from_name(
        app.count("--criterion") ? criterion_s : defs.at("criterion").get<std::string>());
    o.strategy = strategy_from_name(
        app.count("--strategy") ? strategy_s : defs.at("strategy").get<std::string>());
    std::string sm = defs.at("sample_mode").get<std::string>();
    if (sm == "erase") o.sample_mode = SampleMode::kErase;
    else if (sm == "reject") o.sample_mode = SampleMode::kReject;
    else throw std::invalid_argument("sample_mode must be erase or reject");
    o.kmax = defs.at("kmax").get<int>();
    o.internal_max_moves = defs.at("internal_max_moves").get<std::int64_t>();
    o.internal_max_sideways = defs.at("internal_max_sideways").get<int>();
    o.d_given = app.count("--d") > 0;
    o.eps_given = app.count("--eps") > 0;
    o.mode_given = app.count("--mode") > 0;
    o.schedule_path = schedule_path;
    o.out_path = out_path;
    o.check = check;

    if (o.reps < 1) throw std::invalid_argument("--reps must be >= 1");
    if (o.kmax < 3 || o.kmax > 12)
      throw std::invalid_argument("kmax must lie in [3, 12]");
    if (o.check && !sub_tree->parsed())
      throw std::invalid_argument("--check applies to the tree subcommand only");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  }

  try {
    if (sub_tree->parsed()) {
      o.subcommand = "tree";
      return cmd_tree(std::move(o));
    }
    if (sub_graph->parsed()) {
      o.subcommand = "graph";
      return cmd_graph(std::move(o));
    }
    if (sub_maxcut->parsed()) {
      o.subcommand = "maxcut";
      return cmd_maxcut(std::move(o));
    }
    if (sub_cycles->parsed()) {
      o.subcommand = "cycles";
      return cmd_cycles(std::move(o));
    }
    if (sub_internal->parsed()) {
      o.subcommand = "internal";
      return cmd_internal(std::move(o));
    }
    return kConfigError;  // unreachable: require_subcommand(1)
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  }
}
