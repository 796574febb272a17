#include "localcut/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace localcut {

const char* mode_name(EvolveMode mode) {
  return mode == EvolveMode::kExact ? "exact" : "simplified";
}

EvolveMode mode_from_name(const std::string& name) {
  if (name == "exact") return EvolveMode::kExact;
  if (name == "simplified") return EvolveMode::kSimplified;
  throw std::invalid_argument("unknown mode: " + name);
}

const char* criterion_name(MiscolorCriterion criterion) {
  return criterion == MiscolorCriterion::kTerminal ? "terminal" : "strict";
}

MiscolorCriterion criterion_from_name(const std::string& name) {
  if (name == "terminal") return MiscolorCriterion::kTerminal;
  if (name == "strict") return MiscolorCriterion::kStrict;
  throw std::invalid_argument("unknown criterion: " + name);
}

const char* strategy_name(SwapStrategy strategy) {
  return strategy == SwapStrategy::kGreedy ? "greedy" : "exact";
}

SwapStrategy strategy_from_name(const std::string& name) {
  if (name == "greedy") return SwapStrategy::kGreedy;
  if (name == "exact") return SwapStrategy::kExact;
  throw std::invalid_argument("unknown strategy: " + name);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t schedule_hash(const std::vector<StepParams>& schedule) {
  std::string canon;
  canon.reserve(schedule.size() * 64);
  char buf[128];
  for (const StepParams& p : schedule) {
    std::snprintf(buf, sizeof buf, "%d:%d,%d:%d:%.17g:%.17g;", p.t,
                  p.dominant.lo, p.dominant.hi, p.multiplicity, p.q, p.q_hat);
    canon += buf;
  }
  return fnv1a64(canon);
}

double round_sig(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

nlohmann::json schedule_to_json(int d, double eps, EvolveMode mode,
                                const std::vector<StepParams>& schedule) {
  nlohmann::json steps = nlohmann::json::array();
  for (const StepParams& p : schedule) {
    steps.push_back({{"t", p.t},
                     {"r_dom", p.dominant.lo},
                     {"b_dom", p.dominant.hi},
                     {"m", p.multiplicity},
                     {"q", p.q},
                     {"q_hat", p.q_hat}});
  }
  return {{"d", d},
          {"eps", eps},
          {"mode", mode_name(mode)},
          {"N", schedule.size()},
          {"steps", std::move(steps)}};
}

ScheduleFile schedule_from_json(const nlohmann::json& j) {
  ScheduleFile f;
  f.d = j.at("d").get<int>();
  f.eps = j.at("eps").get<double>();
  f.mode = mode_from_name(j.at("mode").get<std::string>());
  for (const auto& s : j.at("steps")) {
    StepParams p;
    p.t = s.at("t").get<int>();
    p.dominant = VertexType(s.at("r_dom").get<int>(), s.at("b_dom").get<int>());
    p.multiplicity = s.at("m").get<int>();
    p.q = s.at("q").get<double>();
    p.q_hat = s.at("q_hat").get<double>();
    p.validate(f.d);
    f.steps.push_back(p);
  }
  if (j.at("N").get<std::size_t>() != f.steps.size())
    throw std::invalid_argument("schedule_from_json: N does not match steps");
  return f;
}

nlohmann::json tree_report_to_json(const TreeReport& r) {
  return {{"d", r.d},
          {"eps", r.eps},
          {"mode", mode_name(r.mode)},
          {"steps", r.steps},
          {"cut_per_vertex", round_sig(r.cut)},
          {"miscolored_measure", round_sig(r.miscolored)},
          {"eligible_measure", round_sig(r.eligible)},
          {"improvement", round_sig(r.improvement)},
          {"improved_cut_per_vertex", round_sig(r.improved_cut_delta3)},
          {"improved_cut_delta4", round_sig(r.improved_cut_delta4)},
          {"cut_after_terminal", round_sig(r.cut_after_terminal)},
          {"uncolored_before_finalize", round_sig(r.uncolored_before_finalize)},
          {"final_total_mass", r.final_total_mass},
          {"final_max_asymmetry", r.final_max_asymmetry},
          {"phase1_seconds", round_sig(r.phase1_seconds, 3)},
          {"total_seconds", round_sig(r.total_seconds, 3)}};
}

nlohmann::json recolor_report_to_json(const RecolorReport& r) {
  std::map<std::int64_t, std::int64_t> hist;
  for (std::int64_t d : r.deltas) ++hist[d];
  nlohmann::json histogram = nlohmann::json::object();
  for (const auto& [delta, count] : hist)
    histogram[std::to_string(delta)] = count;
  return {{"criterion", criterion_name(r.criterion)},
          {"left", r.left_size},
          {"right", r.right_size},
          {"conflict_max_degree", r.conflict_max_degree},
          {"isolated_fraction", round_sig(r.isolated_fraction)},
          {"swap_size", r.swap_size},
          {"cut_before", r.cut_before},
          {"cut_after", r.cut_after},
          {"deltas_histogram", std::move(histogram)},
          {"bihole_benchmark", round_sig(r.bihole_benchmark)}};
}

nlohmann::json census_to_json(const CycleCensus& census, int d) {
  nlohmann::json counts = nlohmann::json::object();
  nlohmann::json lambda = nlohmann::json::object();
  for (int k = 3; k <= census.kmax; ++k) {
    counts[std::to_string(k)] = census.of(k);
    lambda[std::to_string(k)] = round_sig(poisson_cycle_mean(d, k));
  }
  return {{"kmax", census.kmax},
          {"counts", std::move(counts)},
          {"poisson_means", std::move(lambda)}};
}

nlohmann::json certificate_to_json(const InternalCheck& check,
                                   const Partition& partition) {
  auto [a, b] = partition.class_sizes();
  nlohmann::json violations = nlohmann::json::array();
  for (const Violation& v : check.violations)
    violations.push_back({{"vertex", v.vertex}, {"own", v.own}, {"other", v.other}});
  return {{"ok", check.ok},
          {"empty_class", check.empty_class},
          {"class_sizes", {a, b}},
          {"violations", std::move(violations)}};
}

nlohmann::json report_envelope(const nlohmann::json& config,
                               std::uint64_t master_seed,
                               std::uint64_t sched_hash) {
  char stamp[32];
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  char hash_hex[24];
  std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                static_cast<unsigned long long>(sched_hash));
  return {{"config", config},
          {"master_seed", master_seed},
          {"generator", kGeneratorId},
          {"code_version", kCodeVersion},
          {"schedule_hash", hash_hex},
          {"timestamp", stamp}};
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      // Values are numbers/identifiers; quote only if a delimiter sneaks in.
      if (cells[i].find_first_of(",\"\n") != std::string::npos) {
        out << '"';
        for (char c : cells[i]) {
          if (c == '"') out << '"';
          out << c;
        }
        out << '"';
      } else {
        out << cells[i];
      }
    }
    out << '\n';
  };
  emit(header);
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("to_csv: ragged row");
    emit(row);
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace localcut
