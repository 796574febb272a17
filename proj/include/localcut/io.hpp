#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "localcut/graph_model.hpp"
#include "localcut/partition_checks.hpp"
#include "localcut/recoloring.hpp"
#include "localcut/tree_engine.hpp"

namespace localcut {

// Stamped into every report; replaying a report requires the same generator.
inline constexpr const char* kGeneratorId = "splitmix64-counter-v1";
inline constexpr const char* kCodeVersion = "1.0.0";

const char* mode_name(EvolveMode mode);
EvolveMode mode_from_name(const std::string& name);
const char* criterion_name(MiscolorCriterion criterion);
MiscolorCriterion criterion_from_name(const std::string& name);
const char* strategy_name(SwapStrategy strategy);
SwapStrategy strategy_from_name(const std::string& name);

std::uint64_t fnv1a64(std::string_view bytes);

// Hash of the canonical step serialization (full double precision), so any
// output produced from a schedule can be tied back to it.
std::uint64_t schedule_hash(const std::vector<StepParams>& schedule);

// Nearest double with the given number of significant decimal digits;
// reports use 6 to match the published tables.
double round_sig(double v, int digits = 6);

// Schedule file: header fields plus one object per step.
nlohmann::json schedule_to_json(int d, double eps, EvolveMode mode,
                                const std::vector<StepParams>& schedule);

struct ScheduleFile {
  int d = 0;
  double eps = 0.0;
  EvolveMode mode = EvolveMode::kExact;
  std::vector<StepParams> steps;
};

ScheduleFile schedule_from_json(const nlohmann::json& j);

nlohmann::json tree_report_to_json(const TreeReport& report);
nlohmann::json recolor_report_to_json(const RecolorReport& report);
nlohmann::json census_to_json(const CycleCensus& census, int d);
nlohmann::json certificate_to_json(const InternalCheck& check,
                                   const Partition& partition);

// Common wrapper for every command output: configuration echo, seed,
// generator id, code version, and the schedule hash when one was consumed.
// The timestamp sits in its own field so the rest stays byte-reproducible.
nlohmann::json report_envelope(const nlohmann::json& config,
                               std::uint64_t master_seed,
                               std::uint64_t sched_hash);

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace localcut
