#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sketchfeas/instance.hpp"
#include "sketchfeas/projector.hpp"
#include "sketchfeas/solver.hpp"

namespace sketchfeas {

// k = ⌈2 ln(n) / (C ε²)⌉, clamped to [1, m].
struct KRule {
  double eps = 0.15;
  double C = 0.25;
};

struct ExperimentConfig {
  Distribution dist = Distribution::Uniform01;
  std::size_t m = 1;
  std::size_t n = 1;
  Domain mode = Domain::ContinuousNonneg;
  std::size_t k = 0;  // 0 selects `rule`
  KRule rule;
  std::size_t instances = 10;
  std::size_t projectors_per_instance = 100;
  ProjectorFamily family = ProjectorFamily::Gaussian;
  std::uint64_t master_seed = 0;
  // Which certified label the generated instances carry; accuracy is the
  // share of projected instances that keep it.
  Label target = Label::Infeasible;
};

std::size_t resolve_k(const ExperimentConfig& cfg);

struct TrialRecord {
  std::size_t instance_id;
  std::size_t projector_id;
  Status original_status;
  Status projected_status;
  double original_time;    // seconds
  double projected_time;   // seconds, includes projection_time
  double projection_time;  // seconds spent forming T·A and T·b
};

struct ReportRow {
  Distribution dist;
  Domain mode;
  std::size_t m;
  std::size_t n;
  std::size_t k;
  std::size_t instances;
  std::size_t projectors;
  double accuracy_pct;
  double avg_orig_s;
  double avg_proj_s;
};

struct Report {
  std::vector<ReportRow> rows;
};

struct ExperimentResult {
  std::vector<TrialRecord> trials;  // sorted by (instance_id, projector_id)
  Report report;                    // one row
};

// Instance i is generated with seed derive_seed(master_seed, i) and its
// projector j with derive_seed(master_seed, i, j).
ExperimentResult run_experiment(const ExperimentConfig& cfg, const SolverOptions& opts = {});

enum class ReportFormat { Csv, Markdown };

ReportFormat parse_report_format(const std::string& name);

// csv columns: dist,mode,m,n,k,instances,projectors,accuracy_pct,avg_orig_s,avg_proj_s
std::string emit_report(const Report& report, ReportFormat format);
Report parse_report_csv(const std::string& text);

// A JSON document holding either one experiment object or
// {"experiments": [ ... ]}.
std::vector<ExperimentConfig> parse_bench_config(const std::string& json_text);

}  // namespace sketchfeas
