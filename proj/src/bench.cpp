#include "sketchfeas/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"
#include "sketchfeas/error.hpp"
#include "sketchfeas/gen.hpp"
#include "sketchfeas/kernels.hpp"
#include "sketchfeas/rng.hpp"

namespace sketchfeas {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_fixed(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string dist_title(Distribution d) {
  switch (d) {
    case Distribution::Uniform01: return "Uniform";
    case Distribution::Exponential: return "Exponential";
    case Distribution::Gamma: return "Gamma";
  }
  return "?";
}

Domain parse_mode(const std::string& s) {
  if (s == "lp") return Domain::ContinuousNonneg;
  if (s == "ip") return Domain::IntegerNonneg;
  throw UsageError("unknown mode '" + s + "' (expected lp|ip)");
}

Label parse_label(const std::string& s) {
  if (s == "feasible") return Label::Feasible;
  if (s == "infeasible") return Label::Infeasible;
  throw UsageError("unknown target '" + s + "' (expected feasible|infeasible)");
}

}  // namespace

std::size_t resolve_k(const ExperimentConfig& cfg) {
  if (cfg.k != 0) {
    if (cfg.k > cfg.m) throw UsageError("experiment: k must be <= m");
    return cfg.k;
  }
  if (!(cfg.rule.eps > 0.0 && cfg.rule.eps < 1.0) || !(cfg.rule.C > 0.0)) {
    throw UsageError("experiment: k rule needs eps in (0,1) and C > 0");
  }
  const double raw = std::ceil(2.0 * std::log(static_cast<double>(cfg.n)) /
                               (cfg.rule.C * cfg.rule.eps * cfg.rule.eps));
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)), 1, cfg.m);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const SolverOptions& opts) {
  if (cfg.instances < 1 || cfg.projectors_per_instance < 1 || cfg.m < 1 || cfg.n < 1) {
    throw UsageError("experiment: counts must be >= 1");
  }
  const std::size_t k = resolve_k(cfg);
  const std::size_t projectors = cfg.projectors_per_instance;

  std::vector<std::optional<FeasInstance>> instances(cfg.instances);
  std::vector<Status> original_status(cfg.instances, Status::Unknown);
  std::vector<double> original_time(cfg.instances, 0.0);
  std::vector<std::string> errors(cfg.instances);

  kernels::parallel::for_each_index(cfg.instances, [&](std::size_t i) {
    GenSpec spec;
    spec.dist = cfg.dist;
    spec.m = cfg.m;
    spec.n = cfg.n;
    spec.target = cfg.target;
    spec.seed = rng::derive_seed(cfg.master_seed, i);
    spec.domain = cfg.mode;
    try {
      instances[i] = generate(spec, opts);
      const auto start = Clock::now();
      original_status[i] = solve(*instances[i], opts).status;
      original_time[i] = seconds_since(start);
    } catch (const std::exception& e) {
      errors[i] = "instance " + std::to_string(i) + ": " + e.what();
    }
  });
  for (const auto& e : errors)
    if (!e.empty()) throw Error("run_experiment: " + e);

  const std::size_t total = cfg.instances * projectors;
  std::vector<TrialRecord> trials(total);
  std::vector<std::string> trial_errors(total);
  kernels::parallel::for_each_index(total, [&](std::size_t idx) {
    const std::size_t i = idx / projectors;
    const std::size_t j = idx % projectors;
    TrialRecord& rec = trials[idx];
    rec.instance_id = i;
    rec.projector_id = j;
    rec.original_status = original_status[i];
    rec.original_time = original_time[i];
    try {
      const Projector t =
          sample_projector(cfg.family, k, cfg.m, rng::derive_seed(cfg.master_seed, i, j));
      const auto start = Clock::now();
      const FeasInstance projected = apply_to_instance(t, *instances[i]);
      rec.projection_time = seconds_since(start);
      rec.projected_status = solve(projected, opts).status;
      rec.projected_time = seconds_since(start);
    } catch (const std::exception& e) {
      trial_errors[idx] = "instance " + std::to_string(i) + ", projector " + std::to_string(j) +
                          ": " + e.what();
    }
  });
  for (const auto& e : trial_errors)
    if (!e.empty()) throw Error("run_experiment: " + e);

  const Status wanted = cfg.target == Label::Infeasible ? Status::Infeasible : Status::Feasible;
  std::size_t agree = 0;
  double proj_sum = 0.0;
  for (const auto& rec : trials) {
    agree += rec.projected_status == wanted;
    proj_sum += rec.projected_time;
  }
  double orig_sum = 0.0;
  for (double t : original_time) orig_sum += t;

  ReportRow row{cfg.dist,
                cfg.mode,
                cfg.m,
                cfg.n,
                k,
                cfg.instances,
                projectors,
                100.0 * static_cast<double>(agree) / static_cast<double>(total),
                orig_sum / static_cast<double>(cfg.instances),
                proj_sum / static_cast<double>(total)};
  return ExperimentResult{std::move(trials), Report{{row}}};
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  throw UsageError("unknown report format '" + name + "' (expected csv|markdown)");
}

std::string emit_report(const Report& report, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "dist,mode,m,n,k,instances,projectors,accuracy_pct,avg_orig_s,avg_proj_s\n";
    for (const auto& r : report.rows) {
      out << to_string(r.dist) << ',' << to_string(r.mode) << ',' << r.m << ',' << r.n << ','
          << r.k << ',' << r.instances << ',' << r.projectors << ','
          << format_double(r.accuracy_pct) << ',' << format_double(r.avg_orig_s) << ','
          << format_double(r.avg_proj_s) << '\n';
    }
    return out.str();
  }

  // One table per mode, rows keyed by (m, n, k), one column group per
  // distribution in the order Uniform, Exponential, Gamma.
  for (Domain mode : {Domain::ContinuousNonneg, Domain::IntegerNonneg}) {
    std::vector<Distribution> dists;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::map<Distribution, ReportRow>>
        grid;
    for (const auto& r : report.rows) {
      if (r.mode != mode) continue;
      if (std::find(dists.begin(), dists.end(), r.dist) == dists.end()) dists.push_back(r.dist);
      grid[{r.m, r.n, r.k}].insert_or_assign(r.dist, r);
    }
    if (grid.empty()) continue;
    std::sort(dists.begin(), dists.end());
    out << "### " << (mode == Domain::ContinuousNonneg ? "LP" : "IP") << "\n\n| m | n | k |";
    for (auto d : dists) out << ' ' << dist_title(d) << " Acc. | Orig. | Proj. |";
    out << "\n|---|---|---|";
    for (std::size_t i = 0; i < dists.size(); ++i) out << "---|---|---|";
    out << '\n';
    for (const auto& [key, by_dist] : grid) {
      out << "| " << std::get<0>(key) << " | " << std::get<1>(key) << " | " << std::get<2>(key)
          << " |";
      for (auto d : dists) {
        auto it = by_dist.find(d);
        if (it == by_dist.end()) {
          out << " | | |";
          continue;
        }
        out << ' ' << format_fixed(it->second.accuracy_pct, 1) << "% | "
            << format_fixed(it->second.avg_orig_s, 4) << "s | "
            << format_fixed(it->second.avg_proj_s, 4) << "s |";
      }
      out << '\n';
    }
    out << '\n';
  }
  return out.str();
}

Report parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "dist,mode,m,n,k,instances,projectors,accuracy_pct,avg_orig_s,avg_proj_s") {
    throw ParseError("header", "unexpected csv header");
  }
  Report report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 10) throw ParseError("row", "expected 10 cells, got " + std::to_string(cells.size()));
    ReportRow r{parse_distribution(cells[0]),
                parse_mode(cells[1]),
                std::stoul(cells[2]),
                std::stoul(cells[3]),
                std::stoul(cells[4]),
                std::stoul(cells[5]),
                std::stoul(cells[6]),
                std::stod(cells[7]),
                std::stod(cells[8]),
                std::stod(cells[9])};
    report.rows.push_back(r);
  }
  return report;
}

std::vector<ExperimentConfig> parse_bench_config(const std::string& json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  const json list = doc.contains("experiments") ? doc.at("experiments") : json::array({doc});
  if (!list.is_array()) throw ParseError("experiments", "must be an array");

  std::vector<ExperimentConfig> configs;
  for (const auto& e : list) {
    ExperimentConfig cfg;
    try {
      cfg.dist = parse_distribution(e.value("dist", std::string("uniform")));
      cfg.m = e.at("m").get<std::size_t>();
      cfg.n = e.at("n").get<std::size_t>();
      cfg.mode = parse_mode(e.value("mode", std::string("lp")));
      cfg.k = e.value("k", std::size_t{0});
      if (e.contains("k_rule")) {
        cfg.rule.eps = e.at("k_rule").value("eps", cfg.rule.eps);
        cfg.rule.C = e.at("k_rule").value("C", cfg.rule.C);
      }
      cfg.instances = e.value("instances", cfg.instances);
      cfg.projectors_per_instance = e.value("projectors", cfg.projectors_per_instance);
      cfg.family = parse_projector_family(e.value("family", std::string("gaussian")));
      cfg.master_seed = e.value("seed", std::uint64_t{0});
      cfg.target = parse_label(e.value("target", std::string("infeasible")));
    } catch (const json::exception& ex) {
      throw ParseError("experiments", ex.what());
    }
    configs.push_back(cfg);
  }
  return configs;
}

}  // namespace sketchfeas
