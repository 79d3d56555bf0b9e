#include "sketchfeas/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sketchfeas/bench.hpp"
#include "sketchfeas/bounds.hpp"
#include "sketchfeas/cone.hpp"
#include "sketchfeas/error.hpp"
#include "sketchfeas/gen.hpp"
#include "sketchfeas/instance_io.hpp"
#include "sketchfeas/mc.hpp"
#include "sketchfeas/projector.hpp"
#include "sketchfeas/solver.hpp"

namespace sketchfeas {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void print(std::ostream& out, const ordered_json& doc) { out << doc.dump() << '\n'; }

ordered_json verdict_json(const FeasInstance& inst, const Verdict& v, double tau) {
  ordered_json doc;
  doc["status"] = to_string(v.status);
  doc["iterations"] = v.iterations;
  if (v.witness) {
    doc["witness"] = v.witness->values();
    doc["witness_verified"] = check_witness(inst, *v.witness, tau);
  }
  if (v.certificate) {
    doc["certificate"] = v.certificate->values();
    doc["certificate_verified"] = check_farkas(inst, *v.certificate, tau);
  }
  if (!v.note.empty()) doc["note"] = v.note;
  return doc;
}

ordered_json estimate_json(const McEstimate& e) {
  ordered_json doc;
  doc["trials"] = e.trials;
  doc["successes"] = e.successes;
  doc["rate"] = e.rate;
  doc["wilson_low"] = e.wilson_low;
  if (e.wrong_direction) doc["wrong_direction"] = true;
  return doc;
}

ordered_json distance_json(const ConeDistanceReport& r) {
  ordered_json doc;
  doc["p"] = r.p.values();
  doc["d"] = r.d;
  doc["D"] = r.D;
  doc["lambda"] = r.lambda.values();
  doc["iterations"] = r.iterations;
  doc["kkt_residual"] = r.kkt_residual;
  return doc;
}

FeasInstance normalized(const FeasInstance& inst) {
  const double bn = two_norm(inst.b);
  if (bn == 0.0) throw UsageError("--normalize: b is the zero vector");
  return FeasInstance(normalize_columns(inst.A), scale(inst.b, 1.0 / bn), inst.domain);
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stoul(cell));
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-projection feasibility toolkit for Ax = b, x >= 0", "sketchfeas"};
  app.require_subcommand(1);

  // gen
  std::string dist = "uniform", mode = "lp", target = "feasible", out_path;
  std::size_t m = 0, n = 0;
  std::uint64_t seed = 0;
  bool normalize = false;
  auto* gen = app.add_subcommand("gen", "Generate a certified random instance");
  gen->add_option("--dist", dist, "uniform|exp|gamma")->check(CLI::IsMember({"uniform", "exp", "gamma"}));
  gen->add_option("--m", m, "rows")->required();
  gen->add_option("--n", n, "columns")->required();
  gen->add_option("--mode", mode, "lp|ip")->check(CLI::IsMember({"lp", "ip"}));
  gen->add_option("--target", target, "feasible|infeasible")
      ->check(CLI::IsMember({"feasible", "infeasible"}));
  gen->add_flag("--normalize", normalize, "unit-normalize columns of A and b");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out_path, "output instance file")->required();

  // solve
  std::string in_path;
  double tol = SolverOptions{}.tau_feas;
  auto* solve_cmd = app.add_subcommand("solve", "Decide feasibility of an instance file");
  solve_cmd->add_option("--in", in_path, "instance file")->required();
  solve_cmd->add_option("--tol", tol, "feasibility tolerance");

  // project
  std::size_t k = 0;
  std::string family = "gaussian";
  auto* project = app.add_subcommand("project", "Apply a random projector to an instance");
  project->add_option("--in", in_path, "instance file")->required();
  project->add_option("--k", k, "target dimension")->required();
  project->add_option("--family", family, "gaussian|rademacher|sparse")
      ->check(CLI::IsMember({"gaussian", "rademacher", "sparse"}));
  project->add_option("--seed", seed, "projector seed");
  project->add_option("--out", out_path, "output instance file")->required();

  // geometry
  std::size_t samples = 100;
  auto* geometry = app.add_subcommand("geometry", "Cone and hull geometry of (A, b)");
  geometry->require_subcommand(1);
  std::vector<CLI::App*> geo_cmds;
  for (const char* name : {"scp", "project-cone", "hull-dist", "anorm", "mua"}) {
    auto* sub = geometry->add_subcommand(name);
    sub->add_option("--in", in_path, "instance file (columns of A, and b)")->required();
    sub->add_flag("--normalize", normalize, "unit-normalize columns of A and b first");
    geo_cmds.push_back(sub);
  }
  geo_cmds[4]->add_option("--samples", samples, "random cone points");
  geo_cmds[4]->add_option("--seed", seed, "sampling seed");

  // bounds
  std::string kind;
  std::size_t points = 2, card = 1, bound_n = 1;
  double eps = 0.1, bound_k = 0.0, C = kDefaultC;
  auto* bounds = app.add_subcommand("bounds", "Evaluate a success-probability lower bound");
  bounds->add_option("--kind", kind, "pair|rlm|pointed|hull|cone")
      ->required()
      ->check(CLI::IsMember({"pair", "rlm", "pointed", "hull", "cone"}));
  bounds->add_option("--points", points, "point count (pair)");
  bounds->add_option("--card", card, "|X| (rlm)");
  bounds->add_option("--n", bound_n, "generator count (pointed, hull, cone)");
  bounds->add_option("--eps", eps, "distortion");
  bounds->add_option("--k", bound_k, "projected dimension")->required();
  bounds->add_option("--C", C, "sub-Gaussian constant");

  // verify
  std::size_t trials = 10000, projectors = 100, source_m = 100;
  bool squared = false;
  std::string eps_grid = "0.1,0.2,0.5", k_grid = "50,200,800";
  auto* verify = app.add_subcommand("verify", "Monte Carlo checks of the probability bounds");
  verify->require_subcommand(1);
  auto* v_dist = verify->add_subcommand("distortion");
  auto* v_kernel = verify->add_subcommand("kernel");
  auto* v_pres = verify->add_subcommand("preservation");
  auto* v_cal = verify->add_subcommand("calibrate");
  for (auto* sub : {v_dist, v_kernel, v_pres, v_cal}) {
    sub->add_option("--family", family, "gaussian|rademacher|sparse")
        ->check(CLI::IsMember({"gaussian", "rademacher", "sparse"}));
    sub->add_option("--seed", seed, "master seed");
  }
  for (auto* sub : {v_dist, v_kernel}) {
    sub->add_option("--k", k, "target dimension")->required();
    sub->add_option("--m", source_m, "source dimension");
    sub->add_option("--trials", trials, "trials");
  }
  v_dist->add_option("--eps", eps, "distortion");
  v_dist->add_flag("--squared", squared, "use the squared-norm criterion");
  v_pres->add_option("--in", in_path, "labelled instance file")->required();
  v_pres->add_option("--k", k, "target dimension")->required();
  v_pres->add_option("--projectors", projectors, "projectors to sample");
  v_cal->add_option("--eps-grid", eps_grid, "comma-separated eps values");
  v_cal->add_option("--k-grid", k_grid, "comma-separated k values");
  v_cal->add_option("--trials", trials, "trials per k");

  // bench
  std::string config_path, format = "csv";
  auto* bench = app.add_subcommand("bench", "Run projected-vs-original experiments");
  bench->add_option("--config", config_path, "experiment JSON")->required();
  bench->add_option("--out", out_path, "report path, '-' for standard output")->required();
  bench->add_option("--format", format, "csv|markdown")->check(CLI::IsMember({"csv", "markdown"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      GenSpec spec;
      spec.dist = parse_distribution(dist);
      spec.m = m;
      spec.n = n;
      spec.target = target == "feasible" ? Label::Feasible : Label::Infeasible;
      spec.normalize_columns = normalize;
      spec.seed = seed;
      spec.domain = mode == "lp" ? Domain::ContinuousNonneg : Domain::IntegerNonneg;
      const FeasInstance inst = generate(spec);
      save_instance(out_path, inst);
      ordered_json doc;
      doc["out"] = out_path;
      doc["m"] = m;
      doc["n"] = n;
      doc["domain"] = mode;
      doc["label"] = to_string(*inst.label);
      print(out, doc);
    } else if (solve_cmd->parsed()) {
      const FeasInstance inst = load_instance(in_path);
      SolverOptions opts;
      opts.tau_feas = tol;
      print(out, verdict_json(inst, solve(inst, opts), tol));
    } else if (project->parsed()) {
      const FeasInstance inst = load_instance(in_path);
      const Projector t = sample_projector(parse_projector_family(family), k, inst.rows(), seed);
      const FeasInstance projected = apply_to_instance(t, inst);
      save_instance(out_path, projected);
      ordered_json doc;
      doc["out"] = out_path;
      doc["family"] = family;
      doc["k"] = k;
      doc["m"] = inst.rows();
      doc["n"] = inst.cols();
      doc["seed"] = seed;
      print(out, doc);
    } else if (geometry->parsed()) {
      FeasInstance inst = load_instance(in_path);
      if (normalize) inst = normalized(inst);
      ordered_json doc;
      if (geo_cmds[0]->parsed()) {
        const auto cert = scp_solve(inst.A, inst.b);
        doc["c"] = cert.c.values();
        doc["eps"] = cert.eps;
        doc["hull_min_norm"] = dist_to_convhull(inst.A, DenseVector::zeros(inst.rows())).d;
      } else if (geo_cmds[1]->parsed()) {
        doc = distance_json(project_onto_cone(inst.A, inst.b));
      } else if (geo_cmds[2]->parsed()) {
        doc = distance_json(dist_to_convhull(inst.A, inst.b));
      } else if (geo_cmds[3]->parsed()) {
        const auto r = a_norm(inst.A, inst.b);
        doc["value"] = r.value;
        doc["lambda"] = r.lambda.values();
      } else {
        doc["mu_A_lower_bound"] = mu_a_lower_bound(inst.A, samples, seed);
        doc["samples"] = samples;
      }
      print(out, doc);
    } else if (bounds->parsed()) {
      BoundReport r = [&] {
        if (kind == "pair") return pair_distortion_bound(points, eps, bound_k, C);
        if (kind == "rlm") return rlm_finite_bound(card, bound_k, C);
        if (kind == "pointed") return pointed_cone_bound(bound_n, eps, bound_k, C);
        if (kind == "hull") return convhull_bound(bound_n, eps, bound_k, C);
        return cone_thm2_bound(bound_n, eps, bound_k, C);
      }();
      ordered_json doc;
      doc["kind"] = to_string(r.kind);
      doc["inputs"] = r.inputs;
      doc["lower_bound"] = r.lower_bound;
      doc["raw"] = r.raw;
      doc["vacuous"] = r.vacuous();
      if (!r.note.empty()) doc["note"] = r.note;
      print(out, doc);
    } else if (verify->parsed()) {
      const ProjectorFamily fam = parse_projector_family(family);
      if (v_dist->parsed()) {
        print(out, estimate_json(estimate_distortion(
                       fam, k, source_m, eps, trials, seed,
                       squared ? DistortionCriterion::SquaredNorm : DistortionCriterion::Norm)));
      } else if (v_kernel->parsed()) {
        print(out, estimate_json(estimate_kernel_avoidance(fam, k, source_m, trials, seed)));
      } else if (v_pres->parsed()) {
        const FeasInstance inst = load_instance(in_path);
        print(out, estimate_json(
                       estimate_infeasibility_preservation(inst, fam, k, projectors, seed)));
      } else {
        const Calibration cal =
            calibrate(fam, parse_real_list(eps_grid), parse_count_list(k_grid), trials, seed);
        ordered_json doc;
        doc["C_hat"] = cal.c_hat;
        doc["points"] = ordered_json::array();
        for (const auto& p : cal.points) {
          ordered_json pt;
          pt["eps"] = p.eps;
          pt["k"] = p.k;
          pt["rate"] = p.estimate.rate;
          pt["wilson_low"] = p.estimate.wilson_low;
          pt["C_limit"] = p.c_limit;
          doc["points"].push_back(pt);
        }
        print(out, doc);
      }
    } else if (bench->parsed()) {
      std::ifstream cfg_in(config_path);
      if (!cfg_in) throw UsageError("cannot open '" + config_path + "'");
      std::stringstream buf;
      buf << cfg_in.rdbuf();
      Report report;
      for (const auto& cfg : parse_bench_config(buf.str())) {
        auto result = run_experiment(cfg);
        report.rows.insert(report.rows.end(), result.report.rows.begin(), result.report.rows.end());
      }
      const std::string text = emit_report(report, parse_report_format(format));
      if (out_path == "-") {
        out << text;
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw UsageError("cannot open '" + out_path + "' for writing");
        file << text;
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "usage error: malformed number (" << e.what() << ")\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace sketchfeas
