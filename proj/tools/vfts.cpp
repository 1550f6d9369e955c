#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vfts/assembly.hpp"
#include "vfts/gen.hpp"
#include "vfts/io.hpp"
#include "vfts/metric.hpp"
#include "vfts/spanner.hpp"
#include "vfts/verify.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

vfts::Spanner read_spanner_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return vfts::read_spanner_csv(in);
}

int run(int argc, char** argv) {
  CLI::App app{"fault-tolerant low-stretch spanners for finite metrics"};
  app.require_subcommand(1);

  // gen
  std::string gen_kind = "uniform-cube", gen_out;
  std::string gen_format = "csv";
  int gen_n = 16, gen_dim = 2;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "generate a point fixture");
  gen->add_option("--kind", gen_kind, "uniform-cube | clustered | exp-spread-line");
  gen->add_option("--n", gen_n)->required();
  gen->add_option("--dim", gen_dim);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--format", gen_format, "csv | json");
  gen->add_option("--out", gen_out)->required();

  // build
  std::string build_in, build_out, build_stats_out;
  double build_eps = 0.25;
  int build_k = 1, build_dim = 0;
  bool build_validate = false;
  auto* build = app.add_subcommand("build", "build a fault-tolerant spanner");
  build->add_option("--in", build_in)->required();
  build->add_option("--eps", build_eps)->required();
  build->add_option("--k", build_k)->required();
  build->add_option("--dim", build_dim, "doubling dimension knob; default: coordinate dim");
  build->add_option("--out", build_out)->required();
  build->add_option("--stats-out", build_stats_out);
  build->add_flag("--validate", build_validate);

  // verify
  std::string ver_points, ver_spanner, ver_mode = "exhaustive", ver_report_out;
  double ver_eps = 0.25;
  int ver_k = 1, ver_trials = 1000, ver_jobs = 1;
  std::uint64_t ver_seed = 1;
  auto* ver = app.add_subcommand("verify", "check stretch/degree/lightness of a spanner file");
  ver->add_option("--points", ver_points)->required();
  ver->add_option("--spanner", ver_spanner)->required();
  ver->add_option("--eps", ver_eps)->required();
  ver->add_option("--k", ver_k)->required();
  ver->add_option("--mode", ver_mode, "exhaustive | sampled");
  ver->add_option("--trials", ver_trials);
  ver->add_option("--seed", ver_seed);
  ver->add_option("--jobs", ver_jobs);
  ver->add_option("--report-out", ver_report_out);

  // stats
  std::string st_points, st_spanner;
  double st_eps = 0.25;
  int st_k = 0;
  auto* st = app.add_subcommand("stats", "print the stats block for a spanner file");
  st->add_option("--points", st_points)->required();
  st->add_option("--spanner", st_spanner)->required();
  st->add_option("--eps", st_eps)->required();
  st->add_option("--k", st_k);

  // export
  std::string ex_spanner, ex_out, ex_format = "dot";
  auto* ex = app.add_subcommand("export", "re-emit a spanner file as dot or csv");
  ex->add_option("--spanner", ex_spanner)->required();
  ex->add_option("--format", ex_format, "dot | csv");
  ex->add_option("--out", ex_out)->required();

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    auto pts = vfts::gen_points(gen_kind, gen_n, gen_dim, gen_seed);
    std::ostringstream os;
    if (gen_format == "json")
      vfts::write_points_json(os, pts);
    else if (gen_format == "csv")
      vfts::write_points_csv(os, pts);
    else
      throw CLI::ValidationError("--format", "expected csv or json");
    write_file(gen_out, os.str());
    std::cerr << "wrote " << pts.size() << " points to " << gen_out << "\n";
    return 0;
  }

  if (build->parsed()) {
    vfts::MetricSpace raw = vfts::read_metric_file(build_in);
    if (build_validate && !raw.has_coords()) {
      if (auto bad = vfts::validate_triangle(raw))
        throw std::runtime_error("triangle inequality violated by points " +
                                 std::to_string(bad->i) + "," + std::to_string(bad->j) +
                                 " via " + std::to_string(bad->k));
    }
    auto [ms, scale] = vfts::normalize(raw);
    vfts::BuildConfig cfg;
    cfg.eps = build_eps;
    cfg.k = build_k;
    cfg.dim = build_dim > 0 ? build_dim : std::max(1, ms.dim());
    cfg.validate = build_validate;
    auto t0 = std::chrono::steady_clock::now();
    vfts::BuildArtifacts art = vfts::build_spanner(ms, cfg);
    double millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    vfts::write_spanner_csv(os, art.hstar);
    write_file(build_out, os.str());
    nlohmann::json stats = vfts::spanner_stats(art.hstar, ms, cfg, millis);
    stats["scale"] = scale;
    std::cout << stats.dump(2) << "\n";
    if (!build_stats_out.empty()) {
      stats.erase("buildMillis");  // keep file outputs byte-reproducible
      write_file(build_stats_out, stats.dump(2) + "\n");
    }
    return 0;
  }

  if (ver->parsed()) {
    vfts::MetricSpace raw = vfts::read_metric_file(ver_points);
    auto [ms, scale] = vfts::normalize(raw);
    vfts::Spanner s = read_spanner_file(ver_spanner);
    if (s.n != ms.size())
      throw std::runtime_error("point/spanner mismatch: " + std::to_string(ms.size()) + " vs " +
                               std::to_string(s.n) + " points");
    vfts::VerifyOptions opt;
    opt.mode = ver_mode == "sampled" ? vfts::VerifyMode::Sampled : vfts::VerifyMode::Exhaustive;
    if (ver_mode != "sampled" && ver_mode != "exhaustive")
      throw CLI::ValidationError("--mode", "expected exhaustive or sampled");
    opt.seed = ver_seed;
    opt.trials = ver_trials;
    opt.jobs = ver_jobs;
    double t = 1.0 + ver_eps;
    vfts::FaultStretchReport rep = vfts::fault_stretch(s, ms, ver_k, opt);

    nlohmann::json j;
    j["schema"] = 1;
    j["stretch"] = vfts::stretch_report_json(rep);
    vfts::DegreeCensus dc = vfts::degree_census(s);
    j["maxDegree"] = dc.max_total;
    j["degreeByTag"] = dc.max_by_tag;
    j["lightness"] = vfts::lightness(s, ms);
    vfts::HopResult hr = vfts::hop_bounded_stretch(s, ms, t);
    j["hopDiameter"] = hr.disconnected || hr.stretch_unmet ? -1 : hr.hops;
    auto weight_viol = vfts::check_weights(s, ms);
    j["weightViolations"] = weight_viol;

    bool ok = rep.disconnections.empty() && rep.max_stretch <= t && !hr.disconnected &&
              !hr.stretch_unmet && weight_viol.empty();
    j["pass"] = ok;
    std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!ver_report_out.empty()) write_file(ver_report_out, text);
    return ok ? 0 : 1;
  }

  if (st->parsed()) {
    vfts::MetricSpace raw = vfts::read_metric_file(st_points);
    auto [ms, scale] = vfts::normalize(raw);
    vfts::Spanner s = read_spanner_file(st_spanner);
    if (s.n != ms.size()) throw std::runtime_error("point/spanner mismatch");
    vfts::BuildConfig cfg;
    cfg.eps = st_eps;
    cfg.k = st_k;
    cfg.dim = std::max(1, ms.dim());
    std::cout << vfts::spanner_stats(s, ms, cfg).dump(2) << "\n";
    return 0;
  }

  if (ex->parsed()) {
    vfts::Spanner s = read_spanner_file(ex_spanner);
    std::ostringstream os;
    if (ex_format == "dot")
      vfts::write_spanner_dot(os, s);
    else if (ex_format == "csv")
      vfts::write_spanner_csv(os, s);
    else
      throw CLI::ValidationError("--format", "expected dot or csv");
    write_file(ex_out, os.str());
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
