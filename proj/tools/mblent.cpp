// Command-line front end: quench, lbit, scan-phase, fit, tint.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mblent/ensemble.hpp"
#include "mblent/errors.hpp"
#include "mblent/io.hpp"
#include "mblent/spectral.hpp"

namespace fs = std::filesystem;
using namespace mblent;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kInvalidConfig = 2, kCapacity = 3, kNumerical = 4 };

struct Options {
  ExperimentConfig cfg;
  std::string engine = "exact";
  std::string spacing = "log";
  std::vector<std::string> observables;
  std::vector<int> bulk;  // 1-based lattice coordinates, inclusive
  std::string out;
};

void add_model_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--L", o.cfg.model.L, "Chain length (even)")->capture_default_str();
  cmd->add_option("--J", o.cfg.model.J, "Hopping amplitude")->capture_default_str();
  cmd->add_option("--V", o.cfg.model.V, "Nearest-neighbour interaction")->capture_default_str();
  cmd->add_option("--delta", o.cfg.model.delta, "Quasi-periodic field amplitude")->capture_default_str();
  cmd->add_option("--beta-num", o.cfg.model.beta.num, "Inverse wavelength numerator")->capture_default_str();
  cmd->add_option("--beta-den", o.cfg.model.beta.den, "Inverse wavelength denominator")->capture_default_str();
}

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--t-start", o.cfg.grid.start, "First grid time")->capture_default_str();
  cmd->add_option("--t-stop", o.cfg.grid.stop, "Last grid time")->capture_default_str();
  cmd->add_option("--points", o.cfg.grid.points, "Number of grid times")->capture_default_str();
  cmd->add_option("--spacing", o.spacing, "Grid spacing")
      ->check(CLI::IsMember({"log", "linear"}))
      ->capture_default_str();
  cmd->add_option("--realizations", o.cfg.realizations, "Disorder realizations")->capture_default_str();
  cmd->add_option("--seed", o.cfg.seed, "Base seed")->capture_default_str();
  cmd->add_option("--r-max", o.cfg.r_max, "Largest pair distance")->capture_default_str();
  cmd->add_option("--bulk", o.bulk, "Bulk window FIRST LAST (1-based, inclusive)")->expected(2);
  cmd->add_option("--workers", o.cfg.workers, "Worker threads (0 = all cores)")->capture_default_str();
  cmd->add_option("--out", o.out, "Output directory")->required();
}

void add_krylov_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--dt", o.cfg.krylov.dt, "Largest Krylov substep")->capture_default_str();
  cmd->add_option("--krylov-m", o.cfg.krylov.m, "Krylov dimension")->capture_default_str();
  cmd->add_option("--tol", o.cfg.krylov.tol, "Krylov error tolerance")->capture_default_str();
}

void finish(Options& o) {
  o.cfg.engine = parse_engine(o.engine);
  o.cfg.grid.spacing = parse_spacing(o.spacing);
  o.cfg.output_dir = o.out;
  if (!o.observables.empty()) {
    o.cfg.observables = {false, false, false, false};
    for (const auto& name : o.observables) {
      if (name == "concurrence") o.cfg.observables.concurrence = true;
      else if (name == "bound") o.cfg.observables.bound = true;
      else if (name == "imbalance") o.cfg.observables.imbalance = true;
      else if (name == "entropy") o.cfg.observables.entropy = true;
      else throw std::invalid_argument("unknown observable '" + name + "'");
    }
  }
  if (!o.bulk.empty()) o.cfg.bulk = BulkWindow{o.bulk[0] - 1, o.bulk[1] - 1};
}

void print_summary(const RunRecord& run, const fs::path& dir) {
  std::cout << "wrote " << dir.string() << " (" << run.config.realizations << " realizations, "
            << run.times.size() << " times, " << format_double(run.wall_seconds) << " s)\n";
  for (const auto& s : run.series) {
    std::cout << "  " << s.name << ": t=" << format_double(s.times.front()) << " -> "
              << format_double(s.mean.front()) << ", t=" << format_double(s.times.back()) << " -> "
              << format_double(s.mean.back()) << '\n';
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int run_app(int argc, char** argv) {
  CLI::App app{"Entanglement dynamics of disordered spin chains"};
  app.set_version_flag("--version", std::string(MBLENT_VERSION));
  app.require_subcommand(1);

  Options quench;
  auto* q = app.add_subcommand("quench", "Disorder-averaged Neel quench (exact or free-fermion engine)");
  q->add_option("--engine", quench.engine, "Engine")
      ->check(CLI::IsMember({"exact", "freefermion"}))
      ->capture_default_str();
  add_model_flags(q, quench);
  add_run_flags(q, quench);
  add_krylov_flags(q, quench);
  q->add_option("--observables", quench.observables,
                "Any of concurrence, bound, imbalance, entropy")
      ->delimiter(',');

  Options lbit;
  lbit.engine = "lbit";
  lbit.cfg.observables = {true, false, false, false};
  auto* l = app.add_subcommand("lbit", "Concurrence dynamics of the l-bit model");
  l->add_option("--L", lbit.cfg.lbit.L, "Chain length")->capture_default_str();
  l->add_option("--W", lbit.cfg.lbit.W, "Coupling disorder strength")->capture_default_str();
  l->add_option("--alpha", lbit.cfg.lbit.alpha, "Inverse coupling range")->capture_default_str();
  l->add_option("--h-scale", lbit.cfg.lbit.h_scale, "Field disorder strength")->capture_default_str();
  add_run_flags(l, lbit);

  ModelParams scan_base;
  scan_base.L = 12;
  std::vector<double> deltas{0.0, 1.0, 2.0, 3.0, 4.0}, vs{0.0, 0.5, 1.0, 1.5, 2.0};
  std::size_t n_phi = 50;
  std::uint64_t scan_seed = 1;
  std::string scan_out;
  auto* s = app.add_subcommand("scan-phase", "Mean gap ratio over a (delta, V) grid");
  s->add_option("--L", scan_base.L, "Chain length")->capture_default_str();
  s->add_option("--J", scan_base.J, "Hopping amplitude")->capture_default_str();
  s->add_option("--deltas", deltas, "Field amplitudes")->delimiter(',')->capture_default_str();
  s->add_option("--vs", vs, "Interaction strengths")->delimiter(',')->capture_default_str();
  s->add_option("--realizations", n_phi, "Phase samples per point")->capture_default_str();
  s->add_option("--seed", scan_seed, "Base seed")->capture_default_str();
  s->add_option("--out", scan_out, "Output directory")->required();

  std::string fit_in, fit_model = "power", fit_out;
  FitWindow window{3.0, 50.0};
  auto* f = app.add_subcommand("fit", "Fit a stored observable series");
  f->add_option("--in", fit_in, "Series CSV (time,mean,variance,n_real)")->required();
  f->add_option("--model", fit_model, "Fit model")
      ->check(CLI::IsMember({"power", "exponential"}))
      ->capture_default_str();
  f->add_option("--t1", window.t1, "Window start")->capture_default_str();
  f->add_option("--t2", window.t2, "Window end")->capture_default_str();
  f->add_option("--out", fit_out, "Write the fit as JSON to this file instead of stdout");

  Options tint;
  tint.cfg.model.delta = 3.0;
  tint.cfg.grid = {0.1, 200.0, 80, Spacing::Log};
  std::vector<double> tint_vs{0.1, 0.2, 0.3, 0.5};
  double eps = 0.025;
  int debounce = 3;
  auto* t = app.add_subcommand("tint", "Interaction time t_int(V) against the V = 0 curve");
  add_model_flags(t, tint);
  add_run_flags(t, tint);
  add_krylov_flags(t, tint);
  t->add_option("--vs", tint_vs, "Interaction strengths")->delimiter(',')->capture_default_str();
  t->add_option("--eps", eps, "Departure threshold")->capture_default_str();
  t->add_option("--debounce", debounce, "Grid points the departure must persist")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidConfig;
  }

  if (q->parsed()) {
    finish(quench);
    const RunRecord run = run_experiment(quench.cfg);
    write_run(run, quench.out);
    print_summary(run, quench.out);
  } else if (l->parsed()) {
    finish(lbit);
    const RunRecord run = run_experiment(lbit.cfg);
    write_run(run, lbit.out);
    print_summary(run, lbit.out);
  } else if (s->parsed()) {
    const auto points = phase_scan(deltas, vs, scan_base, n_phi, scan_seed);
    fs::create_directories(scan_out);
    std::ofstream csv(fs::path(scan_out) / "phase_scan.csv", std::ios::binary);
    write_phase_scan_csv(csv, points);
    nlohmann::ordered_json meta;
    meta["code_version"] = MBLENT_VERSION;
    meta["L"] = scan_base.L;
    meta["J"] = scan_base.J;
    meta["beta"] = {scan_base.beta.num, scan_base.beta.den};
    meta["deltas"] = deltas;
    meta["vs"] = vs;
    meta["realizations"] = n_phi;
    meta["seed"] = scan_seed;
    meta["files"] = {"phase_scan.csv"};
    write_text(fs::path(scan_out) / "metadata.json", meta.dump(2) + "\n");
    for (const auto& p : points) {
      std::cout << "delta=" << format_double(p.delta) << " V=" << format_double(p.V)
                << " <r>=" << format_double(p.stats.mean) << " +- "
                << format_double(p.stats.stderr_mean) << '\n';
    }
  } else if (f->parsed()) {
    const ObservableSeries series = read_series_csv(fs::path(fit_in));
    const FitResult fit = fit_series(series, parse_fit_model(fit_model), window);
    const std::string json = fit_json(fit, series.name);
    if (fit_out.empty()) {
      std::cout << json;
    } else {
      write_text(fit_out, json);
      std::cout << to_string(fit.model) << " exponent=" << format_double(fit.exponent) << " +- "
                << format_double(fit.stderr_exponent) << " R2=" << format_double(fit.r2) << '\n';
    }
  } else if (t->parsed()) {
    finish(tint);
    tint.cfg.engine = Engine::Exact;
    const InteractionTimeStudy study = run_interaction_time_study(tint.cfg, tint_vs, eps, debounce);
    const fs::path dir = tint.out;
    write_run(study.baseline, dir / "V0");
    for (std::size_t k = 0; k < study.runs.size(); ++k) {
      write_run(study.runs[k], dir / ("V" + format_double(study.vs[k])));
    }
    std::ostringstream csv;
    csv << "v,t_int\n";
    for (std::size_t k = 0; k < study.vs.size(); ++k) {
      csv << format_double(study.vs[k]) << ','
          << (study.t_int[k] ? format_double(*study.t_int[k]) : std::string()) << '\n';
    }
    write_text(dir / "t_int.csv", csv.str());
    nlohmann::ordered_json j;
    j["eps"] = eps;
    j["debounce"] = debounce;
    if (study.fit) {
      j["c"] = study.fit->c;
      j["a"] = study.fit->a;
      j["b"] = study.fit->b;
      j["stderr_c"] = study.fit->stderr_c;
      j["stderr_a"] = study.fit->stderr_a;
      j["stderr_b"] = study.fit->stderr_b;
      j["rss"] = study.fit->rss;
      j["points"] = study.fit->points;
    } else {
      j["fit"] = nullptr;
    }
    write_text(dir / "t_int_fit.json", j.dump(2) + "\n");
    std::cout << csv.str();
    if (study.fit) {
      std::cout << "t_int = " << format_double(study.fit->c) << " V^-" << format_double(study.fit->a)
                << " + " << format_double(study.fit->b) << '\n';
    } else {
      std::cout << "fewer than three crossings; no fit\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
