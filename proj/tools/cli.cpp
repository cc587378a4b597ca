#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ria/metrics.hpp"
#include "ria/noise.hpp"
#include "ria/parallel.hpp"
#include "ria/pgm.hpp"
#include "ria/pipeline.hpp"
#include "ria/sweep.hpp"
#include "ria/test_image.hpp"

namespace ria::cli {

namespace {

namespace fs = std::filesystem;

// Error in user-supplied input: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Image load_input(const std::string& path) {
  if (!fs::exists(path)) throw UsageError("input file not found: " + path);
  try {
    return read_pgm_file(path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string psnr_text(double db) { return std::isinf(db) ? "inf" : fmt("%.4f", db); }

struct PipelineFlags {
  std::size_t rank = 10;
  double eta = 0.5;
  double tau = 15.0;
  bool auto_tau = false;
  std::string fusion = "hard";
  std::uint64_t seed = 0;
  std::size_t max_iter = 100;
  double tol = 1e-6;
  std::size_t workers = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--rank,-r", rank, "Factorization rank")->capture_default_str();
    cmd->add_option("--eta", eta, "Overlap fraction of the second mask pair")
        ->capture_default_str();
    auto* t = cmd->add_option("--tau", tau, "Fixed hard threshold")->capture_default_str();
    cmd->add_flag("--auto-tau", auto_tau, "Use half the (r+1)-th singular value as threshold")
        ->excludes(t);
    cmd->add_option("--fusion", fusion, "hard | average")->capture_default_str();
    cmd->add_option("--seed", seed, "Seed for masks and factor initialization")
        ->capture_default_str();
    cmd->add_option("--max-iter", max_iter, "Alternating-minimization iteration cap")
        ->capture_default_str();
    cmd->add_option("--tol", tol, "Relative objective-decrease tolerance")->capture_default_str();
    cmd->add_option("--workers", workers, "Worker threads (0 = all cores)")
        ->capture_default_str();
  }

  PipelineConfig config() const {
    PipelineConfig cfg;
    cfg.rank = rank;
    cfg.eta = eta;
    cfg.tau = auto_tau ? TauRule::half_lambda() : TauRule::fixed(tau);
    cfg.fusion = parse_fusion(fusion);
    cfg.seed = seed;
    cfg.lrmf.max_iter = max_iter;
    cfg.lrmf.tol = tol;
    cfg.workers = resolve_workers_flag();
    return cfg;
  }

  std::size_t resolve_workers_flag() const {
    return resolve_workers(workers);
  }
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  // start:step:stop (inclusive) or a comma-separated list.
  if (text.find(':') != std::string::npos) {
    double start = 0, step = 0, stop = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || !(step > 0)) {
      throw UsageError("bad grid range '" + text + "' (expected start:step:stop)");
    }
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long k = 0; k <= n; ++k) grid.push_back(start + static_cast<double>(k) * step);
    return grid;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad grid value '" + item + "'");
    }
  }
  return grid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixed impulse + Gaussian noise removal by random sampling, low-rank "
               "factorization and wavelet fusion"};
  app.require_subcommand(1);

  // corrupt
  auto* corrupt = app.add_subcommand("corrupt", "Add Gaussian and salt-and-pepper noise to a PGM");
  std::string c_in, c_out;
  NoiseParams c_noise;
  corrupt->add_option("input", c_in, "Clean PGM")->required();
  corrupt->add_option("output", c_out, "Corrupted PGM to write")->required();
  corrupt->add_option("--sigma", c_noise.sigma, "Gaussian noise std")->capture_default_str();
  corrupt->add_option("--p1", c_noise.p1, "Salt probability")->capture_default_str();
  corrupt->add_option("--p2", c_noise.p2, "Pepper probability")->capture_default_str();
  corrupt->add_option("--seed", c_noise.seed, "Noise seed")->capture_default_str();

  // denoise
  auto* denoise_cmd = app.add_subcommand("denoise", "Denoise a PGM");
  std::string d_in, d_out;
  PipelineFlags d_flags;
  denoise_cmd->add_option("input", d_in, "Noisy PGM")->required();
  denoise_cmd->add_option("output", d_out, "Denoised PGM to write")->required();
  d_flags.attach(denoise_cmd);

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a test PGM against a reference");
  std::string e_ref, e_test;
  bool e_csv = false;
  evaluate_cmd->add_option("reference", e_ref, "Reference PGM")->required();
  evaluate_cmd->add_option("test", e_test, "Test PGM")->required();
  evaluate_cmd->add_flag("--csv", e_csv, "Also print a CSV row: reference,test,mse,psnr_db,ssim");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo parameter study, CSV output");
  std::string s_param = "r", s_grid, s_truth, s_csv;
  std::size_t s_trials = 20;
  double s_sigma = 20.0, s_rho = 0.3;
  std::uint64_t s_noise_seed = 1;
  PipelineFlags s_flags;
  sweep_cmd->add_option("--param", s_param, "eta | r | tau | rho | sigma")->capture_default_str();
  sweep_cmd->add_option("--grid", s_grid, "Values: 'a,b,c' or 'start:step:stop'")->required();
  sweep_cmd->add_option("--trials", s_trials, "Monte Carlo trials per value")
      ->capture_default_str();
  sweep_cmd->add_option("--truth", s_truth, "Ground-truth PGM (default: bundled test image)");
  sweep_cmd->add_option("--csv", s_csv, "CSV output path (default: stdout)");
  sweep_cmd->add_option("--sigma", s_sigma, "Base Gaussian noise std")->capture_default_str();
  sweep_cmd->add_option("--rho", s_rho, "Base impulse density, split evenly salt/pepper")
      ->capture_default_str();
  sweep_cmd->add_option("--noise-seed", s_noise_seed, "Base noise seed")->capture_default_str();
  s_flags.attach(sweep_cmd);

  // synth
  auto* synth = app.add_subcommand("synth", "Write the bundled 256x256 test image");
  std::string y_out;
  synth->add_option("output", y_out, "PGM to write")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    const int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*corrupt) {
      const Image clean = load_input(c_in);
      std::size_t replaced = 0;
      Image noisy;
      try {
        noisy = corrupt_mixed(clean, c_noise, &replaced);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      write_pgm_file(c_out, noisy);
      std::size_t extremes = 0;
      for (double v : noisy.pixels()) extremes += (v == 0.0 || v == kMaxIntensity) ? 1 : 0;
      const double n = static_cast<double>(noisy.size());
      out << "impulse_fraction=" << fmt("%.6f", static_cast<double>(replaced) / n)
          << " extreme_fraction=" << fmt("%.6f", static_cast<double>(extremes) / n) << '\n';
    } else if (*denoise_cmd) {
      const Image noisy = load_input(d_in);
      PipelineConfig cfg;
      try {
        cfg = d_flags.config();
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto result = denoise(noisy, cfg);
      write_pgm_file(d_out, result.output);
      out << "tau=" << fmt("%.6f", result.report.tau) << (d_flags.auto_tau ? " (auto)" : "")
          << " rank=" << cfg.rank << " eta=" << format_number(cfg.eta)
          << " fusion=" << to_string(cfg.fusion) << '\n';
      out << "iterations=";
      for (std::size_t l = 0; l < kSubimageCount; ++l) {
        out << (l ? "," : "") << result.report.subimages[l].iterations;
      }
      out << " mask_attempts=" << result.report.mask_attempts << '\n';
    } else if (*evaluate_cmd) {
      const Image ref = load_input(e_ref);
      const Image test = load_input(e_test);
      if (ref.dims() != test.dims()) {
        throw UsageError("dimension mismatch: " + e_ref + " is " + std::to_string(ref.rows()) +
                         "x" + std::to_string(ref.cols()) + ", " + e_test + " is " +
                         std::to_string(test.rows()) + "x" + std::to_string(test.cols()));
      }
      const auto q = evaluate(ref, test);
      out << "psnr_db=" << psnr_text(q.psnr_db) << " ssim=" << fmt("%.6f", q.ssim) << '\n';
      if (e_csv) {
        out << "reference,test,mse,psnr_db,ssim\n"
            << e_ref << ',' << e_test << ',' << fmt("%.6f", q.mse) << ','
            << psnr_text(q.psnr_db) << ',' << fmt("%.6f", q.ssim) << '\n';
      }
    } else if (*sweep_cmd) {
      SweepSpec spec;
      try {
        spec.parameter = parse_sweep_parameter(s_param);
        spec.grid = parse_grid(s_grid);
        spec.trials = s_trials;
        spec.base = s_flags.config();
        spec.noise = NoiseParams::from_rho(s_sigma, s_rho, s_noise_seed);
        spec.workers = s_flags.resolve_workers_flag();
        spec.base.workers = 1;
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const Image truth = s_truth.empty() ? make_test_image() : load_input(s_truth);
      const auto result = run_sweep(truth, spec);
      if (s_csv.empty()) {
        write_sweep_csv(out, spec, result);
      } else {
        const fs::path path(s_csv);
        fs::path tmp = path;
        tmp += ".tmp";
        {
          std::ofstream f(tmp, std::ios::trunc);
          if (!f) throw UsageError("cannot write " + tmp.string());
          write_sweep_csv(f, spec, result);
        }
        fs::rename(tmp, path);
        out << "wrote " << result.rows.size() << " trial rows to " << s_csv << '\n';
      }
      if (result.error) {
        err << "error: " << *result.error << '\n';
        return kExitFailure;
      }
    } else if (*synth) {
      write_pgm_file(y_out, make_test_image());
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace ria::cli
