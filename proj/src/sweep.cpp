#include "ria/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "ria/metrics.hpp"
#include "ria/parallel.hpp"
#include "ria/rng.hpp"

namespace ria {

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::Eta: return "eta";
    case SweepParameter::Rank: return "r";
    case SweepParameter::Tau: return "tau";
    case SweepParameter::Rho: return "rho";
    case SweepParameter::Sigma: return "sigma";
  }
  return "?";
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "eta") return SweepParameter::Eta;
  if (name == "r" || name == "rank") return SweepParameter::Rank;
  if (name == "tau") return SweepParameter::Tau;
  if (name == "rho") return SweepParameter::Rho;
  if (name == "sigma") return SweepParameter::Sigma;
  throw std::invalid_argument("unknown sweep parameter '" + name +
                              "' (expected eta, r, tau, rho or sigma)");
}

void SweepSpec::validate() const {
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  if (trials == 0) throw std::invalid_argument("sweep needs at least one trial");
  for (double v : grid) {
    bool ok = std::isfinite(v);
    switch (parameter) {
      case SweepParameter::Eta: ok = ok && v >= 0.0 && v <= 1.0; break;
      case SweepParameter::Rank: ok = ok && v >= 1.0 && v == std::floor(v); break;
      case SweepParameter::Tau: ok = ok && v >= 0.0; break;
      case SweepParameter::Rho: ok = ok && v >= 0.0 && v <= 1.0; break;
      case SweepParameter::Sigma: ok = ok && v >= 0.0; break;
    }
    if (!ok) {
      throw std::invalid_argument("grid value " + format_number(v) + " is outside the domain of " +
                                  to_string(parameter));
    }
  }
  base.validate();
  noise.validate();
}

void apply_sweep_value(SweepParameter p, double value, PipelineConfig& cfg, NoiseParams& noise) {
  switch (p) {
    case SweepParameter::Eta: cfg.eta = value; break;
    case SweepParameter::Rank: cfg.rank = static_cast<std::size_t>(value); break;
    case SweepParameter::Tau: cfg.tau = TauRule::fixed(value); break;
    case SweepParameter::Rho:
      noise.p1 = value / 2.0;
      noise.p2 = value / 2.0;
      break;
    case SweepParameter::Sigma: noise.sigma = value; break;
  }
}

namespace {

struct JobOutcome {
  std::vector<SweepRow> rows;  // one block of three rows per grid value handled
  std::optional<std::string> error;
};

std::vector<SweepRow> score_trial(const Image& truth, const Image& noisy,
                                  const Reconstructions& rec, std::size_t trial, double value,
                                  const PipelineConfig& cfg, const NoiseParams& noise,
                                  double tau) {
  SweepRow proto;
  proto.trial = trial;
  proto.value = value;
  proto.sigma = noise.sigma;
  proto.rho = noise.rho();
  proto.rank = cfg.rank;
  proto.tau = tau;
  proto.eta = cfg.eta;

  std::vector<SweepRow> rows;
  auto add = [&](const char* variant, const Image& img) {
    SweepRow row = proto;
    row.variant = variant;
    const auto q = evaluate(truth, img);
    row.psnr_db = q.psnr_db;
    row.ssim = q.ssim;
    rows.push_back(std::move(row));
  };
  add("noisy", noisy);
  add("hard", fuse_reconstructions(rec, Fusion::HardThreshold, tau));
  add("average", fuse_reconstructions(rec, Fusion::Average, tau));
  return rows;
}

}  // namespace

SweepResult run_sweep(const Image& truth, const SweepSpec& spec) {
  spec.validate();
  const std::size_t values = spec.grid.size();
  // Threshold sweeps reuse each trial's reconstructions across the grid.
  const bool per_trial_jobs = spec.parameter == SweepParameter::Tau;
  const std::size_t job_count = per_trial_jobs ? spec.trials : values * spec.trials;
  std::vector<JobOutcome> outcomes(job_count);

  auto trial_inputs = [&](std::size_t trial, double value) {
    PipelineConfig cfg = spec.base;
    NoiseParams noise = spec.noise;
    apply_sweep_value(spec.parameter, value, cfg, noise);
    cfg.workers = 1;
    cfg.seed = Rng::derive_seed(spec.base.seed, "trial-pipeline", trial);
    noise.seed = Rng::derive_seed(spec.noise.seed, "trial-noise", trial);
    return std::pair{cfg, noise};
  };

  parallel_for(job_count, resolve_workers(spec.workers), [&](std::size_t job) {
    auto& outcome = outcomes[job];
    try {
      if (per_trial_jobs) {
        const std::size_t trial = job;
        auto [cfg, noise] = trial_inputs(trial, spec.grid.front());
        const Image noisy = corrupt_mixed(truth, noise);
        const auto rec = reconstruct(noisy, cfg);
        for (double value : spec.grid) {
          auto rows = score_trial(truth, noisy, rec, trial, value, cfg, noise, value);
          outcome.rows.insert(outcome.rows.end(), rows.begin(), rows.end());
        }
      } else {
        const std::size_t v = job / spec.trials;
        const std::size_t trial = job % spec.trials;
        auto [cfg, noise] = trial_inputs(trial, spec.grid[v]);
        const Image noisy = corrupt_mixed(truth, noise);
        const auto rec = reconstruct(noisy, cfg);
        outcome.rows = score_trial(truth, noisy, rec, trial, spec.grid[v], cfg, noise,
                                   rec.report.tau);
      }
    } catch (const std::exception& e) {
      outcome.error = e.what();
    }
  });

  // Reassemble in (value, trial) order, stopping at the first failure in that order.
  SweepResult result;
  const std::size_t per_block = kSweepVariants.size();
  for (std::size_t v = 0; v < values && !result.error; ++v) {
    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
      const auto& outcome = per_trial_jobs ? outcomes[trial] : outcomes[v * spec.trials + trial];
      if (outcome.error) {
        result.error = "value " + format_number(spec.grid[v]) + " trial " +
                       std::to_string(trial) + ": " + *outcome.error;
        break;
      }
      const std::size_t offset = per_trial_jobs ? v * per_block : 0;
      for (std::size_t k = 0; k < per_block; ++k) result.rows.push_back(outcome.rows[offset + k]);
    }
  }
  return result;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

namespace {

std::string fixed6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const SweepResult& result) {
  const std::string param = to_string(spec.parameter);
  out << "kind,trial,parameter,value,sigma,rho,r,tau,eta,variant,psnr_db,ssim\n";
  auto emit = [&](const std::string& kind, const std::string& trial, const SweepRow& r,
                  double psnr_db, double ssim_value) {
    out << kind << ',' << trial << ',' << param << ',' << format_number(r.value) << ','
        << format_number(r.sigma) << ',' << format_number(r.rho) << ',' << r.rank << ','
        << format_number(r.tau) << ',' << format_number(r.eta) << ',' << r.variant << ','
        << fixed6(psnr_db) << ',' << fixed6(ssim_value) << '\n';
  };
  for (const auto& r : result.rows) emit("trial", std::to_string(r.trial), r, r.psnr_db, r.ssim);

  if (!result.error) {
    // Means per (value, variant), in grid order then variant order.
    const std::size_t per_block = kSweepVariants.size();
    const std::size_t block = spec.trials * per_block;
    for (std::size_t v = 0; v * block < result.rows.size(); ++v) {
      for (std::size_t k = 0; k < per_block; ++k) {
        double psnr_sum = 0.0;
        double ssim_sum = 0.0;
        for (std::size_t t = 0; t < spec.trials; ++t) {
          const auto& r = result.rows[v * block + t * per_block + k];
          psnr_sum += r.psnr_db;
          ssim_sum += r.ssim;
        }
        SweepRow summary = result.rows[v * block + k];
        const double n = static_cast<double>(spec.trials);
        emit("mean", std::to_string(spec.trials), summary, psnr_sum / n, ssim_sum / n);
      }
    }
  }
  out << "status,,,,,,,,,"
      << (result.error ? csv_quote("error: " + *result.error) : std::string("ok")) << ",,\n";
  out.flush();
}

}  // namespace ria
