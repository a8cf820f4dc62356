#include "csc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "csc/codec.hpp"
#include "csc/io.hpp"

namespace csc {

namespace {

RunConfig load(const CommandOptions& opts) {
  return load_run_config(ConfigFile::parse_file(opts.config_path), opts.overrides);
}

void ensure_out_dir(const CommandOptions& opts) {
  std::filesystem::create_directories(opts.out_dir);
}

std::string out_path(const CommandOptions& opts, const char* file) {
  return (std::filesystem::path(opts.out_dir) / file).string();
}

}  // namespace

int cmd_simulate(const CommandOptions& opts) {
  const RunConfig cfg = load(opts);
  ensure_out_dir(opts);
  const RunResult result = run_closed_loop(cfg);
  write_run_json(out_path(opts, "run.json"), result);
  write_trace_csv(out_path(opts, "trace.csv"), result);
  if (!opts.dump_lift_dir.empty()) {
    std::filesystem::create_directories(opts.dump_lift_dir);
    write_lift_csv(opts.dump_lift_dir, build_lifted(cfg.plant, cfg.spec), cfg);
  }
  std::printf("rms = %s\n", format_double(result.rms).c_str());
  std::printf("avg_sparsity = %s\n", format_double(result.avg_sparsity).c_str());
  if (result.diverged)
    std::printf("diverged at period %d (%d periods recorded)\n", result.diverged_period,
                result.completed_periods());
  return 0;
}

int cmd_sweep(const CommandOptions& opts) {
  const SweepSpec sweep =
      load_sweep_spec(ConfigFile::parse_file(opts.config_path), opts.overrides);
  ensure_out_dir(opts);

  const int n_values = static_cast<int>(sweep.values.size());
  const int n_seeds = static_cast<int>(sweep.seeds.size());
  std::vector<RunResult> results(static_cast<std::size_t>(n_values) * n_seeds);

#pragma omp parallel for collapse(2) schedule(dynamic)
  for (int vi = 0; vi < n_values; ++vi) {
    for (int si = 0; si < n_seeds; ++si) {
      RunConfig cfg = sweep.base;
      switch (sweep.parameter) {
        case SweepSpec::Parameter::Mu:
          cfg.controller.solver.mu = sweep.values[vi];
          break;
        case SweepSpec::Parameter::Mu2:
          cfg.controller.mu2 = sweep.values[vi];
          break;
        case SweepSpec::Parameter::SampleCount:
          cfg.sample_count = static_cast<int>(std::llround(sweep.values[vi]));
          break;
      }
      cfg.seed = sweep.seeds[si];
      results[static_cast<std::size_t>(vi) * n_seeds + si] = run_closed_loop(cfg);
    }
  }

  std::vector<SweepRow> rows(n_values);
  for (int vi = 0; vi < n_values; ++vi) {
    SweepRow& row = rows[vi];
    row.value = sweep.values[vi];
    double rms_sum = 0.0, rms_sq = 0.0, sp_sum = 0.0;
    int diverged = 0;
    for (int si = 0; si < n_seeds; ++si) {
      const RunResult& r = results[static_cast<std::size_t>(vi) * n_seeds + si];
      rms_sum += r.rms;
      rms_sq += r.rms * r.rms;
      sp_sum += r.avg_sparsity;
      diverged += r.diverged ? 1 : 0;
    }
    row.rms_mean = rms_sum / n_seeds;
    row.sparsity_mean = sp_sum / n_seeds;
    row.diverged_fraction = static_cast<double>(diverged) / n_seeds;
    row.rms_std =
        n_seeds > 1 ? std::sqrt(std::max(0.0, (rms_sq - rms_sum * rms_sum / n_seeds) /
                                                  (n_seeds - 1)))
                    : 0.0;
  }
  write_sweep_csv(out_path(opts, "sweep.csv"), sweep, rows);
  for (const SweepRow& row : rows)
    std::printf("value %s: rms_mean %s, sparsity_mean %s, diverged %s\n",
                format_double(row.value).c_str(), format_double(row.rms_mean).c_str(),
                format_double(row.sparsity_mean).c_str(),
                format_double(row.diverged_fraction).c_str());
  return 0;
}

int cmd_compare(const CommandOptions& opts) {
  RunConfig cfg = load(opts);
  ensure_out_dir(opts);

  RunConfig sparse_cfg = cfg;
  sparse_cfg.controller.kind = ControllerKind::Sparse;
  sparse_cfg.controller.sparsity_schedule.clear();
  const RunResult sparse = run_closed_loop(sparse_cfg);
  if (sparse.diverged) {
    std::fprintf(stderr, "compare: sparse run diverged at period %d; no schedule available\n",
                 sparse.diverged_period);
    return 1;
  }

  const RunResult truncated = compare_truncated(sparse_cfg, sparse.sparsity);

  RunConfig ridge_cfg = sparse_cfg;
  ridge_cfg.controller.kind = ControllerKind::Ridge;
  const RunResult plain = run_closed_loop(ridge_cfg);

  write_compare_csv(out_path(opts, "compare.csv"), sparse_cfg, sparse, truncated, plain);

  std::printf("rms: sparse %s, truncated %s, ridge %s\n", format_double(sparse.rms).c_str(),
              format_double(truncated.rms).c_str(), format_double(plain.rms).c_str());
  std::printf("winner (matched data size): %s\n",
              sparse.rms < truncated.rms ? "sparse" : "truncated");
  if (truncated.diverged)
    std::printf("truncated run diverged at period %d\n", truncated.diverged_period);
  if (plain.diverged)
    std::printf("ridge run diverged at period %d\n", plain.diverged_period);
  return 0;
}

int cmd_codec_stats(const CommandOptions& opts) {
  const RunConfig cfg = load(opts);
  ensure_out_dir(opts);
  const RunResult result = run_closed_loop(cfg);
  write_codec_csv(out_path(opts, "codec.csv"), result);

  const std::size_t dense = packet_bytes(cfg.spec.size());
  std::printf("%6s %10s %10s %12s\n", "k", "sparsity", "bytes", "dense_bytes");
  for (int k = 0; k < result.completed_periods(); ++k)
    std::printf("%6d %10d %10lld %12zu\n", k, result.sparsity[k],
                static_cast<long long>(result.bytes_per_period[k]), dense);
  std::printf("compression ratio = %s\n", format_double(compression_ratio(result)).c_str());
  return 0;
}

}  // namespace csc
