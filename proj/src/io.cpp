#include "csc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace csc {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

void write_preamble(std::ofstream& out, const char* what, const RunConfig& cfg) {
  out << "# cscontrol " << what << "\n";
  for (const std::string& line : config_echo_lines(cfg)) out << "# " << line << "\n";
}

std::string err_db(double err) {
  if (err == 0.0) return "-inf";
  return format_double(20.0 * std::log10(err));
}

json complex_vector_json(const Eigen::VectorXcd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    arr.push_back(json::array({v(i).real(), v(i).imag()}));
  return arr;
}

json real_vector_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json config_json(const RunConfig& cfg) {
  json plant;
  json rows = json::array();
  for (Eigen::Index r = 0; r < cfg.plant.dynamics.rows(); ++r)
    rows.push_back(real_vector_json(cfg.plant.dynamics.row(r).transpose()));
  plant["A"] = rows;
  plant["b"] = real_vector_json(cfg.plant.input);
  plant["c"] = real_vector_json(cfg.plant.output);
  plant["x0"] = real_vector_json(cfg.plant.initial_state);

  json controller;
  controller["type"] = controller_kind_name(cfg.controller.kind);
  controller["mu"] = cfg.controller.solver.mu;
  controller["mu2"] = cfg.controller.mu2;
  controller["iterations"] = cfg.controller.solver.iterations;
  controller["lipschitz_safety"] = cfg.controller.solver.lipschitz_safety;
  controller["warm_start"] = cfg.controller.solver.warm_start;
  controller["zero_tol"] = cfg.controller.solver.zero_tol;
  if (cfg.controller.kind == ControllerKind::RidgeTruncated)
    controller["sparsity_schedule"] = cfg.controller.sparsity_schedule;

  json reference;
  reference["label"] = cfg.reference.label;
  if (cfg.recipe) {
    if (cfg.recipe->kind == ReferenceRecipe::Kind::Step) {
      reference["type"] = "step";
      reference["level"] = cfg.recipe->level;
    } else {
      reference["type"] = "sinusoids";
      json terms = json::array();
      for (const SinusoidTerm& t : cfg.recipe->terms)
        terms.push_back(json::array(
            {t.kind == SinusoidTerm::Kind::Sin ? "sin" : "cos", t.freq_index, t.amplitude}));
      reference["terms"] = terms;
    }
  }
  reference["coeffs"] = complex_vector_json(cfg.reference.coeffs);

  return json{{"basis", {{"T", cfg.spec.period}, {"M", cfg.spec.bandwidth}}},
              {"plant", plant},
              {"controller", controller},
              {"reference", reference},
              {"run",
               {{"K", cfg.sample_count},
                {"periods", cfg.periods},
                {"seed", cfg.seed},
                {"fine_grid", cfg.fine_grid}}}};
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(const std::string& path, const RunResult& result) {
  std::ofstream out = open_out(path);
  write_preamble(out, "trace v1", result.config);
  out << "k,err_l2,err_db,sparsity,bytes\n";
  for (int k = 0; k < result.completed_periods(); ++k) {
    out << k << ',' << format_double(result.err_l2[k]) << ',' << err_db(result.err_l2[k]) << ','
        << result.sparsity[k] << ',' << result.bytes_per_period[k] << "\n";
  }
}

void write_run_json(const std::string& path, const RunResult& result) {
  json doc;
  doc["config"] = config_json(result.config);

  json res;
  res["rms"] = result.rms;
  res["avg_sparsity"] = result.avg_sparsity;
  res["diverged"] = result.diverged;
  res["diverged_period"] = result.diverged_period;
  res["completed_periods"] = result.completed_periods();
  res["max_control_imag"] = result.max_control_imag;
  res["max_state_imag"] = result.max_state_imag;
  res["err_l2"] = result.err_l2;
  res["sparsity"] = result.sparsity;
  res["bytes"] = result.bytes_per_period;
  json states = json::array();
  for (const auto& x : result.state_history) states.push_back(real_vector_json(x));
  res["states"] = states;
  json thetas = json::array();
  for (const auto& th : result.theta_history) thetas.push_back(complex_vector_json(th));
  res["theta"] = thetas;
  doc["result"] = res;

  std::ofstream out = open_out(path);
  out << doc.dump(1) << "\n";
}

void write_sweep_csv(const std::string& path, const SweepSpec& sweep,
                     const std::vector<SweepRow>& rows) {
  std::ofstream out = open_out(path);
  write_preamble(out, "sweep v1", sweep.base);
  const char* name = sweep.parameter == SweepSpec::Parameter::Mu    ? "mu"
                     : sweep.parameter == SweepSpec::Parameter::Mu2 ? "mu2"
                                                                    : "K";
  out << "# sweep.parameter = " << name << "\n";
  std::string seeds = "# sweep.seeds = [";
  for (std::size_t i = 0; i < sweep.seeds.size(); ++i) {
    if (i) seeds += ", ";
    seeds += std::to_string(sweep.seeds[i]);
  }
  out << seeds << "]\n";
  out << "value,rms_mean,rms_std,sparsity_mean,diverged_fraction\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.value) << ',' << format_double(r.rms_mean) << ','
        << format_double(r.rms_std) << ',' << format_double(r.sparsity_mean) << ','
        << format_double(r.diverged_fraction) << "\n";
  }
}

void write_compare_csv(const std::string& path, const RunConfig& cfg, const RunResult& sparse,
                       const RunResult& truncated, const RunResult& plain_ridge) {
  std::ofstream out = open_out(path);
  write_preamble(out, "compare v1", cfg);
  out << "k,err_sparse,err_truncated,err_ridge\n";
  auto cell = [](const RunResult& r, int k) {
    return k < r.completed_periods() ? format_double(r.err_l2[k]) : std::string();
  };
  for (int k = 0; k < cfg.periods; ++k) {
    out << k << ',' << cell(sparse, k) << ',' << cell(truncated, k) << ','
        << cell(plain_ridge, k) << "\n";
  }
  out << "rms," << format_double(sparse.rms) << ',' << format_double(truncated.rms) << ','
      << format_double(plain_ridge.rms) << "\n";
  out << "avg_sparsity," << format_double(sparse.avg_sparsity) << ','
      << format_double(truncated.avg_sparsity) << ',' << format_double(plain_ridge.avg_sparsity)
      << "\n";
}

void write_codec_csv(const std::string& path, const RunResult& result) {
  std::ofstream out = open_out(path);
  write_preamble(out, "codec v1", result.config);
  const std::size_t dense = packet_bytes(result.config.spec.size());
  out << "k,sparsity,bytes,dense_bytes\n";
  for (int k = 0; k < result.completed_periods(); ++k)
    out << k << ',' << result.sparsity[k] << ',' << result.bytes_per_period[k] << ',' << dense
        << "\n";
}

void write_lift_csv(const std::string& dir, const LiftedSystem& sys, const RunConfig& cfg) {
  const BasisSpec& spec = sys.spec;
  {
    std::ofstream out = open_out(dir + "/g.csv");
    write_preamble(out, "lift G v1", cfg);
    out << "n,m,re,im\n";
    for (int n = 1; n <= spec.size(); ++n)
      for (int m = -spec.bandwidth; m <= spec.bandwidth; ++m) {
        const Complex v = sys.basis_to_output(n - 1, spec.offset(m));
        out << n << ',' << m << ',' << format_double(v.real()) << ',' << format_double(v.imag())
            << "\n";
      }
  }
  {
    std::ofstream out = open_out(dir + "/h.csv");
    write_preamble(out, "lift H v1", cfg);
    out << "n,state_index,value\n";
    for (int n = 1; n <= spec.size(); ++n)
      for (int j = 0; j < sys.plant.order(); ++j)
        out << n << ',' << j << ',' << format_double(sys.free_response(n - 1, j)) << "\n";
  }
  {
    std::ofstream out = open_out(dir + "/z.csv");
    write_preamble(out, "lift Z v1", cfg);
    out << "state_index,m,re,im\n";
    for (int j = 0; j < sys.plant.order(); ++j)
      for (int m = -spec.bandwidth; m <= spec.bandwidth; ++m) {
        const Complex v = sys.input_to_state(j, spec.offset(m));
        out << j << ',' << m << ',' << format_double(v.real()) << ',' << format_double(v.imag())
            << "\n";
      }
  }
}

}  // namespace csc
