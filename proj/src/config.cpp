#include "csc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "csc/io.hpp"

namespace csc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& msg) {
  throw ConfigError(name + ":" + std::to_string(line) + ": " + msg);
}

// Parses one value starting at pos; advances pos past it.
ConfigValue parse_value(const std::string& text, std::size_t& pos, const std::string& name,
                        int line) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos >= text.size()) parse_fail(name, line, "expected a value");

  ConfigValue v;
  v.line = line;
  if (text[pos] == '[') {
    ++pos;
    v.kind = ConfigValue::Kind::List;
    while (true) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos >= text.size()) parse_fail(name, line, "unterminated list");
      if (text[pos] == ']') {
        ++pos;
        break;
      }
      if (!v.list.empty()) {
        if (text[pos] != ',') parse_fail(name, line, "expected ',' or ']' in list");
        ++pos;
      }
      v.list.push_back(parse_value(text, pos, name, line));
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos < text.size() && text[pos] == ',') continue;
    }
    return v;
  }

  const std::size_t start = pos;
  while (pos < text.size() && text[pos] != ',' && text[pos] != ']' && text[pos] != '[') ++pos;
  const std::string token = trim(text.substr(start, pos - start));
  if (token.empty()) parse_fail(name, line, "expected a value");

  if (token == "true" || token == "false") {
    v.kind = ConfigValue::Kind::Boolean;
    v.boolean = (token == "true");
    return v;
  }
  char* end = nullptr;
  const double num = std::strtod(token.c_str(), &end);
  if (end != token.c_str()) {
    const std::string rest = trim(std::string(end));
    if (rest.empty()) {
      v.kind = ConfigValue::Kind::Number;
      v.number = num;
      return v;
    }
    if (rest == "pi") {
      v.kind = ConfigValue::Kind::Number;
      v.number = num * std::numbers::pi;
      return v;
    }
  }
  const bool word_ok = std::all_of(token.begin(), token.end(), [](unsigned char ch) {
    return std::isalnum(ch) || ch == '_' || ch == '-' || ch == '.';
  });
  if (!word_ok) parse_fail(name, line, "cannot parse value '" + token + "'");
  v.kind = ConfigValue::Kind::Word;
  v.word = token;
  return v;
}

long long integer_from(const ConfigValue& v, const std::string& name, const std::string& key) {
  if (v.kind != ConfigValue::Kind::Number)
    throw ConfigError(name + ":" + std::to_string(v.line) + ": key '" + key +
                      "' must be a number");
  const long long i = static_cast<long long>(std::llround(v.number));
  if (std::abs(v.number - static_cast<double>(i)) > 1e-9)
    throw ConfigError(name + ":" + std::to_string(v.line) + ": key '" + key +
                      "' must be an integer");
  return i;
}

}  // namespace

ConfigFile ConfigFile::parse_text(const std::string& text, const std::string& name) {
  ConfigFile file;
  file.name_ = name;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) parse_fail(name, line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) parse_fail(name, line, "empty key");
    if (file.values_.count(key)) parse_fail(name, line, "duplicate key '" + key + "'");
    std::size_t pos = 0;
    const std::string rhs = trim(body.substr(eq + 1));
    if (rhs.empty()) parse_fail(name, line, "missing value for key '" + key + "'");
    ConfigValue value = parse_value(rhs, pos, name, line);
    if (trim(rhs.substr(pos)) != "")
      parse_fail(name, line, "trailing characters after value for key '" + key + "'");
    file.values_.emplace(key, std::move(value));
  }
  return file;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

bool ConfigFile::has(const std::string& key) const { return values_.count(key) > 0; }

const ConfigValue& ConfigFile::at(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(name_ + ": missing required key '" + key + "'");
  return it->second;
}

void ConfigFile::fail(const std::string& key, const std::string& msg) const {
  const int line = has(key) ? at(key).line : 0;
  throw ConfigError(name_ + ":" + std::to_string(line) + ": key '" + key + "': " + msg);
}

double ConfigFile::number(const std::string& key) const {
  const ConfigValue& v = at(key);
  if (v.kind != ConfigValue::Kind::Number) fail(key, "must be a number");
  return v.number;
}

double ConfigFile::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long long ConfigFile::integer(const std::string& key) const {
  return integer_from(at(key), name_, key);
}

long long ConfigFile::integer_or(const std::string& key, long long fallback) const {
  return has(key) ? integer(key) : fallback;
}

bool ConfigFile::boolean_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const ConfigValue& v = at(key);
  if (v.kind != ConfigValue::Kind::Boolean) fail(key, "must be true or false");
  return v.boolean;
}

std::string ConfigFile::word(const std::string& key) const {
  const ConfigValue& v = at(key);
  if (v.kind != ConfigValue::Kind::Word) fail(key, "must be a word");
  return v.word;
}

std::vector<double> ConfigFile::number_list(const std::string& key) const {
  const ConfigValue& v = at(key);
  if (v.kind != ConfigValue::Kind::List) fail(key, "must be a list");
  std::vector<double> out;
  for (const auto& e : v.list) {
    if (e.kind != ConfigValue::Kind::Number) fail(key, "must be a list of numbers");
    out.push_back(e.number);
  }
  return out;
}

namespace {

Eigen::MatrixXd matrix_from(const ConfigFile& file, const std::string& key) {
  const ConfigValue& v = file.at(key);
  if (v.kind != ConfigValue::Kind::List || v.list.empty()) file.fail(key, "must be a matrix");
  const std::size_t cols = v.list.front().list.size();
  Eigen::MatrixXd m(v.list.size(), cols);
  for (std::size_t r = 0; r < v.list.size(); ++r) {
    const ConfigValue& row = v.list[r];
    if (row.kind != ConfigValue::Kind::List || row.list.size() != cols)
      file.fail(key, "rows must be equal-length number lists");
    for (std::size_t c = 0; c < cols; ++c) {
      if (row.list[c].kind != ConfigValue::Kind::Number)
        file.fail(key, "entries must be numbers");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row.list[c].number;
    }
  }
  return m;
}

Eigen::VectorXd vector_from(const ConfigFile& file, const std::string& key) {
  const std::vector<double> v = file.number_list(key);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

ReferenceRecipe recipe_from(const ConfigFile& file) {
  ReferenceRecipe recipe;
  const std::string type = file.word("reference.type");
  if (type == "step") {
    recipe.kind = ReferenceRecipe::Kind::Step;
    recipe.level = file.number("reference.level");
    return recipe;
  }
  if (type != "sinusoids") file.fail("reference.type", "must be 'sinusoids' or 'step'");
  recipe.kind = ReferenceRecipe::Kind::Sinusoids;
  const ConfigValue& terms = file.at("reference.terms");
  if (terms.kind != ConfigValue::Kind::List) file.fail("reference.terms", "must be a list");
  for (const ConfigValue& t : terms.list) {
    if (t.kind != ConfigValue::Kind::List || t.list.size() != 3 ||
        t.list[0].kind != ConfigValue::Kind::Word ||
        t.list[1].kind != ConfigValue::Kind::Number ||
        t.list[2].kind != ConfigValue::Kind::Number)
      file.fail("reference.terms", "each term must be [sin|cos, freq-index, amplitude]");
    SinusoidTerm term;
    if (t.list[0].word == "sin")
      term.kind = SinusoidTerm::Kind::Sin;
    else if (t.list[0].word == "cos")
      term.kind = SinusoidTerm::Kind::Cos;
    else
      file.fail("reference.terms", "term kind must be 'sin' or 'cos'");
    term.freq_index = static_cast<int>(integer_from(t.list[1], file.name(), "reference.terms"));
    term.amplitude = t.list[2].number;
    recipe.terms.push_back(term);
  }
  return recipe;
}

ReferenceSignal realize(const ReferenceRecipe& recipe, const BasisSpec& spec) {
  if (recipe.kind == ReferenceRecipe::Kind::Step)
    return reference_from_step(recipe.level, spec);
  return reference_from_sinusoids(recipe.terms, spec);
}

}  // namespace

RunConfig load_run_config(const ConfigFile& file, const Overrides& overrides) {
  RunConfig cfg;
  cfg.plant.dynamics = matrix_from(file, "plant.A");
  cfg.plant.input = vector_from(file, "plant.b");
  cfg.plant.output = vector_from(file, "plant.c");
  if (file.has("plant.x0")) cfg.plant.initial_state = vector_from(file, "plant.x0");

  cfg.spec.period = file.number("basis.T");
  cfg.spec.bandwidth = static_cast<int>(file.integer("basis.M"));

  cfg.sample_count = static_cast<int>(file.integer("run.K"));
  cfg.periods = static_cast<int>(file.integer("run.periods"));
  cfg.seed = static_cast<std::uint64_t>(file.integer_or("run.seed", 1));
  cfg.fine_grid = static_cast<int>(file.integer_or("run.fine_grid", 2001));

  const std::string kind = file.word("controller.type");
  if (kind == "sparse")
    cfg.controller.kind = ControllerKind::Sparse;
  else if (kind == "ridge")
    cfg.controller.kind = ControllerKind::Ridge;
  else if (kind == "ridge_truncated")
    cfg.controller.kind = ControllerKind::RidgeTruncated;
  else
    file.fail("controller.type", "must be sparse, ridge, or ridge_truncated");

  cfg.controller.solver.mu = file.number_or("controller.mu", 0.002);
  cfg.controller.solver.iterations =
      static_cast<int>(file.integer_or("controller.iterations", 10));
  cfg.controller.solver.lipschitz_safety = file.number_or("controller.lipschitz_safety", 1.01);
  cfg.controller.solver.warm_start = file.boolean_or("controller.warm_start", false);
  cfg.controller.solver.zero_tol = file.number_or("controller.zero_tol", 0.0);
  cfg.controller.mu2 = file.number_or("controller.mu2", 0.0005);
  if (cfg.controller.kind == ControllerKind::RidgeTruncated) {
    for (const double s : file.number_list("controller.sparsity_schedule"))
      cfg.controller.sparsity_schedule.push_back(static_cast<int>(std::llround(s)));
  }

  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.mu) cfg.controller.solver.mu = *overrides.mu;
  if (overrides.mu2) cfg.controller.mu2 = *overrides.mu2;
  if (overrides.sample_count) cfg.sample_count = *overrides.sample_count;
  if (overrides.periods) cfg.periods = *overrides.periods;
  if (overrides.warm_start) cfg.controller.solver.warm_start = true;

  cfg.recipe = recipe_from(file);
  cfg.reference = realize(*cfg.recipe, cfg.spec);
  cfg.validate();
  return cfg;
}

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep: values must be nonempty");
  if (!std::is_sorted(values.begin(), values.end()))
    throw std::invalid_argument("sweep: values must be sorted ascending");
  for (double v : values)
    if (v <= 0.0) throw std::invalid_argument("sweep: values must be positive");
  if (seeds.empty()) throw std::invalid_argument("sweep: seeds must be nonempty");
}

SweepSpec load_sweep_spec(const ConfigFile& file, const Overrides& overrides) {
  SweepSpec sweep;
  sweep.base = load_run_config(file, overrides);
  const std::string p = file.word("sweep.parameter");
  if (p == "mu")
    sweep.parameter = SweepSpec::Parameter::Mu;
  else if (p == "mu2")
    sweep.parameter = SweepSpec::Parameter::Mu2;
  else if (p == "K")
    sweep.parameter = SweepSpec::Parameter::SampleCount;
  else
    file.fail("sweep.parameter", "must be mu, mu2, or K");
  sweep.values = file.number_list("sweep.values");
  if (file.has("sweep.seeds")) {
    for (const double s : file.number_list("sweep.seeds"))
      sweep.seeds.push_back(static_cast<std::uint64_t>(std::llround(s)));
  } else {
    sweep.seeds.push_back(sweep.base.seed);
  }
  sweep.validate();
  if (sweep.parameter == SweepSpec::Parameter::SampleCount) {
    for (const double v : sweep.values)
      if (std::abs(v - std::llround(v)) > 1e-9 || v < 1 || v > sweep.base.spec.size())
        file.fail("sweep.values", "K values must be integers in 1..N");
  }
  return sweep;
}

std::string controller_kind_name(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::Sparse: return "sparse";
    case ControllerKind::Ridge: return "ridge";
    case ControllerKind::RidgeTruncated: return "ridge_truncated";
  }
  return "unknown";
}

namespace {

std::string vector_literal(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v(i));
  }
  return out + "]";
}

std::string matrix_literal(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) out += ", ";
    out += vector_literal(m.row(r).transpose());
  }
  return out + "]";
}

}  // namespace

std::vector<std::string> config_echo_lines(const RunConfig& cfg) {
  if (!cfg.recipe)
    throw std::logic_error("config echo requires a reference recipe");
  std::vector<std::string> lines;
  lines.push_back("basis.M = " + std::to_string(cfg.spec.bandwidth));
  lines.push_back("basis.T = " + format_double(cfg.spec.period));
  lines.push_back("controller.iterations = " + std::to_string(cfg.controller.solver.iterations));
  lines.push_back("controller.lipschitz_safety = " +
                  format_double(cfg.controller.solver.lipschitz_safety));
  lines.push_back("controller.mu = " + format_double(cfg.controller.solver.mu));
  lines.push_back("controller.mu2 = " + format_double(cfg.controller.mu2));
  if (cfg.controller.kind == ControllerKind::RidgeTruncated) {
    std::string sched = "[";
    for (std::size_t i = 0; i < cfg.controller.sparsity_schedule.size(); ++i) {
      if (i) sched += ", ";
      sched += std::to_string(cfg.controller.sparsity_schedule[i]);
    }
    lines.push_back("controller.sparsity_schedule = " + sched + "]");
  }
  lines.push_back("controller.type = " + controller_kind_name(cfg.controller.kind));
  lines.push_back(std::string("controller.warm_start = ") +
                  (cfg.controller.solver.warm_start ? "true" : "false"));
  lines.push_back("controller.zero_tol = " + format_double(cfg.controller.solver.zero_tol));
  lines.push_back("plant.A = " + matrix_literal(cfg.plant.dynamics));
  lines.push_back("plant.b = " + vector_literal(cfg.plant.input));
  lines.push_back("plant.c = " + vector_literal(cfg.plant.output));
  lines.push_back("plant.x0 = " + vector_literal(cfg.plant.initial_state));
  if (cfg.recipe->kind == ReferenceRecipe::Kind::Step) {
    lines.push_back("reference.level = " + format_double(cfg.recipe->level));
    lines.push_back("reference.type = step");
  } else {
    std::string terms = "[";
    for (std::size_t i = 0; i < cfg.recipe->terms.size(); ++i) {
      const SinusoidTerm& t = cfg.recipe->terms[i];
      if (i) terms += ", ";
      terms += std::string("[") + (t.kind == SinusoidTerm::Kind::Sin ? "sin" : "cos") + ", " +
               std::to_string(t.freq_index) + ", " + format_double(t.amplitude) + "]";
    }
    lines.push_back("reference.terms = " + terms + "]");
    lines.push_back("reference.type = sinusoids");
  }
  lines.push_back("run.K = " + std::to_string(cfg.sample_count));
  lines.push_back("run.fine_grid = " + std::to_string(cfg.fine_grid));
  lines.push_back("run.periods = " + std::to_string(cfg.periods));
  lines.push_back("run.seed = " + std::to_string(cfg.seed));
  return lines;
}

}  // namespace csc
