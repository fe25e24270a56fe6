#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "selfinv/construction.hpp"
#include "selfinv/errors.hpp"
#include "selfinv/experiments.hpp"
#include "selfinv/format.hpp"
#include "selfinv/ratio.hpp"
#include "selfinv/version.hpp"

namespace fs = std::filesystem;
using namespace selfinv;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;

// Writes via a temp file in the same directory so a crash never leaves a
// half-written report behind.
void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + tmp.string());
    out << content;
    if (!out) throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string csv_of(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file_atomic(out_path, content);
}

// Thrown once a full diagnostic is already on stderr; main just sets the
// exit code without printing anything further.
struct ReportedError {};

void print_parse_error(const std::string& spec_text, const ParseError& e) {
  std::cerr << "error: " << e.what() << " at position " << e.position() << "\n";
  std::cerr << "  " << spec_text << "\n";
  std::cerr << "  " << std::string(e.position(), ' ') << "^\n";
  const auto& expected = e.expected();
  // a single candidate that the message already names would just repeat it
  const bool redundant =
      expected.size() == 1 &&
      std::string(e.what()).find(expected.front()) != std::string::npos;
  if (!expected.empty() && !redundant) {
    std::cerr << "expected one of:";
    for (const auto& tok : expected) std::cerr << " " << tok;
    std::cerr << "\n";
  }
}

struct SpecFlags {
  std::string dist_text;
  std::string joint_text;

  // Exactly one of --dist/--joint, parsed with caret diagnostics on failure.
  // --dist accepts any spec (joint specs included, emitting x,y rows);
  // --joint insists on a joint.
  AnySpec parse_one() const {
    if (dist_text.empty() == joint_text.empty())
      throw Error("exactly one of --dist or --joint is required");
    const std::string& text = dist_text.empty() ? joint_text : dist_text;
    try {
      if (!dist_text.empty()) return parse_spec(dist_text);
      return AnySpec(parse_joint(joint_text));
    } catch (const ParseError& e) {
      print_parse_error(text, e);
      throw ReportedError{};
    }
  }
};

void add_spec_flags(CLI::App* cmd, SpecFlags& flags) {
  cmd->add_option("--dist", flags.dist_text, "scalar distribution spec");
  cmd->add_option("--joint", flags.joint_text, "joint distribution spec");
}

nlohmann::ordered_json provenance_json(const std::string& spec_text,
                                       std::uint64_t seed, std::uint64_t stream,
                                       std::size_t n,
                                       const std::vector<std::string>& columns) {
  nlohmann::ordered_json j;
  j["spec"] = spec_text;
  j["seed"] = seed;
  j["stream"] = stream;
  j["n"] = n;
  j["columns"] = columns;
  j["version"] = kVersion;
  return j;
}

int cmd_sample(const SpecFlags& flags, std::size_t n, std::uint64_t seed,
               std::uint64_t stream_id, const std::string& out_path) {
  const AnySpec spec = flags.parse_one();
  RandomStream stream = new_stream({seed, stream_id});
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string spec_text;
  if (const auto* d = std::get_if<DistSpec>(&spec)) {
    spec_text = d->text();
    const Sample s = sample(*d, stream, n);
    header = {"value"};
    for (double v : s.values) rows.push_back({fmt_double(v)});
  } else {
    const JointSpec& j = std::get<JointSpec>(spec);
    spec_text = j.text();
    const PairSample ps = sample_joint(j, stream, n);
    header = {"x", "y"};
    for (std::size_t i = 0; i < ps.xs.size(); ++i)
      rows.push_back({fmt_double(ps.xs[i]), fmt_double(ps.ys[i])});
  }
  emit(csv_of(header, rows), out_path);
  if (!out_path.empty()) {
    write_file_atomic(out_path + ".json",
                      provenance_json(spec_text, seed, stream_id, n, header)
                              .dump(2) + "\n");
  }
  return kExitPass;
}

// single- or two-column CSV; a non-numeric first line is taken as a header
std::vector<std::vector<double>> read_csv_columns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read file: " + path);
  std::vector<std::vector<double>> columns;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    std::vector<double> parsed;
    bool numeric = true;
    for (const auto& f : fields) {
      try {
        std::size_t used = 0;
        parsed.push_back(std::stod(f, &used));
        if (used != f.size()) numeric = false;
      } catch (...) {
        numeric = false;
      }
      if (!numeric) break;
    }
    if (first) {
      first = false;
      if (!numeric) continue;  // header row
    }
    if (!numeric) throw Error("non-numeric row in " + path + ": " + line);
    if (columns.empty()) columns.resize(parsed.size());
    if (parsed.size() != columns.size())
      throw Error("ragged row in " + path + ": " + line);
    for (std::size_t i = 0; i < parsed.size(); ++i) columns[i].push_back(parsed[i]);
  }
  if (columns.empty()) throw Error("no data rows in " + path);
  return columns;
}

GridSpec parse_grid_flag(const std::string& grid_text) {
  GridSpec grid;
  if (grid_text.empty()) return grid;
  if (grid_text.find(',') == std::string::npos) {
    grid.k = static_cast<std::size_t>(std::stoul(grid_text));
    return grid;
  }
  std::stringstream ss(grid_text);
  std::string field;
  while (std::getline(ss, field, ',')) grid.edges.push_back(std::stod(field));
  return grid;
}

int finish_check(const TestReport& report) {
  std::cout << to_json(report) << "\n";
  return report.reject ? kExitReject : kExitPass;
}

int cmd_check(const std::string& test_name, const SpecFlags& flags,
              const std::string& file, std::size_t n, double alpha, double theta,
              std::uint64_t seed, std::uint64_t stream_id,
              const std::string& grid_text, bool exact) {
  RandomStream stream = new_stream({seed, stream_id});

  // data source: an explicit CSV file, or draws from the parsed spec
  std::optional<AnySpec> spec;
  if (file.empty()) spec = flags.parse_one();

  if (test_name == "self-inverse" || test_name == "log-symmetry") {
    Sample s;
    if (!file.empty()) {
      const auto cols = read_csv_columns(file);
      if (cols.size() != 1)
        throw Error("check " + test_name + " expects a single-column CSV");
      s.values = cols[0];
      s.provenance = {stream.key(), "file:" + file};
    } else if (const auto* d = std::get_if<DistSpec>(&*spec)) {
      if (test_name == "self-inverse") {
        return finish_check(self_inverse_test(*d, stream, n, alpha, theta));
      }
      s = sample(*d, stream, n);
    } else {
      s = ratio_sample(std::get<JointSpec>(*spec), stream, n);
    }
    return finish_check(test_name == "self-inverse"
                            ? self_inverse_test(s, alpha, theta)
                            : log_symmetry_test(s, alpha));
  }

  if (test_name == "exchangeable") {
    if (exact) {
      if (file.empty() && std::holds_alternative<JointSpec>(*spec)) {
        const JointSpec& j = std::get<JointSpec>(*spec);
        if (j.kind() == JointKind::discrete_table)
          return finish_check(exchangeability_exact(j.table()));
      }
      throw Error("--exact requires a discrete-table joint");
    }
    PairSample ps;
    if (!file.empty()) {
      const auto cols = read_csv_columns(file);
      if (cols.size() != 2)
        throw Error("check exchangeable expects a two-column CSV");
      ps.xs = cols[0];
      ps.ys = cols[1];
      ps.provenance = {stream.key(), "file:" + file};
    } else {
      if (!std::holds_alternative<JointSpec>(*spec))
        throw Error("check exchangeable needs --joint (or a two-column --file)");
      ps = sample_joint(std::get<JointSpec>(*spec), stream, n);
    }
    return finish_check(exchangeability_test(ps, parse_grid_flag(grid_text), alpha));
  }

  throw Error("unknown check '" + test_name +
              "' (expected self-inverse, log-symmetry, or exchangeable)");
}

int cmd_density_ratio(const std::string& joint_text, const std::string& grid_text,
                      double tol, const std::string& out_path) {
  JointSpec joint = [&] {
    try {
      return parse_joint(joint_text);
    } catch (const ParseError& e) {
      print_parse_error(joint_text, e);
      throw ReportedError{};
    }
  }();
  double zmin = 0.0, zmax = 0.0;
  long steps = 0;
  {
    std::stringstream ss(grid_text);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
        !std::getline(ss, c, ':'))
      throw Error("--grid must be zmin:zmax:steps");
    zmin = std::stod(a);
    zmax = std::stod(b);
    steps = std::stol(c);
  }
  if (steps < 2 || !(zmin < zmax)) throw Error("--grid must satisfy zmin < zmax, steps >= 2");
  std::vector<std::vector<std::string>> rows;
  for (long i = 0; i < steps; ++i) {
    const double z =
        zmin + (zmax - zmin) * static_cast<double>(i) / static_cast<double>(steps - 1);
    const QuadResult q = ratio_density_eval(joint, z, tol);
    rows.push_back({fmt_double(z), fmt_double(q.value), fmt_double(q.err_bound)});
  }
  emit(csv_of({"z", "f_Z", "err_bound"}, rows), out_path);
  return kExitPass;
}

int cmd_experiment(const std::string& name, std::uint64_t seed,
                   std::uint64_t base_stream, std::size_t n, double alpha,
                   double tol, const std::string& out_dir) {
  const auto& names = experiment_names();
  std::vector<std::string> to_run;
  if (name == "all")
    to_run = names;
  else
    to_run = {name};

  bool all_pass = true;
  nlohmann::ordered_json index;
  index["version"] = kVersion;
  index["seed"] = seed;
  index["alpha"] = alpha;
  auto& entries = index["experiments"] = nlohmann::ordered_json::array();

  for (const auto& exp_name : to_run) {
    ExperimentConfig cfg;
    cfg.name = exp_name;
    cfg.seed = seed;
    // fixed per-name stream offset, so single runs reproduce `all` exactly
    const auto idx = std::find(names.begin(), names.end(), exp_name);
    cfg.stream = base_stream + static_cast<std::uint64_t>(idx - names.begin());
    cfg.n = n;
    cfg.alpha = alpha;
    cfg.tol = tol;
    const ExperimentResult result = run_experiment(cfg);
    all_pass = all_pass && result.pass;

    const fs::path dir = fs::path(out_dir) / exp_name;
    write_file_atomic(dir / "summary.json", experiment_to_json(result) + "\n");
    for (const auto& table : result.tables)
      write_file_atomic(dir / (table.name + ".csv"),
                        csv_of(table.header, table.rows));

    nlohmann::ordered_json entry;
    entry["experiment"] = exp_name;
    entry["pass"] = result.pass;
    entry["claims"] = result.checks.size();
    entries.push_back(entry);
    std::cout << (result.pass ? "pass" : "FAIL") << "  " << exp_name << "  ("
              << result.checks.size() << " claims)\n";
    for (const auto& c : result.checks) {
      if (!c.pass)
        std::cout << "      failed: " << c.claim << ": expected " << c.expected
                  << ", got " << c.observed << " (" << c.tolerance << ")\n";
    }
  }

  if (name == "all")
    write_file_atomic(fs::path(out_dir) / "summary.json", index.dump(2) + "\n");
  std::cout << (all_pass ? "all claims hold" : "some claims FAILED") << "\n";
  return all_pass ? kExitPass : kExitReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"construct, sample, and statistically verify self-inverse "
               "random variables (Z =d 1/Z)"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "draw from a spec, emit CSV");
  SpecFlags sample_flags;
  add_spec_flags(sample_cmd, sample_flags);
  std::size_t sample_n = 10;
  std::uint64_t sample_seed = 1, sample_stream = 0;
  std::string sample_out;
  sample_cmd->add_option("--n", sample_n, "number of draws");
  sample_cmd->add_option("--seed", sample_seed, "PRNG seed");
  sample_cmd->add_option("--streams", sample_stream, "stream id");
  sample_cmd->add_option("--out", sample_out, "output CSV path (default stdout)");

  // check
  auto* check_cmd = app.add_subcommand("check", "run a hypothesis test");
  std::string check_test;
  check_cmd->add_option("test", check_test,
                        "self-inverse | log-symmetry | exchangeable")
      ->required();
  SpecFlags check_flags;
  add_spec_flags(check_cmd, check_flags);
  std::string check_file;
  check_cmd->add_option("--file", check_file, "CSV sample instead of a spec");
  std::size_t check_n = 20000;
  double check_alpha = 0.01, check_theta = 1.0;
  std::uint64_t check_seed = 1, check_stream = 0;
  std::string check_grid;
  bool check_exact = false;
  check_cmd->add_option("--n", check_n, "sample size");
  check_cmd->add_option("--alpha", check_alpha, "test level");
  check_cmd->add_option("--theta", check_theta, "log-symmetry pivot");
  check_cmd->add_option("--seed", check_seed, "PRNG seed");
  check_cmd->add_option("--streams", check_stream, "stream id");
  check_cmd->add_option("--grid", check_grid,
                        "bins per axis, or explicit comma-separated edges");
  check_cmd->add_flag("--exact", check_exact, "exact table symmetry check");

  // density ratio
  auto* density_cmd = app.add_subcommand("density", "evaluate densities");
  auto* ratio_cmd =
      density_cmd->add_subcommand("ratio", "density of X/Y on a z-grid");
  std::string ratio_joint, ratio_grid = "-4:4:81", ratio_out;
  double ratio_tol = 1e-8;
  ratio_cmd->add_option("--joint", ratio_joint, "joint spec")->required();
  ratio_cmd->add_option("--grid", ratio_grid, "zmin:zmax:steps");
  ratio_cmd->add_option("--tol", ratio_tol, "absolute quadrature tolerance");
  ratio_cmd->add_option("--out", ratio_out, "output CSV path (default stdout)");
  density_cmd->require_subcommand(1);

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "run a named experiment");
  std::string exp_name;
  exp_cmd->add_option("name", exp_name, "experiment name or 'all'")->required();
  std::uint64_t exp_seed = 1, exp_stream = 0;
  std::size_t exp_n = 0;
  double exp_alpha = 0.01, exp_tol = 1e-8;
  std::string exp_out = "reports";
  exp_cmd->add_option("--seed", exp_seed, "PRNG seed");
  exp_cmd->add_option("--streams", exp_stream, "base stream id");
  exp_cmd->add_option("--n", exp_n, "override the experiment's default size");
  exp_cmd->add_option("--alpha", exp_alpha, "test level");
  exp_cmd->add_option("--tol", exp_tol, "quadrature tolerance");
  exp_cmd->add_option("--out", exp_out, "report directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sample_cmd)
      return cmd_sample(sample_flags, sample_n, sample_seed, sample_stream,
                        sample_out);
    if (*check_cmd)
      return cmd_check(check_test, check_flags, check_file, check_n, check_alpha,
                       check_theta, check_seed, check_stream, check_grid,
                       check_exact);
    if (*ratio_cmd)
      return cmd_density_ratio(ratio_joint, ratio_grid, ratio_tol, ratio_out);
    if (*exp_cmd)
      return cmd_experiment(exp_name, exp_seed, exp_stream, exp_n, exp_alpha,
                            exp_tol, exp_out);
  } catch (const ReportedError&) {
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
