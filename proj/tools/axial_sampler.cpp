// Copyright 2026 The axial-sampler Authors
// SPDX-License-Identifier: Apache-2.0

// axial_sampler: draw from f(x) ∝ x^T A x on the unit sphere, evaluate the
// density, print moments and run the validation suite.
//
// Exit codes: 0 success, 1 validation failure, 2 bad input, 3 numeric failure.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "axial/axial.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kBadInput = 2, kNumericFailure = 3 };

struct CliConfig {
  std::string input;
  std::string output;
  std::size_t n = 0;  // 0: subcommand default
  std::uint64_t seed = kDefaultSeed;
  std::string format;         // input matrix format; empty = by extension
  std::string output_format;  // empty = by output extension, csv for stdout
  bool trace = false;
  std::size_t empirical = 0;
  std::string x;
};

unsigned worker_count() {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("AXIAL_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) workers = std::min<unsigned>(workers, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring AXIAL_THREADS='" << env << "'\n";
    }
  }
  return workers;
}

axial::AxialDensity load_density(const CliConfig& cfg) {
  if (cfg.input.empty()) throw axial::Error(axial::ErrorCode::ParseError, "--input is required");
  const auto format = cfg.format.empty() ? axial::io::format_from_path(cfg.input)
                      : cfg.format == "json" ? axial::io::MatrixFormat::Json
                                             : axial::io::MatrixFormat::Csv;
  return axial::AxialDensity(axial::io::load_matrix(cfg.input, format));
}

bool json_output(const CliConfig& cfg) {
  if (!cfg.output_format.empty()) return cfg.output_format == "json";
  return !cfg.output.empty() && std::filesystem::path(cfg.output).extension() == ".json";
}

void write_output(const CliConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw axial::Error(axial::ErrorCode::ParseError, "cannot write " + cfg.output);
  out << text;
}

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

nlohmann::json trace_json(const axial::DrawTrace& t) {
  return {{"t", t.t},       {"mixture_choice", t.mixture_choice},
          {"beta_value", t.beta_value}, {"sign", t.sign},
          {"a", t.a},       {"b", t.b},
          {"u_phi", t.u_phi}, {"phi_star", t.phi_star},
          {"phi", t.phi},   {"u", t.u},
          {"x", t.x}};
}

nlohmann::json matrix_json(const axial::Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

int cmd_sample(const CliConfig& cfg) {
  const auto density = load_density(cfg);
  const std::size_t n = cfg.n == 0 ? 1000 : cfg.n;
  const auto batch = axial::sample(density, n, cfg.seed,
                                   {.capture_traces = cfg.trace, .threads = worker_count()});

  if (json_output(cfg)) {
    nlohmann::json doc = {{"seed", batch.seed},
                          {"dim", batch.dim},
                          {"count", batch.count},
                          {"matrix_fingerprint", hex(batch.matrix_fingerprint)},
                          {"samples", matrix_json(batch.vectors)}};
    if (cfg.trace) {
      auto& traces = doc["traces"] = nlohmann::json::array();
      for (const auto& t : batch.traces) traces.push_back(trace_json(t));
    }
    write_output(cfg, doc.dump() + "\n");
    return kOk;
  }

  std::string text;
  for (std::size_t j = 0; j < batch.dim; ++j) text += (j ? ",x" : "x") + std::to_string(j + 1);
  text += '\n';
  for (std::size_t i = 0; i < batch.count; ++i) {
    const auto row = batch.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) text += ',';
      text += axial::io::format_double(row[j]);
    }
    text += '\n';
  }
  write_output(cfg, text);

  if (cfg.trace) {
    std::string lines;
    for (const auto& t : batch.traces) lines += trace_json(t).dump() + "\n";
    if (cfg.output.empty()) {
      std::cerr << lines;
    } else {
      std::ofstream(cfg.output + ".trace.jsonl", std::ios::binary) << lines;
    }
  }
  return kOk;
}

int cmd_density(const CliConfig& cfg) {
  const auto density = load_density(cfg);
  if (cfg.x.empty()) throw axial::Error(axial::ErrorCode::ParseError, "--x is required");
  const auto x = axial::io::parse_vector(cfg.x);
  if (x.size() != density.dim())
    throw axial::Error(axial::ErrorCode::ParseError, "--x has wrong dimension");
  write_output(cfg, axial::io::format_double(density.density_value(x)) + "\n");
  return kOk;
}

int cmd_validate(const CliConfig& cfg) {
  const auto density = load_density(cfg);
  const std::size_t n = cfg.n == 0 ? 100000 : cfg.n;
  const auto reports = axial::validate_all(density, n, cfg.seed, worker_count());
  std::string text;
  bool all_pass = true;
  for (const auto& r : reports) {
    text += axial::to_json(r).dump() + "\n";
    all_pass = all_pass && r.pass;
  }
  write_output(cfg, text);
  return all_pass ? kOk : kValidationFailed;
}

int cmd_moments(const CliConfig& cfg) {
  const auto density = load_density(cfg);
  const auto closed = axial::second_moment_closed_form(density);
  nlohmann::json doc = {{"dim", density.dim()}, {"closed_form", matrix_json(closed)}};
  if (cfg.empirical > 0) {
    const auto batch =
        axial::sample(density, cfg.empirical, cfg.seed, {.threads = worker_count()});
    const auto empirical = axial::empirical_second_moment(batch);
    doc["n"] = cfg.empirical;
    doc["seed"] = cfg.seed;
    doc["empirical"] = matrix_json(empirical);
    doc["max_abs_discrepancy"] = axial::max_abs_diff(empirical, closed);
  }
  write_output(cfg, doc.dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact sampler for the axial density f(x) ∝ x^T A x on the unit sphere"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Matrix file (.csv: p rows of p values; .json: {\"matrix\": [[...]]})")
        ->required();
    sub->add_option("--output", cfg.output, "Output file (default: stdout)");
    sub->add_option("--seed", cfg.seed, "64-bit seed")->default_val(kDefaultSeed);
    sub->add_option("--format", cfg.format, "Input matrix format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* sample = app.add_subcommand("sample", "Draw n unit vectors");
  add_common(sample);
  sample->add_option("--n", cfg.n, "Number of draws (default 1000)")->check(CLI::PositiveNumber);
  sample->add_flag("--trace", cfg.trace, "Record per-draw internals");
  sample->add_option("--output-format", cfg.output_format, "csv or json (default: by --output extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* density = app.add_subcommand("density", "Evaluate the density at a unit vector");
  add_common(density);
  density->add_option("--x", cfg.x, "Comma-separated unit vector")->required();

  auto* validate = app.add_subcommand("validate", "Run the statistical validation suite");
  add_common(validate);
  validate->add_option("--n", cfg.n, "Draws per check (default 100000)")->check(CLI::Range(10, 1 << 30));

  auto* moments = app.add_subcommand("moments", "Print E[x x^T], optionally with a Monte Carlo estimate");
  add_common(moments);
  moments->add_option("--empirical", cfg.empirical, "Monte Carlo draws")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*sample) return cmd_sample(cfg);
    if (*density) return cmd_density(cfg);
    if (*validate) return cmd_validate(cfg);
    return cmd_moments(cfg);
  } catch (const axial::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return axial::is_numeric_failure(e.code()) ? kNumericFailure : kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
}
