// Copyright 2026 The Ganon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// ganon: command-line driver for concentration-difference masking.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "ganon/config.h"
#include "ganon/pipeline.h"
#include "ganon/service.h"
#include "ganon/session.h"
#include "ganon/signal_io.h"
#include "ganon/status_macros.h"
#include "ganon/svg_plot.h"
#include "ganon/wavelet.h"

namespace ganon {
namespace {

void PrintExtremums(const std::vector<double>& signal,
                    const std::vector<std::string>& order, size_t top) {
  for (const Extremum& e : ExtremumReport(signal, top)) {
    std::cout << absl::StrFormat("  %2d  %-6s %.4f\n", e.index + 1,
                                 order[e.index], e.value);
  }
}

absl::Status RunExtract(const std::string& config_path,
                        const std::string& out_dir, size_t top) {
  GANON_ASSIGN_OR_RETURN(Config config, LoadConfig(config_path));
  GANON_ASSIGN_OR_RETURN(Extraction extraction, Extract(config));
  GANON_RETURN_IF_ERROR(WriteExtractBundle(extraction, out_dir).status());
  std::cout << absl::StrFormat("%d records, %s: %d, %s: %d\n",
                               extraction.file.record_count(),
                               extraction.q1.label, extraction.q1.total(),
                               extraction.q2.label, extraction.q2.total());
  std::cout << "largest differences:\n";
  PrintExtremums(extraction.delta, config.parameter.order, top);
  return absl::OkStatus();
}

absl::Status RunMaskCommand(const std::string& config_path,
                            const std::string& plan_path,
                            const std::string& out_dir) {
  GANON_ASSIGN_OR_RETURN(Config config, LoadConfig(config_path));
  GANON_ASSIGN_OR_RETURN(MaskingPlan plan, LoadPlan(plan_path));
  GANON_ASSIGN_OR_RETURN(Extraction extraction, Extract(config));
  GANON_ASSIGN_OR_RETURN(MaskOutcome outcome, RunMask(extraction, plan));
  GANON_RETURN_IF_ERROR(
      WriteMaskBundle(extraction, plan, outcome, out_dir).status());
  const MaskingResult& r = outcome.result;
  std::cout << absl::StrFormat("gamma1 %.4f  gamma2 %.4f\n", r.gamma1,
                               r.gamma2);
  std::cout << absl::StrFormat("moved %d main and %d subordinate records\n",
                               outcome.main_moves.moves.size(),
                               outcome.subordinate_moves.moves.size());
  std::cout << "largest differences after masking:\n";
  PrintExtremums(r.delta_tilde, config.parameter.order, 5);
  return absl::OkStatus();
}

absl::Status RunServe(const std::string& config_path, const std::string& host,
                      int port, const SessionOptions& options,
                      const std::optional<std::string>& ui_dir) {
  GANON_ASSIGN_OR_RETURN(Config config, LoadConfig(config_path));
  GANON_ASSIGN_OR_RETURN(Extraction extraction, Extract(config));
  GANON_ASSIGN_OR_RETURN(std::unique_ptr<Session> session,
                         Session::Create(std::move(extraction), options));
  std::optional<std::filesystem::path> ui;
  if (ui_dir.has_value()) ui = *ui_dir;
  std::cout << absl::StrFormat("serving on http://%s:%d/\n", host, port)
            << std::flush;
  return Serve(*session, host, port, ui);
}

absl::Status RunPlot(const std::string& in, const std::string& out,
                     const std::string& title) {
  std::ifstream input(in);
  if (!input) {
    return absl::NotFoundError(absl::StrFormat("cannot open '%s'", in));
  }
  absl::StatusOr<std::vector<double>> values = ReadSignalCsv(input);
  if (!values.ok()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s: %s", in, values.status().message()));
  }
  std::ofstream output(out, std::ios::binary | std::ios::trunc);
  output << RenderBarChart(*values, {.title = title});
  if (!output) return absl::DataLossError("cannot write " + out);
  return absl::OkStatus();
}

absl::Status RunMatrix(const std::string& basis_name, size_t length,
                       size_t level, const std::string& out) {
  GANON_ASSIGN_OR_RETURN(WaveletBasis basis, WaveletBasis::FromName(basis_name));
  GANON_ASSIGN_OR_RETURN(Matrix wrm, ReconstructionMatrix(basis, length, level));
  std::ofstream output(out, std::ios::binary | std::ios::trunc);
  return WriteMatrixCsv(wrm, output);
}

}  // namespace
}  // namespace ganon

int main(int argc, char** argv) {
  CLI::App app{"Group anonymity through concentration-difference masking"};
  app.require_subcommand(1);

  std::string config;
  std::string out;

  size_t top = 5;
  CLI::App* extract = app.add_subcommand("extract", "Extract signals");
  extract->add_option("--config", config, "Configuration JSON")->required();
  extract->add_option("--out", out, "Output directory")->required();
  extract->add_option("--top", top, "Extremums to print");

  std::string plan;
  CLI::App* mask = app.add_subcommand("mask", "Mask and rewrite");
  mask->add_option("--config", config, "Configuration JSON")->required();
  mask->add_option("--plan", plan, "Masking plan JSON")->required();
  mask->add_option("--out", out, "Output directory")->required();

  int port = 8080;
  std::string host = "127.0.0.1";
  std::optional<std::string> ui;
  ganon::SessionOptions options;
  std::string serve_out = "ganon-out";
  CLI::App* serve = app.add_subcommand("serve", "Run the tuning service");
  serve->add_option("--config", config, "Configuration JSON")->required();
  serve->add_option("--port", port, "TCP port")->required();
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--out", serve_out, "Commit output directory");
  serve->add_option("--ui", ui, "Directory with UI assets");
  serve->add_option("--basis", options.basis, "db1 or db2");
  serve->add_option("--level", options.level, "Decomposition level");
  serve->add_option("--seed", options.seed, "Record selection seed");

  std::string in;
  std::string title;
  CLI::App* plot = app.add_subcommand("plot", "Render a signal as SVG");
  plot->add_option("--in", in, "Signal CSV")->required();
  plot->add_option("--out", out, "SVG file")->required();
  plot->add_option("--title", title, "Chart title");

  std::string basis = "db1";
  size_t length = 0;
  size_t level = 2;
  CLI::App* matrix =
      app.add_subcommand("matrix", "Export a reconstruction matrix as CSV");
  matrix->add_option("--basis", basis, "db1 or db2");
  matrix->add_option("--length", length, "Signal length")->required();
  matrix->add_option("--level", level, "Decomposition level");
  matrix->add_option("--out", out, "CSV file")->required();

  CLI11_PARSE(app, argc, argv);

  absl::Status status;
  if (*extract) {
    status = ganon::RunExtract(config, out, top);
  } else if (*mask) {
    status = ganon::RunMaskCommand(config, plan, out);
  } else if (*serve) {
    options.out_dir = serve_out;
    status = ganon::RunServe(config, host, port, options, ui);
  } else if (*plot) {
    status = ganon::RunPlot(in, out, title);
  } else if (*matrix) {
    status = ganon::RunMatrix(basis, length, level, out);
  }
  if (!status.ok()) {
    std::cerr << "ganon: " << status.message() << "\n";
    return 1;
  }
  return 0;
}
