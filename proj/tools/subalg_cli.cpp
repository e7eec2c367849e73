// subalg: generate, identify, predict, evaluate and inspect polynomial observers.
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "subalg/config_io.hpp"
#include "subalg/error.hpp"
#include "subalg/generator.hpp"
#include "subalg/keyvalue.hpp"
#include "subalg/model.hpp"
#include "subalg/pipeline.hpp"
#include "subalg/report.hpp"
#include "subalg/series_io.hpp"

namespace {

using namespace subalg;

ObserverModel load_model(const std::string& path) {
  return deserialize_model(read_text_file(path));
}

std::size_t stored_anchor(const ObserverModel& m) {
  auto it = m.provenance.find("anchor_t");
  require(it != m.provenance.end(), ErrorCode::InvalidInput,
          "model provenance has no anchor_t; cannot replay stored initial states");
  return std::stoul(it->second);
}

// Stored X0 from the anchor, or x0 = g_io(y⁻) on fresh data.
PredictionReport run_prediction(const ObserverModel& m, const TimeSeriesSet& ts, bool replay) {
  require(ts.dim() == m.d_y, ErrorCode::DimMismatch,
          "model has d_y=" + std::to_string(m.d_y) + " but data has d_y=" + std::to_string(ts.dim()));
  if (replay) return predict_one_step(m, ts, m.x0, stored_anchor(m));
  require(m.g_io.has_value(), ErrorCode::InvalidInput,
          "model has no g_io for initial states; use --replay on the training data");
  return predict_from_past(m, ts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subalgebraic identification of polynomial observers from output time series"};
  app.require_subcommand(1);

  std::string spec_path, out_path, data_path, config_path, model_path, report_path;
  std::uint64_t seed = 0;
  bool replay = false;

  auto* gen = app.add_subcommand("gen", "Generate synthetic series from a generator spec");
  gen->add_option("--spec", spec_path, "Generator spec file")->required();
  gen->add_option("--seed", seed, "PRNG seed")->required();
  gen->add_option("--out", out_path, "Output series CSV")->required();

  auto* ident = app.add_subcommand("identify", "Identify an observer model");
  ident->add_option("--data", data_path, "Series CSV")->required();
  ident->add_option("--config", config_path, "Identification config")->required();
  ident->add_option("--out-model", model_path, "Model document to write")->required();
  ident->add_option("--report", report_path, "Diagnostics report to write")->required();

  auto* pred = app.add_subcommand("predict", "One-step predictions and residuals");
  pred->add_option("--model", model_path, "Model document")->required();
  pred->add_option("--data", data_path, "Series CSV")->required();
  pred->add_option("--out", out_path, "Prediction CSV")->required();
  pred->add_flag("--replay", replay, "Start from the stored initial states at the anchor");

  auto* eval = app.add_subcommand("evaluate", "Print per-dimension RMSE");
  eval->add_option("--model", model_path, "Model document")->required();
  eval->add_option("--data", data_path, "Series CSV")->required();
  eval->add_flag("--replay", replay, "Start from the stored initial states at the anchor");

  auto* insp = app.add_subcommand("inspect", "Print a model in readable form");
  insp->add_option("--model", model_path, "Model document")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const GeneratorSpec spec = parse_generator_spec(read_text_file(spec_path), spec_path);
      write_series_file(out_path, generate(spec, seed));
    } else if (*ident) {
      const TimeSeriesSet ts = read_series_file(data_path);
      const IdentConfig cfg = parse_ident_config(read_text_file(config_path), config_path);
      const IdentResult res = identify(ts, cfg);
      write_text_file(model_path, serialize_model(res.model));
      write_text_file(report_path, format_report(res.diagnostics));
      const auto& rel = res.diagnostics.training_relative_rmse;
      std::cout << "n = " << res.model.n << ", horizons " << res.diagnostics.t_plus << "/"
                << res.diagnostics.t_minus << ", training relative RMSE " << rel.maxCoeff() << "\n";
    } else if (*pred) {
      const ObserverModel m = load_model(model_path);
      const TimeSeriesSet ts = read_series_file(data_path);
      write_text_file(out_path, format_prediction_csv(run_prediction(m, ts, replay)));
    } else if (*eval) {
      const ObserverModel m = load_model(model_path);
      const TimeSeriesSet ts = read_series_file(data_path);
      std::cout << format_evaluation(run_prediction(m, ts, replay));
    } else if (*insp) {
      std::cout << format_inspect(load_model(model_path));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << code_name(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: INTERNAL: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
