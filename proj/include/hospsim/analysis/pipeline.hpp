#pragma once

#include "hospsim/analysis/ols.hpp"
#include "hospsim/analysis/recommend.hpp"
#include "hospsim/analysis/screening.hpp"
#include "hospsim/io/csv.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace hospsim {

struct AnalysisOptions {
  double threshold = 2.0;
  bool all_two_factor = false;  // offer all 2FIs instead of the reference lists
};

/// Results table reduced to one row per run_id (replications averaged).
struct RunMeans {
  std::vector<int> run_ids;
  Eigen::MatrixXd coded;  // runs x 16
  std::vector<char> labels;
  std::vector<std::string> columns;
  Eigen::MatrixXd values;  // runs x columns, NaN where every replication was NaN
};

/// Columns of the six screened responses, in table order.
std::vector<std::string> response_columns_for_analysis();

/// Throws std::runtime_error when the table is not a results table or a
/// run's coded levels differ between replications.
RunMeans run_means(const CsvTable& results);

struct Analysis {
  std::vector<ScreeningModel> models;  // screening_responses() order
  std::vector<ResponseSpec> specs;
  RunMeans data;
  std::vector<FactorChoice> recommendation;
};

/// Fits the six screening models (rows with a missing response are dropped
/// for that response) and derives the recommendation.
Analysis analyze(const CsvTable& results, const AnalysisOptions& options);

/// Writes directions.csv, interactions.csv, coefficients.csv, fit.csv,
/// boxplots.csv, diagnostics/<response>_qq.csv and _fitted.csv,
/// surfaces/<ij>.csv for the tourist-wait model's interactions,
/// surfaces/index.csv and recommendation.txt. Returns the written paths
/// relative to `dir`.
std::vector<std::string> write_analysis(const Analysis& a, const AnalysisOptions& options,
                                        const std::filesystem::path& dir);

/// recommendation.txt contents.
std::string recommendation_text(const std::vector<FactorChoice>& choices);

}  // namespace hospsim
