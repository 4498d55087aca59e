#pragma once

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hospsim {

inline constexpr std::string_view kInterceptTerm = "(Intercept)";

/// Least-squares fit of one response on coded columns.
struct ScreeningModel {
  std::string response;
  std::vector<std::string> terms;  // "(Intercept)", "A", "AF", ...
  Eigen::VectorXd coefficients;
  Eigen::VectorXd std_errors;
  Eigen::VectorXd t_ratios;
  Eigen::VectorXd fitted;
  Eigen::VectorXd residuals;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double sigma = 0.0;  // residual standard error
  bool has_intercept = false;

  std::optional<std::size_t> term_index(std::string_view term) const;
  std::optional<double> coefficient(std::string_view term) const;
  /// |t| >= threshold. Terms absent from the model are not retained.
  bool retained(std::string_view term, double threshold = 2.0) const;
};

class RankDeficientError : public std::runtime_error {
public:
  RankDeficientError(std::vector<std::string> columns);
  const std::vector<std::string>& columns() const { return columns_; }

private:
  std::vector<std::string> columns_;
};

/// OLS through a column-pivoting Householder QR. The intercept, when wanted,
/// must be one of the columns, named kInterceptTerm.
/// Throws std::invalid_argument when rows <= columns or sizes disagree and
/// RankDeficientError naming the dependent columns.
ScreeningModel fit_screening_model(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                   const std::vector<std::string>& terms, std::string response = {});

/// Term name of a factor product, letters in label order: {'F','A'} -> "AF".
std::string term_name(std::string letters);

/// Model matrix from a coded design: intercept, all main columns, then the
/// listed interactions (each a string of two or more labels).
/// Throws std::invalid_argument for labels not in the design.
Eigen::MatrixXd model_matrix(const Eigen::MatrixXd& coded, const std::vector<char>& labels,
                             const std::vector<std::string>& interactions, std::vector<std::string>& terms);

/// Every two-factor interaction of the labels, in lexical order.
std::vector<std::string> all_two_factor_interactions(const std::vector<char>& labels);

}  // namespace hospsim
