#include "hospsim/analysis/ols.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hospsim {

std::optional<std::size_t> ScreeningModel::term_index(std::string_view term) const {
  const auto it = std::find(terms.begin(), terms.end(), term);
  if (it == terms.end()) return std::nullopt;
  return static_cast<std::size_t>(it - terms.begin());
}

std::optional<double> ScreeningModel::coefficient(std::string_view term) const {
  const auto i = term_index(term);
  if (!i) return std::nullopt;
  return coefficients(static_cast<Eigen::Index>(*i));
}

bool ScreeningModel::retained(std::string_view term, double threshold) const {
  const auto i = term_index(term);
  if (!i) return false;
  return std::abs(t_ratios(static_cast<Eigen::Index>(*i))) >= threshold;
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

}  // namespace

RankDeficientError::RankDeficientError(std::vector<std::string> columns)
    : std::runtime_error("rank-deficient model matrix; dependent columns: " + join(columns)),
      columns_(std::move(columns)) {}

ScreeningModel fit_screening_model(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                   const std::vector<std::string>& terms, std::string response) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (y.size() != n) throw std::invalid_argument("fit_screening_model: y has " + std::to_string(y.size()) + " rows, X has " + std::to_string(n));
  if (static_cast<Eigen::Index>(terms.size()) != p) throw std::invalid_argument("fit_screening_model: term count != columns");
  if (n <= p) throw std::invalid_argument("fit_screening_model: need more rows than columns");
  if (!X.allFinite() || !y.allFinite()) throw std::invalid_argument("fit_screening_model: non-finite input");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < p) {
    std::vector<std::string> bad;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = qr.rank(); k < p; ++k) bad.push_back(terms[static_cast<std::size_t>(perm(k))]);
    std::sort(bad.begin(), bad.end());
    throw RankDeficientError(std::move(bad));
  }

  ScreeningModel m;
  m.response = std::move(response);
  m.terms = terms;
  m.has_intercept = std::find(terms.begin(), terms.end(), kInterceptTerm) != terms.end();
  m.coefficients = qr.solve(y);
  m.fitted = X * m.coefficients;
  m.residuals = y - m.fitted;

  const double sse = m.residuals.squaredNorm();
  const double df = static_cast<double>(n - p);
  const double sst = m.has_intercept ? (y.array() - y.mean()).square().sum() : y.squaredNorm();
  m.r_squared = sst > 0.0 ? std::clamp(1.0 - sse / sst, 0.0, 1.0) : 0.0;
  const double df_total = static_cast<double>(m.has_intercept ? n - 1 : n);
  m.adj_r_squared = 1.0 - (1.0 - m.r_squared) * df_total / df;
  m.sigma = std::sqrt(sse / df);

  // diag((X'X)^-1) from R: with XP = QR, (X'X)^-1 = P R^-1 R^-T P'.
  const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd Rinv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const auto& perm = qr.colsPermutation().indices();
  m.std_errors.resize(p);
  m.t_ratios.resize(p);
  for (Eigen::Index k = 0; k < p; ++k) {
    const Eigen::Index j = perm(k);
    m.std_errors(j) = m.sigma * Rinv.row(k).norm();
  }
  for (Eigen::Index j = 0; j < p; ++j) {
    const double b = m.coefficients(j);
    const double se = m.std_errors(j);
    if (se > 0.0) {
      m.t_ratios(j) = b / se;
    } else {
      m.t_ratios(j) = b == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), b);
    }
  }
  return m;
}

std::string term_name(std::string letters) {
  std::sort(letters.begin(), letters.end());
  return letters;
}

Eigen::MatrixXd model_matrix(const Eigen::MatrixXd& coded, const std::vector<char>& labels,
                             const std::vector<std::string>& interactions, std::vector<std::string>& terms) {
  if (static_cast<Eigen::Index>(labels.size()) != coded.cols()) throw std::invalid_argument("model_matrix: label count != columns");
  auto column = [&](char c) -> Eigen::Index {
    const auto it = std::find(labels.begin(), labels.end(), c);
    if (it == labels.end()) throw std::invalid_argument(std::string("model_matrix: unknown factor '") + c + "'");
    return it - labels.begin();
  };
  const Eigen::Index n = coded.rows();
  const Eigen::Index k = coded.cols();
  Eigen::MatrixXd X(n, 1 + k + static_cast<Eigen::Index>(interactions.size()));
  terms.clear();
  X.col(0).setOnes();
  terms.emplace_back(kInterceptTerm);
  for (Eigen::Index j = 0; j < k; ++j) {
    X.col(1 + j) = coded.col(j);
    terms.emplace_back(1, labels[static_cast<std::size_t>(j)]);
  }
  Eigen::Index c = 1 + k;
  for (const auto& word : interactions) {
    if (word.size() < 2) throw std::invalid_argument("model_matrix: interaction '" + word + "' needs two or more factors");
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    for (char f : word) v.array() *= coded.col(column(f)).array();
    X.col(c++) = v;
    terms.push_back(term_name(word));
  }
  return X;
}

std::vector<std::string> all_two_factor_interactions(const std::vector<char>& labels) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) out.push_back(term_name({labels[i], labels[j]}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hospsim
