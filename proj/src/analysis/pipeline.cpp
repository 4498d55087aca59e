#include "hospsim/analysis/pipeline.hpp"

#include "hospsim/analysis/shapiro_wilk.hpp"
#include "hospsim/analysis/summary.hpp"
#include "hospsim/analysis/surface.hpp"
#include "hospsim/model/config.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace hospsim {

RunMeans run_means(const CsvTable& t) {
  const auto run_col = t.column("run_id");
  if (!run_col) throw std::runtime_error("results table has no run_id column");
  std::vector<std::size_t> factor_cols;
  RunMeans m;
  for (std::size_t j = 0; j < kFactorCount; ++j) {
    const auto c = t.column(std::string(1, factor_label(j)));
    if (!c) throw std::runtime_error(std::string("results table has no column ") + factor_label(j));
    factor_cols.push_back(*c);
    m.labels.push_back(factor_label(j));
  }
  for (const auto& name : response_columns_for_analysis()) {
    if (!t.column(name)) throw std::runtime_error("results table has no column " + name);
    m.columns.push_back(name);
  }
  std::map<int, std::vector<std::size_t>> by_run;
  for (std::size_t r = 0; r < t.rows.size(); ++r) by_run[std::stoi(t.rows[r][*run_col])].push_back(r);
  const auto n = static_cast<Eigen::Index>(by_run.size());
  m.coded.resize(n, static_cast<Eigen::Index>(kFactorCount));
  m.values.resize(n, static_cast<Eigen::Index>(m.columns.size()));
  Eigen::Index i = 0;
  for (const auto& [run, rows] : by_run) {
    m.run_ids.push_back(run);
    for (std::size_t j = 0; j < kFactorCount; ++j) {
      const std::string& first = t.rows[rows[0]][factor_cols[j]];
      for (std::size_t r : rows) {
        if (t.rows[r][factor_cols[j]] != first) throw std::runtime_error("run " + std::to_string(run) + ": coded levels differ between replications");
      }
      const double v = parse_number(first);
      if (v != 1.0 && v != -1.0) throw std::runtime_error("run " + std::to_string(run) + ": factor " + std::string(1, factor_label(j)) + " is not coded -1/+1");
      m.coded(i, static_cast<Eigen::Index>(j)) = v;
    }
    for (std::size_t c = 0; c < m.columns.size(); ++c) {
      const std::size_t col = *t.column(m.columns[c]);
      double sum = 0.0;
      int k = 0;
      for (std::size_t r : rows) {
        const double v = parse_number(t.rows[r][col]);
        if (!std::isnan(v)) {
          sum += v;
          ++k;
        }
      }
      m.values(i, static_cast<Eigen::Index>(c)) = k ? sum / k : std::nan("");
    }
    ++i;
  }
  return m;
}

std::vector<std::string> response_columns_for_analysis() {
  std::vector<std::string> v;
  for (const auto& s : screening_responses()) v.push_back(s.column);
  return v;
}

Analysis analyze(const CsvTable& results, const AnalysisOptions& options) {
  Analysis a;
  a.data = run_means(results);
  a.specs = screening_responses();
  const auto all2 = all_two_factor_interactions(a.data.labels);
  for (std::size_t r = 0; r < a.specs.size(); ++r) {
    const ResponseSpec& spec = a.specs[r];
    std::vector<std::string> terms;
    const Eigen::MatrixXd X = model_matrix(a.data.coded, a.data.labels, options.all_two_factor ? all2 : spec.interactions, terms);
    const Eigen::VectorXd yall = a.data.values.col(static_cast<Eigen::Index>(r));
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < yall.size(); ++i) {
      if (!std::isnan(yall(i))) keep.push_back(i);
    }
    Eigen::MatrixXd Xk(static_cast<Eigen::Index>(keep.size()), X.cols());
    Eigen::VectorXd yk(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
      Xk.row(static_cast<Eigen::Index>(k)) = X.row(keep[k]);
      yk(static_cast<Eigen::Index>(k)) = yall(keep[k]);
    }
    a.models.push_back(fit_screening_model(Xk, yk, terms, spec.column));
  }
  a.recommendation = recommend_levels(a.models, a.specs, a.data.labels, options.threshold);
  return a;
}

std::string recommendation_text(const std::vector<FactorChoice>& choices) {
  std::string setting;
  std::string lines;
  for (const auto& c : choices) {
    setting += c.level > 0 ? '+' : '-';
    lines += std::string(1, c.factor) + " " + (c.level > 0 ? "+" : "-") + "  " + c.rationale + "\n";
  }
  return "setting: " + setting + "\n" + lines;
}

namespace {

std::string num(double v) { return format_number(v); }

}  // namespace

std::vector<std::string> write_analysis(const Analysis& a, const AnalysisOptions& options,
                                        const std::filesystem::path& dir) {
  std::vector<std::string> written;
  auto emit = [&](const std::string& rel, const std::string& text) {
    write_text_file(dir / rel, text);
    written.push_back(rel);
  };

  // Direction table.
  const DirectionTable dt = effect_direction_table(a.models, a.data.labels, options.threshold);
  {
    std::vector<std::string> h{"factor"};
    for (const auto& s : a.specs) h.push_back(s.column);
    std::string out = join_csv(h) + "\n";
    for (std::size_t f = 0; f < dt.factors.size(); ++f) {
      std::vector<std::string> row{std::string(1, dt.factors[f])};
      for (Direction d : dt.cells[f]) row.emplace_back(to_string(d));
      out += join_csv(row) + "\n";
    }
    emit("directions.csv", out);
  }
  {
    std::string out = "response,term,coefficient,t_ratio\n";
    for (const auto& r : retained_interactions(a.models, options.threshold)) {
      out += r.response + "," + r.term + "," + num(r.coefficient) + "," + num(r.t_ratio) + "\n";
    }
    emit("interactions.csv", out);
  }
  {
    std::string out = "response,term,coefficient,std_error,t_ratio,retained\n";
    for (const auto& m : a.models) {
      for (std::size_t i = 0; i < m.terms.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        out += m.response + "," + m.terms[i] + "," + num(m.coefficients(k)) + "," + num(m.std_errors(k)) + "," +
               num(m.t_ratios(k)) + "," + (std::abs(m.t_ratios(k)) >= options.threshold ? "1" : "0") + "\n";
      }
    }
    emit("coefficients.csv", out);
  }
  {
    std::string out = "response,n,terms,r_squared,adj_r_squared,sigma,shapiro_w,shapiro_p\n";
    for (const auto& m : a.models) {
      std::string w = "NA";
      std::string p = "NA";
      const auto n = static_cast<std::size_t>(m.residuals.size());
      if (n >= 3 && n <= 5000 && m.residuals.maxCoeff() - m.residuals.minCoeff() > 0.0) {
        const auto sw = shapiro_wilk(std::span<const double>(m.residuals.data(), n));
        w = num(sw.w);
        p = num(sw.p_value);
      }
      out += m.response + "," + std::to_string(n) + "," + std::to_string(m.terms.size()) + "," + num(m.r_squared) + "," +
             num(m.adj_r_squared) + "," + num(m.sigma) + "," + w + "," + p + "\n";
    }
    emit("fit.csv", out);
  }
  // Box-plot summaries over the per-run values; dropout is the featured panel.
  {
    std::string out = "response,featured,factor,level,n,min,q1,median,q3,max\n";
    for (std::size_t r = 0; r < a.specs.size(); ++r) {
      const bool featured = a.specs[r].column == "early_dropout";
      for (std::size_t f = 0; f < a.data.labels.size(); ++f) {
        for (int level : {-1, 1}) {
          std::vector<double> v;
          for (Eigen::Index i = 0; i < a.data.values.rows(); ++i) {
            const double y = a.data.values(i, static_cast<Eigen::Index>(r));
            if (a.data.coded(i, static_cast<Eigen::Index>(f)) == level && !std::isnan(y)) v.push_back(y);
          }
          if (v.empty()) continue;
          const Quartiles q = quartiles(v);
          out += a.specs[r].column + "," + (featured ? "1" : "0") + "," + std::string(1, a.data.labels[f]) + "," +
                 std::to_string(level) + "," + std::to_string(q.n) + "," + num(q.min) + "," + num(q.q1) + "," +
                 num(q.median) + "," + num(q.q3) + "," + num(q.max) + "\n";
        }
      }
    }
    emit("boxplots.csv", out);
  }
  for (const auto& m : a.models) {
    const auto n = static_cast<std::size_t>(m.residuals.size());
    std::string qq = "theoretical,residual\n";
    for (const auto& [t, e] : normal_qq_points(std::span<const double>(m.residuals.data(), n))) qq += num(t) + "," + num(e) + "\n";
    emit("diagnostics/" + m.response + "_qq.csv", qq);
    std::string rf = "fitted,residual\n";
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      rf += num(m.fitted(k)) + "," + num(m.residuals(k)) + "\n";
    }
    emit("diagnostics/" + m.response + "_fitted.csv", rf);
  }
  // Surfaces.
  {
    std::string index = "response,term,retained,min_corner,min_value\n";
    for (std::size_t r = 0; r < a.models.size(); ++r) {
      const ScreeningModel& m = a.models[r];
      const bool primary = a.specs[r].rank == 1;
      for (std::size_t i = 0; i < m.terms.size(); ++i) {
        const std::string& term = m.terms[i];
        if (term.size() != 2 || term == kInterceptTerm) continue;
        const bool kept = std::abs(m.t_ratios(static_cast<Eigen::Index>(i))) >= options.threshold;
        if (!primary && !kept) continue;
        const SurfaceGrid g = response_surface_grid(m, term[0], term[1]);
        std::string corners;
        for (const auto& [xi, xj] : g.minimizing_corners) {
          corners += (corners.empty() ? "" : " ") + std::string(1, term[0]) + (xi > 0 ? "+" : "-") + std::string(1, term[1]) + (xj > 0 ? "+" : "-");
        }
        index += m.response + "," + term + "," + (kept ? "1" : "0") + "," + corners + "," + num(g.min_value) + "\n";
        if (!primary) continue;
        std::string out = std::string(1, term[0]) + "," + std::string(1, term[1]) + ",value\n";
        for (std::size_t x = 0; x < g.levels.size(); ++x) {
          for (std::size_t y = 0; y < g.levels.size(); ++y) {
            out += num(g.levels[x]) + "," + num(g.levels[y]) + "," + num(g.values(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y))) + "\n";
          }
        }
        emit("surfaces/" + term + ".csv", out);
      }
    }
    emit("surfaces/index.csv", index);
  }
  emit("recommendation.txt", recommendation_text(a.recommendation));
  return written;
}

}  // namespace hospsim
