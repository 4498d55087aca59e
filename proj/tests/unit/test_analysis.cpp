#include <doctest.h>

#include "hospsim/analysis/ols.hpp"
#include "hospsim/analysis/pipeline.hpp"
#include "hospsim/analysis/recommend.hpp"
#include "hospsim/analysis/screening.hpp"
#include "hospsim/analysis/shapiro_wilk.hpp"
#include "hospsim/analysis/summary.hpp"
#include "hospsim/analysis/surface.hpp"
#include "hospsim/doe/design.hpp"
#include "hospsim/doe/orchestrate.hpp"
#include "hospsim/io/csv.hpp"
#include "hospsim/sim/rng.hpp"
#include "normal_equations.hpp"
#include "planted.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

using namespace hospsim;
namespace fs = std::filesystem;

namespace {

double gaussian(RngStream& s) {
  // Box-Muller; test-side only.
  const double u1 = s.uniform_open(), u2 = s.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Eigen::MatrixXd coded_design() { return generate_design().matrix.cast<double>(); }

std::vector<std::string> main_terms(std::vector<std::string> extra = {}) {
  std::vector<std::string> t{std::string(kInterceptTerm)};
  for (char c = 'A'; c <= 'P'; ++c) t.emplace_back(1, c);
  t.insert(t.end(), extra.begin(), extra.end());
  return t;
}

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& coded) {
  Eigen::MatrixXd X(coded.rows(), coded.cols() + 1);
  X.col(0).setOnes();
  X.rightCols(coded.cols()) = coded;
  return X;
}

// Deterministic disturbance orthogonal to every main column: a few
// two-factor products (resolution V keeps them clear of the mains).
Eigen::VectorXd orthogonal_noise(const Eigen::MatrixXd& coded) {
  return 0.01 * coded.col(0).cwiseProduct(coded.col(1)) + 0.007 * coded.col(2).cwiseProduct(coded.col(5)) -
         0.004 * coded.col(9).cwiseProduct(coded.col(12));
}

}  // namespace

TEST_CASE("exact line") {
  Eigen::MatrixXd X(4, 2);
  X << 1, -1, 1, 1, 1, -1, 1, 1;
  Eigen::VectorXd y(4);
  y << -1, 5, -1, 5;
  const auto m = fit_screening_model(X, y, {std::string(kInterceptTerm), "x"});
  CHECK(m.coefficients(0) == doctest::Approx(2.0));
  CHECK(m.coefficients(1) == doctest::Approx(3.0));
  CHECK(m.r_squared == doctest::Approx(1.0));
  CHECK(std::isinf(m.t_ratios(1)));
}

TEST_CASE("constant response") {
  const Eigen::MatrixXd coded = coded_design();
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(256, 4.5);
  const auto m = fit_screening_model(with_intercept(coded), y, main_terms());
  CHECK(m.coefficients(0) == doctest::Approx(4.5));
  for (Eigen::Index i = 1; i < m.coefficients.size(); ++i) CHECK(std::abs(m.coefficients(i)) < 1e-12);
  CHECK(m.r_squared == 0.0);
}

TEST_CASE("OLS matches the normal equations on random instances") {
  RngStream s(31, {0, StreamPurpose::Test, 0});
  for (int inst = 0; inst < 20; ++inst) {
    const int n = 6 + static_cast<int>(s() % 7);
    const int p = 2 + static_cast<int>(s() % 3);
    testsupport::Rows rows(n, std::vector<double>(p));
    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    std::vector<double> yv(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < p; ++j) X(i, j) = rows[i][j] = j == 0 ? 1.0 : 4.0 * s.uniform() - 2.0;
      y(i) = yv[i] = 10.0 * s.uniform() - 5.0;
    }
    std::vector<std::string> terms{std::string(kInterceptTerm)};
    for (int j = 1; j < p; ++j) terms.push_back(std::string(1, char('A' + j)));
    const auto m = fit_screening_model(X, y, terms);
    const auto b = testsupport::normal_equations(rows, yv);
    for (int j = 0; j < p; ++j) {
      CHECK(std::abs(m.coefficients(j) - b[j]) <= 1e-8 * std::max(1.0, std::abs(b[j])));
    }
    const Eigen::VectorXd xe = X.transpose() * m.residuals;
    CHECK(xe.cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("standard errors match the textbook formula") {
  RngStream s(32, {0, StreamPurpose::Test, 0});
  const int n = 12, p = 3;
  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = s.uniform();
    X(i, 2) = s.uniform();
    y(i) = 1.0 + 2.0 * X(i, 1) - X(i, 2) + 0.1 * gaussian(s);
  }
  const auto m = fit_screening_model(X, y, {std::string(kInterceptTerm), "B", "C"});
  const double s2 = m.residuals.squaredNorm() / (n - p);
  const Eigen::MatrixXd cov = s2 * (X.transpose() * X).inverse();
  for (int j = 0; j < p; ++j) CHECK(m.std_errors(j) == doctest::Approx(std::sqrt(cov(j, j))).epsilon(1e-9));
  CHECK(m.sigma == doctest::Approx(std::sqrt(s2)));
  const double sst = (y.array() - y.mean()).square().sum();
  CHECK(m.r_squared == doctest::Approx(1.0 - m.residuals.squaredNorm() / sst));
  CHECK(m.adj_r_squared == doctest::Approx(1.0 - (1.0 - m.r_squared) * (n - 1) / (n - p)));
}

TEST_CASE("rank-deficient and undersized fits are refused") {
  Eigen::MatrixXd X(5, 3);
  X << 1, 1, 2, 1, 2, 4, 1, 3, 6, 1, 4, 8, 1, 5, 10;
  Eigen::VectorXd y(5);
  y << 1, 2, 3, 4, 6;
  CHECK_THROWS_AS(fit_screening_model(X, y, {std::string(kInterceptTerm), "A", "B"}), RankDeficientError);
  CHECK_THROWS_AS(fit_screening_model(X.topRows(3), y.head(3), {std::string(kInterceptTerm), "A", "B"}),
                  std::invalid_argument);
}

TEST_CASE("planted main effects are recovered exactly") {
  const Eigen::MatrixXd coded = coded_design();
  Eigen::VectorXd c(16);
  for (int j = 0; j < 16; ++j) c(j) = 0.25 * (j + 1) * (j % 2 ? -1.0 : 1.0);
  const Eigen::VectorXd y = 3.0 + (coded * c).array();
  const auto m = fit_screening_model(with_intercept(coded), y, main_terms());
  for (int j = 0; j < 16; ++j) CHECK(std::abs(m.coefficients(j + 1) - c(j)) < 1e-10);
}

TEST_CASE("permuting rows leaves the coefficients unchanged") {
  const Eigen::MatrixXd coded = coded_design();
  std::vector<std::string> terms;
  const Eigen::MatrixXd X = model_matrix(coded, testsupport::factor_letters(), {"AB", "CO", "MO"}, terms);
  RngStream s(33, {0, StreamPurpose::Test, 0});
  Eigen::VectorXd y(256);
  for (auto& v : y) v = gaussian(s);
  const auto a = fit_screening_model(X, y, terms);

  std::vector<int> perm(256);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 255; i > 0; --i) std::swap(perm[i], perm[s() % (i + 1)]);
  Eigen::MatrixXd Xp(X.rows(), X.cols());
  Eigen::VectorXd yp(256);
  for (int i = 0; i < 256; ++i) {
    Xp.row(i) = X.row(perm[i]);
    yp(i) = y(perm[i]);
  }
  const auto b = fit_screening_model(Xp, yp, terms);
  CHECK((a.coefficients - b.coefficients).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((X.transpose() * a.residuals).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("model matrix terms") {
  CHECK(term_name("FA") == "AF");
  const Eigen::MatrixXd coded = coded_design();
  std::vector<std::string> terms;
  const Eigen::MatrixXd X = model_matrix(coded, testsupport::factor_letters(), {"OC"}, terms);
  CHECK(terms.size() == 18);
  CHECK(terms.back() == "CO");
  CHECK(X.col(17) == coded.col(2).cwiseProduct(coded.col(14)));
  CHECK_THROWS_AS(model_matrix(coded, testsupport::factor_letters(), {"AZ"}, terms), std::invalid_argument);
  CHECK(all_two_factor_interactions(testsupport::factor_letters()).size() == 120);
}

TEST_CASE("direction table picks up a single planted effect") {
  const Eigen::MatrixXd coded = coded_design();
  const Eigen::VectorXd y = 5.0 - 0.8 * coded.col(15).array() + orthogonal_noise(coded).array();
  const auto up = fit_screening_model(with_intercept(coded), y, main_terms(), "r");
  const auto table = effect_direction_table({up}, testsupport::factor_letters());
  for (char f : testsupport::factor_letters()) {
    CHECK(table.at(f, "r") == (f == 'P' ? Direction::Down : Direction::NotRetained));
  }
  const auto flipped = fit_screening_model(with_intercept(coded), -y, main_terms(), "r");
  CHECK(effect_direction_table({flipped}, testsupport::factor_letters()).at('P', "r") == Direction::Up);

  const auto scaled = fit_screening_model(with_intercept(coded), 7.5 * y, main_terms(), "r");
  const auto t2 = effect_direction_table({scaled}, testsupport::factor_letters());
  CHECK(t2.cells == table.cells);
}

TEST_CASE("retained interactions are listed") {
  const Eigen::MatrixXd coded = coded_design();
  std::vector<std::string> terms;
  const Eigen::MatrixXd X = model_matrix(coded, testsupport::factor_letters(), {"MO", "AB"}, terms);
  RngStream s(34, {0, StreamPurpose::Test, 0});
  Eigen::VectorXd y = 2.0 * coded.col(12).cwiseProduct(coded.col(14));
  for (auto& v : y) v += 0.05 * gaussian(s);
  const auto m = fit_screening_model(X, y, terms, "r");
  const auto kept = retained_interactions({m});
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].term == "MO");
  CHECK(kept[0].coefficient == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("Shapiro-Wilk against reference values") {
  struct Case {
    std::vector<double> x;
    double w, p;
  };
  std::vector<double> grid(50), squares(20), growth(300);
  for (int i = 0; i < 50; ++i) grid[i] = i / 49.0;
  for (int i = 0; i < 20; ++i) squares[i] = (i + 1.0) * (i + 1.0);
  for (int i = 0; i < 300; ++i) growth[i] = std::exp(-2.0 + 4.0 * i / 299.0);
  const std::vector<Case> cases{
      {grid, 0.955582687559, 0.058091862177},
      {squares, 0.906130628605, 0.053809589129},
      {{2.1, 3.4, 1.9, 5.6, 4.4, 3.3, 2.8, 3.9, 4.1, 3.0}, 0.971390603105, 0.903430501335},
      {{1.0, 2.0, 4.0}, 0.964285714286, 0.636886845029},
  };
  for (const auto& c : cases) {
    const auto r = shapiro_wilk(c.x);
    CHECK(r.w == doctest::Approx(c.w).epsilon(1e-6));
    CHECK(r.p_value == doctest::Approx(c.p).epsilon(1e-5));
  }
  const auto g = shapiro_wilk(growth);
  CHECK(g.w == doctest::Approx(0.813102751463).epsilon(1e-6));
  CHECK(g.p_value < 1e-15);
}

TEST_CASE("Shapiro-Wilk rejects degenerate input") {
  const std::vector<double> flat(30, 2.0);
  CHECK_THROWS_AS(shapiro_wilk(flat), std::invalid_argument);
  const std::vector<double> two{1.0, 2.0};
  CHECK_THROWS_AS(shapiro_wilk(two), std::invalid_argument);
  const std::vector<double> bad{1.0, NAN, 2.0, 3.0};
  CHECK_THROWS_AS(shapiro_wilk(bad), std::invalid_argument);
}

TEST_CASE("Shapiro-Wilk size on normal samples") {
  RngStream s(35, {0, StreamPurpose::Test, 0});
  int rejected = 0;
  std::vector<double> x(256);
  for (int trial = 0; trial < 1000; ++trial) {
    for (auto& v : x) v = gaussian(s);
    rejected += shapiro_wilk(x).p_value < 0.05;
  }
  CHECK(std::abs(rejected / 1000.0 - 0.05) <= 0.02);
}

TEST_CASE("normal quantile inverts the CDF") {
  for (double p : {1e-10, 0.001, 0.02425, 0.3, 0.5, 0.77, 0.97575, 0.999}) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054));
}

TEST_CASE("pure interaction surface is a saddle") {
  const auto m = testsupport::planted_model("r", {{"MO", 1.0}}, 0.0);
  const SurfaceGrid g = response_surface_grid(m, 'M', 'O');
  CHECK(g.levels.size() == 21);
  CHECK(g.values(10, 10) == doctest::Approx(0.0));
  std::vector<std::pair<int, int>> want{{-1, 1}, {1, -1}};
  auto got = g.minimizing_corners;
  std::sort(got.begin(), got.end());
  CHECK(got == want);
  CHECK(g.min_value == doctest::Approx(-1.0));
}

TEST_CASE("additive surface has its minimum at the signed corner") {
  const auto m = testsupport::planted_model("r", {{"M", -1.0}, {"O", 1.0}, {"MO", 0.0}}, 3.0);
  const SurfaceGrid g = response_surface_grid(m, 'M', 'O');
  REQUIRE(g.minimizing_corners.size() == 1);
  CHECK(g.minimizing_corners[0] == std::pair<int, int>{1, -1});
  CHECK(g.values(10, 10) == doctest::Approx(3.0));
  CHECK(surface_value(m, 'M', 'O', 0.0, 0.0) == doctest::Approx(3.0));
  CHECK(surface_value(m, 'M', 'O', 1.0, -1.0) == doctest::Approx(1.0));

  const auto no_int = testsupport::planted_model("r", {{"M", -1.0}});
  CHECK_THROWS_AS(response_surface_grid(no_int, 'M', 'B'), std::invalid_argument);
}

TEST_CASE("recommender: single response and parsimony default") {
  std::vector<ScreeningModel> models;
  for (const auto& spec : screening_responses()) {
    models.push_back(spec.rank == 1 ? testsupport::planted_model(spec.column, {{"A", -1.0}})
                                    : testsupport::planted_model(spec.column, {}));
  }
  const auto rec = recommend_levels(models, screening_responses(), testsupport::factor_letters());
  REQUIRE(rec.size() == 16);
  CHECK(rec[0].level == 1);
  for (std::size_t i = 1; i < 16; ++i) {
    CHECK(rec[i].level == -1);
    CHECK(rec[i].rationale.find("parsimony default") != std::string::npos);
  }
}

TEST_CASE("recommender: L conflict resolved by priority") {
  const auto models = testsupport::reference_conflict_models();
  const auto rec = recommend_levels(models, screening_responses(), testsupport::factor_letters());
  const auto& l = rec[11];
  CHECK(l.factor == 'L');
  CHECK(l.level == -1);
  CHECK(l.rationale.find("overrides avg_system_wait") != std::string::npos);
  CHECK(rec[10].level == 1);
  CHECK(rec[10].rationale.find("overrides recovered") != std::string::npos);
}

TEST_CASE("recommender is invariant to positive rescaling") {
  const auto models = testsupport::reference_conflict_models();
  auto scaled = models;
  for (auto& m : scaled) {
    m.coefficients *= 3.0;
    m.std_errors *= 3.0;
  }
  const auto a = recommend_levels(models, screening_responses(), testsupport::factor_letters());
  const auto b = recommend_levels(scaled, screening_responses(), testsupport::factor_letters());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].level == b[i].level);
}

TEST_CASE("equal-rank disagreement is settled by interaction corners") {
  std::vector<ResponseSpec> specs{{"y1", "y1", Goal::Minimize, 1, {}}, {"y2", "y2", Goal::Minimize, 1, {}}};
  // y1 wants B high, y2 wants B low; y2's BC interaction says low B with high C is best.
  std::vector<ScreeningModel> models{testsupport::planted_model("y1", {{"B", -1.0}}),
                                     testsupport::planted_model("y2", {{"B", 1.0}, {"C", -1.0}, {"BC", 0.5}})};
  const auto rec = recommend_levels(models, specs, {'B'});
  CHECK(rec[0].level == -1);
  CHECK(rec[0].rationale.find("BC") != std::string::npos);
}

TEST_CASE("quartiles and normal plot positions") {
  const std::vector<double> x{7, 1, 3, 5, 9};
  const Quartiles q = quartiles(x);
  CHECK(q.n == 5);
  CHECK(q.min == 1);
  CHECK(q.q1 == 3);
  CHECK(q.median == 5);
  CHECK(q.q3 == 7);
  CHECK(q.max == 9);
  const std::vector<double> y{1, 2, 3, 4};
  CHECK(quartiles(y).q1 == doctest::Approx(1.75));
  CHECK_THROWS_AS(quartiles(std::vector<double>{}), std::invalid_argument);

  const auto pts = normal_qq_points(x);
  REQUIRE(pts.size() == 5);
  CHECK(pts[0].first == doctest::Approx(normal_quantile((1 - 0.375) / (5 + 0.25))));
  CHECK(pts[2].first == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pts[0].second == 1.0);
  CHECK(pts[4].second == 9.0);
}

TEST_CASE("analysis pipeline on a synthetic results table") {
  const Design d = generate_design();
  CsvTable t;
  t.header = results_header();
  RngStream s(36, {0, StreamPurpose::Test, 0});
  for (Eigen::Index r = 0; r < 256; ++r) {
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<std::string> row{std::to_string(r + 1), std::to_string(rep), "0"};
      for (int j = 0; j < 16; ++j) row.push_back(std::to_string(d.matrix(r, j)));
      auto x = [&](char f) { return static_cast<double>(d.matrix(r, f - 'A')); };
      const double tourist = 5.0 - 1.5 * x('A') - 1.0 * x('C') + 0.8 * x('O') + 0.1 * gaussian(s);
      const std::vector<double> v{20 + 3 * x('G') + gaussian(s), 2 - 0.3 * x('L') + 0.05 * gaussian(s), tourist,
                                  50 + 5 * x('L') + gaussian(s), 900 - 20 * x('K') + 5 * gaussian(s),
                                  60 - 8 * x('F') + gaussian(s), tourist + 1, 60, 50, 70, 55, NAN};
      for (double value : v) row.push_back(format_number(value));
      t.rows.push_back(row);
    }
  }
  const Analysis a = analyze(t, {});
  REQUIRE(a.models.size() == 6);
  CHECK(a.data.run_ids.size() == 256);
  const auto table = effect_direction_table(a.models, testsupport::factor_letters());
  CHECK(table.at('A', "avg_tourist_hospital_queue_wait") == Direction::Down);
  CHECK(table.at('O', "avg_tourist_hospital_queue_wait") == Direction::Up);
  CHECK(table.at('B', "avg_tourist_hospital_queue_wait") == Direction::NotRetained);
  REQUIRE(a.recommendation.size() == 16);
  CHECK(a.recommendation[0].level == 1);
  CHECK(a.recommendation[14].level == -1);

  const fs::path dir = fs::temp_directory_path() / "hospsim_analysis_out";
  fs::remove_all(dir);
  const auto files = write_analysis(a, {}, dir);
  for (const char* f : {"directions.csv", "interactions.csv", "coefficients.csv", "fit.csv", "boxplots.csv",
                        "recommendation.txt", "surfaces/index.csv"}) {
    CHECK_MESSAGE(fs::exists(dir / f), f);
  }
  CHECK(fs::exists(dir / "diagnostics" / "avg_tourist_hospital_queue_wait_qq.csv"));
  const std::string first = read_text_file(dir / "directions.csv");
  write_analysis(analyze(t, {}), {}, dir);
  CHECK(read_text_file(dir / "directions.csv") == first);
  const std::string rec = read_text_file(dir / "recommendation.txt");
  CHECK(rec.rfind("setting: +", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("run means refuse a table that is not a results table") {
  CsvTable t;
  t.header = {"x", "y"};
  t.rows = {{"1", "2"}};
  CHECK_THROWS_AS(run_means(t), std::runtime_error);
}
