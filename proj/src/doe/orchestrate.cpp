#include "hospsim/doe/orchestrate.hpp"

#include "hospsim/io/csv.hpp"
#include "hospsim/model/hospital.hpp"
#include "hospsim/sim/rng.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace hospsim {

std::vector<std::string> results_header() {
  std::vector<std::string> h{"run_id", "replication", "seed"};
  for (std::size_t j = 0; j < kFactorCount; ++j) h.emplace_back(1, factor_label(j));
  for (const auto& c : response_columns()) h.push_back(c);
  return h;
}

std::string format_result_row(int run_id, std::uint64_t replication, std::uint64_t seed,
                              const std::optional<CodedRow>& coded, const ResponseVector& r) {
  std::vector<std::string> f{std::to_string(run_id), std::to_string(replication), std::to_string(seed)};
  for (std::size_t j = 0; j < kFactorCount; ++j) f.push_back(coded ? std::to_string((*coded)[j]) : "NA");
  for (double v : response_values(r)) f.push_back(format_number(v));
  return join_csv(f);
}

std::string design_csv(const Design& design) {
  std::vector<std::string> h;
  for (char c : design.labels) h.emplace_back(1, c);
  std::string out = join_csv(h) + "\n";
  for (Eigen::Index r = 0; r < design.matrix.rows(); ++r) {
    std::vector<std::string> f;
    for (Eigen::Index c = 0; c < design.matrix.cols(); ++c) f.push_back(std::to_string(design.matrix(r, c)));
    out += join_csv(f) + "\n";
  }
  return out;
}

std::string design_generators_text(const Design& design, const DesignReport& report) {
  std::string out = "# regular two-level fractional factorial, " + std::to_string(design.matrix.rows()) + " runs, " +
                    std::to_string(design.matrix.cols()) + " factors, standard order, not randomized\n";
  std::vector<char> base;
  for (std::size_t j = 0; j < design.labels.size() - design.generators.size(); ++j) base.push_back(design.labels[j]);
  out += "base factors: " + std::string(base.begin(), base.end()) + "\n";
  for (const auto& g : design.generators) out += std::string(1, g.target) + " = " + word_letters(g.mask, base) + "\n";
  out += "word length pattern:";
  for (std::size_t L = 3; L < report.word_length_pattern.size(); ++L) out += " A" + std::to_string(L) + "=" + std::to_string(report.word_length_pattern[L]);
  out += "\nresolution: " + (report.resolution ? std::to_string(*report.resolution) : std::string("full factorial")) + "\n";
  out += "defining relation words: " + std::to_string(report.words.size()) + "\n";
  return out;
}

Design read_design_csv(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  Design d;
  for (const auto& h : t.header) {
    if (h.size() != 1) throw std::runtime_error(path.string() + ": header field '" + h + "' is not a factor label");
    d.labels.push_back(h[0]);
  }
  d.matrix.resize(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(t.header.size()));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < t.header.size(); ++c) {
      const std::string& v = t.rows[r][c];
      if (v != "1" && v != "-1") throw std::runtime_error(path.string() + ": row " + std::to_string(r + 1) + ", column " + t.header[c] + ": entry must be -1 or 1");
      d.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v == "1" ? 1 : -1;
    }
  }
  return d;
}

namespace {

struct Job {
  int run_id = 0;
  std::uint64_t replication = 0;
  CodedRow coded{};
};

// Keeps the complete lines of an existing results file; checks them against the plan.
std::size_t check_resume(const std::filesystem::path& path, const std::string& header, const std::vector<Job>& plan,
                         std::uint64_t master_seed) {
  std::string text = read_text_file(path);
  if (const auto last = text.rfind('\n'); last == std::string::npos) {
    text.clear();
  } else {
    text.resize(last + 1);
  }
  if (text.empty()) throw ResumeError("cannot resume: " + path.string() + " has no complete header line");
  std::size_t pos = text.find('\n');
  if (text.substr(0, pos) != header) throw ResumeError("cannot resume: header of " + path.string() + " does not match this build's results columns");
  std::size_t done = 0;
  ++pos;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const auto f = split_csv_line(std::string_view(text).substr(pos, nl - pos));
    if (done >= plan.size() || f.size() < 3 + kFactorCount) throw ResumeError("cannot resume: " + path.string() + " has more rows than the plan");
    const Job& j = plan[done];
    bool ok = f[0] == std::to_string(j.run_id) && f[1] == std::to_string(j.replication) &&
              f[2] == std::to_string(derive_run_seed(master_seed, static_cast<std::uint64_t>(j.run_id)));
    for (std::size_t c = 0; ok && c < kFactorCount; ++c) ok = f[3 + c] == std::to_string(j.coded[c]);
    if (!ok) throw ResumeError("cannot resume: row " + std::to_string(done + 1) + " of " + path.string() + " is not run " + std::to_string(j.run_id) + " replication " + std::to_string(j.replication) + " of this plan");
    ++done;
    pos = nl + 1;
  }
  std::filesystem::resize_file(path, text.size());
  return done;
}

}  // namespace

OrchestrateSummary orchestrate(const CodedMatrix<int>& design, const LevelTable& levels, const ScenarioConfig& base,
                               const OrchestrateOptions& options, const std::filesystem::path& results) {
  if (design.cols() != static_cast<Eigen::Index>(kFactorCount)) throw std::invalid_argument("orchestrate: design must have 16 columns");
  if (options.replications < 1) throw std::invalid_argument("orchestrate: replications must be at least 1");
  std::vector<Job> plan;
  for (Eigen::Index r = 0; r < design.rows(); ++r) {
    CodedRow row{};
    for (std::size_t c = 0; c < kFactorCount; ++c) row[c] = design(r, static_cast<Eigen::Index>(c));
    decode_run(row, levels, base);  // reject bad rows before any work
    for (int rep = 0; rep < options.replications; ++rep) plan.push_back({static_cast<int>(r + 1), static_cast<std::uint64_t>(rep), row});
  }
  const std::string header = join_csv(results_header());

  OrchestrateSummary summary;
  summary.total = plan.size();
  if (options.resume && std::filesystem::exists(results)) {
    summary.skipped = check_resume(results, header, plan, options.master_seed);
  } else {
    write_text_file(results, header + "\n");
  }
  const std::size_t end = summary.skipped + std::min(options.max_new_rows, plan.size() - summary.skipped);

  std::ofstream out(results, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot append to " + results.string());

  std::mutex mu;
  std::condition_variable cv;
  std::map<std::size_t, std::string> ready;
  std::atomic<std::size_t> next{summary.skipped};
  std::exception_ptr failure;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= end) return;
      std::string line;
      try {
        const Job& j = plan[i];
        ScenarioConfig c = decode_run(j.coded, levels, base);
        c.master_seed = derive_run_seed(options.master_seed, static_cast<std::uint64_t>(j.run_id));
        const ResponseVector r = run_replication(c, j.replication).responses;
        line = format_result_row(j.run_id, j.replication, c.master_seed, j.coded, r);
      } catch (...) {
        std::lock_guard lk(mu);
        if (!failure) failure = std::current_exception();
        next = end;
        cv.notify_all();
        return;
      }
      std::lock_guard lk(mu);
      ready.emplace(i, std::move(line));
      cv.notify_all();
    }
  };

  unsigned n_threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, std::max<std::size_t>(1, end - summary.skipped)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);

  // Single appender: rows go out strictly in plan order.
  for (std::size_t i = summary.skipped; i < end; ++i) {
    std::unique_lock lk(mu);
    cv.wait(lk, [&] { return ready.count(i) > 0 || failure; });
    if (failure && ready.count(i) == 0) break;
    const std::string line = std::move(ready[i]);
    ready.erase(i);
    lk.unlock();
    out << line << '\n';
    out.flush();
    ++summary.executed;
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return summary;
}

}  // namespace hospsim
