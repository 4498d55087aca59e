#include "hospsim/model/compare.hpp"

#include "hospsim/io/csv.hpp"
#include "hospsim/model/hospital.hpp"

#include <cmath>

namespace hospsim {

ModeSummary summarize_mode(ScenarioConfig config, Mode mode, int replications) {
  config.mode = mode;
  ModeSummary s;
  s.mode = mode;
  std::array<int, kSpecialtyCount> util_n{};
  for (int r = 0; r < replications; ++r) {
    const ResponseVector v = run_replication(config, static_cast<std::uint64_t>(r)).responses;
    s.early_dropout += static_cast<double>(v.early_dropout);
    s.avg_system_wait += v.avg_system_wait;
    s.avg_hospital_queue_wait += v.avg_hospital_queue_wait;
    s.avg_tourist_hospital_queue_wait += v.avg_tourist_hospital_queue_wait;
    s.emergency_before_appointment += static_cast<double>(v.emergency_before_appointment);
    s.recovered += static_cast<double>(v.recovered);
    for (std::size_t k = 0; k < kSpecialtyCount; ++k) {
      if (v.utilisation[k]) {
        s.utilisation[k] += *v.utilisation[k];
        ++util_n[k];
      }
    }
    s.runs.push_back(v);
  }
  const double n = replications > 0 ? replications : 1;
  s.early_dropout /= n;
  s.avg_system_wait /= n;
  s.avg_hospital_queue_wait /= n;
  s.avg_tourist_hospital_queue_wait /= n;
  s.emergency_before_appointment /= n;
  s.recovered /= n;
  for (std::size_t k = 0; k < kSpecialtyCount; ++k) s.utilisation[k] = util_n[k] ? s.utilisation[k] / util_n[k] : std::nan("");
  return s;
}

std::string comparison_csv(const ModeSummary& h, const ModeSummary& d) {
  struct Row {
    std::string measure;
    const char* goal;
    double hybrid;
    double des;
  };
  std::vector<Row> rows{
      {"Early dropout from the system", "min.", h.early_dropout, d.early_dropout},
      {"Average waiting time in the system (days)", "min.", h.avg_system_wait, d.avg_system_wait},
      {"Average waiting time in the hospital queue (days)", "min.", h.avg_hospital_queue_wait, d.avg_hospital_queue_wait},
      {"Average tourist hospital-queue wait (days)", "min.", h.avg_tourist_hospital_queue_wait, d.avg_tourist_hospital_queue_wait},
      {"Emergency patients before appointment", "min.", h.emergency_before_appointment, d.emergency_before_appointment},
      {"Recovered patients", "max.", h.recovered, d.recovered},
  };
  for (std::size_t k = 0; k < kSpecialtyCount; ++k) {
    rows.push_back({"Specialty " + std::to_string(k + 1) + " utilisation (%)", "max.", h.utilisation[k], d.utilisation[k]});
  }
  std::string out = "measure,goal,hybrid,des_only,des_vs_hybrid\n";
  for (const Row& r : rows) {
    const char* rel = std::isnan(r.hybrid) || std::isnan(r.des) ? "NA" : r.des < r.hybrid ? "Lower" : r.des > r.hybrid ? "Higher" : "Equal";
    out += r.measure + "," + r.goal + "," + format_number(r.hybrid) + "," + format_number(r.des) + "," + rel + "\n";
  }
  return out;
}

}  // namespace hospsim
