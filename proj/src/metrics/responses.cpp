#include "hospsim/metrics/responses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace hospsim {

std::array<std::optional<double>, kSpecialtyCount> specialist_utilisation(const std::vector<DoctorAccumulator>& doctors) {
  std::array<double, kSpecialtyCount> worked{};
  std::array<double, kSpecialtyCount> scheduled{};
  for (const auto& d : doctors) {
    worked.at(d.specialty) += d.worked_minutes;
    scheduled.at(d.specialty) += d.scheduled_minutes;
  }
  std::array<std::optional<double>, kSpecialtyCount> out{};
  for (std::size_t s = 0; s < kSpecialtyCount; ++s) {
    if (scheduled[s] > 0.0) out[s] = 100.0 * worked[s] / scheduled[s];
  }
  return out;
}

std::vector<DoctorAccumulator> doctor_accumulators(const ReplicationTrace& trace, SimTime from, SimTime to) {
  std::vector<DoctorAccumulator> out;
  std::unordered_map<DoctorId, std::size_t> index;
  for (const WorkInterval& w : trace.work) {
    auto [it, inserted] = index.try_emplace(w.doctor, out.size());
    if (inserted) out.push_back(DoctorAccumulator{w.specialty, 0.0, 0.0});
    const double lo = std::max(w.start.minutes(), from.minutes());
    const double hi = std::min(w.end.minutes(), to.minutes());
    if (hi <= lo) continue;
    (w.scheduled ? out[it->second].scheduled_minutes : out[it->second].worked_minutes) += hi - lo;
  }
  return out;
}

ResponseVector compute_responses(const ReplicationTrace& trace) {
  ResponseVector r;
  std::unordered_map<PatientId, const PatientRecord*> cohort;
  for (const PatientRecord& p : trace.patients) {
    if (p.arrival < trace.warmup) continue;
    cohort.emplace(p.id, &p);
    ++r.cohort;
    switch (p.exit) {
      case ExitKind::Recovered: ++r.recovered; break;
      case ExitKind::Dropout: ++r.early_dropout; break;
      case ExitKind::None:
        if (p.final_state == PatientState::Home) {
          ++r.in_home_treatment;
        } else {
          ++r.in_system;
        }
        break;
    }
  }
  r.empty = r.cohort == 0;

  double system_wait = 0.0;
  double bed_sum = 0.0;
  long bed_n = 0;
  double tourist_sum = 0.0;
  long tourist_n = 0;
  for (const WaitSpan& s : trace.spans) {
    auto it = cohort.find(s.patient);
    if (it == cohort.end()) continue;
    const double days = std::max(0.0, std::min(s.end, trace.end) - s.start) / kMinutesPerDay;
    system_wait += days;
    if (s.kind == SpanKind::BedQueue) {
      bed_sum += days;
      ++bed_n;
      if (it->second->type == PatientType::Tourist) {
        tourist_sum += days;
        ++tourist_n;
      }
    }
  }
  if (r.cohort > 0) r.avg_system_wait = system_wait / static_cast<double>(r.cohort);
  if (bed_n > 0) r.avg_hospital_queue_wait = bed_sum / static_cast<double>(bed_n);
  if (tourist_n > 0) r.avg_tourist_hospital_queue_wait = tourist_sum / static_cast<double>(tourist_n);

  for (const EscalationRecord& e : trace.escalations) {
    if (cohort.contains(e.patient)) ++r.emergency_before_appointment;
  }

  const auto acc = doctor_accumulators(trace, trace.warmup, trace.end);
  r.utilisation = specialist_utilisation(acc);
  double worked = 0.0;
  double scheduled = 0.0;
  for (const auto& d : acc) {
    worked += d.worked_minutes;
    scheduled += d.scheduled_minutes;
  }
  if (scheduled > 0.0) r.utilisation_overall = 100.0 * worked / scheduled;
  return r;
}

const std::vector<std::string>& response_columns() {
  static const std::vector<std::string> cols{"early_dropout",
                                             "avg_system_wait",
                                             "avg_tourist_hospital_queue_wait",
                                             "emergency_before_appointment",
                                             "recovered",
                                             "utilisation",
                                             "avg_hospital_queue_wait",
                                             "util_1",
                                             "util_2",
                                             "util_3",
                                             "util_4",
                                             "util_5"};
  return cols;
}

std::vector<double> response_values(const ResponseVector& r) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> v{static_cast<double>(r.early_dropout),
                        r.avg_system_wait,
                        r.avg_tourist_hospital_queue_wait,
                        static_cast<double>(r.emergency_before_appointment),
                        static_cast<double>(r.recovered),
                        r.utilisation_overall.value_or(nan),
                        r.avg_hospital_queue_wait};
  for (const auto& u : r.utilisation) v.push_back(u.value_or(nan));
  return v;
}

}  // namespace hospsim
