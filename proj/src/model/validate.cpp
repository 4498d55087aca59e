#include "hospsim/model/hospital.hpp"

#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>

namespace hospsim {

namespace {

constexpr std::size_t kMaxProblems = 20;

void problem(TraceCheck& c, const std::string& what) {
  c.ok = false;
  if (c.problems.size() < kMaxProblems) c.problems.push_back(what);
}

std::string at(SimTime t) { return " at t=" + std::to_string(t.minutes()); }

using QueueKey = std::tuple<int, double, std::uint64_t>;

}  // namespace

TraceCheck validate_trace(const ReplicationTrace& trace, bool tourist_priority) {
  TraceCheck c;

  std::unordered_map<PatientId, PatientState> pstate;
  for (const PatientStep& s : trace.patient_steps) {
    auto [it, fresh] = pstate.try_emplace(s.patient, PatientState::NeedService);
    if (it->second != s.from) {
      problem(c, "patient " + std::to_string(s.patient) + " left " + std::string(to_string(s.from)) + " while in " +
                     std::string(to_string(it->second)) + at(s.time));
    }
    if (!patient_edge_allowed(s.from, s.to)) {
      problem(c, "patient " + std::to_string(s.patient) + " took " + std::string(to_string(s.from)) + " -> " +
                     std::string(to_string(s.to)) + at(s.time));
    }
    it->second = s.to;
  }

  std::unordered_map<DoctorId, DoctorState> dstate;
  for (const DoctorStep& s : trace.doctor_steps) {
    auto [it, fresh] = dstate.try_emplace(s.doctor, DoctorState::Home);
    if (it->second != s.from) problem(c, "doctor " + std::to_string(s.doctor) + " state discontinuity" + at(s.time));
    if (!doctor_edge_allowed(s.from, s.to)) {
      problem(c, "doctor " + std::to_string(s.doctor) + " took " + std::string(to_string(s.from)) + " -> " +
                     std::string(to_string(s.to)) + at(s.time));
    }
    it->second = s.to;
  }

  std::array<SectionState, kSpecialtyCount> sstate{};
  for (const SectionStep& s : trace.section_steps) {
    if (sstate.at(s.section) != s.from) problem(c, "section " + std::to_string(s.section) + " state discontinuity");
    if (!section_edge_allowed(s.from, s.to)) {
      problem(c, "section " + std::to_string(s.section) + " took " + std::string(to_string(s.from)) + " -> " +
                     std::string(to_string(s.to)) + at(s.time));
    }
    sstate[s.section] = s.to;
  }

  const int baseline = std::accumulate(trace.baseline_beds.begin(), trace.baseline_beds.end(), 0);
  for (const BedLevelRecord& r : trace.bed_levels) {
    int total = 0;
    for (std::size_t s = 0; s < kSpecialtyCount; ++s) {
      total += r.total[s];
      if (r.occupied[s] < 0 || r.occupied[s] > r.total[s]) {
        problem(c, "section " + std::to_string(s) + " occupies " + std::to_string(r.occupied[s]) + " of " +
                       std::to_string(r.total[s]) + " beds" + at(r.time));
      }
      if (r.total[s] < 0) problem(c, "section " + std::to_string(s) + " has negative beds" + at(r.time));
    }
    if (total != baseline) problem(c, "bed total " + std::to_string(total) + " != " + std::to_string(baseline) + at(r.time));
  }

  for (const PatientRecord& p : trace.patients) {
    ++c.arrivals;
    switch (p.exit) {
      case ExitKind::Recovered:
        ++c.recovered;
        if (p.final_state != PatientState::Recovered) problem(c, "patient " + std::to_string(p.id) + " exit/state mismatch");
        break;
      case ExitKind::Dropout:
        ++c.dropouts;
        if (p.final_state != PatientState::DroppedOut) problem(c, "patient " + std::to_string(p.id) + " exit/state mismatch");
        break;
      case ExitKind::None:
        if (is_terminal(p.final_state)) problem(c, "patient " + std::to_string(p.id) + " terminal without exit");
        (p.final_state == PatientState::Home ? c.in_home_treatment : c.in_system) += 1;
        break;
    }
    auto it = pstate.find(p.id);
    const PatientState replayed = it == pstate.end() ? PatientState::NeedService : it->second;
    if (replayed != p.final_state) problem(c, "patient " + std::to_string(p.id) + " final state differs from replay");
  }
  if (c.arrivals != c.recovered + c.dropouts + c.in_system + c.in_home_treatment) problem(c, "patient flow not conserved");

  // Bed queue order: whoever is admitted from a queue must be its head.
  std::array<std::map<QueueKey, PatientId>, kSpecialtyCount> queue;
  std::unordered_map<PatientId, QueueKey> key_of;
  for (const BedEventRecord& e : trace.bed_events) {
    auto& q = queue.at(e.section);
    switch (e.kind) {
      case BedEventKind::Book: break;
      case BedEventKind::Join: {
        const int cls = tourist_priority && e.type == PatientType::Tourist ? 0 : 1;
        const QueueKey k{cls, e.request_time.minutes(), e.seq};
        q.emplace(k, e.patient);
        key_of[e.patient] = k;
        break;
      }
      case BedEventKind::Leave: {
        auto it = key_of.find(e.patient);
        if (it != key_of.end()) {
          q.erase(it->second);
          key_of.erase(it);
        }
        break;
      }
      case BedEventKind::Admit: {
        auto it = key_of.find(e.patient);
        if (it == key_of.end()) {
          if (!q.empty()) {
            problem(c, "patient " + std::to_string(e.patient) + " admitted past a non-empty queue" + at(e.time));
          }
          break;
        }
        if (q.begin()->second != e.patient) {
          const PatientId head = q.begin()->second;
          problem(c, "patient " + std::to_string(e.patient) + " admitted ahead of " + std::to_string(head) + at(e.time));
        }
        q.erase(it->second);
        key_of.erase(it);
        break;
      }
    }
  }
  return c;
}

}  // namespace hospsim
