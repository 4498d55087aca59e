#include <doctest.h>

#include "hospsim/agents/specialty.hpp"
#include "hospsim/model/hospital.hpp"
#include "hospsim/sim/rng.hpp"

#include <cmath>
#include <vector>

using namespace hospsim;

namespace {

ScenarioConfig short_config(double days, std::uint64_t seed = 17) {
  ScenarioConfig c = baseline_config();
  c.horizon_days = days;
  c.master_seed = seed;
  return c;
}

long arrivals_after_warmup(const ReplicationTrace& t) {
  long n = 0;
  for (const auto& p : t.patients) n += p.arrival >= t.warmup;
  return n;
}

}  // namespace

TEST_CASE("spawned patients: tourist share and disease mix") {
  RngStream s(21, {0, StreamPurpose::PatientAttributes, 0});
  const ClinicalParams cp;
  const int n = 100'000;
  int tourists = 0;
  std::array<int, kSpecialtyCount> disease{};
  for (int i = 0; i < n; ++i) {
    const PatientAgent p = spawn_patient(s, i, SimTime{0}, cp);
    tourists += p.type == PatientType::Tourist;
    ++disease[p.disease];
    if (p.disease == kPaediatrics) {
      CHECK(p.age >= 0);
      CHECK(p.age <= cp.paediatric_max_age);
    } else {
      CHECK(p.age >= cp.min_age);
      CHECK(p.age <= cp.max_age);
    }
  }
  CHECK(std::abs(tourists / double(n) - 1.0 / 11.0) < 0.005);
  for (int d : disease) CHECK(std::abs(d / double(n) - 0.2) < 0.01);
}

TEST_CASE("spawning is deterministic") {
  RngStream a(22, {0, StreamPurpose::PatientAttributes, 0});
  RngStream b(22, {0, StreamPurpose::PatientAttributes, 0});
  const ClinicalParams cp;
  for (int i = 0; i < 500; ++i) {
    const auto p = spawn_patient(a, i, SimTime{0}, cp);
    const auto q = spawn_patient(b, i, SimTime{0}, cp);
    CHECK(p.type == q.type);
    CHECK(p.disease == q.disease);
    CHECK(p.age == q.age);
    CHECK(p.trait == q.trait);
    CHECK(p.online_pref == q.online_pref);
  }
}

TEST_CASE("channel share follows K for tourists") {
  ScenarioConfig c = baseline_config();
  c.K = 60.0;
  std::vector<DoctorAgent> docs(1);
  docs[0].specialization = 2;
  PatientAgent p;
  p.type = PatientType::Tourist;
  p.disease = 2;
  RngStream s(23, {0, StreamPurpose::PatientChoice, 0});
  const int n = 100'000;
  int online = 0;
  for (int i = 0; i < n; ++i) {
    auto [ch, doc] = choose_channel_and_doctor(s, p, c, docs, 0.0);
    online += ch == Channel::Online;
    CHECK(doc == 0);
  }
  CHECK(std::abs(online / double(n) - 0.60) < 0.01);

  p.online_pref = true;
  online = 0;
  for (int i = 0; i < n; ++i) online += choose_channel_and_doctor(s, p, c, docs, 0.10).first == Channel::Online;
  CHECK(std::abs(online / double(n) - 0.70) < 0.01);
}

TEST_CASE("doctor choice weights popularity by load") {
  ScenarioConfig c = baseline_config();
  std::vector<DoctorAgent> docs(3);
  for (std::size_t i = 0; i < docs.size(); ++i) docs[i].id = i;
  docs[0].specialization = 1;
  docs[1].specialization = 1;
  docs[2].specialization = 0;
  for (PatientId q = 0; q < 9; ++q) docs[1].add_booking(q, Channel::InPerson);
  PatientAgent p;
  p.disease = 1;
  RngStream s(24, {0, StreamPurpose::DoctorChoice, 0});
  const int n = 100'000;
  int idle = 0;
  for (int i = 0; i < n; ++i) {
    const DoctorId d = choose_channel_and_doctor(s, p, c, docs, 0.0).second;
    CHECK(d != 2);
    idle += d == 0;
  }
  const double ratio = idle / double(n - idle);
  CHECK(std::abs(ratio - 10.0) / 10.0 < 0.02);

  p.disease = 3;
  CHECK_THROWS_AS(choose_channel_and_doctor(s, p, c, docs, 0.0), std::invalid_argument);
}

TEST_CASE("booking fills slots from the block start") {
  const auto& prof = specialty_profile(kCardiology);
  CHECK(prof.in_person_slots == 5);
  SlotBook book;
  const SimTime q = SimTime::at(0, 9);
  std::vector<SimTime> got;
  for (int i = 0; i < 6; ++i) got.push_back(book_appointment(book, prof.schedule, 5, Channel::InPerson, 5.0, q).time);
  CHECK(got[0] == SimTime::at(0, 10));
  CHECK(got[1] == SimTime::at(0, 10, 5));
  CHECK(got[4] - got[0] == 20.0);
  CHECK(got[5] == SimTime::at(1, 10));

  SlotBook tight;
  SimTime first, last;
  for (int i = 0; i < 5; ++i) {
    const SimTime t = book_appointment(tight, prof.schedule, 5, Channel::InPerson, 2.0, q).time;
    if (i == 0) first = t;
    last = t;
  }
  CHECK(last - first == 8.0);
}

TEST_CASE("booking never offers a slot in the past") {
  const auto& prof = specialty_profile(kCardiology);
  SlotBook book;
  const SimTime now = SimTime::at(0, 10, 7);
  const Appointment a = book_appointment(book, prof.schedule, 5, Channel::InPerson, 5.0, now);
  CHECK(a.time == SimTime::at(0, 10, 10));
  const Appointment b = book_appointment(book, prof.schedule, prof.online_slots, Channel::Online, 5.0, now);
  CHECK(b.time == SimTime::at(0, 20));
}

TEST_CASE("tourist priority reorders the bed queue") {
  for (int o : {0, 1}) {
    ScenarioConfig c = baseline_config();
    c.O = o;
    SectionAgent s;
    s.beds = s.total_beds = 1;
    s.occupied = 1;
    CHECK(enqueue_for_bed(s, {1, PatientType::Local, SimTime{1}, 1}, Channel::InPerson, c, SimTime{1}).decision ==
          BedDecision::WaitForEmptyBed);
    enqueue_for_bed(s, {2, PatientType::Local, SimTime{2}, 2}, Channel::InPerson, c, SimTime{2});
    enqueue_for_bed(s, {3, PatientType::Tourist, SimTime{3}, 3}, Channel::InPerson, c, SimTime{3});
    std::vector<PatientId> order;
    for (const auto& r : s.waiting_list) order.push_back(r.patient);
    if (o == 1) {
      CHECK(order == std::vector<PatientId>{3, 1, 2});
    } else {
      CHECK(order == std::vector<PatientId>{1, 2, 3});
    }
  }
}

TEST_CASE("policy 0 admits at once when a bed is free") {
  ScenarioConfig c = baseline_config();
  SectionAgent s;
  s.beds = s.total_beds = 2;
  s.occupied = 1;
  CHECK(enqueue_for_bed(s, {1, PatientType::Local, SimTime{0}, 1}, Channel::Online, c, SimTime{0}).decision ==
        BedDecision::AdmitNow);
  CHECK(s.waiting_list.empty());
}

TEST_CASE("policy 1 books the projected free day") {
  ScenarioConfig c = baseline_config();
  c.M = 1;
  SectionAgent s;
  s.beds = s.total_beds = 2;
  s.admit(10, SimTime::from_days(12));
  s.admit(11, SimTime::from_days(20));
  const SimTime now = SimTime::from_days(3);
  const BedOutcome out = enqueue_for_bed(s, {1, PatientType::Local, now, 1}, Channel::Online, c, now);
  CHECK(out.decision == BedDecision::WaitInHome);
  REQUIRE(out.booked);
  CHECK(*out.booked == SimTime::from_days(12));
  REQUIRE(s.bed_schedule.size() == 1);
  CHECK(s.waiting_list.empty());

  // N stays 0: the in-person pathway still queues.
  const BedOutcome q = enqueue_for_bed(s, {2, PatientType::Local, now, 2}, Channel::InPerson, c, now);
  CHECK(q.decision == BedDecision::WaitForEmptyBed);
}

TEST_CASE("empty horizon gives an empty response vector") {
  ScenarioConfig c = short_config(0.0);
  const auto r = run_replication(c, 0);
  CHECK(r.responses.empty);
  CHECK(r.responses.early_dropout == 0);
  CHECK(r.responses.recovered == 0);
  CHECK(r.responses.avg_system_wait == 0.0);
  CHECK(r.responses.avg_tourist_hospital_queue_wait == 0.0);
  CHECK(r.responses.emergency_before_appointment == 0);
  CHECK(r.responses.cohort == 0);
}

TEST_CASE("flow conservation and state-chart soundness") {
  for (std::uint64_t rep = 0; rep < 5; ++rep) {
    ScenarioConfig c = short_config(90.0);
    const auto r = run_replication(c, rep);
    const TraceCheck chk = validate_trace(r.trace, false);
    CHECK_MESSAGE(chk.ok, (chk.problems.empty() ? "" : chk.problems.front()));
    CHECK(chk.arrivals == chk.recovered + chk.dropouts + chk.in_system + chk.in_home_treatment);
    CHECK(r.responses.cohort == arrivals_after_warmup(r.trace));
    CHECK(r.responses.cohort == r.responses.early_dropout + r.responses.recovered + r.responses.in_system +
                                    r.responses.in_home_treatment);
  }
}

TEST_CASE("replications are pure functions of config and index") {
  ScenarioConfig c = short_config(60.0, 99);
  const auto a = run_replication(c, 3);
  const auto b = run_replication(c, 3);
  CHECK(a.trace.events_processed == b.trace.events_processed);
  CHECK(a.responses.avg_system_wait == b.responses.avg_system_wait);
  CHECK(a.responses.avg_tourist_hospital_queue_wait == b.responses.avg_tourist_hospital_queue_wait);
  CHECK(a.responses.recovered == b.responses.recovered);
  CHECK(a.trace.patient_steps.size() == b.trace.patient_steps.size());
  const auto other = run_replication(c, 4);
  CHECK(other.trace.events_processed != a.trace.events_processed);
}

TEST_CASE("DES-only mode removes the behavioural pathways") {
  ScenarioConfig c = short_config(120.0);
  c.mode = Mode::DesOnly;
  for (std::uint64_t rep = 0; rep < 3; ++rep) {
    const auto r = run_replication(c, rep);
    CHECK(r.trace.adherence_steps == 0);
    CHECK(r.trace.escalations.empty());
    CHECK(r.trace.transfers.empty());
    CHECK(r.responses.early_dropout == 0);
    CHECK(validate_trace(r.trace, false).ok);
  }
}

TEST_CASE("no dropout without the five-day timer and self-discharge") {
  ScenarioConfig c = short_config(120.0);
  c.behaviour.five_day_timer = false;
  c.behaviour.self_discharge_prob = 0.0;
  for (std::uint64_t rep = 0; rep < 3; ++rep) CHECK(run_replication(c, rep).responses.early_dropout == 0);
}

TEST_CASE("hybrid mode produces escalations and adherence steps") {
  ScenarioConfig c = short_config(120.0);
  long esc = 0, steps = 0;
  for (std::uint64_t rep = 0; rep < 3; ++rep) {
    const auto r = run_replication(c, rep);
    esc += static_cast<long>(r.trace.escalations.size());
    steps += static_cast<long>(r.trace.adherence_steps);
  }
  CHECK(esc > 0);
  CHECK(steps > 0);
}

TEST_CASE("invalid configs are rejected by name") {
  ScenarioConfig c = baseline_config();
  c.beds[2] = -1;
  try {
    c.validate();
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("beds") != std::string::npos);
  }
  ScenarioConfig d = baseline_config();
  d.O = 2;
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}
