#include <doctest.h>

#include "hospsim/agents/adherence.hpp"
#include "hospsim/agents/behaviour.hpp"
#include "hospsim/agents/doctor.hpp"
#include "hospsim/agents/patient.hpp"
#include "hospsim/agents/section.hpp"
#include "hospsim/sim/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

using namespace hospsim;

namespace {

PatientAgent patient_with(SpecialtyIndex disease, Trait trait) {
  PatientAgent p;
  p.file_number = 1;
  p.disease = disease;
  p.trait = trait;
  return p;
}

DoctorAgent doctor_for(SpecialtyIndex s) {
  DoctorAgent d;
  d.specialization = s;
  return d;
}

template <typename F>
void for_each_risk_row(AdherenceParams& p, F f) {
  for (auto& by_gender : p.risk)
    for (auto& by_trait : by_gender)
      for (auto& by_health : by_trait)
        for (auto& by_avail : by_health)
          for (auto& matrix : by_avail)
            for (std::size_t cur = 0; cur < 3; ++cur) f(matrix[cur], cur);
}

std::vector<SectionAgent> sections(std::array<int, kSpecialtyCount> beds) {
  std::vector<SectionAgent> out(kSpecialtyCount);
  for (std::size_t s = 0; s < kSpecialtyCount; ++s) {
    out[s].spec = s;
    out[s].beds = out[s].total_beds = beds[s];
  }
  return out;
}

int bed_sum(const std::vector<SectionAgent>& s) {
  int n = 0;
  for (const auto& x : s) n += x.total_beds;
  return n;
}

}  // namespace

TEST_CASE("consultation durations follow the specialty table") {
  const BehaviourParams bp;
  RngStream s(1, {0, StreamPurpose::Test, 0});
  const auto cardio = doctor_for(0);
  const auto onco = doctor_for(4);
  for (int i = 0; i < 2000; ++i) {
    const double a = consultation_duration(s, cardio, patient_with(0, Trait::Normal), Channel::Online,
                                           VisitPhase::Initial, true, bp);
    CHECK(a >= 10.0);
    CHECK(a <= 15.0);
    const double b = consultation_duration(s, onco, patient_with(4, Trait::Normal), Channel::InPerson,
                                           VisitPhase::Initial, true, bp);
    CHECK(b >= 20.0);
    CHECK(b <= 25.0);
  }
  CHECK_THROWS_AS(consultation_duration(s, cardio, patient_with(4, Trait::Normal), Channel::Online,
                                        VisitPhase::Initial, true, bp),
                  std::invalid_argument);
}

TEST_CASE("anxious patients take 1.25 times longer on the same draw") {
  const BehaviourParams bp;
  const auto d = doctor_for(1);
  for (std::uint64_t agent = 0; agent < 50; ++agent) {
    RngStream s1(2, {0, StreamPurpose::Durations, agent});
    RngStream s2 = s1;
    const double normal =
        consultation_duration(s1, d, patient_with(1, Trait::Normal), Channel::InPerson, VisitPhase::Initial, true, bp);
    const double anxious =
        consultation_duration(s2, d, patient_with(1, Trait::Anxious), Channel::InPerson, VisitPhase::Initial, true, bp);
    CHECK(anxious == doctest::Approx(1.25 * normal).epsilon(1e-12));

    RngStream s3(2, {0, StreamPurpose::Durations, agent});
    const double plain = consultation_duration(s3, d, patient_with(1, Trait::Anxious), Channel::InPerson,
                                               VisitPhase::Initial, false, bp);
    CHECK(plain == normal);
  }
}

TEST_CASE("identity adherence tables leave the state unchanged") {
  AdherenceParams p = default_adherence_params();
  for_each_risk_row(p, [](ProbRow3& row, std::size_t cur) { row = {0, 0, 0}, row[cur] = 1.0; });
  p.availability = {{{1.0, 0.0}, {0.0, 1.0}}};
  for (auto& m : p.health)
    for (std::size_t h = 0; h < 3; ++h) m[h] = {0, 0, 0}, m[h][h] = 1.0;
  p.validate();

  RngStream s(3, {0, StreamPurpose::Test, 0});
  PatientAgent pt;
  pt.state = PatientState::Home;
  pt.adherence = Adherence::Partial;
  pt.health = Health::Worsening;
  for (int i = 0; i < 100; ++i) drug_behavior_step(s, pt, p);
  CHECK(pt.adherence == Adherence::Partial);
  CHECK(pt.health == Health::Worsening);
  CHECK(pt.medication_available);
  CHECK_FALSE(pt.emergency_flag);
  CHECK(pt.adherence_steps == 100);
}

TEST_CASE("forced Poor and Critical raises the emergency flag") {
  AdherenceParams p = default_adherence_params();
  for_each_risk_row(p, [](ProbRow3& row, std::size_t) { row = {0, 0, 1}; });
  for (auto& m : p.health)
    for (auto& row : m) row = {0, 0, 1};
  RngStream s(4, {0, StreamPurpose::Test, 0});
  PatientAgent pt;
  pt.state = PatientState::WaitForVisit;
  drug_behavior_step(s, pt, p);
  CHECK(pt.adherence == Adherence::Poor);
  CHECK(pt.health == Health::Critical);
  CHECK(pt.emergency_flag);

  pt.state = PatientState::Hospitalization;
  CHECK_THROWS_AS(drug_behavior_step(s, pt, p), std::logic_error);
}

TEST_CASE("long-run Poor adherence matches the stationary distribution") {
  // Joint chain over (availability, adherence, health) for one patient profile.
  const AdherenceParams& p = default_adherence_params();
  PatientAgent pt;
  pt.state = PatientState::Home;
  pt.age = 50;
  pt.gender = Gender::Male;
  pt.trait = Trait::Anxious;

  auto idx = [](int a, int adh, int h) { return a * 9 + adh * 3 + h; };
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(18, 18);
  for (int a = 0; a < 2; ++a)
    for (int adh = 0; adh < 3; ++adh)
      for (int h = 0; h < 3; ++h)
        for (int a2 = 0; a2 < 2; ++a2) {
          const auto& risk = p.risk_row(age_band(pt.age), pt.gender, pt.trait, static_cast<Health>(h), a2 == 0,
                                        static_cast<Adherence>(adh));
          for (int adh2 = 0; adh2 < 3; ++adh2)
            for (int h2 = 0; h2 < 3; ++h2)
              T(idx(a, adh, h), idx(a2, adh2, h2)) += p.availability[a][a2] * risk[adh2] * p.health[adh2][h][h2];
        }
  Eigen::RowVectorXd pi = Eigen::RowVectorXd::Constant(18, 1.0 / 18);
  for (int i = 0; i < 5000; ++i) pi = pi * T;
  double poor = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int h = 0; h < 3; ++h) poor += pi(idx(a, 2, h));

  RngStream s(5, {0, StreamPurpose::PatientAdherence, 0});
  int poor_steps = 0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) {
    drug_behavior_step(s, pt, p);
    poor_steps += pt.adherence == Adherence::Poor;
  }
  CHECK(std::abs(poor_steps / static_cast<double>(n) - poor) < 0.01);
  CHECK(poor > 0.05);
}

TEST_CASE("default adherence tables are row-stochastic") {
  CHECK_NOTHROW(default_adherence_params().validate());
  AdherenceProfile bad;
  bad.base[0] = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(build_adherence_params(bad).validate(), std::invalid_argument);
}

TEST_CASE("patient confirmation times out into WaitForVisit") {
  PatientAgent p;
  p.state = PatientState::Confirmation;
  p.channel = Channel::Online;
  auto t = patient_transition(p, PatientTrigger::ConfirmationTimeout, {SimTime{60}});
  CHECK(t.to == PatientState::WaitForVisit);
  CHECK(p.channel == Channel::Online);
  CHECK(std::find(t.effects.begin(), t.effects.end(), PatientEffect::BookVisit) != t.effects.end());

  PatientAgent q;
  q.state = PatientState::Confirmation;
  q.channel = Channel::InPerson;
  patient_transition(q, PatientTrigger::Disagree, {SimTime{30}});
  CHECK(q.channel == Channel::Online);
  CHECK(q.state == PatientState::WaitForVisit);
}

TEST_CASE("five-day review flags a long bed wait, then the patient leaves") {
  const double threshold = 7 * 1440.0;
  PatientAgent p;
  p.state = PatientState::WaitForEmptyBed;
  p.bed_request_time = SimTime::from_days(1);
  CHECK_FALSE(five_day_review(p, SimTime::from_days(6), threshold));
  CHECK_FALSE(p.leave_flag);
  CHECK(five_day_review(p, SimTime::from_days(11), threshold));
  CHECK(p.leave_flag);
  CHECK_FALSE(five_day_review(p, SimTime::from_days(16), threshold));
  auto t = patient_transition(p, PatientTrigger::Leave, {SimTime::from_days(16)});
  CHECK(t.to == PatientState::DroppedOut);
  CHECK(std::find(t.effects.begin(), t.effects.end(), PatientEffect::LeaveBedQueue) != t.effects.end());
  CHECK(std::find(t.effects.begin(), t.effects.end(), PatientEffect::ExitDropout) != t.effects.end());
}

TEST_CASE("emergency at home leads to an urgent online visit") {
  PatientAgent p;
  p.state = PatientState::Home;
  p.channel = Channel::InPerson;
  p.emergency_flag = true;
  auto t = patient_transition(p, PatientTrigger::EmergencyRaised, {SimTime{100}});
  CHECK(t.to == PatientState::Emergency);
  CHECK_FALSE(p.emergency_flag);
  auto v = patient_transition(p, PatientTrigger::EmergencyVisitDue, {SimTime{200}});
  CHECK(v.to == PatientState::WaitInVQueue);
  CHECK(p.channel == Channel::Online);
  CHECK(v.effects == std::vector<PatientEffect>{PatientEffect::JoinDoctorQueueUrgent});
}

TEST_CASE("triggers without an edge throw") {
  PatientAgent p;
  p.state = PatientState::Hospitalization;
  CHECK_THROWS_AS(patient_transition(p, PatientTrigger::Referred, {SimTime{0}}), ContractViolation);
  p.state = PatientState::Recovered;
  CHECK_THROWS_AS(patient_transition(p, PatientTrigger::Leave, {SimTime{0}}), ContractViolation);
}

TEST_CASE("worry accrues one unit per hour") {
  PatientAgent p;
  p.start_worry(SimTime{0});
  CHECK(p.worry_counter(SimTime{59}) == 0);
  CHECK(p.worry_counter(SimTime{100 * 60.0}) == 100);
  p.reset_worry();
  CHECK(p.worry_counter(SimTime{1e6}) == 0);
}

TEST_CASE("doctor clinic block counts as scheduled time") {
  DoctorAgent d = doctor_for(0);
  auto t = doctor_transition(d, DoctorTrigger::GotoClinic, {SimTime::at(0, 10), Activity::Clinic, 180.0});
  CHECK(t.to == DoctorState::Clinic);
  CHECK(d.scheduled_minutes == 180.0);
  CHECK(d.worked_minutes == 0.0);
}

TEST_CASE("doctor re-checks once on disagreement") {
  DoctorAgent d = doctor_for(0);
  const DoctorTriggerContext ctx{SimTime::at(0, 10), Activity::Clinic, 180.0};
  doctor_transition(d, DoctorTrigger::GotoClinic, ctx);
  doctor_transition(d, DoctorTrigger::StartInPersonVisit, ctx);
  doctor_transition(d, DoctorTrigger::ExamDone, ctx);
  CHECK(d.state == DoctorState::MakeDecision);
  CHECK(doctor_transition(d, DoctorTrigger::Contested, ctx).to == DoctorState::ReCheck);
  CHECK_THROWS_AS(doctor_transition(d, DoctorTrigger::Contested, ctx), ContractViolation);
  doctor_transition(d, DoctorTrigger::ReEvaluated, ctx);
  CHECK(d.state == DoctorState::MakeDecision);
  CHECK(doctor_transition(d, DoctorTrigger::VisitDone, ctx).to == DoctorState::Clinic);
}

TEST_CASE("visit overrunning the block adds overtime") {
  DoctorAgent d = doctor_for(0);
  const SimTime start = SimTime::at(0, 10);
  const SimTime block_end = SimTime::at(0, 13);
  doctor_transition(d, DoctorTrigger::GotoClinic, {start, Activity::Clinic, 180.0});
  doctor_transition(d, DoctorTrigger::StartInPersonVisit, {start, Activity::Clinic});
  doctor_transition(d, DoctorTrigger::BlockEnd, {block_end, std::nullopt});
  doctor_transition(d, DoctorTrigger::ExamDone, {block_end + 10.0, std::nullopt});
  doctor_transition(d, DoctorTrigger::VisitDone, {block_end + 20.0, std::nullopt});
  CHECK(d.state == DoctorState::Home);
  CHECK(d.worked_minutes == doctest::Approx(200.0));
  // A visit filling the block exactly would leave worked - scheduled at 0.
  CHECK(d.worked_minutes - d.scheduled_minutes == doctest::Approx(20.0));
}

TEST_CASE("busy doctor finishes the job before the block change") {
  DoctorAgent d = doctor_for(2);
  doctor_transition(d, DoctorTrigger::OnlineSession, {SimTime{0}, Activity::Online, 120.0});
  doctor_transition(d, DoctorTrigger::StartOnlineVisit, {SimTime{0}, Activity::Online});
  CHECK(doctor_transition(d, DoctorTrigger::BlockEnd, {SimTime{120}, std::nullopt}).to == DoctorState::AskQuestions);
  CHECK_THROWS_AS(doctor_transition(d, DoctorTrigger::StartService, {SimTime{121}, std::nullopt}), ContractViolation);
}

TEST_CASE("capacity rebalance lends half the free beds") {
  auto s = sections({40, 20, 12, 20, 60});
  s[1].occupied = 20;
  for (PatientId p = 1; p <= 3; ++p) s[1].enqueue({p, PatientType::Local, SimTime{double(p)}, p}, false);
  s[2].occupied = 2;
  s[3].occupied = 20;
  s[4].occupied = 58;
  const int before = bed_sum(s);
  auto t = capacity_rebalance(1, s, 3);
  REQUIRE(t);
  CHECK(t->lender == 2);
  CHECK(t->beds == 5);
  CHECK(s[2].total_beds == 7);
  CHECK(s[1].total_beds == 25);
  CHECK(s[1].state == SectionState::TakeOthers);
  CHECK(s[2].state == SectionState::Borrow);
  CHECK(bed_sum(s) == before);

  // Patients admitted then discharged; borrowed beds go back once free.
  for (PatientId p = 1; p <= 3; ++p) s[1].remove_waiting(p);
  auto r = return_beds(1, s);
  REQUIRE(r);
  CHECK(r->beds == 5);
  CHECK(s[1].total_beds == s[1].beds);
  CHECK(s[2].total_beds == s[2].beds);
  CHECK(s[1].state == SectionState::NormalCapacity);
  CHECK(s[2].state == SectionState::NormalCapacity);
  CHECK(bed_sum(s) == before);
}

TEST_CASE("cardiology never borrows or lends") {
  auto s = sections({40, 50, 70, 20, 60});
  s[0].occupied = 40;
  for (PatientId p = 1; p <= 5; ++p) s[0].enqueue({p, PatientType::Local, SimTime{double(p)}, p}, false);
  CHECK_FALSE(capacity_rebalance(0, s, 3).has_value());

  // Only cardiology has spare beds: nobody qualifies as lender.
  s[0] = sections({40, 50, 70, 20, 60})[0];
  for (std::size_t i = 1; i < kSpecialtyCount; ++i) s[i].occupied = s[i].total_beds;
  for (PatientId p = 1; p <= 3; ++p) s[3].enqueue({p, PatientType::Local, SimTime{double(p)}, p}, false);
  CHECK_FALSE(capacity_rebalance(3, s, 3).has_value());
}

TEST_CASE("no transfer below the shortage threshold") {
  auto s = sections({40, 50, 70, 20, 60});
  s[1].occupied = 50;
  s[1].enqueue({1, PatientType::Local, SimTime{1}, 1}, false);
  CHECK_FALSE(capacity_rebalance(1, s, 3).has_value());
}

TEST_CASE("popularity update rule and clamp") {
  const BehaviourParams bp;
  DoctorAgent d;
  CHECK(update_popularity(d, VisitOutcome::Completed, bp) == doctest::Approx(1.02));
  for (int i = 0; i < 500; ++i) update_popularity(d, VisitOutcome::Abandoned, bp);
  CHECK(d.popularity == bp.popularity_min);

  RngStream s(6, {0, StreamPurpose::Test, 0});
  const std::array<VisitOutcome, 3> outcomes{VisitOutcome::Completed, VisitOutcome::Contested, VisitOutcome::Abandoned};
  for (int i = 0; i < 10'000; ++i) {
    update_popularity(d, outcomes[s() % 3], bp);
    CHECK(d.popularity >= bp.popularity_min);
    CHECK(d.popularity <= bp.popularity_max);
  }
  for (int i = 0; i < 1000; ++i) update_popularity(d, VisitOutcome::Completed, bp);
  CHECK(d.popularity == bp.popularity_max);
}

TEST_CASE("disagreement probabilities follow preference mismatch") {
  const BehaviourParams bp;
  PatientAgent p;
  p.online_pref = true;
  CHECK(channel_disagreement_probability(p, Channel::InPerson, bp) == bp.channel_disagree_mismatch);
  CHECK(channel_disagreement_probability(p, Channel::Online, bp) == bp.channel_disagree_match);
  p.hosp_pref = true;
  CHECK(recommendation_disagreement_probability(p, Recommendation::HomeTreatment, bp) == 0.5);
  CHECK(recommendation_disagreement_probability(p, Recommendation::Hospitalize, bp) == 0.05);
}

TEST_CASE("behaviour validation names the field") {
  BehaviourParams bp;
  bp.anxious_factor = -1;
  try {
    bp.validate();
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("anxious_factor") != std::string::npos);
  }
}
