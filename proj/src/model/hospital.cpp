#include "hospsim/model/hospital.hpp"

#include "hospsim/agents/adherence.hpp"
#include "hospsim/agents/behaviour.hpp"
#include "hospsim/agents/specialty.hpp"
#include "hospsim/sim/calendar.hpp"
#include "hospsim/sim/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace hospsim {

PatientAgent spawn_patient(RngStream& stream, PatientId id, SimTime now, const ClinicalParams& c) {
  PatientAgent p;
  p.file_number = id;
  p.type = stream.bernoulli(c.tourist_probability) ? PatientType::Tourist : PatientType::Local;
  p.disease = std::min<SpecialtyIndex>(static_cast<SpecialtyIndex>(stream.uniform() * kSpecialtyCount),
                                       kSpecialtyCount - 1);
  const int lo = p.disease == kPaediatrics ? 0 : c.min_age;
  const int hi = p.disease == kPaediatrics ? c.paediatric_max_age : c.max_age;
  p.age = lo + std::min(hi - lo, static_cast<int>(stream.uniform() * (hi - lo + 1)));
  p.gender = stream.bernoulli(0.5) ? Gender::Male : Gender::Female;
  p.trait = static_cast<Trait>(sample_categorical(stream, c.trait_weights));
  p.online_pref = stream.bernoulli(p.type == PatientType::Tourist ? c.tourist_online_pref : c.local_online_pref);
  p.hosp_pref = stream.bernoulli(c.hosp_pref);
  p.arrival = now;
  p.request_time = now;
  p.state_since = now;
  return p;
}

std::pair<Channel, DoctorId> choose_channel_and_doctor(RngStream& stream, const PatientAgent& patient,
                                                       const ScenarioConfig& config,
                                                       std::span<const DoctorAgent> doctors, double pref_shift) {
  double p_online = (patient.type == PatientType::Tourist ? config.K : config.L) / 100.0;
  p_online += patient.online_pref ? pref_shift : -pref_shift;
  p_online = std::clamp(p_online, 0.0, 1.0);
  const Channel channel = stream.bernoulli(p_online) ? Channel::Online : Channel::InPerson;

  std::vector<double> weights;
  std::vector<DoctorId> ids;
  for (const DoctorAgent& d : doctors) {
    if (d.specialization != patient.disease) continue;
    weights.push_back(d.popularity / (1.0 + static_cast<double>(d.load())));
    ids.push_back(d.id);
  }
  if (ids.empty()) {
    throw std::invalid_argument("no doctor treats " + std::string(specialty_name(patient.disease)));
  }
  const std::size_t k = ids.size() == 1 ? 0 : sample_categorical(stream, weights);
  return {channel, ids[k]};
}

bool SlotBook::taken(std::uint64_t occurrence, int slot) const {
  auto it = used_.find(occurrence);
  return it != used_.end() && ((it->second >> slot) & 1u);
}

void SlotBook::take(std::uint64_t occurrence, int slot) { used_[occurrence] |= (1u << slot); }

void SlotBook::release(std::uint64_t occurrence, int slot) {
  auto it = used_.find(occurrence);
  if (it == used_.end()) return;
  it->second &= ~(1u << slot);
  if (it->second == 0) used_.erase(it);
}

Appointment book_appointment(SlotBook& book, const WeeklySchedule& schedule, int slots_per_session, Channel channel,
                             double slot_minutes, SimTime now) {
  if (slots_per_session < 1 || slots_per_session > 32) {
    throw std::invalid_argument("book_appointment: slots per session must be in 1..32");
  }
  const Activity activity = channel == Channel::InPerson ? Activity::Clinic : Activity::Online;
  SimTime t = now;
  for (;;) {
    auto occ = schedule.next_occurrence(t, activity);
    if (!occ) throw std::invalid_argument("book_appointment: schedule has no " + std::string(to_string(activity)));
    const std::uint64_t key = occ->id() * 4 + static_cast<std::uint64_t>(activity);
    for (int k = 0; k < slots_per_session; ++k) {
      const SimTime slot = occ->start + k * slot_minutes;
      if (slot < now || book.taken(key, k)) continue;
      book.take(key, k);
      return Appointment{slot, key, k};
    }
    t = occ->end;
  }
}

BedOutcome enqueue_for_bed(SectionAgent& section, const BedRequest& request, Channel channel,
                           const ScenarioConfig& config, SimTime now) {
  const int policy = channel == Channel::Online ? config.M : config.N;
  const bool priority = config.O == 1;
  if (section.free_beds() > 0 && section.waiting_list.empty()) {
    if (policy == 0) return {BedDecision::AdmitNow, std::nullopt};
  }
  if (policy == 0) {
    section.enqueue(request, priority);
    return {BedDecision::WaitForEmptyBed, std::nullopt};
  }
  const double hold = config.clinical.length_of_stay_days.mean() * kMinutesPerDay;
  const SimTime t = section.projected_free_time(now, hold);
  if (t <= now && section.free_beds() > 0 && section.waiting_list.empty()) return {BedDecision::AdmitNow, std::nullopt};
  section.bed_schedule.push_back(BedBooking{request.patient, std::max(t, now), request.request_time});
  return {BedDecision::WaitInHome, std::max(t, now)};
}

namespace {

enum class Ev : std::uint8_t {
  Arrival,
  TriageDone,
  ConfirmationEnd,
  AppointmentDue,
  EmergencyVisitDue,
  BlockStart,
  BlockEnd,
  JobStage,
  StayEnd,
  HomeEnd,
  BedBookingDue,
  WorryDue,
  ThreeDay,
  FiveDay,
};

struct Payload {
  Ev kind = Ev::Arrival;
  std::uint64_t id = 0;
  std::uint64_t aux = 0;
};

enum class JobKind : std::uint8_t { Urgent, Visit, FileReview };

struct Job {
  JobKind kind = JobKind::Visit;
  PatientId patient = 0;
  SimTime ready;
  std::uint64_t seq = 0;
};

struct PatientRt {
  PatientAgent a;
  RngStream choice;
  RngStream clinical;
  RngStream adherence;
  RngStream durations;
  RngStream doctor_choice;

  std::optional<EventHandle> appt, worry, home, bed_booking, stay;
  std::optional<Appointment> slot;
  DoctorId booked_doctor = 0;

  std::optional<SimTime> span_start;
  SpanKind span_kind = SpanKind::Triage;

  ExitKind exit = ExitKind::None;
  SimTime exit_time;
};

enum class Stage : std::uint8_t { Review, Exam, Recheck };

struct DoctorRt {
  DoctorAgent a;
  SlotBook slots;
  std::vector<Job> queue;
  std::optional<Job> current;
  Stage stage = Stage::Exam;
  Recommendation rec = Recommendation::HomeTreatment;
};

class Simulation {
public:
  Simulation(const ScenarioConfig& cfg, std::uint64_t rep)
      : cfg_(cfg),
        rep_(rep),
        hybrid_(cfg.mode == Mode::Hybrid),
        adherence_(build_adherence_params(cfg.adherence)),
        calendar_(cfg.end()),
        arrivals_(cfg.master_seed, {rep, StreamPurpose::Arrivals, 0}) {
    trace_.mode = cfg.mode;
    trace_.warmup = cfg.warmup_end();
    trace_.end = cfg.end();
    trace_.baseline_beds = cfg.beds;

    for (SpecialtyIndex s = 0; s < kSpecialtyCount; ++s) {
      SectionAgent sec;
      sec.spec = s;
      sec.beds = cfg.beds[s];
      sec.total_beds = cfg.beds[s];
      sections_.push_back(sec);
      for (int k = 0; k < cfg.specialists[s]; ++k) {
        DoctorRt d;
        d.a.id = doctors_.size();
        d.a.specialization = s;
        doctors_.push_back(std::move(d));
      }
    }
    for (const auto& d : doctors_) doctor_view_.push_back(d.a);
  }

  ReplicationResult run() {
    record_beds();
    for (DoctorRt& d : doctors_) {
      const auto& sched = schedule_of(d);
      if (auto occ = sched.block_at(SimTime{0.0})) {
        calendar_.schedule(occ->start, Payload{Ev::BlockStart, d.a.id, 0});
      } else if (auto nxt = sched.next_start_after(SimTime{0.0})) {
        calendar_.schedule(nxt->start, Payload{Ev::BlockStart, d.a.id, 0});
      }
    }
    schedule_arrival();

    while (auto ev = calendar_.pop_next()) {
      now_ = ev->time;
      ++trace_.events_processed;
      dispatch(ev->payload);
    }
    now_ = cfg_.end();
    finalize();
    ReplicationResult out;
    out.responses = compute_responses(trace_);
    out.trace = std::move(trace_);
    return out;
  }

private:
  // ---------------------------------------------------------------- helpers

  const WeeklySchedule& schedule_of(const DoctorRt& d) const {
    return specialty_profile(d.a.specialization).schedule;
  }
  const WeeklySchedule& schedule_of(SpecialtyIndex s) const { return specialty_profile(s).schedule; }

  std::optional<Activity> block_now(const DoctorRt& d) const {
    auto b = schedule_of(d).block_at(now_);
    if (!b) return std::nullopt;
    return b->activity;
  }

  void sync_view(const DoctorRt& d) { doctor_view_[d.a.id] = d.a; }

  RngStream stream(StreamPurpose purpose, PatientId id) const {
    return RngStream(cfg_.master_seed, {rep_, purpose, id});
  }

  void cancel(std::optional<EventHandle>& h) {
    if (h) calendar_.cancel(*h);
    h.reset();
  }

  PatientTransition ptrans(PatientRt& p, PatientTrigger trigger, PatientTriggerContext ctx = {}) {
    ctx.now = now_;
    PatientTransition tr = patient_transition(p.a, trigger, ctx);
    if (tr.from != tr.to || trigger == PatientTrigger::ChangeDoctor) {
      trace_.patient_steps.push_back(PatientStep{now_, p.a.file_number, tr.from, tr.to});
    }
    return tr;
  }

  void dtrans(DoctorRt& d, DoctorTrigger trigger, double block_minutes = 0.0) {
    const SimTime since = d.a.state_since;
    const DoctorTransition tr = doctor_transition(d.a, trigger, DoctorTriggerContext{now_, block_now(d), block_minutes});
    if (tr.from != tr.to) {
      trace_.doctor_steps.push_back(DoctorStep{now_, d.a.id, tr.from, tr.to});
      if (is_working(tr.from)) trace_.work.push_back(WorkInterval{d.a.id, d.a.specialization, since, now_, false});
    }
    sync_view(d);
  }

  void open_span(PatientRt& p, SpanKind kind) {
    p.span_start = now_;
    p.span_kind = kind;
  }

  void close_span(PatientRt& p, bool censored = false) {
    if (!p.span_start) return;
    trace_.spans.push_back(WaitSpan{p.a.file_number, p.span_kind, *p.span_start, now_, censored});
    p.span_start.reset();
  }

  void record_beds() {
    BedLevelRecord r;
    r.time = now_;
    for (const SectionAgent& s : sections_) {
      r.occupied[s.spec] = s.occupied;
      r.total[s.spec] = s.total_beds;
    }
    trace_.bed_levels.push_back(r);
  }

  void bed_event(BedEventKind kind, const PatientRt& p, SimTime request_time, std::uint64_t seq) {
    trace_.bed_events.push_back(
        BedEventRecord{now_, kind, p.a.file_number, p.a.disease, p.a.type, request_time, seq});
  }

  void section_state(SectionAgent& s, SectionState before) {
    if (s.state != before) trace_.section_steps.push_back(SectionStep{now_, s.spec, before, s.state});
  }

  // --------------------------------------------------------------- dispatch

  void dispatch(const Payload& ev) {
    switch (ev.kind) {
      case Ev::Arrival: on_arrival(); break;
      case Ev::TriageDone: on_triage_done(patients_[ev.id]); break;
      case Ev::ConfirmationEnd: on_confirmation_end(patients_[ev.id], ev.aux != 0); break;
      case Ev::AppointmentDue: on_appointment_due(patients_[ev.id]); break;
      case Ev::EmergencyVisitDue: on_emergency_visit_due(patients_[ev.id]); break;
      case Ev::BlockStart: on_block_start(doctors_[ev.id]); break;
      case Ev::BlockEnd: on_block_end(doctors_[ev.id]); break;
      case Ev::JobStage: on_job_stage(doctors_[ev.id]); break;
      case Ev::StayEnd: on_stay_end(patients_[ev.id]); break;
      case Ev::HomeEnd: on_home_end(patients_[ev.id]); break;
      case Ev::BedBookingDue: on_bed_booking_due(patients_[ev.id]); break;
      case Ev::WorryDue: on_worry_due(patients_[ev.id]); break;
      case Ev::ThreeDay: on_three_day(patients_[ev.id]); break;
      case Ev::FiveDay: on_five_day(patients_[ev.id]); break;
    }
  }

  // ------------------------------------------------------- arrival, triage

  void schedule_arrival() {
    const SimTime t = now_ + sample_interarrival(arrivals_, cfg_.clinical.arrival_rate_per_day);
    if (t <= cfg_.end()) calendar_.schedule(t, Payload{Ev::Arrival, 0, 0});
  }

  void on_arrival() {
    const PatientId id = patients_.size();
    PatientRt p;
    RngStream attrs = stream(StreamPurpose::PatientAttributes, id);
    p.a = spawn_patient(attrs, id, now_, cfg_.clinical);
    p.choice = stream(StreamPurpose::PatientChoice, id);
    p.clinical = stream(StreamPurpose::PatientClinical, id);
    p.adherence = stream(StreamPurpose::PatientAdherence, id);
    p.durations = stream(StreamPurpose::Durations, id);
    p.doctor_choice = stream(StreamPurpose::DoctorChoice, id);
    p.a.start_worry(now_);
    patients_.push_back(std::move(p));
    PatientRt& pr = patients_.back();

    if (hybrid_) {
      calendar_.schedule(now_ + 3 * kMinutesPerDay, Payload{Ev::ThreeDay, id, 0});
      if (cfg_.behaviour.five_day_timer) calendar_.schedule(now_ + 5 * kMinutesPerDay, Payload{Ev::FiveDay, id, 0});
    }
    open_span(pr, SpanKind::Triage);
    if (gp_busy_ < cfg_.clinical.gp_count) {
      start_triage(pr);
    } else {
      gp_queue_.push_back(id);
    }
    schedule_arrival();
  }

  void start_triage(PatientRt& p) {
    close_span(p);
    ++gp_busy_;
    const double d = sample_triangular(p.durations, cfg_.clinical.triage_minutes);
    calendar_.schedule(now_ + d, Payload{Ev::TriageDone, p.a.file_number, 0});
  }

  void on_triage_done(PatientRt& p) {
    --gp_busy_;
    if (!gp_queue_.empty()) {
      const PatientId next = gp_queue_.front();
      gp_queue_.pop_front();
      start_triage(patients_[next]);
    }
    auto [channel, doctor] =
        choose_channel_and_doctor(p.doctor_choice, p.a, cfg_, doctor_view_, cfg_.behaviour.channel_pref_shift);
    p.a.channel = channel;
    p.a.doctor = doctor;
    push_job(doctors_[doctor], JobKind::FileReview, p.a.file_number);
  }

  // ------------------------------------------------ referral and booking

  /// NeedService patient whose request has been reviewed (or needs none).
  void refer(PatientRt& p) {
    ptrans(p, PatientTrigger::Referred);
    const double window = cfg_.behaviour.confirmation_window_minutes;
    if (hybrid_ && p.choice.bernoulli(channel_disagreement_probability(p.a, p.a.channel, cfg_.behaviour))) {
      calendar_.schedule(now_ + p.choice.uniform() * window, Payload{Ev::ConfirmationEnd, p.a.file_number, 1});
    } else {
      calendar_.schedule(now_ + window, Payload{Ev::ConfirmationEnd, p.a.file_number, 0});
    }
  }

  /// Entry into the request flow from NeedService. A patient already seen
  /// keeps doctor and channel and skips the file review.
  void request_care(PatientRt& p) {
    if (p.a.seen_before) {
      refer(p);
    } else {
      push_job(doctors_[*p.a.doctor], JobKind::FileReview, p.a.file_number);
    }
  }

  void on_confirmation_end(PatientRt& p, bool disagree) {
    if (p.a.state != PatientState::Confirmation) return;
    const auto tr = ptrans(p, disagree ? PatientTrigger::Disagree : PatientTrigger::ConfirmationTimeout);
    apply(p, tr);
  }

  void book_visit(PatientRt& p) {
    DoctorRt& d = doctors_[*p.a.doctor];
    const SpecialtyProfile& prof = specialty_profile(d.a.specialization);
    const Appointment ap = book_appointment(d.slots, prof.schedule, prof.slots(p.a.channel), p.a.channel, cfg_.P, now_);
    p.slot = ap;
    p.booked_doctor = d.a.id;
    p.a.appointment = ap.time;
    d.a.add_booking(p.a.file_number, p.a.channel);
    sync_view(d);
    p.appt = calendar_.schedule(ap.time, Payload{Ev::AppointmentDue, p.a.file_number, 0});
    if (hybrid_ && p.a.worry_since) {
      const int left = cfg_.behaviour.worry_threshold - p.a.worry_base + 1;
      const SimTime hit = *p.a.worry_since + std::max(0, left) * kMinutesPerHour;
      p.worry = calendar_.schedule(std::max(now_, hit), Payload{Ev::WorryDue, p.a.file_number, 0});
    }
  }

  void cancel_booking(PatientRt& p) {
    cancel(p.appt);
    cancel(p.worry);
    if (p.slot) {
      DoctorRt& d = doctors_[p.booked_doctor];
      d.slots.release(p.slot->occurrence, p.slot->slot);
      d.a.remove_booking(p.a.file_number);
      sync_view(d);
      p.slot.reset();
    }
    p.a.appointment.reset();
  }

  void on_appointment_due(PatientRt& p) {
    p.appt.reset();
    const auto tr = ptrans(p, PatientTrigger::AppointmentDue);
    apply(p, tr);
  }

  // ----------------------------------------------------------- effects

  void apply(PatientRt& p, const PatientTransition& tr) {
    for (PatientEffect e : tr.effects) {
      switch (e) {
        case PatientEffect::BookVisit: book_visit(p); break;
        case PatientEffect::CancelBooking: cancel_booking(p); break;
        case PatientEffect::JoinDoctorQueue: {
          cancel(p.worry);
          DoctorRt& d = doctors_[p.booked_doctor];
          d.a.remove_booking(p.a.file_number);
          sync_view(d);
          p.slot.reset();
          open_span(p, SpanKind::VisitQueue);
          push_job(d, JobKind::Visit, p.a.file_number);
          break;
        }
        case PatientEffect::JoinDoctorQueueUrgent:
          open_span(p, SpanKind::VisitQueue);
          push_job(doctors_[*p.a.doctor], JobKind::Urgent, p.a.file_number);
          break;
        case PatientEffect::ResetWorry:
        case PatientEffect::StartWorry:
          break;  // bookkeeping done by the transition
        case PatientEffect::ScheduleRequestAgain: {
          const double days = sample_triangular(p.clinical, cfg_.clinical.home_treatment_days);
          p.home = calendar_.schedule(now_ + days * kMinutesPerDay, Payload{Ev::HomeEnd, p.a.file_number, 0});
          break;
        }
        case PatientEffect::LeaveBedQueue: {
          SectionAgent& s = sections_[p.a.disease];
          if (!s.remove_waiting(p.a.file_number)) s.remove_booking(p.a.file_number);
          cancel(p.bed_booking);
          close_span(p);
          bed_event(BedEventKind::Leave, p, p.a.bed_request_time, 0);
          break;
        }
        case PatientEffect::ReleaseBed: {
          cancel(p.stay);
          sections_[p.a.disease].release(p.a.file_number);
          record_beds();
          break;
        }
        case PatientEffect::ExitRecovered:
        case PatientEffect::ExitDropout:
          p.exit = e == PatientEffect::ExitRecovered ? ExitKind::Recovered : ExitKind::Dropout;
          p.exit_time = now_;
          cancel(p.home);
          cancel(p.worry);
          close_span(p);
          break;
      }
    }
  }

  // ------------------------------------------------------------ doctors

  void push_job(DoctorRt& d, JobKind kind, PatientId patient) {
    d.queue.push_back(Job{kind, patient, now_, ++job_seq_});
    try_start(d);
  }

  void on_block_start(DoctorRt& d) {
    const auto occ = schedule_of(d).block_at(now_);
    if (!occ) throw ContractViolation("doctor " + std::to_string(d.a.id) + ": block start outside any block");
    const double minutes = occ->end - occ->start;
    switch (occ->activity) {
      case Activity::Clinic:
        trace_.work.push_back(WorkInterval{d.a.id, d.a.specialization, occ->start, occ->end, true});
        dtrans(d, DoctorTrigger::GotoClinic, minutes);
        break;
      case Activity::Online:
        trace_.work.push_back(WorkInterval{d.a.id, d.a.specialization, occ->start, occ->end, true});
        dtrans(d, DoctorTrigger::OnlineSession, minutes);
        break;
      case Activity::Hospital: dtrans(d, DoctorTrigger::GotoHospital); break;
    }
    calendar_.schedule(occ->end, Payload{Ev::BlockEnd, d.a.id, 0});
    if (auto nxt = schedule_of(d).next_start_after(now_)) {
      calendar_.schedule(nxt->start, Payload{Ev::BlockStart, d.a.id, 0});
    }
    try_start(d);
  }

  void on_block_end(DoctorRt& d) {
    dtrans(d, DoctorTrigger::BlockEnd);
    try_start(d);
  }

  void try_start(DoctorRt& d) {
    if (d.current || !is_idle(d.a.state)) return;
    const bool online = block_now(d) == Activity::Online;
    std::size_t best = d.queue.size();
    for (std::size_t i = 0; i < d.queue.size(); ++i) {
      const Job& j = d.queue[i];
      if (j.kind != JobKind::Visit && !online) continue;
      if (best == d.queue.size()) {
        best = i;
        continue;
      }
      const Job& b = d.queue[best];
      if (std::tie(j.kind, j.ready, j.seq) < std::tie(b.kind, b.ready, b.seq)) best = i;
    }
    if (best == d.queue.size()) return;
    d.current = d.queue[best];
    d.queue.erase(d.queue.begin() + static_cast<std::ptrdiff_t>(best));
    PatientRt& p = patients_[d.current->patient];

    if (d.current->kind == JobKind::FileReview) {
      d.stage = Stage::Review;
      dtrans(d, DoctorTrigger::StartFileReview);
      const double dur = consultation_duration(p.durations, d.a, p.a, p.a.channel, VisitPhase::FileReview, hybrid_,
                                               cfg_.behaviour);
      calendar_.schedule(now_ + dur, Payload{Ev::JobStage, d.a.id, 0});
      return;
    }
    close_span(p);
    ptrans(p, PatientTrigger::ServiceStart);
    dtrans(d, p.a.channel == Channel::InPerson ? DoctorTrigger::StartInPersonVisit : DoctorTrigger::StartOnlineVisit);
    d.stage = Stage::Exam;
    const VisitPhase phase = p.a.seen_before ? VisitPhase::Revisit : VisitPhase::Initial;
    const double dur = consultation_duration(p.durations, d.a, p.a, p.a.channel, phase, hybrid_, cfg_.behaviour);
    calendar_.schedule(now_ + dur, Payload{Ev::JobStage, d.a.id, 0});
  }

  void on_job_stage(DoctorRt& d) {
    if (!d.current) throw ContractViolation("doctor " + std::to_string(d.a.id) + ": job stage without a job");
    PatientRt& p = patients_[d.current->patient];
    switch (d.stage) {
      case Stage::Review:
        dtrans(d, DoctorTrigger::FileReviewDone);
        d.current.reset();
        refer(p);
        break;
      case Stage::Exam: {
        dtrans(d, DoctorTrigger::ExamDone);
        ptrans(p, PatientTrigger::DecisionReady);
        d.rec = static_cast<Recommendation>(sample_categorical(p.clinical, cfg_.clinical.recommendation));
        if (hybrid_ && p.choice.bernoulli(recommendation_disagreement_probability(p.a, d.rec, cfg_.behaviour))) {
          update_popularity(d.a, VisitOutcome::Contested, cfg_.behaviour);
          ptrans(p, PatientTrigger::Contest);
          dtrans(d, DoctorTrigger::Contested);
          d.stage = Stage::Recheck;
          const VisitPhase phase = p.a.seen_before ? VisitPhase::Revisit : VisitPhase::Initial;
          const double dur = consultation_duration(p.durations, d.a, p.a, p.a.channel, phase, true, cfg_.behaviour);
          calendar_.schedule(now_ + dur, Payload{Ev::JobStage, d.a.id, 0});
          return;
        }
        if (hybrid_) update_popularity(d.a, VisitOutcome::Completed, cfg_.behaviour);
        finish_visit(d, p);
        break;
      }
      case Stage::Recheck:
        dtrans(d, DoctorTrigger::ReEvaluated);
        ptrans(p, PatientTrigger::DecisionReady);
        if (p.choice.bernoulli(cfg_.behaviour.recheck_yield)) {
          d.rec = p.a.hosp_pref ? Recommendation::Hospitalize : Recommendation::HomeTreatment;
        }
        finish_visit(d, p);
        break;
    }
    sync_view(d);
    try_start(d);
  }

  void finish_visit(DoctorRt& d, PatientRt& p) {
    const bool urgent = d.current->kind == JobKind::Urgent;
    d.current.reset();
    dtrans(d, DoctorTrigger::VisitDone);
    if (urgent) {
      p.a.health = Health::Stable;
      p.a.emergency_flag = false;
    }

    PatientTriggerContext ctx;
    ctx.recommendation = d.rec;
    BedOutcome bed;
    BedRequest req{p.a.file_number, p.a.type, now_, ++bed_seq_};
    if (d.rec == Recommendation::Hospitalize) {
      bed = enqueue_for_bed(sections_[p.a.disease], req, p.a.channel, cfg_, now_);
      ctx.bed = bed.decision;
    }
    const auto tr = ptrans(p, PatientTrigger::Accept, ctx);
    apply(p, tr);
    if (d.rec != Recommendation::Hospitalize) return;

    open_span(p, SpanKind::BedQueue);
    switch (bed.decision) {
      case BedDecision::AdmitNow: admit(p); break;
      case BedDecision::WaitForEmptyBed: bed_event(BedEventKind::Join, p, req.request_time, req.seq); break;
      case BedDecision::WaitInHome:
        bed_event(BedEventKind::Book, p, req.request_time, req.seq);
        p.bed_booking = calendar_.schedule(*bed.booked, Payload{Ev::BedBookingDue, p.a.file_number, req.seq});
        break;
    }
    process_beds();
  }

  // ------------------------------------------------------------- beds

  void admit(PatientRt& p) {
    SectionAgent& s = sections_[p.a.disease];
    const double los = sample_triangular(p.clinical, cfg_.clinical.length_of_stay_days) * kMinutesPerDay;
    const SimTime discharge = next_block_start(schedule_of(p.a.disease), now_ + los, Activity::Hospital).value();
    s.admit(p.a.file_number, discharge);
    close_span(p);
    bed_event(BedEventKind::Admit, p, p.a.bed_request_time, 0);
    record_beds();
    p.stay = calendar_.schedule(discharge, Payload{Ev::StayEnd, p.a.file_number, 0});
  }

  void process_beds() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (SectionAgent& s : sections_) {
        while (s.free_beds() > 0 && !s.waiting_list.empty()) {
          const BedRequest r = s.waiting_list.front();
          s.waiting_list.erase(s.waiting_list.begin());
          PatientRt& p = patients_[r.patient];
          ptrans(p, PatientTrigger::BedAdmitted);
          admit(p);
          changed = true;
        }
      }
      if (!hybrid_) continue;
      for (SectionAgent& s : sections_) {
        if (s.state != SectionState::TakeOthers) continue;
        SectionAgent& lender = sections_[*s.from_where];
        const SectionState sb = s.state;
        const SectionState lb = lender.state;
        if (auto moved = return_beds(s.spec, sections_)) {
          trace_.transfers.push_back(TransferRecord{now_, moved->lender, moved->borrower, moved->beds, true});
          section_state(s, sb);
          section_state(lender, lb);
          record_beds();
          changed = true;
        }
      }
      for (SectionAgent& s : sections_) {
        std::array<SectionState, kSpecialtyCount> before{};
        for (const SectionAgent& o : sections_) before[o.spec] = o.state;
        if (auto moved = capacity_rebalance(s.spec, sections_, cfg_.behaviour.shortage_threshold)) {
          trace_.transfers.push_back(TransferRecord{now_, moved->lender, moved->borrower, moved->beds, false});
          for (SectionAgent& o : sections_) section_state(o, before[o.spec]);
          record_beds();
          changed = true;
        }
      }
    }
  }

  void on_bed_booking_due(PatientRt& p) {
    p.bed_booking.reset();
    SectionAgent& s = sections_[p.a.disease];
    s.remove_booking(p.a.file_number);
    if (s.free_beds() > 0 && s.waiting_list.empty()) {
      ptrans(p, PatientTrigger::BedAdmitted);
      admit(p);
    } else {
      ptrans(p, PatientTrigger::BookingDueNoBed);
      const BedRequest r{p.a.file_number, p.a.type, p.a.bed_request_time, ++bed_seq_};
      s.enqueue(r, cfg_.O == 1);
      bed_event(BedEventKind::Join, p, r.request_time, r.seq);
    }
    process_beds();
  }

  void on_stay_end(PatientRt& p) {
    p.stay.reset();
    for (DoctorRt& d : doctors_) {
      if (d.a.specialization != p.a.disease || d.a.state != DoctorState::Hospital) continue;
      dtrans(d, DoctorTrigger::StartService);
      dtrans(d, DoctorTrigger::ServiceDone);
      break;
    }
    PatientTriggerContext ctx;
    ctx.recovered = p.clinical.bernoulli(cfg_.clinical.recover_after_stay);
    p.a.health = Health::Stable;
    p.a.emergency_flag = false;
    const auto tr = ptrans(p, PatientTrigger::StayEnded, ctx);
    apply(p, tr);
    process_beds();
  }

  void on_home_end(PatientRt& p) {
    p.home.reset();
    if (p.a.state != PatientState::Home) return;
    ptrans(p, PatientTrigger::RequestAgain);
    request_care(p);
  }

  // ------------------------------------------------- behavioural timers

  void on_worry_due(PatientRt& p) {
    p.worry.reset();
    if (p.a.state != PatientState::WaitForVisit) return;
    if (p.a.worry_counter(now_) <= cfg_.behaviour.worry_threshold) return;
    const auto tr = ptrans(p, PatientTrigger::WorryThreshold);
    apply(p, tr);
    request_care(p);
  }

  void on_emergency_visit_due(PatientRt& p) {
    const auto tr = ptrans(p, PatientTrigger::EmergencyVisitDue);
    apply(p, tr);
  }

  void escalate(PatientRt& p) {
    cancel(p.home);
    const auto tr = ptrans(p, PatientTrigger::EmergencyRaised);
    apply(p, tr);
    trace_.escalations.push_back(EscalationRecord{p.a.file_number, now_});
    const SimTime t = next_block_start(schedule_of(p.a.disease), now_, Activity::Online).value();
    calendar_.schedule(t, Payload{Ev::EmergencyVisitDue, p.a.file_number, 0});
  }

  void maybe_change_doctor(PatientRt& p) {
    const DoctorRt& cur = doctors_[*p.a.doctor];
    const DoctorRt* best = nullptr;
    for (const DoctorRt& d : doctors_) {
      if (d.a.specialization != p.a.disease || d.a.id == cur.a.id) continue;
      if (best == nullptr || d.a.load() < best->a.load()) best = &d;
    }
    if (best == nullptr) return;
    const double gap = (best->a.popularity - cur.a.popularity) / cur.a.popularity;
    const double prob = std::min(1.0, cfg_.behaviour.doctor_change_scale * std::max(0.0, gap));
    if (!p.clinical.bernoulli(prob)) return;
    update_popularity(doctors_[cur.a.id].a, VisitOutcome::Abandoned, cfg_.behaviour);
    sync_view(doctors_[cur.a.id]);
    const DoctorId to = best->a.id;
    const auto tr = ptrans(p, PatientTrigger::ChangeDoctor);
    cancel_booking(p);
    p.a.doctor = to;
    book_visit(p);
    (void)tr;
  }

  static bool adherence_evolves(PatientState s) {
    switch (s) {
      case PatientState::NeedService:
      case PatientState::Confirmation:
      case PatientState::WaitForVisit:
      case PatientState::WaitForEmptyBed:
      case PatientState::WaitInHome:
      case PatientState::Home:
        return true;
      default:
        return false;
    }
  }

  void on_three_day(PatientRt& p) {
    if (is_terminal(p.a.state)) return;
    if (adherence_evolves(p.a.state)) {
      drug_behavior_step(p.adherence, p.a, adherence_);
      ++trace_.adherence_steps;
    }
    const PatientState s = p.a.state;
    if (p.a.emergency_flag && (s == PatientState::Home || s == PatientState::WaitForVisit)) {
      escalate(p);
    } else if (s == PatientState::WaitForVisit) {
      maybe_change_doctor(p);
    } else if (s == PatientState::Hospitalization && p.clinical.bernoulli(cfg_.behaviour.self_discharge_prob)) {
      const auto tr = ptrans(p, PatientTrigger::SelfDischarge);
      apply(p, tr);
      process_beds();
      return;
    }
    calendar_.schedule(now_ + 3 * kMinutesPerDay, Payload{Ev::ThreeDay, p.a.file_number, 0});
  }

  void on_five_day(PatientRt& p) {
    if (is_terminal(p.a.state)) return;
    const PatientState s = p.a.state;
    const bool can_leave =
        s == PatientState::WaitForVisit || s == PatientState::WaitForEmptyBed || s == PatientState::WaitInHome;
    if (p.a.leave_flag) {
      if (can_leave) {
        if (s == PatientState::WaitForVisit) {
          update_popularity(doctors_[p.booked_doctor].a, VisitOutcome::Abandoned, cfg_.behaviour);
          sync_view(doctors_[p.booked_doctor]);
        }
        const auto tr = ptrans(p, PatientTrigger::Leave);
        apply(p, tr);
        process_beds();
        return;
      }
      p.a.leave_flag = false;
    } else {
      five_day_review(p.a, now_, cfg_.behaviour.leave_threshold_days * kMinutesPerDay);
    }
    calendar_.schedule(now_ + 5 * kMinutesPerDay, Payload{Ev::FiveDay, p.a.file_number, 0});
  }

  // ------------------------------------------------------------- finish

  void finalize() {
    for (PatientRt& p : patients_) {
      if (p.exit == ExitKind::None) close_span(p, true);
      trace_.patients.push_back(PatientRecord{p.a.file_number, p.a.type, p.a.disease, p.a.arrival, p.exit,
                                              p.exit_time, p.a.state});
    }
    for (DoctorRt& d : doctors_) {
      if (is_working(d.a.state) && d.a.state_since < now_) {
        trace_.work.push_back(WorkInterval{d.a.id, d.a.specialization, d.a.state_since, now_, false});
      }
    }
  }

  const ScenarioConfig& cfg_;
  std::uint64_t rep_;
  bool hybrid_;
  AdherenceParams adherence_;
  EventCalendar<Payload> calendar_;
  RngStream arrivals_;
  SimTime now_{};

  std::vector<PatientRt> patients_;
  std::vector<DoctorRt> doctors_;
  std::vector<DoctorAgent> doctor_view_;
  std::vector<SectionAgent> sections_;
  int gp_busy_ = 0;
  std::deque<PatientId> gp_queue_;
  std::uint64_t job_seq_ = 0;
  std::uint64_t bed_seq_ = 0;

  ReplicationTrace trace_;
};

}  // namespace

ReplicationResult run_replication(const ScenarioConfig& config, std::uint64_t replication) {
  config.validate();
  Simulation sim(config, replication);
  return sim.run();
}

}  // namespace hospsim
