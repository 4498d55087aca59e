#include "hospsim/agents/patient.hpp"

#include <cmath>

namespace hospsim {

int PatientAgent::worry_counter(SimTime now) const {
  if (!worry_since) return worry_base;
  return worry_base + static_cast<int>(std::floor((now - *worry_since) / kMinutesPerHour));
}

void PatientAgent::start_worry(SimTime now) {
  if (!worry_since) worry_since = now;
}

void PatientAgent::reset_worry() {
  worry_base = 0;
  worry_since.reset();
}

std::string_view to_string(PatientTrigger t) {
  switch (t) {
    case PatientTrigger::Referred: return "Referred";
    case PatientTrigger::ConfirmationTimeout: return "ConfirmationTimeout";
    case PatientTrigger::Disagree: return "Disagree";
    case PatientTrigger::AppointmentDue: return "AppointmentDue";
    case PatientTrigger::EmergencyVisitDue: return "EmergencyVisitDue";
    case PatientTrigger::ServiceStart: return "ServiceStart";
    case PatientTrigger::DecisionReady: return "DecisionReady";
    case PatientTrigger::Contest: return "Contest";
    case PatientTrigger::Accept: return "Accept";
    case PatientTrigger::BedAdmitted: return "BedAdmitted";
    case PatientTrigger::BookingDueNoBed: return "BookingDueNoBed";
    case PatientTrigger::StayEnded: return "StayEnded";
    case PatientTrigger::SelfDischarge: return "SelfDischarge";
    case PatientTrigger::RequestAgain: return "RequestAgain";
    case PatientTrigger::EmergencyRaised: return "EmergencyRaised";
    case PatientTrigger::WorryThreshold: return "WorryThreshold";
    case PatientTrigger::ChangeDoctor: return "ChangeDoctor";
    case PatientTrigger::Leave: return "Leave";
  }
  return "?";
}

namespace {

using S = PatientState;
using E = PatientEffect;

[[noreturn]] void reject(const PatientAgent& p, PatientTrigger t) {
  throw ContractViolation("patient " + std::to_string(p.file_number) + ": trigger " + std::string(to_string(t)) +
                          " has no edge from state " + std::string(to_string(p.state)));
}

}  // namespace

bool patient_edge_allowed(PatientState from, PatientState to) {
  switch (from) {
    case S::NeedService: return to == S::Confirmation || to == S::DroppedOut;
    case S::Confirmation: return to == S::WaitForVisit || to == S::DroppedOut;
    case S::WaitForVisit:
      return to == S::WaitInCQueue || to == S::WaitInVQueue || to == S::Emergency || to == S::NeedService ||
             to == S::WaitForVisit || to == S::DroppedOut;
    case S::WaitInCQueue: return to == S::BeingCheckup;
    case S::BeingCheckup: return to == S::AgreeOrDisagree;
    case S::AgreeOrDisagree:
    case S::AcceptOrNot:
      return to == (from == S::AgreeOrDisagree ? S::BeingCheckup : S::AnsweringQuestions) || to == S::Recovered ||
             to == S::Home || to == S::Hospitalization || to == S::WaitInHome || to == S::WaitForEmptyBed;
    case S::WaitInVQueue: return to == S::AnsweringQuestions;
    case S::AnsweringQuestions: return to == S::AcceptOrNot;
    case S::WaitForEmptyBed: return to == S::Hospitalization || to == S::DroppedOut;
    case S::WaitInHome: return to == S::Hospitalization || to == S::WaitForEmptyBed || to == S::DroppedOut;
    case S::Hospitalization: return to == S::Recovered || to == S::Home || to == S::DroppedOut;
    case S::Emergency: return to == S::WaitInVQueue || to == S::DroppedOut;
    case S::Home: return to == S::NeedService || to == S::Emergency;
    case S::Recovered:
    case S::DroppedOut: return false;
  }
  return false;
}

PatientTransition patient_transition(PatientAgent& p, PatientTrigger trigger, const PatientTriggerContext& ctx) {
  PatientTransition out{p.state, p.state, {}};
  auto go = [&](PatientState to) { out.to = to; };

  switch (trigger) {
    case PatientTrigger::Referred:
      if (p.state != S::NeedService) reject(p, trigger);
      go(S::Confirmation);
      break;

    case PatientTrigger::ConfirmationTimeout:
    case PatientTrigger::Disagree:
      if (p.state != S::Confirmation) reject(p, trigger);
      if (trigger == PatientTrigger::Disagree) {
        p.channel = p.channel == Channel::Online ? Channel::InPerson : Channel::Online;
      }
      go(S::WaitForVisit);
      out.effects.push_back(E::BookVisit);
      break;

    case PatientTrigger::AppointmentDue:
      if (p.state != S::WaitForVisit) reject(p, trigger);
      go(p.channel == Channel::InPerson ? S::WaitInCQueue : S::WaitInVQueue);
      out.effects.push_back(E::JoinDoctorQueue);
      break;

    case PatientTrigger::EmergencyVisitDue:
      if (p.state != S::Emergency) reject(p, trigger);
      p.channel = Channel::Online;
      go(S::WaitInVQueue);
      out.effects.push_back(E::JoinDoctorQueueUrgent);
      break;

    case PatientTrigger::ServiceStart:
      if (p.state == S::WaitInCQueue) {
        go(S::BeingCheckup);
      } else if (p.state == S::WaitInVQueue) {
        go(S::AnsweringQuestions);
      } else {
        reject(p, trigger);
      }
      out.effects.push_back(E::ResetWorry);
      break;

    case PatientTrigger::DecisionReady:
      if (p.state == S::BeingCheckup) {
        go(S::AgreeOrDisagree);
      } else if (p.state == S::AnsweringQuestions) {
        go(S::AcceptOrNot);
      } else {
        reject(p, trigger);
      }
      break;

    case PatientTrigger::Contest:
      if (p.state == S::AgreeOrDisagree) {
        go(S::BeingCheckup);
      } else if (p.state == S::AcceptOrNot) {
        go(S::AnsweringQuestions);
      } else {
        reject(p, trigger);
      }
      break;

    case PatientTrigger::Accept:
      if (p.state != S::AgreeOrDisagree && p.state != S::AcceptOrNot) reject(p, trigger);
      p.seen_before = true;
      switch (ctx.recommendation) {
        case Recommendation::Discharge:
          go(S::Recovered);
          out.effects.push_back(E::ExitRecovered);
          break;
        case Recommendation::HomeTreatment:
          go(S::Home);
          out.effects.push_back(E::ScheduleRequestAgain);
          break;
        case Recommendation::Hospitalize:
          p.bed_request_time = ctx.now;
          if (ctx.bed == BedDecision::AdmitNow) {
            go(S::Hospitalization);
          } else {
            go(ctx.bed == BedDecision::WaitInHome ? S::WaitInHome : S::WaitForEmptyBed);
            out.effects.push_back(E::StartWorry);
          }
          break;
      }
      break;

    case PatientTrigger::BedAdmitted:
      if (p.state != S::WaitForEmptyBed && p.state != S::WaitInHome) reject(p, trigger);
      go(S::Hospitalization);
      out.effects.push_back(E::ResetWorry);
      break;

    case PatientTrigger::BookingDueNoBed:
      if (p.state != S::WaitInHome) reject(p, trigger);
      go(S::WaitForEmptyBed);
      break;

    case PatientTrigger::StayEnded:
      if (p.state != S::Hospitalization) reject(p, trigger);
      out.effects.push_back(E::ReleaseBed);
      if (ctx.recovered) {
        go(S::Recovered);
        out.effects.push_back(E::ExitRecovered);
      } else {
        go(S::Home);
        out.effects.push_back(E::ScheduleRequestAgain);
      }
      break;

    case PatientTrigger::SelfDischarge:
      if (p.state != S::Hospitalization) reject(p, trigger);
      go(S::DroppedOut);
      out.effects.push_back(E::ReleaseBed);
      out.effects.push_back(E::ExitDropout);
      break;

    case PatientTrigger::RequestAgain:
      if (p.state != S::Home) reject(p, trigger);
      go(S::NeedService);
      p.request_time = ctx.now;
      out.effects.push_back(E::StartWorry);
      break;

    case PatientTrigger::EmergencyRaised:
      if (p.state == S::WaitForVisit) {
        out.effects.push_back(E::CancelBooking);
      } else if (p.state != S::Home) {
        reject(p, trigger);
      }
      go(S::Emergency);
      p.request_time = ctx.now;
      p.emergency_flag = false;
      break;

    case PatientTrigger::WorryThreshold:
      if (p.state != S::WaitForVisit) reject(p, trigger);
      go(S::NeedService);
      out.effects.push_back(E::CancelBooking);
      // The threshold event consumes the accumulated worry.
      p.worry_base = 0;
      p.worry_since = ctx.now;
      break;

    case PatientTrigger::ChangeDoctor:
      if (p.state != S::WaitForVisit) reject(p, trigger);
      out.effects.push_back(E::CancelBooking);
      out.effects.push_back(E::BookVisit);
      break;

    case PatientTrigger::Leave:
      switch (p.state) {
        case S::WaitForVisit: out.effects.push_back(E::CancelBooking); break;
        case S::WaitForEmptyBed: out.effects.push_back(E::LeaveBedQueue); break;
        case S::WaitInHome: out.effects.push_back(E::LeaveBedQueue); break;
        case S::NeedService:
        case S::Confirmation:
        case S::Emergency: break;
        default: reject(p, trigger);
      }
      go(S::DroppedOut);
      out.effects.push_back(E::ExitDropout);
      break;
  }

  if (out.to != out.from || trigger == PatientTrigger::ChangeDoctor) {
    p.state = out.to;
    p.state_since = ctx.now;
  }
  if (is_terminal(p.state)) p.reset_worry();
  for (E e : out.effects) {
    if (e == E::ResetWorry) p.reset_worry();
    if (e == E::StartWorry) p.start_worry(ctx.now);
  }
  return out;
}

bool five_day_review(PatientAgent& patient, SimTime now, double leave_threshold_minutes) {
  SimTime since;
  switch (patient.state) {
    case S::WaitForEmptyBed:
    case S::WaitInHome: since = patient.bed_request_time; break;
    case S::WaitForVisit: since = patient.request_time; break;
    default: return false;
  }
  if (patient.leave_flag || now - since <= leave_threshold_minutes) return false;
  patient.leave_flag = true;
  return true;
}

}  // namespace hospsim
