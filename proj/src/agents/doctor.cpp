#include "hospsim/agents/doctor.hpp"

#include <algorithm>

namespace hospsim {

void DoctorAgent::add_booking(PatientId p, Channel c) {
  patient_list.push_back(p);
  visit_mode_flags.push_back(c == Channel::InPerson);
}

bool DoctorAgent::remove_booking(PatientId p) {
  auto it = std::find(patient_list.begin(), patient_list.end(), p);
  if (it == patient_list.end()) return false;
  const auto pos = it - patient_list.begin();
  patient_list.erase(it);
  visit_mode_flags.erase(visit_mode_flags.begin() + pos);
  return true;
}

std::string_view to_string(DoctorTrigger t) {
  switch (t) {
    case DoctorTrigger::GotoClinic: return "GotoClinic";
    case DoctorTrigger::GotoHospital: return "GotoHospital";
    case DoctorTrigger::OnlineSession: return "OnlineSession";
    case DoctorTrigger::BlockEnd: return "BlockEnd";
    case DoctorTrigger::StartFileReview: return "StartFileReview";
    case DoctorTrigger::StartInPersonVisit: return "StartInPersonVisit";
    case DoctorTrigger::StartOnlineVisit: return "StartOnlineVisit";
    case DoctorTrigger::ExamDone: return "ExamDone";
    case DoctorTrigger::Contested: return "Contested";
    case DoctorTrigger::ReEvaluated: return "ReEvaluated";
    case DoctorTrigger::VisitDone: return "VisitDone";
    case DoctorTrigger::StartService: return "StartService";
    case DoctorTrigger::ServiceDone: return "ServiceDone";
    case DoctorTrigger::FileReviewDone: return "FileReviewDone";
  }
  return "?";
}

DoctorState idle_state(std::optional<Activity> block) {
  if (!block) return DoctorState::Home;
  switch (*block) {
    case Activity::Clinic: return DoctorState::Clinic;
    case Activity::Hospital: return DoctorState::Hospital;
    case Activity::Online: return DoctorState::Home;
  }
  return DoctorState::Home;
}

bool is_idle(DoctorState s) {
  return s == DoctorState::Home || s == DoctorState::Clinic || s == DoctorState::Hospital;
}

bool is_working(DoctorState s) {
  switch (s) {
    case DoctorState::Checking:
    case DoctorState::Checkup:
    case DoctorState::MakeDecision:
    case DoctorState::ReCheck:
    case DoctorState::AskQuestions:
    case DoctorState::MakeDecisionOnline:
    case DoctorState::Evaluation:
      return true;
    default:
      return false;
  }
}

bool doctor_edge_allowed(DoctorState from, DoctorState to) {
  using D = DoctorState;
  if (is_idle(from) && is_idle(to)) return true;
  switch (from) {
    case D::Home:
    case D::Clinic:
    case D::Hospital:
      return to == D::Checking || to == D::Checkup || to == D::AskQuestions || (from == D::Hospital && to == D::Service);
    case D::Checking: return is_idle(to);
    case D::Checkup: return to == D::MakeDecision;
    case D::MakeDecision: return to == D::ReCheck || is_idle(to);
    case D::ReCheck: return to == D::MakeDecision;
    case D::AskQuestions: return to == D::MakeDecisionOnline;
    case D::MakeDecisionOnline: return to == D::Evaluation || is_idle(to);
    case D::Evaluation: return to == D::MakeDecisionOnline;
    case D::Service: return to == D::Hospital;
  }
  return false;
}

DoctorTransition doctor_transition(DoctorAgent& d, DoctorTrigger trigger, const DoctorTriggerContext& ctx) {
  using D = DoctorState;
  const D from = d.state;
  D to = from;
  auto reject = [&]() {
    throw ContractViolation("doctor " + std::to_string(d.id) + ": trigger " + std::string(to_string(trigger)) +
                            " has no edge from state " + std::string(to_string(from)));
  };

  switch (trigger) {
    case DoctorTrigger::GotoClinic:
    case DoctorTrigger::GotoHospital:
    case DoctorTrigger::OnlineSession:
    case DoctorTrigger::BlockEnd:
      if (trigger == DoctorTrigger::GotoClinic || trigger == DoctorTrigger::OnlineSession) {
        d.scheduled_minutes += ctx.block_minutes;
      }
      // A busy doctor finishes the current job first; the idle state catches up afterwards.
      if (is_idle(from)) to = idle_state(ctx.block);
      break;
    case DoctorTrigger::StartFileReview:
      if (!is_idle(from)) reject();
      to = D::Checking;
      break;
    case DoctorTrigger::StartInPersonVisit:
      if (!is_idle(from)) reject();
      to = D::Checkup;
      break;
    case DoctorTrigger::StartOnlineVisit:
      if (!is_idle(from)) reject();
      to = D::AskQuestions;
      break;
    case DoctorTrigger::ExamDone:
      if (from == D::Checkup || from == D::ReCheck) {
        to = D::MakeDecision;
      } else if (from == D::AskQuestions || from == D::Evaluation) {
        to = D::MakeDecisionOnline;
      } else {
        reject();
      }
      break;
    case DoctorTrigger::Contested:
      if (from == D::MakeDecision) {
        to = D::ReCheck;
      } else if (from == D::MakeDecisionOnline) {
        to = D::Evaluation;
      } else {
        reject();
      }
      break;
    case DoctorTrigger::ReEvaluated:
      if (from == D::ReCheck) {
        to = D::MakeDecision;
      } else if (from == D::Evaluation) {
        to = D::MakeDecisionOnline;
      } else {
        reject();
      }
      break;
    case DoctorTrigger::VisitDone:
      if (from != D::MakeDecision && from != D::MakeDecisionOnline) reject();
      to = idle_state(ctx.block);
      break;
    case DoctorTrigger::StartService:
      if (from != D::Hospital) reject();
      to = D::Service;
      break;
    case DoctorTrigger::ServiceDone:
      if (from != D::Service) reject();
      to = D::Hospital;
      break;
    case DoctorTrigger::FileReviewDone:
      if (from != D::Checking) reject();
      to = idle_state(ctx.block);
      break;
  }

  if (to != from) {
    if (is_working(from)) d.worked_minutes += ctx.now - d.state_since;
    d.state = to;
    d.state_since = ctx.now;
  }
  return {from, to};
}

}  // namespace hospsim
