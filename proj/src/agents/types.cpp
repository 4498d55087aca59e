#include "hospsim/agents/types.hpp"

namespace hospsim {

std::string_view specialty_name(SpecialtyIndex s) {
  static constexpr std::array<std::string_view, kSpecialtyCount> names{
      "Cardiology", "Internal medicine", "Cosmetic surgery", "Paediatrics", "Breast oncology"};
  return s < names.size() ? names[s] : "?";
}

AgeBand age_band(int age) {
  if (age < 40) return AgeBand::Young;
  if (age < 65) return AgeBand::Middle;
  return AgeBand::Senior;
}

std::string_view to_string(PatientType v) { return v == PatientType::Tourist ? "Tourist" : "Local"; }

std::string_view to_string(Trait v) {
  switch (v) {
    case Trait::Relaxed: return "Relaxed";
    case Trait::Normal: return "Normal";
    case Trait::Anxious: return "Anxious";
  }
  return "?";
}

std::string_view to_string(Adherence v) {
  switch (v) {
    case Adherence::Good: return "Good";
    case Adherence::Partial: return "Partial";
    case Adherence::Poor: return "Poor";
  }
  return "?";
}

std::string_view to_string(Health v) {
  switch (v) {
    case Health::Stable: return "Stable";
    case Health::Worsening: return "Worsening";
    case Health::Critical: return "Critical";
  }
  return "?";
}

std::string_view to_string(Channel v) { return v == Channel::Online ? "Online" : "InPerson"; }

std::string_view to_string(Recommendation v) {
  switch (v) {
    case Recommendation::Discharge: return "Discharge";
    case Recommendation::HomeTreatment: return "HomeTreatment";
    case Recommendation::Hospitalize: return "Hospitalize";
  }
  return "?";
}

std::string_view to_string(Mode v) { return v == Mode::Hybrid ? "hybrid" : "des-only"; }

std::string_view to_string(PatientState v) {
  switch (v) {
    case PatientState::NeedService: return "needService";
    case PatientState::Confirmation: return "Confirmation";
    case PatientState::WaitForVisit: return "WaitForVisit";
    case PatientState::WaitInCQueue: return "WaitInCQueue";
    case PatientState::BeingCheckup: return "BeingCheckup";
    case PatientState::AgreeOrDisagree: return "AgreeOrDisagree";
    case PatientState::WaitInVQueue: return "WaitInVQueue";
    case PatientState::AnsweringQuestions: return "AnsweringQuestions";
    case PatientState::AcceptOrNot: return "AcceptOrNot";
    case PatientState::WaitForEmptyBed: return "WaitForEmptyBed";
    case PatientState::WaitInHome: return "WaitInHome";
    case PatientState::Hospitalization: return "Hospitalization";
    case PatientState::Emergency: return "emergency";
    case PatientState::Home: return "Home";
    case PatientState::Recovered: return "Recovered";
    case PatientState::DroppedOut: return "DroppedOut";
  }
  return "?";
}

std::string_view to_string(DoctorState v) {
  switch (v) {
    case DoctorState::Home: return "Home";
    case DoctorState::Checking: return "Checking";
    case DoctorState::Clinic: return "Clinic";
    case DoctorState::Hospital: return "Hospital";
    case DoctorState::Service: return "Service";
    case DoctorState::Checkup: return "Checkup";
    case DoctorState::MakeDecision: return "MakeDecision";
    case DoctorState::ReCheck: return "ReCheck";
    case DoctorState::AskQuestions: return "AskQuestions";
    case DoctorState::MakeDecisionOnline: return "MakeDecisionOnline";
    case DoctorState::Evaluation: return "Evaluation";
  }
  return "?";
}

std::string_view to_string(SectionState v) {
  switch (v) {
    case SectionState::NormalCapacity: return "NormalCapacity";
    case SectionState::Borrow: return "Borrow";
    case SectionState::TakeOthers: return "TakeOthers";
  }
  return "?";
}

bool is_terminal(PatientState s) { return s == PatientState::Recovered || s == PatientState::DroppedOut; }

bool is_waiting(PatientState s) {
  switch (s) {
    case PatientState::NeedService:
    case PatientState::Confirmation:
    case PatientState::WaitForVisit:
    case PatientState::WaitForEmptyBed:
    case PatientState::WaitInHome:
    case PatientState::Emergency:
      return true;
    default:
      return false;
  }
}

}  // namespace hospsim
