#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace hospsim {

inline constexpr std::size_t kSpecialtyCount = 5;
inline constexpr std::size_t kCardiology = 0;  // section 1, never shares beds
inline constexpr std::size_t kPaediatrics = 3;

/// Zero-based specialty / section index; printed one-based.
using SpecialtyIndex = std::size_t;

std::string_view specialty_name(SpecialtyIndex s);

enum class PatientType : std::uint8_t { Local, Tourist };
enum class Gender : std::uint8_t { Female, Male };
enum class Trait : std::uint8_t { Relaxed, Normal, Anxious };
enum class AgeBand : std::uint8_t { Young, Middle, Senior };
enum class Adherence : std::uint8_t { Good, Partial, Poor };
enum class Health : std::uint8_t { Stable, Worsening, Critical };
enum class Channel : std::uint8_t { Online, InPerson };
enum class VisitPhase : std::uint8_t { Initial, Revisit, FileReview };
enum class Recommendation : std::uint8_t { Discharge, HomeTreatment, Hospitalize };
enum class VisitOutcome : std::uint8_t { Completed, Contested, Abandoned };
enum class Mode : std::uint8_t { Hybrid, DesOnly };

inline constexpr std::size_t kAgeBands = 3;
inline constexpr std::size_t kGenders = 2;
inline constexpr std::size_t kTraits = 3;
inline constexpr std::size_t kAdherenceLevels = 3;
inline constexpr std::size_t kHealthLevels = 3;

AgeBand age_band(int age);

/// Treatment states of the patient state-chart plus the two terminal exits.
enum class PatientState : std::uint8_t {
  NeedService,
  Confirmation,
  WaitForVisit,
  WaitInCQueue,
  BeingCheckup,
  AgreeOrDisagree,
  WaitInVQueue,
  AnsweringQuestions,
  AcceptOrNot,
  WaitForEmptyBed,
  WaitInHome,
  Hospitalization,
  Emergency,
  Home,
  Recovered,
  DroppedOut,
};

enum class DoctorState : std::uint8_t {
  Home,
  Checking,
  Clinic,
  Hospital,
  Service,
  Checkup,
  MakeDecision,
  ReCheck,
  AskQuestions,
  MakeDecisionOnline,
  Evaluation,
};

enum class SectionState : std::uint8_t { NormalCapacity, Borrow, TakeOthers };

std::string_view to_string(PatientType v);
std::string_view to_string(Trait v);
std::string_view to_string(Adherence v);
std::string_view to_string(Health v);
std::string_view to_string(Channel v);
std::string_view to_string(Recommendation v);
std::string_view to_string(Mode v);
std::string_view to_string(PatientState v);
std::string_view to_string(DoctorState v);
std::string_view to_string(SectionState v);

bool is_terminal(PatientState s);
/// States in which the patient sits at home or in a queue and is not being treated.
bool is_waiting(PatientState s);

}  // namespace hospsim
