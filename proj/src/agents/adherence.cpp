#include "hospsim/agents/adherence.hpp"

#include "hospsim/agents/patient.hpp"
#include "hospsim/sim/distributions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hospsim {

namespace {

template <std::size_t N>
void check_row(const std::array<double, N>& row, const std::string& where) {
  double sum = 0.0;
  for (double p : row) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument(where + ": negative or non-finite probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << where << ": row sums to " << sum << ", expected 1";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

void AdherenceParams::validate() const {
  for (std::size_t a = 0; a < kAgeBands; ++a)
    for (std::size_t g = 0; g < kGenders; ++g)
      for (std::size_t t = 0; t < kTraits; ++t)
        for (std::size_t h = 0; h < kHealthLevels; ++h)
          for (std::size_t av = 0; av < 2; ++av)
            for (std::size_t c = 0; c < kAdherenceLevels; ++c) {
              std::ostringstream os;
              os << "adherence.risk[age=" << a << ",gender=" << g << ",trait=" << t << ",health=" << h
                 << ",shortage=" << av << ",from=" << c << "]";
              check_row(risk[a][g][t][h][av][c], os.str());
            }
  for (std::size_t i = 0; i < 2; ++i) check_row(availability[i], "adherence.availability[" + std::to_string(i) + "]");
  for (std::size_t a = 0; a < kAdherenceLevels; ++a)
    for (std::size_t h = 0; h < kHealthLevels; ++h)
      check_row(health[a][h], "adherence.health[" + std::to_string(a) + "][" + std::to_string(h) + "]");
}

AdherenceParams build_adherence_params(const AdherenceProfile& p) {
  for (std::size_t c = 0; c < kAdherenceLevels; ++c) check_row(p.base[c], "adherence.base[" + std::to_string(c) + "]");

  AdherenceParams out;
  for (std::size_t a = 0; a < kAgeBands; ++a)
    for (std::size_t g = 0; g < kGenders; ++g)
      for (std::size_t t = 0; t < kTraits; ++t)
        for (std::size_t h = 0; h < kHealthLevels; ++h)
          for (std::size_t av = 0; av < 2; ++av) {
            const double shift = p.age_tilt[a] + p.gender_tilt[g] + p.trait_tilt[t] + p.health_tilt[h] +
                                 (av == 1 ? p.shortage_tilt : 0.0);
            if (!(shift >= 0.0 && shift < 1.0)) {
              throw std::invalid_argument("adherence tilts must add up to a value in [0, 1)");
            }
            for (std::size_t c = 0; c < kAdherenceLevels; ++c) {
              ProbRow3 row{};
              for (std::size_t k = 0; k < 3; ++k) row[k] = (1.0 - shift) * p.base[c][k];
              // Renormalise through the Poor entry so the row sums to exactly 1 in floating point.
              row[2] = 1.0 - row[0] - row[1];
              out.risk[a][g][t][h][av][c] = row;
            }
          }
  out.availability = p.availability;
  out.health = p.health;
  out.validate();
  return out;
}

const AdherenceParams& default_adherence_params() {
  static const AdherenceParams params = build_adherence_params(AdherenceProfile{});
  return params;
}

void drug_behavior_step(RngStream& stream, PatientAgent& patient, const AdherenceParams& params) {
  switch (patient.state) {
    case PatientState::NeedService:
    case PatientState::Confirmation:
    case PatientState::WaitForVisit:
    case PatientState::WaitForEmptyBed:
    case PatientState::WaitInHome:
    case PatientState::Home:
      break;
    default:
      throw std::logic_error("drug_behavior_step: patient " + std::to_string(patient.file_number) + " is in state " +
                             std::string(to_string(patient.state)) + ", adherence evolves only outside hospital");
  }

  const auto& avail_row = params.availability[patient.medication_available ? 0 : 1];
  patient.medication_available = sample_categorical(stream, avail_row) == 0;

  const auto& risk = params.risk_row(age_band(patient.age), patient.gender, patient.trait, patient.health,
                                     patient.medication_available, patient.adherence);
  patient.adherence = static_cast<Adherence>(sample_categorical(stream, risk));

  const auto& health_row =
      params.health[static_cast<std::size_t>(patient.adherence)][static_cast<std::size_t>(patient.health)];
  patient.health = static_cast<Health>(sample_categorical(stream, health_row));

  patient.emergency_flag = patient.adherence == Adherence::Poor && patient.health != Health::Stable;
  ++patient.adherence_steps;
}

}  // namespace hospsim
