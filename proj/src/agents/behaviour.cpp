#include "hospsim/agents/behaviour.hpp"

#include "hospsim/agents/specialty.hpp"
#include "hospsim/sim/distributions.hpp"

#include <algorithm>
#include <stdexcept>

namespace hospsim {

namespace {

void require_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string("behaviour.") + name + " must lie in [0, 1]");
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string("behaviour.") + name + " must be positive");
}

}  // namespace

void BehaviourParams::validate() const {
  require_positive(anxious_factor, "anxious_factor");
  require_probability(disagree_mismatch, "disagree_mismatch");
  require_probability(disagree_match, "disagree_match");
  require_probability(channel_disagree_mismatch, "channel_disagree_mismatch");
  require_probability(channel_disagree_match, "channel_disagree_match");
  require_probability(recheck_yield, "recheck_yield");
  require_probability(channel_pref_shift, "channel_pref_shift");
  require_positive(confirmation_window_minutes, "confirmation_window_minutes");
  if (worry_threshold < 0) throw std::invalid_argument("behaviour.worry_threshold must be non-negative");
  require_positive(leave_threshold_days, "leave_threshold_days");
  if (shortage_threshold < 1) throw std::invalid_argument("behaviour.shortage_threshold must be at least 1");
  if (!(doctor_change_scale >= 0.0)) throw std::invalid_argument("behaviour.doctor_change_scale must be non-negative");
  require_probability(self_discharge_prob, "self_discharge_prob");
  require_positive(popularity_completed, "popularity_completed");
  require_positive(popularity_contested, "popularity_contested");
  require_positive(popularity_abandoned, "popularity_abandoned");
  require_positive(popularity_min, "popularity_min");
  if (!(popularity_max >= popularity_min)) throw std::invalid_argument("behaviour.popularity_max is below popularity_min");
}

double consultation_duration(RngStream& stream, const DoctorAgent& doctor, const PatientAgent& patient,
                             Channel channel, VisitPhase phase, bool behavioural, const BehaviourParams& params,
                             bool contested) {
  if (doctor.specialization != patient.disease) {
    throw std::invalid_argument("consultation_duration: doctor " + std::to_string(doctor.id) + " does not treat " +
                                std::string(specialty_name(patient.disease)));
  }
  const SpecialtyProfile& prof = specialty_profile(doctor.specialization);
  const Triangular& dist = phase == VisitPhase::FileReview ? prof.file_review : prof.visit_time(channel);
  double minutes = sample_triangular(stream, dist);
  if (!behavioural || phase == VisitPhase::FileReview) return minutes;
  if (contested) minutes += sample_triangular(stream, dist);
  if (patient.trait == Trait::Anxious) minutes *= params.anxious_factor;
  return minutes;
}

double update_popularity(DoctorAgent& doctor, VisitOutcome outcome, const BehaviourParams& params) {
  double k = 1.0;
  switch (outcome) {
    case VisitOutcome::Completed: k = params.popularity_completed; break;
    case VisitOutcome::Contested: k = params.popularity_contested; break;
    case VisitOutcome::Abandoned: k = params.popularity_abandoned; break;
  }
  doctor.popularity = std::clamp(doctor.popularity * k, params.popularity_min, params.popularity_max);
  return doctor.popularity;
}

double channel_disagreement_probability(const PatientAgent& patient, Channel proposed, const BehaviourParams& params) {
  const bool wants_online = patient.online_pref;
  const bool mismatch = wants_online != (proposed == Channel::Online);
  return mismatch ? params.channel_disagree_mismatch : params.channel_disagree_match;
}

double recommendation_disagreement_probability(const PatientAgent& patient, Recommendation rec,
                                               const BehaviourParams& params) {
  const bool mismatch = patient.hosp_pref != (rec == Recommendation::Hospitalize);
  return mismatch ? params.disagree_mismatch : params.disagree_match;
}

}  // namespace hospsim
