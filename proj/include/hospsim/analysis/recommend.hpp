#pragma once

#include "hospsim/analysis/ols.hpp"
#include "hospsim/analysis/screening.hpp"

#include <string>
#include <vector>

namespace hospsim {

struct FactorChoice {
  char factor = 'A';
  int level = -1;  // coded
  std::string rationale;
};

/// Level per factor from the main effects of `models` (paired index-wise
/// with `specs` for goal and rank). The best-ranked response with a retained
/// main effect decides. When responses of that same rank disagree, the
/// retained two-factor interactions of those responses that involve the
/// factor vote through the optimal corner of their surface. Factors without
/// any retained main effect go to the low level.
std::vector<FactorChoice> recommend_levels(const std::vector<ScreeningModel>& models,
                                           const std::vector<ResponseSpec>& specs, const std::vector<char>& factors,
                                           double threshold = 2.0);

}  // namespace hospsim
