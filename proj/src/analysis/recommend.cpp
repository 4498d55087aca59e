#include "hospsim/analysis/recommend.hpp"

#include "hospsim/analysis/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hospsim {

namespace {

struct Vote {
  std::size_t response = 0;
  int level = 0;
};

const char* level_word(int level) { return level > 0 ? "high" : "low"; }

// Level of `factor` at the best corner of the (factor, partner) slice of
// `model`; 0 when the best corners disagree on it.
int corner_vote(const ScreeningModel& model, Goal goal, char factor, char partner) {
  double best = std::numeric_limits<double>::infinity();
  int level = 0;
  for (int xf : {-1, 1}) {
    for (int xp : {-1, 1}) {
      double v = surface_value(model, factor, partner, xf, xp);
      if (goal == Goal::Maximize) v = -v;
      const double tol = 1e-12 * (1.0 + std::abs(v));
      if (v < best - tol) {
        best = v;
        level = xf;
      } else if (std::abs(v - best) <= tol && level != xf) {
        level = 0;
      }
    }
  }
  return level;
}

}  // namespace

std::vector<FactorChoice> recommend_levels(const std::vector<ScreeningModel>& models,
                                           const std::vector<ResponseSpec>& specs, const std::vector<char>& factors,
                                           double threshold) {
  if (models.size() != specs.size()) throw std::invalid_argument("recommend_levels: one spec per model required");
  std::vector<FactorChoice> out;
  for (char f : factors) {
    const std::string term(1, f);
    std::vector<Vote> votes;
    for (std::size_t r = 0; r < models.size(); ++r) {
      if (!models[r].retained(term, threshold)) continue;
      const double b = *models[r].coefficient(term);
      const int up = b > 0.0 ? 1 : -1;
      votes.push_back({r, specs[r].goal == Goal::Minimize ? -up : up});
    }
    FactorChoice c;
    c.factor = f;
    if (votes.empty()) {
      c.level = -1;
      c.rationale = "no retained main effect; parsimony default low";
      out.push_back(c);
      continue;
    }
    const int top = std::min_element(votes.begin(), votes.end(), [&](const Vote& a, const Vote& b) {
                      return specs[a.response].rank < specs[b.response].rank;
                    })->response;
    const int top_rank = specs[static_cast<std::size_t>(top)].rank;
    std::vector<Vote> lead;
    for (const Vote& v : votes) {
      if (specs[v.response].rank == top_rank) lead.push_back(v);
    }
    const bool agree = std::all_of(lead.begin(), lead.end(), [&](const Vote& v) { return v.level == lead[0].level; });
    if (agree) {
      c.level = lead[0].level;
      c.rationale = specs[lead[0].response].column + " (rank " + std::to_string(top_rank) + ") prefers " + level_word(c.level);
      for (std::size_t i = 1; i < lead.size(); ++i) c.rationale += ", with " + specs[lead[i].response].column;
    } else {
      int tally = 0;
      std::string used;
      for (const Vote& v : lead) {
        const ScreeningModel& m = models[v.response];
        for (std::size_t t = 0; t < m.terms.size(); ++t) {
          const std::string& name = m.terms[t];
          if (name.size() != 2 || name.find(f) == std::string::npos) continue;
          if (std::abs(m.t_ratios(static_cast<Eigen::Index>(t))) < threshold) continue;
          const char partner = name[0] == f ? name[1] : name[0];
          const int cv = corner_vote(m, specs[v.response].goal, f, partner);
          tally += cv;
          used += (used.empty() ? "" : ", ") + m.response + ":" + name;
        }
      }
      c.level = tally > 0 ? 1 : -1;
      if (tally == 0) {
        c.rationale = "responses of rank " + std::to_string(top_rank) + " disagree and interaction surfaces do not settle it; parsimony default low";
      } else {
        c.rationale = "responses of rank " + std::to_string(top_rank) + " disagree; interaction surfaces (" + used + ") favour " + level_word(c.level);
      }
    }
    std::string overridden;
    for (const Vote& v : votes) {
      if (v.level != c.level) overridden += (overridden.empty() ? "" : ", ") + specs[v.response].column;
    }
    if (!overridden.empty()) c.rationale += "; overrides " + overridden;
    out.push_back(c);
  }
  return out;
}

}  // namespace hospsim
