#pragma once

#include "hospsim/analysis/ols.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hospsim {

enum class Goal { Minimize, Maximize };
enum class Direction { Up, Down, NotRetained };

std::string_view to_string(Goal g);
/// "up", "down" or "ns".
std::string_view to_string(Direction d);

/// One analysed response: results column, goal, priority rank (1 = most
/// important) and the interaction columns offered to its screening model.
struct ResponseSpec {
  std::string column;
  std::string title;
  Goal goal = Goal::Minimize;
  int rank = 1;
  std::vector<std::string> interactions;
};

/// The six responses in table order (dropout, system wait, tourist queue
/// wait, emergency, recovered, utilisation) with the case-study priority
/// ranks and the retained interaction lists of the reference screening.
const std::vector<ResponseSpec>& screening_responses();

struct DirectionTable {
  std::vector<char> factors;
  std::vector<std::string> responses;
  std::vector<std::vector<Direction>> cells;  // [factor][response]

  Direction at(char factor, std::string_view response) const;
};

/// Arrow per (factor, response): sign of the main-effect coefficient when
/// |t| >= threshold, otherwise NotRetained.
DirectionTable effect_direction_table(const std::vector<ScreeningModel>& models, const std::vector<char>& factors,
                                      double threshold = 2.0);

struct RetainedTerm {
  std::string response;
  std::string term;
  double coefficient = 0.0;
  double t_ratio = 0.0;
};

/// Interaction terms (two or more letters) with |t| >= threshold, per model in order.
std::vector<RetainedTerm> retained_interactions(const std::vector<ScreeningModel>& models, double threshold = 2.0);

}  // namespace hospsim
