#pragma once

#include <string>
#include <vector>

#include "dimtrunc/estimators.hpp"

namespace dimtrunc {

// One self-contained experiment description, loaded from a JSON document.
// See README for the schema; every field maps onto a library object and is
// validated on parse.
struct ExperimentSpec {
  MeasureSpec measure;
  CoefficientSequence sequence = CoefficientSequence::power(2.0);
  SweepTarget target;
  McConfig mc;
  std::vector<std::string> outputs = {"table"};  // table | json | plotdata
  int constants_m_max = 8;
  int constants_r_max = 10;
};

ExperimentSpec parse_experiment_text(const std::string& text);
ExperimentSpec load_experiment_file(const std::string& path);

}  // namespace dimtrunc
