#pragma once

#include <optional>
#include <string>

#include "dimtrunc/experiment.hpp"

namespace dimtrunc {

inline constexpr const char* kVersion = "0.1.0";

// Shortest round-trip decimal rendering (std::to_chars); '.' decimal point,
// "inf"/"nan" spelled out. The byte-level determinism of all emitted tables
// rests on this single function.
std::string format_double(double value);

// measure,quantity,order,value,lo,hi,kind
std::string constants_table_csv(const MeasureSpec& measure, int m_max, int r_max);
std::string constants_table_json(const MeasureSpec& measure, int m_max, int r_max);

// k,formula_id,value,assumptions over the experiment's k_grid.
std::string bounds_table_csv(const ExperimentSpec& spec);
std::string bounds_table_json(const ExperimentSpec& spec);

// k,estimate,std_error,bias_bound,bound,formula_id,ratio,clamped_flag with a
// metadata comment header and an optional trailing fit summary.
std::string sweep_table_csv(const ExperimentSpec& spec,
                            const std::vector<SweepRow>& rows,
                            const std::optional<DecayFit>& fit);
std::string sweep_table_json(const ExperimentSpec& spec,
                             const std::vector<SweepRow>& rows,
                             const std::optional<DecayFit>& fit);

// (x, y, yerr) triples, one series per call.
std::string sweep_plotdata_estimate(const std::vector<SweepRow>& rows);
std::string sweep_plotdata_bound(const std::vector<SweepRow>& rows);

}  // namespace dimtrunc
