#pragma once

#include <string>
#include <string_view>

#include "subalg/model.hpp"
#include "subalg/series.hpp"

namespace subalg {

/// Long-format CSV with header "series,t,y1,...,y{d_y}". Columns after the
/// last y column are ignored. Series are ordered by id, times must be
/// exactly 1..t_1 for every series. Errors are Format errors naming the line
/// or the (series, t) pair.
TimeSeriesSet parse_series_csv(std::string_view text, const std::string& source = "series");
/// Ids 1..s, values with 17 significant digits.
std::string format_series_csv(const TimeSeriesSet& ts);

/// "series,t,y1..,res1.." rows for every predicted time.
std::string format_prediction_csv(const PredictionReport& report);

TimeSeriesSet read_series_file(const std::string& path);
void write_series_file(const std::string& path, const TimeSeriesSet& ts);

}  // namespace subalg
