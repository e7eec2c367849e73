#include "subalg/series_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "subalg/error.hpp"
#include "subalg/keyvalue.hpp"

namespace subalg {

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    std::string_view f = line.substr(start, pos == std::string_view::npos ? pos : pos - start);
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
    out.push_back(f);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void append_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

TimeSeriesSet parse_series_csv(std::string_view text, const std::string& source) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    lines.push_back(text.substr(start, nl == std::string_view::npos ? nl : nl - start));
    start = nl == std::string_view::npos ? text.size() : nl + 1;
  }
  auto where = [&](std::size_t i) { return source + ":" + std::to_string(i + 1) + ": "; };
  require(!lines.empty(), ErrorCode::Format, source + ": empty file, header row required");

  const auto header = split_csv(lines[0]);
  require(header.size() >= 3 && header[0] == "series" && header[1] == "t", ErrorCode::Format,
          where(0) + "header must start with series,t,y1");
  std::size_t d_y = 0;
  while (2 + d_y < header.size() && header[2 + d_y] == "y" + std::to_string(d_y + 1)) ++d_y;
  require(d_y >= 1, ErrorCode::Format, where(0) + "header has no y1 column");

  // series id -> t -> values
  std::map<long long, std::map<long long, Eigen::VectorXd>> data;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view l = lines[i];
    if (l.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const auto f = split_csv(l);
    require(f.size() == header.size(), ErrorCode::Format,
            where(i) + "expected " + std::to_string(header.size()) + " fields, found " +
                std::to_string(f.size()));
    long long id = 0;
    long long t = 0;
    auto parse_int = [&](std::string_view s, long long& v, const char* what) {
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      require(ec == std::errc() && p == s.data() + s.size() && !s.empty(), ErrorCode::Format,
              where(i) + what + " '" + std::string(s) + "' is not an integer");
    };
    parse_int(f[0], id, "series");
    parse_int(f[1], t, "t");
    Eigen::VectorXd y(static_cast<Eigen::Index>(d_y));
    for (std::size_t j = 0; j < d_y; ++j) {
      const std::string s(f[2 + j]);
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      require(!s.empty() && end == s.c_str() + s.size() && std::isfinite(v), ErrorCode::Format,
              where(i) + "y" + std::to_string(j + 1) + " '" + s + "' is not a finite number");
      y(static_cast<Eigen::Index>(j)) = v;
    }
    auto& series = data[id];
    require(series.emplace(t, std::move(y)).second, ErrorCode::Format,
            "series " + std::to_string(id) + ", t " + std::to_string(t) + ": duplicate record");
  }
  require(!data.empty(), ErrorCode::Format, source + ": no data rows");

  std::size_t t1 = 0;
  std::vector<Eigen::MatrixXd> series;
  for (const auto& [id, rows] : data) {
    long long expect = 1;
    for (const auto& [t, y] : rows) {
      require(t == expect, ErrorCode::Format,
              "series " + std::to_string(id) + ", t " + std::to_string(expect) +
                  (t < expect ? ": time index out of range" : ": missing record"));
      ++expect;
    }
    if (series.empty()) t1 = rows.size();
    require(rows.size() == t1, ErrorCode::Format,
            "series " + std::to_string(id) + ", t " + std::to_string(std::min(rows.size(), t1) + 1) +
                ": length " + std::to_string(rows.size()) + " differs from " + std::to_string(t1));
    Eigen::MatrixXd M(static_cast<Eigen::Index>(d_y), static_cast<Eigen::Index>(t1));
    for (const auto& [t, y] : rows) M.col(static_cast<Eigen::Index>(t - 1)) = y;
    series.push_back(std::move(M));
  }
  return TimeSeriesSet(std::move(series));
}

std::string format_series_csv(const TimeSeriesSet& ts) {
  std::string out = "series,t";
  for (std::size_t j = 1; j <= ts.dim(); ++j) out += ",y" + std::to_string(j);
  out += '\n';
  for (std::size_t k = 0; k < ts.count(); ++k) {
    for (std::size_t t = 1; t <= ts.length(); ++t) {
      out += std::to_string(k + 1) + ',' + std::to_string(t);
      for (std::size_t j = 0; j < ts.dim(); ++j) {
        out += ',';
        append_double(out, ts(t, j, k));
      }
      out += '\n';
    }
  }
  return out;
}

std::string format_prediction_csv(const PredictionReport& report) {
  const auto d = report.series.empty() ? 0 : report.series.front().predicted.rows();
  std::string out = "series,t";
  for (Eigen::Index j = 1; j <= d; ++j) out += ",y" + std::to_string(j);
  for (Eigen::Index j = 1; j <= d; ++j) out += ",res" + std::to_string(j);
  out += '\n';
  for (std::size_t k = 0; k < report.series.size(); ++k) {
    const SeriesPrediction& p = report.series[k];
    for (Eigen::Index i = 0; i < p.predicted.cols(); ++i) {
      out += std::to_string(k + 1) + ',' + std::to_string(p.first_t + static_cast<std::size_t>(i));
      for (Eigen::Index j = 0; j < d; ++j) {
        out += ',';
        append_double(out, p.predicted(j, i));
      }
      for (Eigen::Index j = 0; j < d; ++j) {
        out += ',';
        append_double(out, p.residual(j, i));
      }
      out += '\n';
    }
  }
  return out;
}

TimeSeriesSet read_series_file(const std::string& path) {
  return parse_series_csv(read_text_file(path), path);
}

void write_series_file(const std::string& path, const TimeSeriesSet& ts) {
  write_text_file(path, format_series_csv(ts));
}

}  // namespace subalg
