#include "gaplight/time_series.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "gaplight/errors.hpp"

namespace gaplight {

void TimeSeries::push(double time, double s, double w, double emission) {
  t.push_back(time);
  s_mean.push_back(s);
  w_mean.push_back(w);
  eta.push_back(0.5 * (1.0 + s));
  intensity.push_back(emission);
}

void Sampler::offer(TimeSeries& series, double t, double s, double w, double intensity, bool force,
                    const double* w_coherent) {
  peak_ = std::max(peak_, std::abs(intensity));
  if (series.empty()) {
    series.push(t, s, w, intensity);
    if (w_coherent) series.w_coherent.push_back(*w_coherent);
    return;
  }
  if (t <= series.t.back()) return;
  const double last_i = series.intensity.back();
  const double scale = std::max({std::abs(last_i), 1e-3 * peak_, 1e-300});
  const bool take = force || t - series.t.back() >= policy_.max_interval ||
                    std::abs(s - series.s_mean.back()) >= policy_.ds ||
                    std::abs(intensity - last_i) >= policy_.rel_intensity * scale;
  if (take) {
    series.push(t, s, w, intensity);
    if (w_coherent) series.w_coherent.push_back(*w_coherent);
  }
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& out, const TimeSeries& series) {
  out << "t,s_mean,w_mean,eta,intensity\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_number(series.t[i]) << ',' << format_number(series.s_mean[i]) << ','
        << format_number(series.w_mean[i]) << ',' << format_number(series.eta[i]) << ','
        << format_number(series.intensity[i]) << '\n';
  }
}

TimeSeries read_csv(std::istream& in) {
  TimeSeries series;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "t,s_mean,w_mean,eta,intensity")
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": unexpected CSV header");
      header_seen = true;
      continue;
    }
    std::array<double, 5> v{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t c = 0; c < v.size(); ++c) {
      const auto res = std::from_chars(p, end, v[c]);
      if (res.ec != std::errc{})
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad number");
      p = res.ptr;
      if (c + 1 < v.size()) {
        if (p == end || *p != ',')
          throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 5 columns");
        ++p;
      }
    }
    if (p != end) throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": trailing data");
    series.t.push_back(v[0]);
    series.s_mean.push_back(v[1]);
    series.w_mean.push_back(v[2]);
    series.eta.push_back(v[3]);
    series.intensity.push_back(v[4]);
  }
  if (!header_seen) throw Error(ErrorKind::ParseError, "missing CSV header");
  return series;
}

}  // namespace gaplight
