#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace gaplight {

// Sampled trajectory shared by both solvers. Columns match the CSV schema
// t, s_mean, w_mean, eta, intensity.
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> s_mean;
  std::vector<double> w_mean;
  std::vector<double> eta;        // (1 + s_mean)/2
  std::vector<double> intensity;  // collective emission rate
  // |ū|², coherence of the mean amplitude. Direct solver only; not in the CSV.
  std::vector<double> w_coherent;

  std::size_t size() const noexcept { return t.size(); }
  bool empty() const noexcept { return t.empty(); }

  void push(double time, double s, double w, double emission);
};

// Emits a sample when s moves by ds, the intensity moves by rel_intensity
// (relative to max(|I_last|, 1e-3 · running peak)), or max_interval passes.
// Bursts get dense samples and plateaus stay cheap.
struct SamplePolicy {
  double max_interval = 1.0;
  double ds = 1e-3;
  double rel_intensity = 0.02;

  bool operator==(const SamplePolicy&) const = default;
};

class Sampler {
 public:
  explicit Sampler(SamplePolicy policy) : policy_(policy) {}

  // Records the point if the policy asks for it (or `force` is set).
  void offer(TimeSeries& series, double t, double s, double w, double intensity, bool force = false,
             const double* w_coherent = nullptr);

 private:
  SamplePolicy policy_;
  double peak_ = 0.0;
};

// '.' decimal, '\n' line ends, header row, 17 significant digits.
void write_csv(std::ostream& out, const TimeSeries& series);
// Skips blank lines and lines starting with '#'. Throws ParseError.
TimeSeries read_csv(std::istream& in);

std::string format_number(double value);

}  // namespace gaplight
