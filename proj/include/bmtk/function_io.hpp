#ifndef BMTK_FUNCTION_IO_HPP
#define BMTK_FUNCTION_IO_HPP

#include <string>

#include <json.hpp>

#include "bmtk/admissibility.hpp"
#include "bmtk/nazarov.hpp"
#include "bmtk/piecewise.hpp"
#include "bmtk/zoo.hpp"

namespace bmtk {

using ordered_json = nlohmann::ordered_json;

// Function-spec format:
//   {"default": 0|1, "pieces": [{"interval": [lo, hi], "coeffs": [c0, ...],
//    "log_scale": {"sign": s, "log_mag": m}}]}
// Overlapping pieces are rejected with a diagnostic naming both offenders.
ordered_json piecewise_to_json(const PiecewiseFn& f);
PiecewiseFn piecewise_from_json(const ordered_json& j);

ordered_json interval_system_to_json(const IntervalSystem& sys);

ordered_json certificate_to_json(const Certificate& c);
ordered_json spectrum_report_to_json(const SpectrumReport& r);
ordered_json local_report_to_json(const LocalReport& r);
ordered_json global_report_to_json(const GlobalReport& r);

// Family specs: {"family": name, "params": {...}, "n_range": [n_min, n_max]}.
ordered_json family_to_json(const MajorantSpec& spec);
MajorantSpec family_from_json(const ordered_json& j);

void save_json(const ordered_json& j, const std::string& path);
ordered_json load_json(const std::string& path);

PiecewiseFn load_piecewise(const std::string& path);

// CSV with a header row; numbers at full double precision, stable order.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void close();

 private:
  std::string path_;
  std::string buf_;
  size_t cols_ = 0;
  bool closed_ = false;
};

}  // namespace bmtk

#endif  // BMTK_FUNCTION_IO_HPP
