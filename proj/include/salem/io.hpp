#pragma once

// File formats. CSV: header row, LF line endings. JSON: an array of objects
// mirroring the CSV columns; exact integers and rationals are decimal strings.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "salem/asymptotics.hpp"
#include "salem/bianchi.hpp"
#include "salem/census_q.hpp"
#include "salem/totally_real.hpp"

namespace salem {

enum class Format { csv, json };

/// printf %.{digits}g.
std::string format_g(double x, int digits);

/// Row-at-a-time writer so large censuses stream to disk.
class RowWriter {
 public:
  RowWriter(std::ostream& out, Format fmt) : out_(out), fmt_(fmt) {}
  RowWriter(const RowWriter&) = delete;
  RowWriter& operator=(const RowWriter&) = delete;

 protected:
  void begin(const std::vector<std::string>& columns, const std::string& comment = {});
  /// Values already formatted; `quoted[i]` marks JSON string values.
  void row(const std::vector<std::string>& values, const std::vector<bool>& quoted);
  void row_json(const std::string& object);
  void end();

  std::ostream& out_;
  Format fmt_;

 private:
  std::vector<std::string> columns_;
  bool first_ = true;
};

class CensusWriter : public RowWriter {
 public:
  CensusWriter(std::ostream& out, Format fmt);
  void add(const CensusRecord& r);
  void finish() { end(); }
};

void write_bianchi(std::ostream& out, const BianchiCensus& census, Format fmt);

struct SystemRow {
  SystemSolution solution;
  std::optional<bool> verified;  // empty column when not checked
};

class SystemWriter : public RowWriter {
 public:
  SystemWriter(std::ostream& out, Format fmt, std::int64_t d, std::int64_t Q);
  void add(const SystemRow& r);
  void finish() { end(); }
};

void write_multiplicity(std::ostream& out, const std::vector<MultiplicityRow>& rows, Format fmt);

/// Two-column x,y series.
void write_plot_data(std::ostream& out, const std::string& x_name, const std::string& y_name,
                     const std::vector<std::pair<double, double>>& series);

}  // namespace salem
