#include "salem/io.hpp"

#include <cstdio>

#include "json.hpp"

namespace salem {

std::string format_g(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

namespace {

std::string format_e(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5e", x);
  return buf;
}

}  // namespace

void RowWriter::begin(const std::vector<std::string>& columns, const std::string& comment) {
  columns_ = columns;
  if (fmt_ == Format::csv) {
    if (!comment.empty()) out_ << "# " << comment << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
  } else {
    out_ << "[";
  }
}

void RowWriter::row(const std::vector<std::string>& values, const std::vector<bool>& quoted) {
  if (fmt_ == Format::csv) {
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
    out_ << '\n';
    return;
  }
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (quoted[i]) {
      obj[columns_[i]] = values[i];
    } else if (values[i].empty()) {
      obj[columns_[i]] = nullptr;
    } else {
      obj[columns_[i]] = nlohmann::ordered_json::parse(values[i]);
    }
  }
  row_json(obj.dump());
}

void RowWriter::row_json(const std::string& object) {
  out_ << (first_ ? "\n" : ",\n") << object;
  first_ = false;
}

void RowWriter::end() {
  if (fmt_ == Format::json) out_ << (first_ ? "]\n" : "\n]\n");
  out_.flush();
}

CensusWriter::CensusWriter(std::ostream& out, Format fmt) : RowWriter(out, fmt) {
  begin({"a", "b", "k", "lambda", "source"});
}

void CensusWriter::add(const CensusRecord& r) {
  row({std::to_string(r.a), std::to_string(r.b), r.k ? std::to_string(*r.k) : std::string(),
       format_g(r.lambda_approx, 12), r.source.str()},
      {true, true, r.k.has_value(), false, true});
}

void write_bianchi(std::ostream& out, const BianchiCensus& census, Format fmt) {
  if (fmt == Format::csv) {
    out << "A,B,a_lift,b_lift,k,lambda,num_witness_traces\n";
    for (const auto& m : census.members) {
      const SalemQuartic p = m.lifted();
      out << m.A << ',' << m.B << ',' << p.a.get_str() << ',' << p.b.get_str() << ',' << m.k()
          << ',' << format_g(m.lambda(), 12) << ',' << m.witness_total << '\n';
    }
    out.flush();
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& m : census.members) {
    const SalemQuartic p = m.lifted();
    nlohmann::ordered_json o;
    o["A"] = std::to_string(m.A);
    o["B"] = std::to_string(m.B);
    o["a_lift"] = p.a.get_str();
    o["b_lift"] = p.b.get_str();
    o["k"] = std::to_string(m.k());
    o["lambda"] = nlohmann::ordered_json::parse(format_g(m.lambda(), 12));
    o["num_witness_traces"] = std::to_string(m.witness_total);
    nlohmann::ordered_json w = nlohmann::ordered_json::array();
    for (const auto& t : m.witnesses) w.push_back({{"u", std::to_string(t.u)}, {"v", std::to_string(t.v)}});
    o["witnesses"] = std::move(w);
    arr.push_back(std::move(o));
  }
  out << arr.dump(1) << '\n';
  out.flush();
}

SystemWriter::SystemWriter(std::ostream& out, Format fmt, std::int64_t d, std::int64_t Q)
    : RowWriter(out, fmt) {
  begin({"a_u", "a_v", "k_u", "k_v", "b_u", "b_v", "branch", "verified"},
        "field=" + std::to_string(d) + " qmax=" + std::to_string(Q));
}

void SystemWriter::add(const SystemRow& r) {
  const auto& s = r.solution;
  std::string verified;
  if (r.verified) verified = *r.verified ? "true" : "false";
  row({s.a.u().get_str(), s.a.v().get_str(), s.k.u().get_str(), s.k.v().get_str(),
       s.b.u().get_str(), s.b.v().get_str(), to_string(s.branch), verified},
      {true, true, true, true, true, true, true, false});
}

void write_multiplicity(std::ostream& out, const std::vector<MultiplicityRow>& rows, Format fmt) {
  if (fmt == Format::csv) {
    out << "ell,geodesic_count,salem_bound,mean_mult_lower\n";
    for (const auto& r : rows) {
      out << format_e(r.ell) << ',' << format_e(r.geodesic_count) << ',' << format_e(r.salem_bound)
          << ',' << format_e(r.mean_mult_lower) << '\n';
    }
    out.flush();
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"ell", r.ell},
                   {"geodesic_count", r.geodesic_count},
                   {"salem_bound", r.salem_bound},
                   {"mean_mult_lower", r.mean_mult_lower}});
  }
  out << arr.dump(1) << '\n';
  out.flush();
}

void write_plot_data(std::ostream& out, const std::string& x_name, const std::string& y_name,
                     const std::vector<std::pair<double, double>>& series) {
  out << x_name << ',' << y_name << '\n';
  for (const auto& [x, y] : series) out << format_g(x, 12) << ',' << format_g(y, 12) << '\n';
  out.flush();
}

}  // namespace salem
