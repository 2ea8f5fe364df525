#include "salem/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "salem/algebra.hpp"
#include "salem/asymptotics.hpp"
#include "salem/bianchi.hpp"
#include "salem/census_q.hpp"
#include "salem/io.hpp"
#include "salem/totally_real.hpp"

namespace salem::cli {

namespace {

struct Options {
  std::int64_t qmax = 1000;
  std::int64_t d = 1;
  std::int64_t field = 2;
  std::string out_path;
  std::string format = "csv";
  int workers = 0;
  std::uint64_t seed = 1;
  bool verified = false;
  bool plot_data = false;
  bool dry_run = false;

  std::string kind;  // census / fit kind, report name
  std::string in_path;
  int points = 5;

  int omega_m = 0;
  bool marklof = false;
  bool c2 = false;
  bool volume = false;
  int h = 2;
  double delta = 1.0;
  std::int64_t samples = 0;

  int n = 4;
  double ell_max = 10;
  double step = 1;
};

Format parse_format(const std::string& f) { return f == "json" ? Format::json : Format::csv; }

void require_q(std::int64_t Q) {
  if (Q < 2) throw DomainError("qmax must be >= 2, got " + std::to_string(Q));
}

void require_d(std::int64_t D) {
  if (D < 1 || !is_squarefree(D))
    throw DomainError("d must be a square-free positive integer, got " + std::to_string(D));
}

void require_field(std::int64_t d) {
  if (d < 2 || !is_squarefree(d))
    throw DomainError("field must be a square-free integer >= 2, got " + std::to_string(d));
}

// Runs `body` against --out when given, otherwise does nothing.
void with_output(const Options& o, const std::function<void(std::ostream&)>& body) {
  if (o.out_path.empty()) return;
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + o.out_path + " for writing");
  body(f);
  if (!f) throw std::runtime_error("write failed for " + o.out_path);
}

// Doubling grid ending at qmax, ascending, at most `points` values, all >= lo.
std::vector<std::int64_t> doubling_grid(std::int64_t qmax, int points, std::int64_t lo) {
  std::vector<std::int64_t> grid;
  for (std::int64_t q = qmax; q >= lo && static_cast<int>(grid.size()) < points; q /= 2)
    grid.insert(grid.begin(), q);
  return grid;
}

struct Series {
  std::function<std::int64_t(std::int64_t)> count;
  double exponent;  // normalization for plot data
  std::int64_t min_q;
  std::string y_name;
};

Series series_for(const std::string& kind, const Options& o) {
  const Parallelism par{o.workers};
  if (kind == "deg4")
    return {[par](std::int64_t q) { return count_salem_deg4(q, par); }, 2.0, 2, "count_over_q2"};
  if (kind == "sr")
    return {[par](std::int64_t q) { return count_sr(q, par); }, 1.5, 2, "count_over_q1.5"};
  if (kind == "deg2")
    return {[](std::int64_t q) { return count_deg2(q); }, 1.0, 3, "count_over_q"};
  if (kind == "bianchi") {
    require_d(o.d);
    const std::int64_t D = o.d;
    return {[D, par](std::int64_t q) { return bianchi_census(D, q, par).count; }, 0.5, 2,
            "count_over_q0.5"};
  }
  if (kind == "cocompact") {
    require_field(o.field);
    const std::int64_t d = o.field;
    const bool v = o.verified;
    return {[d, v, par](std::int64_t q) { return count_system(d, q, v, par); }, 1.5, 2,
            "count_over_q1.5"};
  }
  throw CLI::ValidationError("unknown series kind: " + kind);
}

void emit_plot(const Options& o, const Series& s, std::ostream& out) {
  std::vector<std::pair<double, double>> pts;
  for (std::int64_t q : doubling_grid(o.qmax, 8, std::max<std::int64_t>(s.min_q, 10))) {
    const double c = static_cast<double>(s.count(q));
    pts.emplace_back(static_cast<double>(q), c / std::pow(static_cast<double>(q), s.exponent));
  }
  write_plot_data(out, "q", s.y_name, pts);
}

// --- subcommands ------------------------------------------------------------

int cmd_census(const Options& o, std::ostream& out) {
  const std::string& k = o.kind;
  if (k == "deg2") {
    if (o.qmax < 3) throw DomainError("degree-2 census needs qmax >= 3, got " + std::to_string(o.qmax));
  } else {
    require_q(o.qmax);
  }
  if (o.dry_run) {
    const double q = static_cast<double>(o.qmax);
    const double est = k == "deg4" ? 2 * q * q : k == "sr" ? (4.0 / 3) * std::pow(q, 1.5) : q - 2;
    out << "plan: census " << k << " qmax=" << o.qmax << " a_range=[" << -(o.qmax + 2)
        << ",-1] estimated_items=" << format_g(est, 6) << '\n';
    return ok;
  }
  const Series s = series_for(k, o);
  if (o.plot_data) {
    emit_plot(o, s, out);
    return ok;
  }
  const Parallelism par{o.workers};
  if (!o.out_path.empty()) {
    if (k == "deg2") throw CLI::ValidationError("census deg2 has no record output");
    std::int64_t n = 0;
    with_output(o, [&](std::ostream& f) {
      CensusWriter w(f, parse_format(o.format));
      auto sink = [&](const CensusRecord& r) {
        w.add(r);
        ++n;
      };
      if (k == "deg4") stream_salem_deg4(o.qmax, sink, par);
      else stream_sr(o.qmax, sink, par);
      w.finish();
    });
    out << n << '\n';
    return ok;
  }
  out << s.count(o.qmax) << '\n';
  return ok;
}

int cmd_bianchi(const Options& o, std::ostream& out) {
  require_d(o.d);
  require_q(o.qmax);
  if (o.dry_run) {
    const std::int64_t M = trace_norm_bound(o.qmax);
    const double traces = std::numbers::pi * static_cast<double>(M) / std::sqrt(static_cast<double>(o.d));
    out << "plan: bianchi d=" << o.d << " qmax=" << o.qmax << " norm_bound=" << M
        << " estimated_traces=" << format_g(traces, 6) << '\n';
    return ok;
  }
  if (o.plot_data) {
    emit_plot(o, series_for("bianchi", o), out);
    return ok;
  }
  const BianchiCensus c = bianchi_census(o.d, o.qmax, Parallelism{o.workers});
  with_output(o, [&](std::ostream& f) { write_bianchi(f, c, parse_format(o.format)); });
  const auto& g = c.diagnostics;
  out << c.count << '\n';
  out << "# distinct_lengths_all=" << g.distinct_lengths_all << " traces_scanned=" << g.traces_scanned
      << " excluded_real=" << g.excluded_real << " excluded_imaginary=" << g.excluded_imaginary
      << " excluded_reducible=" << g.excluded_reducible << " above_bound=" << g.above_bound << '\n';
  return ok;
}

int cmd_cocompact(const Options& o, std::ostream& out) {
  require_field(o.field);
  require_q(o.qmax);
  if (o.dry_run) {
    const LatticeGeometry g = lattice_geometry(o.field);
    out << "plan: cocompact field=" << o.field << " qmax=" << o.qmax << " disc=" << g.disc
        << " delta=" << format_g(g.delta, 6)
        << " estimated_items<=" << format_g(c2_upper_bound(o.field) * std::pow(static_cast<double>(o.qmax), 1.5), 6)
        << '\n';
    return ok;
  }
  if (o.plot_data) {
    emit_plot(o, series_for("cocompact", o), out);
    return ok;
  }
  const Parallelism par{o.workers};
  std::int64_t total = 0;
  std::int64_t passed = 0;
  if (!o.out_path.empty()) {
    with_output(o, [&](std::ostream& f) {
      SystemWriter w(f, parse_format(o.format), o.field, o.qmax);
      stream_system(o.field, o.qmax, [&](const SystemSolution& s) {
        SystemRow row{s, std::nullopt};
        if (o.verified) {
          row.verified = verify_salem_over_L(o.field, s);
          passed += *row.verified ? 1 : 0;
        }
        ++total;
        w.add(row);
      }, par);
      w.finish();
    });
  } else {
    total = count_system(o.field, o.qmax, false, par);
    if (o.verified) passed = count_system(o.field, o.qmax, true, par);
  }
  out << total << '\n';
  if (o.verified) {
    out << "# verified=" << passed << " fraction="
        << format_g(total ? static_cast<double>(passed) / static_cast<double>(total) : 0.0, 6) << '\n';
  }
  return ok;
}

int cmd_constants(const Options& o, std::ostream& out) {
  const int chosen = (o.omega_m != 0) + o.marklof + o.c2 + o.volume;
  if (chosen != 1)
    throw CLI::ValidationError("constants needs exactly one of --omega, --marklof-c, --c2-bound, --volume");
  if (o.omega_m != 0) {
    const BigRational w = omega(o.omega_m);
    out << w.get_num().get_str() << '/' << w.get_den().get_str() << '\n';
  } else if (o.marklof) {
    out << format_g(marklof_constant(o.d), 17) << '\n';
  } else if (o.c2) {
    out << format_g(c2_upper_bound(o.field), 12) << '\n';
  } else {
    const double q = static_cast<double>(o.qmax);
    out << format_g(volume_leading(o.h, o.delta, q), 12) << '\n';
    if (o.samples > 0) {
      if (o.dry_run) {
        out << "plan: monte carlo samples=" << o.samples << " seed=" << o.seed << '\n';
        return ok;
      }
      const VolumeEstimate e = sample_volume(o.h, o.delta, q, o.samples, o.seed, Parallelism{o.workers});
      out << "# monte_carlo=" << format_g(e.volume, 12) << " std_error=" << format_g(e.std_error, 6)
          << " samples=" << e.samples << '\n';
    }
  }
  return ok;
}

std::vector<FitPoint> read_points(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::vector<FitPoint> pts;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream in(line);
    FitPoint p;
    if (in >> p.q >> p.count) pts.push_back(p);  // header rows fail to parse and are skipped
  }
  return pts;
}

int cmd_fit(const Options& o, std::ostream& out) {
  std::vector<FitPoint> pts;
  if (o.kind == "file") {
    if (o.in_path.empty()) throw CLI::ValidationError("fit file needs --in");
    if (o.dry_run) {
      out << "plan: fit file " << o.in_path << '\n';
      return ok;
    }
    pts = read_points(o.in_path);
  } else {
    require_q(o.qmax);
    const Series s = series_for(o.kind, o);
    const auto grid = doubling_grid(o.qmax, o.points, std::max<std::int64_t>(s.min_q, 3));
    if (o.dry_run) {
      out << "plan: fit " << o.kind << " grid=";
      for (std::size_t i = 0; i < grid.size(); ++i) out << (i ? "," : "") << grid[i];
      out << '\n';
      return ok;
    }
    for (std::int64_t q : grid) pts.push_back({static_cast<double>(q), static_cast<double>(s.count(q))});
  }
  const FitResult r = power_fit(pts);
  out << "constant=" << format_g(r.constant, 8) << " exponent=" << format_g(r.exponent, 8)
      << " residual=" << format_g(r.residual, 4) << " points_used=" << r.points_used;
  if (!r.excluded_q.empty()) {
    out << " excluded_q=";
    for (std::size_t i = 0; i < r.excluded_q.size(); ++i) out << (i ? "," : "") << format_g(r.excluded_q[i], 12);
  }
  out << '\n';
  return ok;
}

int cmd_report(const Options& o, std::ostream& out) {
  if (o.kind != "multiplicity") throw CLI::ValidationError("unknown report: " + o.kind);
  if (o.dry_run) {
    out << "plan: report multiplicity n=" << o.n << " ell_max=" << o.ell_max << " step=" << o.step << '\n';
    return ok;
  }
  const auto rows = multiplicity_report(o.n, o.ell_max, o.step);
  if (!o.out_path.empty()) {
    with_output(o, [&](std::ostream& f) { write_multiplicity(f, rows, parse_format(o.format)); });
  } else {
    write_multiplicity(out, rows, parse_format(o.format));
  }
  return ok;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* env = std::getenv("SALEM_WORKERS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long w = std::strtol(env, &end, 10);
    if (*end != '\0' || w < 0 || w > 4096) {
      err << "error: usage: SALEM_WORKERS must be a non-negative integer, got '" << env << "'\n";
      return usage;
    }
    o.workers = static_cast<int>(w);
  }
  CLI::App app{"Exact enumeration of degree-4 Salem numbers", "salem"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto add_common = [&o](CLI::App* c) {
    c->add_option("--out", o.out_path, "Write records to this file");
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--workers", o.workers, "Worker threads (0: OpenMP default; env SALEM_WORKERS)")
        ->check(CLI::NonNegativeNumber);
    c->add_option("--seed", o.seed, "Random seed");
    c->add_flag("--dry-run", o.dry_run, "Print the validated plan only");
  };

  auto* census = app.add_subcommand("census", "Count Salem numbers over Z");
  census->add_option("kind", o.kind, "deg4 | sr | deg2")->required()->check(CLI::IsMember({"deg4", "sr", "deg2"}));
  census->add_option("--qmax", o.qmax, "Upper bound Q");
  census->add_flag("--plot-data", o.plot_data, "Emit Q vs normalized count");
  add_common(census);

  auto* bianchi = app.add_subcommand("bianchi", "Square-rootable Salem numbers from a Bianchi group");
  bianchi->add_option("--d", o.d, "K = Q(sqrt(-d))");
  bianchi->add_option("--qmax", o.qmax, "Upper bound Q");
  bianchi->add_flag("--plot-data", o.plot_data, "Emit Q vs count/Q^(1/2)");
  add_common(bianchi);

  auto* cocompact = app.add_subcommand("cocompact", "Solutions over a real quadratic field");
  cocompact->add_option("--field", o.field, "L = Q(sqrt(field))");
  cocompact->add_option("--qmax", o.qmax, "Upper bound Q");
  cocompact->add_flag("--verified", o.verified, "Run the full Salem check on each solution");
  cocompact->add_flag("--plot-data", o.plot_data, "Emit Q vs count/Q^(3/2)");
  add_common(cocompact);

  auto* constants = app.add_subcommand("constants", "Closed-form constants");
  constants->set_help_flag("--help", "Print this help message and exit");
  constants->add_option("--omega", o.omega_m, "omega_m as an exact rational")->check(CLI::PositiveNumber);
  constants->add_flag("--marklof-c", o.marklof, "Leading constant for --d");
  constants->add_flag("--c2-bound", o.c2, "Upper bound on c2 for --field");
  constants->add_flag("--volume", o.volume, "Leading volume for --h --delta --qmax");
  constants->add_option("--d", o.d, "Imaginary quadratic parameter");
  constants->add_option("--field", o.field, "Real quadratic parameter");
  constants->add_option("--h", o.h, "Field degree")->check(CLI::PositiveNumber);
  constants->add_option("--delta", o.delta, "Thickening")->check(CLI::NonNegativeNumber);
  constants->add_option("--qmax", o.qmax, "Upper bound Q");
  constants->add_option("--samples", o.samples, "Monte Carlo samples")->check(CLI::NonNegativeNumber);
  add_common(constants);

  auto* fit = app.add_subcommand("fit", "Power-law fit over a doubling grid");
  fit->add_option("kind", o.kind, "deg4 | sr | bianchi | cocompact | file")
      ->required()
      ->check(CLI::IsMember({"deg4", "sr", "bianchi", "cocompact", "file"}));
  fit->add_option("--qmax", o.qmax, "Largest Q of the grid");
  fit->add_option("--points", o.points, "Grid size")->check(CLI::Range(3, 30));
  fit->add_option("--d", o.d, "Bianchi parameter");
  fit->add_option("--field", o.field, "Real quadratic parameter");
  fit->add_flag("--verified", o.verified, "Count only verified cocompact solutions");
  fit->add_option("--in", o.in_path, "CSV of q,count for kind=file");
  add_common(fit);

  auto* report = app.add_subcommand("report", "Derived reports");
  report->add_option("name", o.kind, "multiplicity")->required()->check(CLI::IsMember({"multiplicity"}));
  report->add_option("--n", o.n, "Even dimension >= 4");
  report->add_option("--ell-max", o.ell_max, "Largest geodesic length");
  report->add_option("--step", o.step, "Length step");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << one_line(e.what()) << '\n';
    return usage;
  }

  try {
    if (*census) return cmd_census(o, out);
    if (*bianchi) return cmd_bianchi(o, out);
    if (*cocompact) return cmd_cocompact(o, out);
    if (*constants) return cmd_constants(o, out);
    if (*fit) return cmd_fit(o, out);
    if (*report) return cmd_report(o, out);
    err << "error: usage: no subcommand\n";
    return usage;
  } catch (const CLI::ValidationError& e) {
    err << "error: usage: " << one_line(e.what()) << '\n';
    return usage;
  } catch (const DomainError& e) {
    err << "error: domain: " << one_line(e.what()) << '\n';
    return domain;
  } catch (const CapacityError& e) {
    err << "error: capacity: " << one_line(e.what()) << '\n';
    return capacity;
  } catch (const std::exception& e) {
    err << "error: internal: " << one_line(e.what()) << '\n';
    return failure;
  }
}

}  // namespace salem::cli
