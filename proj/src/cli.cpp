#include "roflab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <iostream>
#include <numbers>
#include <sstream>
#include <tuple>

#include "roflab/analysis.hpp"
#include "roflab/flow.hpp"
#include "roflab/rof.hpp"

namespace roflab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const char* what) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("cannot parse ") + what + " '" + text + "'");
  }
  if (used != s.size()) throw std::invalid_argument(std::string("cannot parse ") + what + " '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const char* what) {
  const std::string s = trim(text);
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("cannot parse ") + what + " '" + text + "'");
  }
  if (used != s.size()) throw std::invalid_argument(std::string("cannot parse ") + what + " '" + text + "'");
  return v;
}

FlowResult solve_benchmark(const RunConfig& cfg, const Mesh& m, const RofProblem& p) {
  FlowConfig fc;
  fc.tau = cfg.tau;
  fc.stop_factor = cfg.stop_factor;
  return flow_run(p, CrFunction(m, true), fc);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& cell, int line) {
  const std::string s = trim(cell);
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    return parse_double(s, "number");
  } catch (const std::invalid_argument&) {
    throw CsvError("line " + std::to_string(line) + ": malformed number '" + cell + "'", line);
  }
}

}  // namespace

void RunConfig::validate() const {
  if (level_min < 0 || level_max > 10 || level_min > level_max)
    throw std::invalid_argument("levels must satisfy 0 <= a <= b <= 10");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!(stop_factor > 0.0)) throw std::invalid_argument("stop factor must be positive");
  spec.validate();
}

double parse_angle(const std::string& text) {
  std::string s = trim(text);
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) return parse_double(s, "angle");
  std::string coef = trim(s.substr(0, pi_pos));
  std::string rest = trim(s.substr(pi_pos + 2));
  double c = 1.0;
  if (coef == "-") {
    c = -1.0;
  } else if (coef == "+" || coef.empty()) {
    c = 1.0;
  } else {
    if (coef.back() == '*') coef.pop_back();
    c = parse_double(coef, "angle");
  }
  double den = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw std::invalid_argument("cannot parse angle '" + text + "'");
    den = parse_double(rest.substr(1), "angle");
    if (den == 0.0) throw std::invalid_argument("angle denominator is zero");
  }
  return c * std::numbers::pi / den;
}

Vec2 parse_shift(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("shift must be 'x,y', got '" + text + "'");
  return {parse_double(text.substr(0, comma), "shift"), parse_double(text.substr(comma + 1), "shift")};
}

std::pair<int, int> parse_levels(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int k = parse_int(text, "levels");
    return {k, k};
  }
  return {parse_int(text.substr(0, dots), "levels"), parse_int(text.substr(dots + 2), "levels")};
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

SolveRow solve_level(const RunConfig& cfg, int k) {
  const Mesh m = square_mesh(k);
  const double h = m.h_max();
  const auto& spec = cfg.spec;
  RofProblem p(m, spec.alpha, sample_at_barycenters(m, [&](const Vec2& x) { return data_g(spec, x); }), h);
  const FlowResult res = solve_benchmark(cfg, m, p);
  const DualReconstruction rec = dual_reconstruction(p, res.u);
  const double err = midpoint_error_sq([&](const Vec2& x) { return exact_primal(spec, x); }, res.u);
  return {k, m.num_vertices(), h, err, std::numeric_limits<double>::quiet_NaN(), res.trace.final_energy(),
          res.trace.steps(), duality_gap(p, res.u, rec.averaged)};
}

InterpRow interp_level(const RunConfig& cfg, int k) {
  const Mesh m = square_mesh(k);
  const double h = m.h_max();
  const InterpNorm n = interp_sup_norm(m, cfg.spec);
  return {k, m.num_vertices(), h, n.sup_norm, (n.sup_norm - 1.0) / h};
}

DualRow dual_level(const RunConfig& cfg, int k) {
  const Mesh m = square_mesh(k);
  const double h = m.h_max();
  const auto& spec = cfg.spec;
  RofProblem p(m, spec.alpha, sample_at_barycenters(m, [&](const Vec2& x) { return data_g(spec, x); }), h);
  const FlowResult res = solve_benchmark(cfg, m, p);
  const DualReconstruction rec = dual_reconstruction(p, res.u);
  return {k, m.num_vertices(), h, duality_gap(p, res.u, rec.averaged), pi_h(rec.broken).max_norm(),
          rec.conformity_defect};
}

void fill_eoc(std::vector<SolveRow>& rows) {
  std::vector<double> e, h;
  for (const auto& r : rows) {
    e.push_back(r.err_sq);
    h.push_back(r.h);
  }
  const std::vector<double> rates = eoc(e, h);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].eoc = rates[i];
}

std::string csv_row(const SolveRow& r) {
  return std::to_string(r.k) + "," + std::to_string(r.n) + "," + format_number(r.h) + "," + format_number(r.err_sq) +
         "," + format_number(r.eoc) + "," + format_number(r.energy) + "," + std::to_string(r.steps) + "," +
         format_number(r.gap);
}

std::string csv_row(const InterpRow& r) {
  return std::to_string(r.k) + "," + std::to_string(r.n) + "," + format_number(r.h) + "," +
         format_number(r.sup_norm) + "," + format_number(r.excess_over_h);
}

std::string csv_row(const DualRow& r) {
  return std::to_string(r.k) + "," + std::to_string(r.n) + "," + format_number(r.h) + "," + format_number(r.gap) +
         "," + format_number(r.max_pihz) + "," + format_number(r.conformity_defect);
}

std::vector<SolveRow> read_solve_csv(std::istream& in) {
  std::vector<SolveRow> rows;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kSolveHeader) throw CsvError("line " + std::to_string(lineno) + ": unexpected header", lineno);
      header_seen = true;
      continue;
    }
    const auto cells = split_csv(line);
    if (cells.size() != 8)
      throw CsvError("line " + std::to_string(lineno) + ": expected 8 columns, got " + std::to_string(cells.size()),
                     lineno);
    SolveRow r{};
    try {
      r.k = parse_int(cells[0], "k");
      r.n = parse_int(cells[1], "N");
      r.steps = parse_int(cells[6], "steps");
    } catch (const std::invalid_argument&) {
      throw CsvError("line " + std::to_string(lineno) + ": malformed integer", lineno);
    }
    r.h = parse_cell(cells[2], lineno);
    r.err_sq = parse_cell(cells[3], lineno);
    r.eoc = parse_cell(cells[4], lineno);
    r.energy = parse_cell(cells[5], lineno);
    r.gap = parse_cell(cells[7], lineno);
    rows.push_back(r);
  }
  if (!header_seen) throw CsvError("line " + std::to_string(lineno) + ": missing header", lineno);
  return rows;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Crouzeix-Raviart / RT0 laboratory for the ROF model"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string example = "two-disk";
  std::string phi = "0";
  std::string shift = "0,0";
  std::string levels = "3..6";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--example", example, "two-disk or four-disk")
        ->check(CLI::IsMember({"two-disk", "four-disk"}));
    sub->add_option("--phi", phi, "rotation angle in radians, or e.g. pi/4, 7pi/18");
    sub->add_option("--shift", shift, "shift of the jump line, x,y");
    sub->add_option("--alpha", cfg.spec.alpha, "fidelity weight");
    sub->add_option("--r", cfg.spec.r, "disk radius");
    sub->add_option("--levels", levels, "refinement levels a..b within 0..10");
    sub->add_option("--tau", cfg.tau, "pseudo time step");
    sub->add_option("--stop-factor", cfg.stop_factor, "stop when the increment is below factor*h");
    sub->add_option("--out", cfg.out, "output CSV path (default stdout)");
    sub->add_option("--seed", cfg.seed, "random seed");
  };
  CLI::App* solve = app.add_subcommand("solve", "run the gradient flow per level and report errors");
  CLI::App* rates = app.add_subcommand("rates", "solve table with convergence orders");
  CLI::App* interp = app.add_subcommand("interp-check", "sup norm of Pi_h I_RT of the exact dual");
  CLI::App* dual = app.add_subcommand("dual-check", "duality gap of the reconstructed dual");
  for (CLI::App* sub : {solve, rates, interp, dual}) add_common(sub);
  rates->add_option("--in", cfg.input, "existing solve CSV to annotate instead of solving");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.spec.kind = example == "four-disk" ? BenchmarkKind::FourDisk : BenchmarkKind::TwoDisk;
    cfg.spec.phi = parse_angle(phi);
    cfg.spec.shift = parse_shift(shift);
    std::tie(cfg.level_min, cfg.level_max) = parse_levels(levels);
    if (cfg.input.empty()) cfg.validate();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      err << "error: cannot open " << cfg.out << '\n';
      return 2;
    }
  }
  std::ostream& os = cfg.out.empty() ? out : file;

  auto fail = [&](int k, const std::exception& e) {
    os << "# FAILED k=" << k << ": " << e.what() << '\n';
    os.flush();
    err << "error at level " << k << ": " << e.what() << '\n';
    return 1;
  };

  if (cfg.command == "rates" && !cfg.input.empty()) {
    std::ifstream in(cfg.input);
    if (!in) {
      err << "error: cannot open " << cfg.input << '\n';
      return 2;
    }
    std::vector<SolveRow> rows;
    try {
      rows = read_solve_csv(in);
    } catch (const CsvError& e) {
      err << "error: " << cfg.input << ": " << e.what() << '\n';
      return 2;
    }
    fill_eoc(rows);
    os << kSolveHeader << '\n';
    for (const auto& r : rows) os << csv_row(r) << '\n';
    os.flush();
    return 0;
  }

  if (cfg.command == "solve" || cfg.command == "rates") {
    os << kSolveHeader << '\n';
    std::vector<SolveRow> rows;
    for (int k = cfg.level_min; k <= cfg.level_max; ++k) {
      try {
        rows.push_back(solve_level(cfg, k));
      } catch (const std::exception& e) {
        return fail(k, e);
      }
      fill_eoc(rows);
      os << csv_row(rows.back()) << '\n';
      os.flush();
    }
    return 0;
  }
  if (cfg.command == "interp-check") {
    os << kInterpHeader << '\n';
    for (int k = cfg.level_min; k <= cfg.level_max; ++k) {
      try {
        os << csv_row(interp_level(cfg, k)) << '\n';
      } catch (const std::exception& e) {
        return fail(k, e);
      }
      os.flush();
    }
    return 0;
  }
  os << kDualHeader << '\n';
  for (int k = cfg.level_min; k <= cfg.level_max; ++k) {
    try {
      os << csv_row(dual_level(cfg, k)) << '\n';
    } catch (const std::exception& e) {
      return fail(k, e);
    }
    os.flush();
  }
  return 0;
}

}  // namespace roflab
