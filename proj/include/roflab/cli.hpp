#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "roflab/benchmarks.hpp"

namespace roflab {

struct RunConfig {
  std::string command;
  BenchmarkSpec spec;
  int level_min = 3;
  int level_max = 6;
  double tau = 1.0;
  double stop_factor = 1.0 / 20.0;
  std::string out;    // empty: stdout
  std::string input;  // rates: solve CSV to read
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on out-of-range settings.
  void validate() const;
};

/// Radians, or a multiple/fraction of pi such as "pi/4", "-pi/4", "7pi/18", "0.5pi".
double parse_angle(const std::string& text);
/// "x,y".
Vec2 parse_shift(const std::string& text);
/// "a..b" or a single level "a".
std::pair<int, int> parse_levels(const std::string& text);

/// Fixed 17-significant-digit rendering; NaN prints as "nan".
std::string format_number(double v);

struct SolveRow {
  int k;
  long long n;
  double h;
  double err_sq;
  double eoc;
  double energy;
  int steps;
  double gap;
};

struct InterpRow {
  int k;
  long long n;
  double h;
  double sup_norm;
  double excess_over_h;
};

struct DualRow {
  int k;
  long long n;
  double h;
  double gap;
  double max_pihz;
  double conformity_defect;
};

inline const char* const kSolveHeader = "k,N,h,err_sq,eoc,energy,steps,gap";
inline const char* const kInterpHeader = "k,N,h,sup_norm,excess_over_h";
inline const char* const kDualHeader = "k,N,h,gap,max_pihz,conformity_defect";

/// Full pipeline for one level (eoc left NaN).
SolveRow solve_level(const RunConfig& cfg, int k);
InterpRow interp_level(const RunConfig& cfg, int k);
DualRow dual_level(const RunConfig& cfg, int k);

/// Fills the eoc column from err_sq and h.
void fill_eoc(std::vector<SolveRow>& rows);

std::string csv_row(const SolveRow& r);
std::string csv_row(const InterpRow& r);
std::string csv_row(const DualRow& r);

class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses a solve/rates table; '#' lines are skipped.
std::vector<SolveRow> read_solve_csv(std::istream& in);

/// Entry point of the rof_lab tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace roflab
