#pragma once

// Command-line front end. run_cli is the whole program minus process exit,
// so it can be driven in-process by the tests.

#include "runge/calibration.hpp"
#include "runge/galois.hpp"
#include "runge/qnum.hpp"
#include "runge/siegel.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace runge {

inline constexpr const char* kVersion = "0.1.0";

enum class OutputFormat { Json, Csv, Text };

struct RunConfig {
    double precision_target = 1e-12;
    Calibration constants = default_calibration();
    double c_runge = 10.0;
    double kappa2 = 1.0;
    OutputFormat format = OutputFormat::Json;
    int workers = 1;
    std::string constants_source = "built-in";
};

/// Values read from a constants file. Keys: s1, s2, c0, s_pga, pana_slack,
/// c_runge, kappa2, precision_target. Lines are `key = value`; `#` starts a
/// comment. Throws DomainError on unknown keys, duplicates, bad numbers, or
/// nonpositive slacks.
struct ConstantsFile {
    Calibration constants = default_calibration();
    std::optional<double> c_runge;
    std::optional<double> kappa2;
    std::optional<double> precision_target;
};

ConstantsFile parse_constants(std::istream& in);
ConstantsFile load_constants(const std::string& path);

/// "json" | "csv" | "text".
OutputFormat parse_format(const std::string& s);

/// "RE,IM".
HalfPlanePoint parse_tau(const std::string& s);

/// "default" -> nullopt, otherwise a comma-separated list of x:y points.
std::optional<std::vector<HalfPlanePoint>> parse_grid(const std::string& s);

/// "A1,A2,A3,A4,A6" with integer entries.
CurveModel parse_curve(const std::string& s);

/// "NUM" or "NUM/DEN".
mpq_class parse_rational(const std::string& s);

/// "P" or "LO..HI"; returns the primes in the range.
std::vector<long> parse_prime_range(const std::string& s);

/// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or
/// configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace runge
