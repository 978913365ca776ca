#include "runge/cli.hpp"

#include "runge/errors.hpp"
#include "runge/primes.hpp"

#include <cerrno>
#include <cmath>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace runge {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

double parse_double(const std::string& s, const std::string& what) {
    const std::string t = trim(s);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
        throw DomainError("cannot parse " + what + " from '" + s + "'");
    }
    return v;
}

mpz_class parse_integer(const std::string& s, const std::string& what) {
    const std::string t = trim(s);
    mpz_class v;
    if (t.empty() || v.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0) {
        throw DomainError("cannot parse " + what + " from '" + s + "'");
    }
    return v;
}

long parse_long(const std::string& s, const std::string& what) {
    const mpz_class v = parse_integer(s, what);
    if (!v.fits_slong_p()) throw DomainError(what + " out of range: " + s);
    return v.get_si();
}

}  // namespace

ConstantsFile parse_constants(std::istream& in) {
    ConstantsFile out;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DomainError("constants line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const double v = parse_double(line.substr(eq + 1), "constant '" + key + "'");
        if (!seen.insert(key).second) throw DomainError("duplicate constant '" + key + "'");
        auto& c = out.constants;
        if (key == "s1") c.s1 = v;
        else if (key == "s2") c.s2 = v;
        else if (key == "c0") c.c0 = v;
        else if (key == "s_pga") c.s_pga = v;
        else if (key == "pana_slack") c.pana_slack = v;
        else if (key == "c_runge") out.c_runge = v;
        else if (key == "kappa2") out.kappa2 = v;
        else if (key == "precision_target") out.precision_target = v;
        else throw DomainError("unknown constant '" + key + "'");
    }
    out.constants.validate();
    if (out.kappa2 && !(*out.kappa2 > 0)) throw DomainError("kappa2 must be positive");
    if (out.precision_target && !(*out.precision_target > 0)) {
        throw DomainError("precision_target must be positive");
    }
    return out;
}

ConstantsFile load_constants(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open constants file '" + path + "'");
    return parse_constants(in);
}

OutputFormat parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "text") return OutputFormat::Text;
    throw DomainError("unknown format '" + s + "' (expected json, csv or text)");
}

HalfPlanePoint parse_tau(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw DomainError("tau must be RE,IM: '" + s + "'");
    return HalfPlanePoint(parse_double(parts[0], "Re tau"), parse_double(parts[1], "Im tau"));
}

std::optional<std::vector<HalfPlanePoint>> parse_grid(const std::string& s) {
    if (trim(s) == "default") return std::nullopt;
    std::vector<HalfPlanePoint> grid;
    for (const auto& item : split(s, ',')) {
        const auto xy = split(item, ':');
        if (xy.size() != 2) throw DomainError("grid points must be x:y, got '" + item + "'");
        grid.emplace_back(parse_double(xy[0], "grid x"), parse_double(xy[1], "grid y"));
    }
    if (grid.empty()) throw DomainError("empty grid");
    return grid;
}

CurveModel parse_curve(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 5) throw DomainError("curve must be A1,A2,A3,A4,A6: '" + s + "'");
    return CurveModel(parse_integer(parts[0], "a1"), parse_integer(parts[1], "a2"),
                      parse_integer(parts[2], "a3"), parse_integer(parts[3], "a4"),
                      parse_integer(parts[4], "a6"));
}

mpq_class parse_rational(const std::string& s) {
    const auto parts = split(s, '/');
    if (parts.size() == 1) return mpq_class(parse_integer(parts[0], "rational"));
    if (parts.size() != 2) throw DomainError("rational must be NUM or NUM/DEN: '" + s + "'");
    const mpz_class den = parse_integer(parts[1], "denominator");
    if (den == 0) throw DomainError("zero denominator in '" + s + "'");
    mpq_class q(parse_integer(parts[0], "numerator"), den);
    q.canonicalize();
    return q;
}

std::vector<long> parse_prime_range(const std::string& s) {
    const auto dots = s.find("..");
    long lo = 0, hi = 0;
    if (dots == std::string::npos) {
        lo = hi = parse_long(s, "p");
        if (!is_prime(static_cast<std::uint64_t>(std::max(lo, 0L)))) {
            throw DomainError("p = " + s + " is not prime");
        }
    } else {
        lo = parse_long(s.substr(0, dots), "range start");
        hi = parse_long(s.substr(dots + 2), "range end");
        if (lo > hi) throw DomainError("empty prime range '" + s + "'");
    }
    if (hi > 10000000) throw DomainError("prime range too large");
    std::vector<long> out;
    for (long p : primes_up_to(static_cast<std::uint32_t>(std::max(hi, 0L)))) {
        if (p >= lo) out.push_back(p);
    }
    if (out.empty()) throw DomainError("no primes in '" + s + "'");
    return out;
}

}  // namespace runge
