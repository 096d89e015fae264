#include "qmap_cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <openssl/sha.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qmap::cli {
namespace {

namespace pt = boost::property_tree;

const std::set<std::string> kKnown{
    "run.command",          "run.n",          "run.p",           "run.seed",         "domain.shape",
    "domain.radius",        "domain.center",  "domain.lower",    "domain.upper",     "domain.h",
    "domain.psi",           "domain.f",       "directions.count", "directions.seed", "directions.spread",
    "directions.budget",    "directions.angle_tolerance",        "solver.tol",       "solver.max_iter",
    "solver.omega",         "analysis.deltas", "analysis.ts",    "analysis.r",       "analysis.kappas",
    "analysis.pair_budget", "verify.forms",   "capacity.radii",  "output.dir",       "output.grid_format",
};

const char* kRequired[] = {"run.n", "run.p", "domain.shape", "domain.h", "domain.psi", "domain.f"};

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double to_double(const std::string& field, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v))
        throw ConfigError(field, "expected a finite number, got '" + text + "'");
    return v;
}

template <class Int>
Int to_int(const std::string& field, const std::string& text) {
    const std::string t = trim(text);
    Int v{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError(field, "expected an integer, got '" + text + "'");
    return v;
}

std::vector<double> to_list(const std::string& field, const std::string& text) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(field, item));
    return out;
}

std::string num(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
    return s;
}

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ConfigError(field, what);
}

Rational rational_field(const std::string& field, const std::string& text) {
    try {
        return rational_from_string(trim(text));
    } catch (const std::exception&) {
        throw ConfigError(field, "expected a rational number, got '" + text + "'");
    }
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"calibrate", "verify", "solve", "analyze", "capacity"};
    return names;
}

Rational RunConfig::p_value() const {
    if (trim(p) == "inf") return Rational(0);
    return rational_field("run.p", p);
}

Rational RunConfig::r_value() const { return rational_field("analysis.r", r); }

DomainSpec RunConfig::domain() const {
    DomainSpec d = shape == Shape::ball ? make_ball(n, radius, h, psi, f) : make_box(n, lower, upper, h, psi, f);
    if (shape == Shape::ball && !center.empty()) d.center = center;
    return d;
}

SolverOptions RunConfig::solver() const {
    SolverOptions o;
    o.tol = tol;
    o.max_iter = max_iter;
    o.omega = omega;
    return o;
}

RunConfig parse_config(const std::string& text) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("config", "line " + std::to_string(e.line()) + ": " + e.message());
    }
    std::map<std::string, std::string> kv;
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError(section, "keys must sit inside a [section]");
        for (const auto& [key, value] : body) {
            const std::string path = section + "." + key;
            if (!kKnown.count(path)) throw ConfigError(path, "unknown field");
            kv[path] = value.data();
        }
    }
    for (const char* field : kRequired)
        if (!kv.count(field)) throw ConfigError(field, "missing required field");

    RunConfig c;
    auto get = [&](const std::string& key, auto&& apply) {
        if (auto it = kv.find(key); it != kv.end()) apply(it->second);
    };
    get("run.command", [&](const std::string& v) { c.command = trim(v); });
    get("run.n", [&](const std::string& v) { c.n = to_int<std::size_t>("run.n", v); });
    get("run.p", [&](const std::string& v) { c.p = trim(v); });
    get("run.seed", [&](const std::string& v) { c.seed = to_int<std::uint64_t>("run.seed", v); });
    get("domain.shape", [&](const std::string& v) {
        try {
            c.shape = shape_from_string(trim(v));
        } catch (const std::exception&) {
            throw ConfigError("domain.shape", "expected 'ball' or 'box', got '" + v + "'");
        }
    });
    get("domain.radius", [&](const std::string& v) { c.radius = to_double("domain.radius", v); });
    get("domain.center", [&](const std::string& v) { c.center = to_list("domain.center", v); });
    get("domain.lower", [&](const std::string& v) { c.lower = to_double("domain.lower", v); });
    get("domain.upper", [&](const std::string& v) { c.upper = to_double("domain.upper", v); });
    get("domain.h", [&](const std::string& v) { c.h = to_double("domain.h", v); });
    get("domain.psi", [&](const std::string& v) { c.psi = trim(v); });
    get("domain.f", [&](const std::string& v) { c.f = trim(v); });
    get("directions.count", [&](const std::string& v) { c.direction_count = to_int<std::size_t>("directions.count", v); });
    get("directions.seed", [&](const std::string& v) { c.direction_seed = to_int<std::uint64_t>("directions.seed", v); });
    get("directions.spread", [&](const std::string& v) { c.spread = to_double("directions.spread", v); });
    get("directions.budget", [&](const std::string& v) { c.stencil_budget = to_int<int>("directions.budget", v); });
    get("directions.angle_tolerance",
        [&](const std::string& v) { c.angle_tolerance = to_double("directions.angle_tolerance", v); });
    get("solver.tol", [&](const std::string& v) { c.tol = to_double("solver.tol", v); });
    get("solver.max_iter", [&](const std::string& v) { c.max_iter = to_int<int>("solver.max_iter", v); });
    get("solver.omega", [&](const std::string& v) { c.omega = to_double("solver.omega", v); });
    get("analysis.deltas", [&](const std::string& v) { c.deltas = to_list("analysis.deltas", v); });
    get("analysis.ts", [&](const std::string& v) { c.ts = to_list("analysis.ts", v); });
    get("analysis.r", [&](const std::string& v) { c.r = trim(v); });
    get("analysis.kappas", [&](const std::string& v) { c.kappas = to_list("analysis.kappas", v); });
    get("analysis.pair_budget",
        [&](const std::string& v) { c.pair_budget = to_int<std::size_t>("analysis.pair_budget", v); });
    get("verify.forms", [&](const std::string& v) { c.forms = to_int<std::size_t>("verify.forms", v); });
    get("capacity.radii", [&](const std::string& v) { c.radii = to_list("capacity.radii", v); });
    get("output.dir", [&](const std::string& v) { c.out_dir = trim(v); });
    get("output.grid_format", [&](const std::string& v) {
        try {
            c.grid_format = grid_format_from_string(trim(v));
        } catch (const std::exception&) {
            throw ConfigError("output.grid_format", "expected 'binary' or 'csv', got '" + v + "'");
        }
    });
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const RunConfig& c) {
    const auto& names = command_names();
    require(std::find(names.begin(), names.end(), c.command) != names.end(), "run.command",
            "unknown command '" + c.command + "'");
    require(c.n == 1 || c.n == 2, "run.n", "quaternionic dimension must be 1 or 2");
    const Rational p = c.p_value();
    require(sgn(p) == 0 || p > 2, "run.p", "the density exponent must satisfy p > 2 (or be 'inf'), got " + c.p);
    require(c.h > 0, "domain.h", "lattice step must be positive");
    if (c.shape == Shape::ball) {
        require(c.radius > 0, "domain.radius", "must be positive");
        require(c.center.empty() || c.center.size() == 4 * c.n, "domain.center", "needs 4n coordinates");
    } else {
        require(c.lower < c.upper, "domain.upper", "must exceed domain.lower");
    }
    for (auto [field, text] : {std::pair{"domain.psi", &c.psi}, std::pair{"domain.f", &c.f}}) {
        try {
            parse_expression(*text, 4 * c.n);
        } catch (const Error& e) {
            throw ConfigError(field, e.what());
        }
    }
    try {
        c.domain().validate();
    } catch (const PreconditionError& e) {
        throw ConfigError("domain", e.what());
    }
    require(c.direction_count >= 1, "directions.count", "at least one direction");
    require(c.spread >= 0 && c.spread < 1, "directions.spread", "must lie in [0, 1)");
    require(c.stencil_budget >= 1, "directions.budget", "must be at least 1");
    require(c.angle_tolerance > 0, "directions.angle_tolerance", "must be positive");
    require(c.tol > 0, "solver.tol", "must be positive");
    require(c.max_iter > 0, "solver.max_iter", "must be positive");
    require(c.omega > 0 && c.omega < 2, "solver.omega", "must lie in (0, 2)");
    require(c.deltas.empty() || c.deltas.size() >= 3, "analysis.deltas", "needs at least three radii");
    for (double d : c.deltas) require(d >= 2 * c.h, "analysis.deltas", "every radius must be at least 2 h");
    for (double t : c.ts) require(t > 0, "analysis.ts", "distances must be positive");
    require(std::is_sorted(c.ts.begin(), c.ts.end()), "analysis.ts", "must be ascending");
    require(c.r_value() >= 1, "analysis.r", "must be at least 1");
    for (double k : c.kappas) require(k >= 1, "analysis.kappas", "density factors must be at least 1");
    require(c.pair_budget >= 1, "analysis.pair_budget", "must be positive");
    require(c.forms >= 1, "verify.forms", "must be positive");
    for (double r : c.radii) require(r > 0, "capacity.radii", "radii must be positive");
    require(!c.out_dir.empty(), "output.dir", "must not be empty");
}

std::string dump_config(const RunConfig& c) {
    std::ostringstream o;
    o << "[run]\ncommand = " << c.command << "\nn = " << c.n << "\np = " << c.p << "\nseed = " << c.seed << "\n\n";
    o << "[domain]\nshape = " << to_string(c.shape) << "\n";
    if (c.shape == Shape::ball) {
        o << "radius = " << num(c.radius) << "\n";
        if (!c.center.empty()) o << "center = " << list(c.center) << "\n";
    } else {
        o << "lower = " << num(c.lower) << "\nupper = " << num(c.upper) << "\n";
    }
    o << "h = " << num(c.h) << "\npsi = " << c.psi << "\nf = " << c.f << "\n\n";
    o << "[directions]\ncount = " << c.direction_count << "\nseed = " << c.direction_seed
      << "\nspread = " << num(c.spread) << "\nbudget = " << c.stencil_budget
      << "\nangle_tolerance = " << num(c.angle_tolerance) << "\n\n";
    o << "[solver]\ntol = " << num(c.tol) << "\nmax_iter = " << c.max_iter << "\nomega = " << num(c.omega) << "\n\n";
    o << "[analysis]\ndeltas = " << list(c.deltas) << "\nts = " << list(c.ts) << "\nr = " << c.r
      << "\nkappas = " << list(c.kappas) << "\npair_budget = " << c.pair_budget << "\n\n";
    o << "[verify]\nforms = " << c.forms << "\n\n";
    o << "[capacity]\nradii = " << list(c.radii) << "\n\n";
    o << "[output]\ndir = " << c.out_dir << "\ngrid_format = " << (c.grid_format == GridFormat::csv ? "csv" : "binary")
      << "\n";
    return o.str();
}

std::string config_hash(const RunConfig& config) {
    RunConfig c = config;
    c.out_dir = "-";
    const std::string text = dump_config(c);
    unsigned char digest[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned char b : digest) {
        out += hex[b >> 4];
        out += hex[b & 15];
    }
    return out;
}

}  // namespace qmap::cli
