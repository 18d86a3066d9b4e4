#include "cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "phonent/constants.hpp"
#include "phonent/errors.hpp"
#include "phonent/orbits.hpp"
#include "phonent/validation.hpp"

namespace phonent::cli {

namespace {

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Keys that have no built-in default but may still be set.
constexpr std::array<std::string_view, 5> kOptionalKeys{"omega1", "rh", "dtau", "dphi", "out"};

bool is_known_key(std::string_view key) {
    return default_values().count(key) != 0 ||
           std::find(kOptionalKeys.begin(), kOptionalKeys.end(), key) != kOptionalKeys.end();
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct FlagSet {
    std::map<std::string, std::string> raw;
    std::vector<std::pair<std::string, CLI::Option*>> options;

    void add(CLI::App& app, const std::string& key, const std::string& help) {
        options.emplace_back(key, app.add_option("--" + key, raw[key], help));
    }

    KeyValues given() const {
        KeyValues out;
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) {
                out[key] = raw.at(key);
            }
        }
        return out;
    }
};

void add_shared(CLI::App& app, FlagSet& flags) {
    flags.add(app, "a", "thruster acceleration [m/s^2]");
    flags.add(app, "L", "condensate length [m]");
    flags.add(app, "cs", "speed of sound [m/s]");
    flags.add(app, "r", "two-mode squeezing");
    flags.add(app, "m", "atom mass [kg]");
    flags.add(app, "k", "inertial partner mode");
    flags.add(app, "kp", "accelerated mode k'");
    flags.add(app, "nmax", "mode truncation");
    flags.add(app, "omega1", "comoving fundamental frequency [rad/s]");
    flags.add(app, "mode", "channel: literal or composed");
    flags.add(app, "gm", "gravitational parameter [m^3/s^2]");
    flags.add(app, "rl", "lower (initial) orbit radius [m]");
    flags.add(app, "out", "output file");
}

std::string render_residual(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 3);
    return std::string(buf, res.ptr);
}

void emit(std::ostream& os, std::string_view key, double value) {
    os << key << '=' << format_number(value) << '\n';
}

void write_output(const std::string& path, const std::string& contents) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw OutputError("cannot open '" + path + "' for writing");
    }
    file << contents;
    file.flush();
    if (!file) {
        throw OutputError("failed writing '" + path + "'");
    }
}

void warn_if_strong(const NegativityPipeline& pipeline, std::ostream& err) {
    if (pipeline.strongly_perturbative()) {
        err << "warning: h = " << format_number(pipeline.h())
            << " is above 0.3; second-order results are unreliable\n";
    }
}

ManeuverSource point_maneuver(const CliConfig& cfg) {
    const int given = int(cfg.has("dtau")) + int(cfg.has("dphi")) + int(cfg.has("rh"));
    if (given > 1) {
        throw InvalidArgument("give at most one of dtau, dphi, rh");
    }
    if (cfg.has("dphi")) {
        return DeltaPhi{cfg.number("dphi")};
    }
    if (cfg.has("rh")) {
        return OrbitPair(cfg.number("rl"), cfg.number("rh"), cfg.number("gm"));
    }
    return DeltaTau{cfg.has("dtau") ? cfg.number("dtau") : 0.0};
}

int cmd_point(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    ExperimentConfig experiment = cfg.experiment();
    experiment.maneuver = point_maneuver(cfg);
    const NegativityPipeline pipeline(experiment);
    const NegativityResult res = pipeline.evaluate(experiment.maneuver);

    if (cfg.output) {
        std::ostringstream csv;
        write_csv(csv, {res});
        write_output(*cfg.output, csv.str());
    }
    warn_if_strong(pipeline, err);
    emit(out, "delta_phi", res.delta_phi);
    emit(out, "delta_tau", res.delta_tau);
    emit(out, "h", res.h);
    emit(out, "n0", res.n0);
    emit(out, "n_pert", res.n_pert);
    emit(out, "n_num", res.n_num);
    emit(out, "degradation_pct", res.degradation_pct);
    if (cfg.verbose) {
        emit(out, "n_full_state", res.n_full_state);
        emit(out, "f_alpha", res.f_alpha);
        emit(out, "f_beta", res.f_beta);
        emit(out, "channel_residual", res.channel_residual);
    }
    return kOk;
}

int cmd_sweep(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const ExperimentConfig experiment = cfg.experiment();
    const SweepAxis axis = parse_sweep_axis(cfg.text("axis"));
    const SweepRange range{cfg.number("min"), cfg.number("max"), cfg.count("steps")};
    const auto threads = static_cast<unsigned>(cfg.count("threads"));
    const std::vector<NegativityResult> rows = sweep(experiment, axis, range, threads);

    std::ostringstream csv;
    write_csv(csv, rows);
    if (cfg.output) {
        write_output(*cfg.output, csv.str());
    } else {
        out << csv.str();
    }
    if (experiment.thruster_acceleration > 0.0) {
        const double h = h_parameter(experiment.thruster_acceleration, experiment.condensate);
        if (is_strongly_perturbative(h)) {
            err << "warning: h = " << format_number(h) << " is above 0.3; second-order results are unreliable\n";
        }
    }
    return kOk;
}

int cmd_hohmann(const CliConfig& cfg, std::ostream& out) {
    if (!cfg.has("rh")) {
        throw InvalidArgument("hohmann needs --rh");
    }
    const OrbitPair orbits(cfg.number("rl"), cfg.number("rh"), cfg.number("gm"));
    const ManeuverPlan plan = plan_maneuver(orbits, cfg.number("a"));
    std::ostringstream os;
    emit(os, "dv_l", plan.kicks.dv_low);
    emit(os, "dv_h", plan.kicks.dv_high);
    emit(os, "period_paper", plan.period.circular);
    emit(os, "period_exact", plan.period.exact);
    emit(os, "delta_phi", plan.delta_phi);
    emit(os, "delta_tau", plan.delta_tau_low);
    os << "within_capability=" << (plan.within_capability() ? "true" : "false") << '\n';
    out << os.str();
    return kOk;
}

int cmd_validate(double omega_error, std::ostream& out) {
    ValidationOptions options;
    options.omega_perturbation = omega_error;
    const ValidationReport report = run_invariant_suite(options);
    std::size_t passed = 0;
    for (const InvariantCheck& c : report.checks) {
        passed += c.pass ? 1 : 0;
        out << (c.pass ? "PASS  " : "FAIL  ") << c.name << ": max residual " << render_residual(c.residual)
            << " (tolerance " << render_residual(c.tolerance) << ")\n";
    }
    out << passed << " of " << report.checks.size() << " checks passed\n";
    return report.all_passed() ? kOk : kInvariantFailure;
}

}  // namespace

const KeyValues& default_values() {
    static const KeyValues defaults = [] {
        KeyValues d;
        d["a"] = "1e-3";
        d["L"] = "1e-4";
        d["cs"] = "1e-3";
        d["r"] = "0.5";
        d["m"] = format_number(constants::kHelium4Mass);
        d["k"] = "1";
        d["kp"] = "1";
        d["nmax"] = std::to_string(kDefaultTruncation);
        d["mode"] = "composed";
        d["gm"] = format_number(constants::kEarthGm);
        d["rl"] = format_number(constants::kLeoRadius);
        d["axis"] = "dphi";
        d["min"] = "0";
        d["max"] = "5";
        d["steps"] = "201";
        d["threads"] = "0";
        return d;
    }();
    return defaults;
}

KeyValues parse_config_text(std::string_view text) {
    KeyValues values;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        const std::string where = "config line " + std::to_string(line_no);
        if (eq == std::string_view::npos) {
            throw InvalidArgument(where + ": expected key=value");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty() || value.empty()) {
            throw InvalidArgument(where + ": empty key or value");
        }
        if (!is_known_key(key)) {
            throw InvalidArgument(where + ": unknown key '" + key + "'");
        }
        values[key] = value;
    }
    return values;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw InvalidArgument("cannot read config file '" + path + "'");
    }
    const std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    return parse_config_text(text);
}

CliConfig merge_layers(const KeyValues& file, const KeyValues& flags) {
    CliConfig cfg;
    cfg.values = default_values();
    for (const KeyValues* layer : {&file, &flags}) {
        for (const auto& [key, value] : *layer) {
            cfg.values[key] = value;
        }
    }
    if (auto it = cfg.values.find("out"); it != cfg.values.end()) {
        cfg.output = it->second;
        cfg.values.erase(it);
    }
    return cfg;
}

bool CliConfig::has(std::string_view key) const { return values.find(key) != values.end(); }

const std::string& CliConfig::text(std::string_view key) const {
    const auto it = values.find(key);
    if (it == values.end()) {
        throw InvalidArgument("missing value for '" + std::string(key) + "'");
    }
    return it->second;
}

double CliConfig::number(std::string_view key) const {
    const std::string& s = text(key);
    double value = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(value)) {
        throw InvalidArgument("'" + std::string(key) + "' must be a finite number, got '" + s + "'");
    }
    return value;
}

std::size_t CliConfig::count(std::string_view key) const {
    const std::string& s = text(key);
    unsigned long long value = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw InvalidArgument("'" + std::string(key) + "' must be a non-negative integer, got '" + s + "'");
    }
    return static_cast<std::size_t>(value);
}

ExperimentConfig CliConfig::experiment() const {
    ExperimentConfig cfg;
    cfg.condensate.length = number("L");
    cfg.condensate.sound_speed = number("cs");
    cfg.condensate.atom_mass = number("m");
    cfg.condensate.truncation = count("nmax");
    cfg.thruster_acceleration = number("a");
    cfg.squeezing = number("r");
    cfg.mode_k = count("k");
    cfg.mode_k_prime = count("kp");
    if (has("omega1")) {
        cfg.omega1 = number("omega1");
    }
    cfg.channel = parse_channel_mode(text("mode"));
    cfg.gm = number("gm");
    cfg.base_radius = number("rl");
    cfg.validate();
    return cfg;
}

std::string format_number(double value) {
    if (value == 0.0) {
        value = 0.0;  // drop the sign of -0
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const std::vector<NegativityResult>& rows) {
    os << kCsvHeader << '\n';
    for (const NegativityResult& r : rows) {
        os << format_number(r.delta_phi) << ',' << format_number(r.delta_tau) << ',' << format_number(r.h) << ','
           << format_number(r.n0) << ',' << format_number(r.n_pert) << ',' << format_number(r.n_num) << ','
           << format_number(r.degradation_pct) << '\n';
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement degradation of BEC phonons under satellite manoeuvres", "phonent"};
    app.require_subcommand(1);

    std::string config_path;
    bool verbose = false;
    double omega_error = 0.0;

    FlagSet point_flags;
    FlagSet sweep_flags;
    FlagSet hohmann_flags;

    auto* point = app.add_subcommand("point", "evaluate the negativity for one manoeuvre");
    add_shared(*point, point_flags);
    point_flags.add(*point, "dtau", "acceleration duration [s]");
    point_flags.add(*point, "dphi", "potential difference [m^2/s^2]");
    point_flags.add(*point, "rh", "target orbit radius [m]");

    auto* sweeper = app.add_subcommand("sweep", "negativity over a grid, written as CSV");
    add_shared(*sweeper, sweep_flags);
    sweep_flags.add(*sweeper, "axis", "dphi or dtau");
    sweep_flags.add(*sweeper, "min", "first grid value");
    sweep_flags.add(*sweeper, "max", "last grid value");
    sweep_flags.add(*sweeper, "steps", "number of grid points");
    sweep_flags.add(*sweeper, "threads", "worker threads, 0 = all cores");

    auto* hohmann = app.add_subcommand("hohmann", "Hohmann transfer between two circular orbits");
    hohmann_flags.add(*hohmann, "rl", "lower orbit radius [m]");
    hohmann_flags.add(*hohmann, "rh", "upper orbit radius [m]");
    hohmann_flags.add(*hohmann, "a", "thruster acceleration [m/s^2]");
    hohmann_flags.add(*hohmann, "gm", "gravitational parameter [m^3/s^2]");

    auto* validate = app.add_subcommand("validate", "run the invariant self-checks");
    validate->add_option("--inject-omega-error", omega_error)->group("");

    for (CLI::App* sub : {point, sweeper, hohmann}) {
        sub->add_option("--config", config_path, "key=value file; flags override it");
        sub->add_flag("-v,--verbose", verbose, "extra diagnostics");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        if (validate->parsed()) {
            return cmd_validate(omega_error, out);
        }
        const FlagSet& flags = point->parsed() ? point_flags : sweeper->parsed() ? sweep_flags : hohmann_flags;
        const KeyValues file = config_path.empty() ? KeyValues{} : read_config_file(config_path);
        CliConfig cfg = merge_layers(file, flags.given());
        cfg.verbose = verbose;
        if (point->parsed()) {
            return cmd_point(cfg, out, err);
        }
        if (sweeper->parsed()) {
            return cmd_sweep(cfg, out, err);
        }
        return cmd_hohmann(cfg, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const OutputError& e) {
        err << "error: " << e.what() << '\n';
        return kOutputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

}  // namespace phonent::cli
