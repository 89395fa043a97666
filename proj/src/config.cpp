#include "exogas/config.hpp"

#include <charconv>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace exogas {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& v, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(v, &pos);
        return pos == v.size();
    } catch (...) {
        return false;
    }
}

bool parse_int(const std::string& v, long long& out) {
    try {
        std::size_t pos = 0;
        out = std::stoll(v, &pos);
        return pos == v.size();
    } catch (...) {
        return false;
    }
}

bool parse_bool(const std::string& v, bool& out) {
    if (v == "true" || v == "on" || v == "1") {
        out = true;
        return true;
    }
    if (v == "false" || v == "off" || v == "0") {
        out = false;
        return true;
    }
    return false;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Setter {
    std::function<bool(RunConfig&, const std::string&)> apply;  // false: type
};

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> m;
        const auto dbl = [&m](const std::string& key, double RunConfig::* ptr) {
            m[key] = {[ptr](RunConfig& c, const std::string& v) {
                double x;
                if (!parse_double(v, x)) return false;
                c.*ptr = x;
                return true;
            }};
        };
        (void)dbl;
        const auto pdbl = [&m](const std::string& key,
                               double PhysParams::* ptr) {
            m["params." + key] = {[ptr](RunConfig& c, const std::string& v) {
                double x;
                if (!parse_double(v, x)) return false;
                c.params.*ptr = x;
                return true;
            }};
        };
        pdbl("mu", &PhysParams::mu);
        pdbl("lambda1", &PhysParams::lambda1);
        pdbl("lambda_heat", &PhysParams::lambda_heat);
        pdbl("K_rate", &PhysParams::K_rate);
        pdbl("A_act", &PhysParams::A_act);
        pdbl("beta", &PhysParams::beta);
        pdbl("d_diff", &PhysParams::d_diff);
        pdbl("R_gas", &PhysParams::R_gas);
        pdbl("c_v", &PhysParams::c_v);
        pdbl("a_rad", &PhysParams::a_rad);
        pdbl("kappa1", &PhysParams::kappa1);
        pdbl("kappa2", &PhysParams::kappa2);
        pdbl("b_exp", &PhysParams::b_exp);
        m["params.n_dim"] = {[](RunConfig& c, const std::string& v) {
            long long x;
            if (!parse_int(v, x)) return false;
            c.params.n_dim = static_cast<int>(x);
            return true;
        }};
        m["grid.n_cells"] = {[](RunConfig& c, const std::string& v) {
            long long x;
            if (!parse_int(v, x)) return false;
            c.grid.n_cells = static_cast<int>(x);
            return true;
        }};
        m["grid.dx"] = {[](RunConfig& c, const std::string& v) {
            double x;
            if (!parse_double(v, x)) return false;
            c.grid.dx = x;
            return true;
        }};
        m["grid.x_max"] = {[](RunConfig& c, const std::string& v) {
            double x;
            if (!parse_double(v, x)) return false;
            c.grid.dx = x / c.grid.n_cells;
            return true;
        }};
        m["ic.family"] = {[](RunConfig& c, const std::string& v) {
            c.ic.family = v;
            return true;
        }};
        m["ic.amplitude"] = {[](RunConfig& c, const std::string& v) {
            double x;
            if (!parse_double(v, x)) return false;
            c.ic.amplitude = x;
            return true;
        }};
        m["ic.width"] = {[](RunConfig& c, const std::string& v) {
            double x;
            if (!parse_double(v, x)) return false;
            c.ic.width = x;
            return true;
        }};
        m["stepper.cfl_hyper"] = {[](RunConfig& c, const std::string& v) {
            double x;
            if (!parse_double(v, x)) return false;
            c.stepper.cfl_hyper = x;
            return true;
        }};
        m["stepper.diff_theta_impl"] = {[](RunConfig& c, const std::string& v) {
            bool x;
            if (!parse_bool(v, x)) return false;
            c.stepper.diff_theta_impl = x;
            return true;
        }};
        m["stepper.newton_tol"] = {[](RunConfig& c, const std::string& v) {
            double x;
            if (!parse_double(v, x)) return false;
            c.stepper.newton_tol = x;
            return true;
        }};
        m["stepper.newton_max_iter"] = {[](RunConfig& c,
                                           const std::string& v) {
            long long x;
            if (!parse_int(v, x)) return false;
            c.stepper.newton_max_iter = static_cast<int>(x);
            return true;
        }};
        m["stepper.dt_min"] = {[](RunConfig& c, const std::string& v) {
            double x;
            if (!parse_double(v, x)) return false;
            c.stepper.dt_min = x;
            return true;
        }};
        m["stepper.dt_max"] = {[](RunConfig& c, const std::string& v) {
            double x;
            if (!parse_double(v, x)) return false;
            c.stepper.dt_max = x;
            return true;
        }};
        m["stepper.splitting"] = {[](RunConfig& c, const std::string& v) {
            if (v == "strang")
                c.stepper.splitting = Splitting::strang;
            else if (v == "lie")
                c.stepper.splitting = Splitting::lie;
            else
                return false;
            return true;
        }};
        m["stepper.energy_weight"] = {[](RunConfig& c, const std::string& v) {
            double x;
            if (!parse_double(v, x)) return false;
            c.stepper.energy_weight = x;
            return true;
        }};
        m["stepper.momentum_weight"] = {[](RunConfig& c,
                                           const std::string& v) {
            double x;
            if (!parse_double(v, x)) return false;
            c.stepper.momentum_weight = x;
            return true;
        }};
        m["stepper.threads"] = {[](RunConfig& c, const std::string& v) {
            long long x;
            if (!parse_int(v, x)) return false;
            c.stepper.threads = static_cast<int>(x);
            return true;
        }};
        m["stepper.hydro"] = {[](RunConfig& c, const std::string& v) {
            bool x;
            if (!parse_bool(v, x)) return false;
            c.hydro = x;
            return true;
        }};
        m["boundary.kind"] = {[](RunConfig& c, const std::string& v) {
            if (v == "exterior")
                c.boundary.kind = BoundaryKind::exterior;
            else if (v == "closed_box")
                c.boundary.kind = BoundaryKind::closed_box;
            else
                return false;
            return true;
        }};
        m["run.t_end"] = {[](RunConfig& c, const std::string& v) {
            double x;
            if (!parse_double(v, x)) return false;
            c.t_end = x;
            return true;
        }};
        m["run.sample_stride"] = {[](RunConfig& c, const std::string& v) {
            long long x;
            if (!parse_int(v, x)) return false;
            c.sample_stride = static_cast<int>(x);
            return true;
        }};
        m["run.seed"] = {[](RunConfig& c, const std::string& v) {
            long long x;
            if (!parse_int(v, x) || x < 0) return false;
            c.seed = static_cast<std::uint64_t>(x);
            c.ic.seed = c.seed;
            return true;
        }};
        m["output.dir"] = {[](RunConfig& c, const std::string& v) {
            c.output.dir = v;
            return true;
        }};
        m["output.timeseries"] = {[](RunConfig& c, const std::string& v) {
            c.output.timeseries = v;
            return true;
        }};
        m["output.jsonl"] = {[](RunConfig& c, const std::string& v) {
            bool x;
            if (!parse_bool(v, x)) return false;
            c.output.jsonl = x;
            return true;
        }};
        m["output.snapshot_prefix"] = {[](RunConfig& c, const std::string& v) {
            c.output.snapshot_prefix = v;
            return true;
        }};
        m["output.snapshot_times"] = {[](RunConfig& c, const std::string& v) {
            c.output.snapshot_times.clear();
            if (v.empty()) return true;
            std::stringstream ss(v);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                double x;
                if (!parse_double(trim(tok), x)) return false;
                c.output.snapshot_times.push_back(x);
            }
            return true;
        }};
        m["audit.representation"] = {[](RunConfig& c, const std::string& v) {
            bool x;
            if (!parse_bool(v, x)) return false;
            c.audit.representation = x;
            return true;
        }};
        m["audit.k"] = {[](RunConfig& c, const std::string& v) {
            long long x;
            if (!parse_int(v, x)) return false;
            c.audit.k = static_cast<int>(x);
            return true;
        }};
        return m;
    }();
    return table;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::vector<std::string> errors;

    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) +
                             ": expected 'section.key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            errors.push_back("line " + std::to_string(lineno) +
                             ": unknown key '" + key + "'");
            continue;
        }
        if (!it->second.apply(cfg, value))
            errors.push_back("line " + std::to_string(lineno) +
                             ": bad value '" + value + "' for key '" + key +
                             "'");
    }

    // invariant validation, collect-all
    for (const auto& e : cfg.params.validation_errors())
        errors.push_back("params: " + e);
    if (cfg.grid.n_cells < 8) errors.push_back("grid: n_cells must be >= 8");
    if (!(cfg.grid.dx > 0.0)) errors.push_back("grid: dx must be > 0");
    if (!(cfg.t_end > 0.0)) errors.push_back("run: t_end must be > 0");
    if (cfg.sample_stride < 1)
        errors.push_back("run: sample_stride must be >= 1");
    try {
        cfg.stepper.validate();
    } catch (const InvalidArgument& e) {
        errors.push_back(e.what());
    }
    if (cfg.audit.representation &&
        cfg.grid.x_max() < cfg.audit.k + 2.0)
        errors.push_back("audit: x_max must be >= k + 2");

    if (!errors.empty()) {
        std::string msg = "configuration errors:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw ConfigError(msg);
    }
    return cfg;
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    os << "params.mu = " << fmt(c.params.mu) << "\n";
    os << "params.lambda1 = " << fmt(c.params.lambda1) << "\n";
    os << "params.lambda_heat = " << fmt(c.params.lambda_heat) << "\n";
    os << "params.K_rate = " << fmt(c.params.K_rate) << "\n";
    os << "params.A_act = " << fmt(c.params.A_act) << "\n";
    os << "params.beta = " << fmt(c.params.beta) << "\n";
    os << "params.d_diff = " << fmt(c.params.d_diff) << "\n";
    os << "params.R_gas = " << fmt(c.params.R_gas) << "\n";
    os << "params.c_v = " << fmt(c.params.c_v) << "\n";
    os << "params.a_rad = " << fmt(c.params.a_rad) << "\n";
    os << "params.kappa1 = " << fmt(c.params.kappa1) << "\n";
    os << "params.kappa2 = " << fmt(c.params.kappa2) << "\n";
    os << "params.b_exp = " << fmt(c.params.b_exp) << "\n";
    os << "params.n_dim = " << c.params.n_dim << "\n";
    os << "grid.n_cells = " << c.grid.n_cells << "\n";
    os << "grid.dx = " << fmt(c.grid.dx) << "\n";
    os << "ic.family = " << c.ic.family << "\n";
    os << "ic.amplitude = " << fmt(c.ic.amplitude) << "\n";
    os << "ic.width = " << fmt(c.ic.width) << "\n";
    os << "stepper.cfl_hyper = " << fmt(c.stepper.cfl_hyper) << "\n";
    os << "stepper.diff_theta_impl = "
       << (c.stepper.diff_theta_impl ? "true" : "false") << "\n";
    os << "stepper.newton_tol = " << fmt(c.stepper.newton_tol) << "\n";
    os << "stepper.newton_max_iter = " << c.stepper.newton_max_iter << "\n";
    os << "stepper.dt_min = " << fmt(c.stepper.dt_min) << "\n";
    os << "stepper.dt_max = " << fmt(c.stepper.dt_max) << "\n";
    os << "stepper.splitting = "
       << (c.stepper.splitting == Splitting::strang ? "strang" : "lie")
       << "\n";
    os << "stepper.energy_weight = " << fmt(c.stepper.energy_weight) << "\n";
    os << "stepper.momentum_weight = " << fmt(c.stepper.momentum_weight)
       << "\n";
    os << "stepper.threads = " << c.stepper.threads << "\n";
    os << "stepper.hydro = " << (c.hydro ? "true" : "false") << "\n";
    os << "boundary.kind = "
       << (c.boundary.kind == BoundaryKind::exterior ? "exterior"
                                                     : "closed_box")
       << "\n";
    os << "run.t_end = " << fmt(c.t_end) << "\n";
    os << "run.sample_stride = " << c.sample_stride << "\n";
    os << "run.seed = " << c.seed << "\n";
    os << "output.dir = " << c.output.dir << "\n";
    os << "output.timeseries = " << c.output.timeseries << "\n";
    os << "output.jsonl = " << (c.output.jsonl ? "true" : "false") << "\n";
    os << "output.snapshot_prefix = " << c.output.snapshot_prefix << "\n";
    os << "output.snapshot_times = ";
    for (std::size_t i = 0; i < c.output.snapshot_times.size(); ++i) {
        if (i) os << ",";
        os << fmt(c.output.snapshot_times[i]);
    }
    os << "\n";
    os << "audit.representation = "
       << (c.audit.representation ? "true" : "false") << "\n";
    os << "audit.k = " << c.audit.k << "\n";
    return os.str();
}

std::string config_hash(const RunConfig& c) {
    // worker-thread count is an execution knob, not part of the physics
    // identity; strip it so --threads variants share a hash
    std::string text;
    std::stringstream ss(serialize_config(c));
    std::string line;
    while (std::getline(ss, line))
        if (line.rfind("stepper.threads", 0) != 0) text += line + "\n";
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

void apply_override(RunConfig& c, const std::string& key,
                    const std::string& value) {
    const auto it = setters().find(key);
    if (it == setters().end())
        throw ConfigError("unknown key '" + key + "'");
    if (!it->second.apply(c, value))
        throw ConfigError("bad value '" + value + "' for key '" + key + "'");
}

}  // namespace exogas
