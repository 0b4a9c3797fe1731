#include "heatflow/config.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "heatflow/errors.hpp"

namespace heatflow {

namespace {
std::string trim(const std::string &s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> real_list(const std::string &s) {
    std::vector<double> v;
    for (const auto &x : split(s, ',')) v.push_back(parse_real(x));
    return v;
}

int parse_int(const std::string &s) {
    double v = parse_real(s);
    if (v != std::floor(v) || std::abs(v) > 1e6) throw ConfigError("expected an integer, got '" + s + "'");
    return static_cast<int>(v);
}

struct DatumLine {
    std::string kind;
    std::map<std::string, double> args;
};

DatumLine parse_datum(const std::string &value) {
    std::istringstream is(value);
    DatumLine d;
    is >> d.kind;
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw ConfigError("datum argument '" + tok + "' is not key=value");
        std::string k = tok.substr(0, eq);
        if (d.args.count(k)) throw ConfigError("datum argument '" + k + "' given twice");
        d.args[k] = parse_real(tok.substr(eq + 1));
    }
    std::set<std::string> allowed;
    if (d.kind == "radial_bump") allowed = {"radius", "weight"};
    else if (d.kind == "displaced_bump") allowed = {"radius", "dist", "side", "weight"};
    else if (d.kind == "displaced_heat") allowed = {"s", "dist", "side", "weight"};
    else throw ConfigError("unknown datum kind '" + d.kind + "'");
    for (const auto &[k, v] : d.args)
        if (!allowed.count(k)) throw ConfigError("datum kind " + d.kind + " does not take '" + k + "'");
    return d;
}

double need(const DatumLine &d, const std::string &k) {
    auto it = d.args.find(k);
    if (it == d.args.end()) throw ConfigError("datum " + d.kind + " needs " + k + "=");
    return it->second;
}

double opt(const DatumLine &d, const std::string &k, double def) {
    auto it = d.args.find(k);
    return it == d.args.end() ? def : it->second;
}
} // namespace

double parse_real(const std::string &s0) {
    std::string s = trim(s0);
    std::string low = s;
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
    if (low == "inf" || low == "infinity") return std::numeric_limits<double>::infinity();
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw ConfigError("bad number '" + s + "'");
        return v;
    } catch (const std::logic_error &) {
        throw ConfigError("bad number '" + s + "'");
    }
}

ExperimentConfig parse_config(const std::string &text) {
    static const std::set<std::string> scalar_keys = {
        "n",         "family",           "multiplicities",  "p",           "t",          "schedule.r_exp",
        "schedule.eps_exp", "schedule.R_scale", "tol.radial", "tol.angular", "bump_route", "out",
        "json",      "series"};
    std::map<std::string, std::string> kv;
    std::vector<std::pair<int, std::string>> datums;
    std::vector<std::pair<std::string, std::string>> masses;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        auto where = " (line " + std::to_string(lineno) + ")";
        if (eq == std::string::npos) throw ConfigError("expected key = value" + where);
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "datum") datums.push_back({lineno, value});
        else if (key.rfind("mass.", 0) == 0) masses.push_back({key.substr(5), value});
        else if (scalar_keys.count(key)) {
            if (kv.count(key)) throw ConfigError("key '" + key + "' given twice" + where);
            kv[key] = value;
        } else
            throw ConfigError("unknown key '" + key + "'" + where);
    }

    ExperimentConfig cfg;
    if (kv.count("n")) cfg.n = parse_int(kv["n"]);
    if (cfg.n < 2) throw ConfigError("n must be >= 2");
    std::string fam = kv.count("family") ? kv["family"] : "rank1";
    std::vector<int> mult;
    if (kv.count("multiplicities"))
        for (const auto &m : split(kv["multiplicities"], ',')) mult.push_back(parse_int(m));
    if (fam == "rank1") {
        cfg.family = FamilySpec::rank1(cfg.n);
        if (!mult.empty()) throw ConfigError("rank1 takes its multiplicity from n");
    } else if (fam == "a2") {
        cfg.family = FamilySpec::a2(mult.empty() ? 1 : mult.at(0));
    } else if (fam == "b2") {
        cfg.family = mult.size() >= 2 ? FamilySpec::b2(mult[0], mult[1]) : FamilySpec::b2();
    } else
        throw ConfigError("unknown family '" + fam + "'");

    InitialDatum datum(cfg.n);
    for (const auto &[ln, value] : datums) {
        try {
            DatumLine d = parse_datum(value);
            double w = opt(d, "weight", 1.0);
            double side = opt(d, "side", 1.0);
            if (side != 1 && side != -1) throw ConfigError("side must be +1 or -1");
            HPoint c = HPoint::origin(cfg.n);
            if (d.kind != "radial_bump") {
                double dist = need(d, "dist");
                if (!(dist >= 0)) throw ConfigError("dist must be >= 0");
                Vec w0(cfg.n, 0.0);
                w0[0] = side;
                c = HPoint(cfg.n, dist, w0);
            }
            if (d.kind == "radial_bump") datum.radial_bump(need(d, "radius"), w);
            else if (d.kind == "displaced_bump") datum.displaced_bump(need(d, "radius"), c, w);
            else datum.displaced_heat(need(d, "s"), c, w);
        } catch (const ConfigError &e) {
            throw ConfigError(std::string(e.what()) + " (line " + std::to_string(ln) + ")");
        }
    }
    cfg.spec.datum = datum;
    if (kv.count("p")) cfg.spec.p_list = real_list(kv["p"]);
    if (kv.count("t")) cfg.spec.t_grid = real_list(kv["t"]);

    for (const auto &[pkey, value] : masses) {
        double p = parse_real(pkey);
        auto &list = cfg.spec.masses[p];
        for (const auto &m : split(value, ',')) list.push_back(MassChoice::parse(m, p));
    }

    if (kv.count("schedule.r_exp") || kv.count("schedule.eps_exp") || kv.count("schedule.R_scale")) {
        double r = kv.count("schedule.r_exp") ? parse_real(kv["schedule.r_exp"]) : 0.75;
        double e = kv.count("schedule.eps_exp") ? parse_real(kv["schedule.eps_exp"]) : 0.25;
        double R = kv.count("schedule.R_scale") ? parse_real(kv["schedule.R_scale"]) : 1.0;
        cfg.spec.sched = RegionSchedule::power_law(r, e, R);
        auto bad = cfg.spec.sched.violations();
        if (!bad.empty()) {
            std::string msg = "schedule violates:";
            for (const auto &b : bad) msg += " " + b;
            throw ConfigError(msg);
        }
    }
    if (kv.count("tol.radial")) cfg.spec.options.radial.rel_tol = parse_real(kv["tol.radial"]);
    if (kv.count("tol.angular")) cfg.spec.options.angular.quad.rel_tol = parse_real(kv["tol.angular"]);
    for (double tol : {cfg.spec.options.radial.rel_tol, cfg.spec.options.angular.quad.rel_tol})
        if (!(tol > 0 && tol < 1)) throw ConfigError("tolerances must lie in (0, 1)");
    if (kv.count("bump_route")) {
        const std::string &b = kv["bump_route"];
        if (b == "auto") cfg.spec.options.bump_route = BumpRoute::Auto;
        else if (b == "1d") cfg.spec.options.bump_route = BumpRoute::Reduced1D;
        else if (b == "2d") cfg.spec.options.bump_route = BumpRoute::Quadrature2D;
        else throw ConfigError("bump_route must be auto, 1d or 2d");
    }
    cfg.out = kv.count("out") ? kv["out"] : "";
    cfg.json = kv.count("json") ? kv["json"] : "";
    cfg.series = kv.count("series") ? kv["series"] : "";
    cfg.spec.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

} // namespace heatflow
