#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "heatflow/acceptance.hpp"
#include "heatflow/config.hpp"
#include "heatflow/errors.hpp"
#include "heatflow/evolve.hpp"
#include "heatflow/heatkernel.hpp"
#include "heatflow/plancherel.hpp"
#include "heatflow/rootsys.hpp"
#include "heatflow/spherical.hpp"

using namespace heatflow;
using json = nlohmann::ordered_json;

namespace {

using Cell = std::variant<double, long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string csv_cell(const Cell &c) {
    if (auto d = std::get_if<double>(&c)) return num(*d);
    if (auto l = std::get_if<long>(&c)) return std::to_string(*l);
    const auto &s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

json json_cell(const Cell &c) {
    if (auto d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) return *d;
        return num(*d); // JSON has no infinities
    }
    if (auto l = std::get_if<long>(&c)) return *l;
    return std::get<std::string>(c);
}

json to_json(const Table &t) {
    json arr = json::array();
    for (const auto &row : t.rows) {
        json o = json::object();
        for (size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = json_cell(row[i]);
        arr.push_back(o);
    }
    return arr;
}

void write_csv(std::ostream &os, const Table &t) {
    for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto &row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << "\n";
    }
}

struct Output {
    std::string path;
    std::string format = "csv";

    void emit(const Table &t) const {
        std::ofstream file;
        std::ostream *os = &std::cout;
        if (!path.empty()) {
            file.open(path);
            if (!file) throw ConfigError("cannot write '" + path + "'");
            os = &file;
        }
        if (format == "json") *os << to_json(t).dump(2) << "\n";
        else write_csv(*os, t);
    }
};

int fail(int status, const std::string &kind, const std::string &message) {
    json e = {{"status", status}, {"error", kind}, {"message", message}};
    std::cerr << e.dump() << "\n";
    return status;
}

std::vector<double> reals(const std::vector<std::string> &items) {
    std::vector<double> v;
    for (const auto &s : items) v.push_back(parse_real(s));
    return v;
}

// Comma-separated values may also be given as one argument.
std::vector<std::string> flatten(const std::vector<std::string> &items) {
    std::vector<std::string> out;
    for (const auto &s : items) {
        std::stringstream ss(s);
        std::string part;
        while (std::getline(ss, part, ','))
            if (!part.empty()) out.push_back(part);
    }
    return out;
}

std::string p_label(double p) { return std::isinf(p) ? "inf" : num(p); }

Table kernel_table(int n, const std::vector<double> &ts, const std::vector<double> &rs, Route route) {
    Table t{{"n", "t", "r", "route", "log_h", "h"}, {}};
    for (double tt : ts)
        for (double r : rs) {
            HeatEvaluation e = heat_kernel(n, tt, r, route);
            t.rows.push_back({long(n), tt, r, route_name(e.route), e.value.log(), e.value.value()});
        }
    return t;
}

Table phi_table(int n, const std::vector<double> &lre, double lim, const std::vector<double> &rs) {
    Table t{{"n", "lambda_re", "lambda_im", "r", "phi_re", "phi_im"}, {}};
    for (double a : lre)
        for (double r : rs) {
            cplx v = phi_lambda(n, cplx(a, lim), r).value();
            t.rows.push_back({long(n), a, lim, r, v.real(), v.imag()});
        }
    return t;
}

Table norms_table(int n, const std::vector<double> &ts, const std::vector<double> &ps) {
    Table t{{"n", "t", "p", "log_norm", "norm"}, {}};
    for (double p : ps)
        for (double tt : ts) {
            LogVal v = lp_norm_log(n, tt, p);
            t.rows.push_back({long(n), tt, p_label(p), v.log(), v.value()});
        }
    return t;
}

Table concentrate_table(int n, const std::vector<double> &ts, const std::vector<double> &ps,
                        const RegionSchedule &s) {
    Table t{{"n", "t", "p", "region_lo", "region_hi", "defect"}, {}};
    for (double p : ps)
        for (double tt : ts) {
            RadialRegion g = critical_region(n, p, tt, s);
            t.rows.push_back({long(n), tt, p_label(p), g.lo, g.hi, concentration_defect(n, tt, p, s)});
        }
    return t;
}

Table mass_table(const ExperimentConfig &cfg, const std::vector<double> &rs, const std::vector<double> &thetas) {
    Table t{{"p", "mass", "r", "theta", "M", "weight_norm"}, {}};
    double rmax = 1;
    for (double r : rs) rmax = std::max(rmax, r + 1);
    for (double p : cfg.spec.p_list)
        for (const MassChoice &m : cfg.spec.masses_for(p)) {
            MassFunction M(cfg.spec.datum, p, m, rmax);
            for (double r : rs)
                for (double th : thetas)
                    t.rows.push_back({p_label(p), m.label(), r, th, M.at(r, std::cos(th)), M.weight_norm()});
        }
    return t;
}

Table report_table(const ConvergenceReport &rep) {
    Table t{{"p", "mass", "t", "E", "region", "tail", "log_error", "flagged", "r_end", "crit_lo", "crit_hi",
             "weight_norm", "error"},
            {}};
    for (const auto &row : rep.rows) {
        const auto &e = row.result;
        t.rows.push_back({p_label(row.p), row.mass, row.t, e.E, e.region, e.tail, e.log_error, e.flagged, e.r_end,
                          e.crit.lo, e.crit.hi, row.weight_norm, row.error});
    }
    return t;
}

void write_series(const std::string &dir, const ConvergenceReport &rep) {
    std::filesystem::create_directories(dir);
    std::map<std::string, Table> files;
    for (const auto &row : rep.rows) {
        std::string name = "E_p" + (std::isinf(row.p) ? std::string("inf") : num(row.p)) + "_" + row.mass;
        for (char &ch : name)
            if (ch == ':' || ch == '+') ch = '_';
        auto &t = files[name];
        t.columns = {"t", "E"};
        t.rows.push_back({row.t, row.result.E});
    }
    for (const auto &[name, t] : files) {
        std::ofstream f(std::filesystem::path(dir) / (name + ".csv"));
        if (!f) throw ConfigError("cannot write into '" + dir + "'");
        write_csv(f, t);
    }
}

Table plancherel_table(const FamilySpec &fs, const std::vector<std::string> &lambdas) {
    RootDatum d = build_root_system(fs);
    Table t{{"family", "lambda", "log_density", "density"}, {}};
    for (const auto &s : lambdas) {
        Vec lam;
        std::stringstream ss(s);
        std::string part;
        while (std::getline(ss, part, ':')) lam.push_back(parse_real(part));
        if (int(lam.size()) != d.rank)
            throw ConfigError("lambda '" + s + "' needs " + std::to_string(d.rank) + " ':'-separated components");
        LogVal v = plancherel_density_log(d, lam);
        t.rows.push_back({d.family, s, v.log(), v.value()});
    }
    return t;
}

ExperimentConfig config_or_default(const std::string &path, int n) {
    if (!path.empty()) return load_config(path);
    // Displaced heat datum with p = 1, 2, inf, t = 10, 40, 160.
    std::ostringstream os;
    os << "n = " << n << "\ndatum = displaced_heat s=1 dist=2\np = 1, 2, inf\nt = 10, 40, 160\n";
    return parse_config(os.str());
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Long-time heat flow on hyperbolic space: kernels, mass functions and convergence reports"};
    app.require_subcommand(1);
    Output out;
    int n = 3;
    std::vector<std::string> t_in{"1"}, r_in{"0"}, p_in{"1"}, lam_in{"1"}, theta_in{"0"};
    std::string route = "auto", config, family = "rank1";
    double lambda_im = 0;
    std::vector<int> mult, only;

    auto common = [&](CLI::App *s) {
        s->add_option("--out", out.path, "Output file (default stdout)");
        s->add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto *kernel = app.add_subcommand("kernel", "Heat kernel h_t(r)");
    kernel->add_option("--n", n, "Dimension")->check(CLI::Range(2, 64));
    kernel->add_option("--t", t_in, "Times");
    kernel->add_option("--r", r_in, "Radii");
    kernel->add_option("--route", route, "auto, exact, spectral or asymptotic");
    common(kernel);

    auto *phi = app.add_subcommand("phi", "Spherical function phi_lambda(r)");
    phi->add_option("--n", n)->check(CLI::Range(2, 64));
    phi->add_option("--lambda", lam_in, "Real parts of lambda");
    phi->add_option("--lambda-im", lambda_im, "Common imaginary part of lambda");
    phi->add_option("--r", r_in);
    common(phi);

    auto *norms = app.add_subcommand("norms", "Lp norms of h_t");
    norms->add_option("--n", n)->check(CLI::Range(2, 64));
    norms->add_option("--t", t_in);
    norms->add_option("--p", p_in, "Exponents (inf allowed)");
    common(norms);

    auto *conc = app.add_subcommand("concentrate", "Critical regions and concentration defects");
    conc->add_option("--n", n)->check(CLI::Range(2, 64));
    conc->add_option("--t", t_in);
    conc->add_option("--p", p_in);
    conc->add_option("--config", config, "Config file (for schedule overrides)");
    common(conc);

    auto *mass = app.add_subcommand("mass", "Mass functions of the configured datum");
    mass->add_option("--config", config, "Config file (datum, p list, mass choices)");
    mass->add_option("--n", n)->check(CLI::Range(2, 64));
    mass->add_option("--r", r_in, "Radii of the evaluation points");
    mass->add_option("--theta", theta_in, "Angles from the datum axis");
    common(mass);

    auto *conv = app.add_subcommand("converge", "Normalized convergence report E_p(t)");
    conv->add_option("--config", config, "Config file");
    conv->add_option("--n", n, "Dimension of the built-in datum when no config is given")->check(CLI::Range(2, 64));
    common(conv);

    auto *planch = app.add_subcommand("plancherel", "Plancherel density |c(lambda)|^-2");
    planch->add_option("--family", family, "rank1, a2 or b2")->check(CLI::IsMember({"rank1", "a2", "b2"}));
    planch->add_option("--n", n)->check(CLI::Range(2, 64));
    planch->add_option("--mult", mult, "Multiplicities (a2: m; b2: m_short m_long)");
    planch->add_option("--lambda", lam_in, "Spectral points, components separated by ':'");
    common(planch);

    auto *self = app.add_subcommand("selftest", "Run the acceptance criteria");
    self->add_option("--only", only, "Criterion numbers to run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return fail(2, "usage", e.what());
    }

    try {
        auto ts = reals(flatten(t_in)), rs = reals(flatten(r_in)), ps = reals(flatten(p_in));
        if (*kernel) out.emit(kernel_table(n, ts, rs, parse_route(route)));
        else if (*phi) out.emit(phi_table(n, reals(flatten(lam_in)), lambda_im, rs));
        else if (*norms) out.emit(norms_table(n, ts, ps));
        else if (*conc) {
            RegionSchedule s = config.empty() ? RegionSchedule::defaults() : load_config(config).spec.sched;
            out.emit(concentrate_table(n, ts, ps, s));
        } else if (*mass) {
            out.emit(mass_table(config_or_default(config, n), rs, reals(flatten(theta_in))));
        } else if (*conv) {
            ExperimentConfig cfg = config_or_default(config, n);
            ConvergenceReport rep = convergence_experiment(cfg.spec);
            Table t = report_table(rep);
            if (out.path.empty() && !cfg.out.empty()) out.path = cfg.out;
            out.emit(t);
            if (!cfg.json.empty()) Output{cfg.json, "json"}.emit(t);
            if (!cfg.series.empty()) write_series(cfg.series, rep);
            for (const auto &row : rep.rows)
                if (!row.error.empty()) return fail(3, "numerical", "p=" + p_label(row.p) + " t=" + num(row.t) + ": " + row.error);
        } else if (*planch) {
            FamilySpec fs = FamilySpec::rank1(n);
            if (family == "a2") fs = FamilySpec::a2(mult.empty() ? 1 : mult[0]);
            if (family == "b2") fs = mult.size() >= 2 ? FamilySpec::b2(mult[0], mult[1]) : FamilySpec::b2();
            out.emit(plancherel_table(fs, flatten(lam_in)));
        } else if (*self) {
            return run_acceptance(only, std::cout) == 0 ? 0 : 1;
        }
    } catch (const ConfigError &e) {
        return fail(2, "config", e.what());
    } catch (const NumericalError &e) {
        return fail(3, "numerical", e.what());
    } catch (const std::exception &e) {
        return fail(3, "numerical", e.what());
    }
    return 0;
}
