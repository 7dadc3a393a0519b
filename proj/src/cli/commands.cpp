#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "exciton/cli.hpp"
#include "exciton/errors.hpp"
#include "exciton/oracle.hpp"
#include "exciton/potential.hpp"
#include "exciton/variational.hpp"

namespace exciton::cli {

namespace {

using coulomb::Parity;
using coulomb::StateLabel;

constexpr std::string_view kUnits = "energy unit Ry*; length unit a_B*";

// Rows are independent; results land in input order whatever the schedule.
template <class Row>
std::vector<std::vector<double>> parallel_rows(const std::vector<double>& radii, Row row)
{
    std::vector<std::vector<double>> rows(radii.size());
    std::vector<std::exception_ptr> errors(radii.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < radii.size();) {
            try {
                rows[i] = row(i, radii[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(radii.size(), 1));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) {
            pool.emplace_back(work);
        }
        work();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

double state_energy(const StateLabel& s, Radius r, double tol, double* alpha)
{
    const auto sol = s.parity == Parity::odd ? coulomb::odd_solution(s.n, r) : coulomb::even_alpha(s.n, r, tol);
    if (alpha) {
        *alpha = sol.alpha;
    }
    return sol.energy;
}

std::string join_states(const std::vector<StateLabel>& states)
{
    std::string s;
    for (const auto& st : states) {
        s += (s.empty() ? "" : ",") + st.str();
    }
    return s;
}

std::string join_engines(const std::vector<Engine>& engines)
{
    std::string s;
    for (const auto e : engines) {
        s += (s.empty() ? "" : ",") + std::string(engine_name(e));
    }
    return s;
}

std::string sweep_metadata(std::string_view command, const SweepConfig& sweep)
{
    std::string m = "exciton " + std::string(kVersion) + "; " + std::string(command) + "; ";
    if (sweep.single_r) {
        m += "r=" + format_number(*sweep.single_r);
    } else {
        m += "r_min=" + format_number(sweep.r_min) + "; r_max=" + format_number(sweep.r_max) +
             "; points=" + std::to_string(sweep.n_points) +
             "; spacing=" + (sweep.spacing == Spacing::log ? "log" : "linear");
    }
    m += "; tol=" + format_number(sweep.tol);
    return m;
}

} // namespace

Table cmd_potential(Radius r, double x_min, double x_max, int n)
{
    if (n < 2 || !(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
        throw UsageError("potential: needs x-min < x-max and --points >= 2");
    }
    Table t;
    t.columns = {"x", "v_eff", "v_eff_quadrature", "rel_diff"};
    for (int i = 0; i < n; ++i) {
        const double x = x_min + (x_max - x_min) * i / (n - 1);
        if (x == 0.0) {
            throw UsageError("potential: grid hits the singular point x = 0");
        }
        const double closed = potential::v_eff(x, r);
        const auto quad = potential::v_eff_quadrature(x, r);
        if (!quad.converged) {
            throw AccuracyError("potential: quadrature did not converge at x = " + format_number(x));
        }
        t.rows.push_back({x, closed, quad.value, std::abs(closed - quad.value) / std::abs(closed)});
    }
    return t;
}

Table cmd_spectrum(const SweepConfig& sweep)
{
    sweep.validate();
    const auto states = sweep.resolved_states();
    Table t;
    t.columns.push_back("r");
    for (const auto& s : states) {
        t.columns.push_back("E_" + s.str());
    }
    for (const auto& s : states) {
        t.columns.push_back("alpha_" + s.str());
    }
    t.rows = parallel_rows(sweep.radii(), [&](std::size_t, double rv) {
        const Radius r(rv);
        std::vector<double> row(1 + 2 * states.size());
        row[0] = rv;
        for (std::size_t i = 0; i < states.size(); ++i) {
            row[1 + i] = state_energy(states[i], r, sweep.tol, &row[1 + states.size() + i]);
        }
        return row;
    });
    return t;
}

nlohmann::ordered_json cmd_variational(Radius r, StateLabel state, const QuadratureSpec& quad)
{
    variational::VariationalResult res;
    if (state == StateLabel::make(2, Parity::odd)) {
        res = variational::minimize_2p(r, quad);
    } else if (state == StateLabel::make(1, Parity::even)) {
        res = variational::minimize_1s(r, quad);
    } else {
        throw UsageError("variational: state must be 1s or 2p, got " + state.str());
    }
    nlohmann::ordered_json j;
    j["r"] = r.value();
    j["state"] = state.str();
    j["k"] = res.params.k;
    j["q"] = res.params.q;
    j["energy"] = res.breakdown.energy;
    j["K"] = res.breakdown.kinetic;
    j["V"] = res.breakdown.potential;
    j["N"] = res.breakdown.norm;
    j["iterations"] = res.iterations;
    j["converged"] = res.converged;
    return j;
}

Table cmd_compare(const SweepConfig& sweep, const QuadratureSpec& quad)
{
    sweep.validate();
    const bool model = sweep.uses(Engine::coulomb);
    const bool var = sweep.uses(Engine::variational);
    const bool fd = sweep.uses(Engine::oracle);
    Table t;
    t.columns.push_back("r");
    if (model) {
        t.columns.push_back("E_model_1s");
    }
    if (var) {
        t.columns.push_back("E_var_1s");
    }
    if (model) {
        t.columns.push_back("E_model_2p");
    }
    if (var) {
        t.columns.push_back("E_var_2p");
    }
    if (model) {
        t.columns.push_back("E_model_2s");
    }
    if (fd) {
        t.columns.push_back("E_fd_odd");
        t.columns.push_back("E_fd_even");
    }
    const auto radii = sweep.radii();
    std::vector<char> unconverged(radii.size(), 0);
    t.rows = parallel_rows(radii, [&](std::size_t i, double rv) {
        const Radius r(rv);
        std::vector<double> row{rv};
        variational::VariationalResult v1s, v2p;
        if (var) {
            v1s = variational::minimize_1s(r, quad);
            v2p = variational::minimize_2p(r, quad);
            unconverged[i] = !(v1s.converged && v2p.converged);
        }
        if (model) {
            row.push_back(coulomb::even_alpha(1, r, sweep.tol).energy);
        }
        if (var) {
            row.push_back(v1s.breakdown.energy);
        }
        if (model) {
            row.push_back(coulomb::odd_solution(2, r).energy);
        }
        if (var) {
            row.push_back(v2p.breakdown.energy);
        }
        if (model) {
            row.push_back(coulomb::even_alpha(2, r, sweep.tol).energy);
        }
        if (fd) {
            const auto op = oracle::build_hamiltonian(r, oracle::GridSpec{});
            row.push_back(oracle::parity_eigenvalues(op, Parity::odd, 1)[0]);
            row.push_back(oracle::parity_eigenvalues(op, Parity::even, 1)[0]);
        }
        return row;
    });
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (unconverged[i]) {
            t.warnings.push_back("variational minimisation did not converge at r = " + format_number(radii[i]));
        }
    }
    return t;
}

namespace {

struct Options {
    std::string out;
    std::string config;
    std::optional<double> r;
    double r_min = 1e-3, r_max = 1.0;
    int points = -1;
    bool log = true;
    std::string states;
    std::string engines;
    int quad_panels = QuadratureSpec{}.radial_panels;
    double tol = 1e-13;
    double x_min = 0.05, x_max = 5.0;
    double r_angstrom = 0.0;
    double epsilon = 1.0, mu = 1.0;
};

void add_sweep_options(CLI::App* sub, Options& o)
{
    sub->add_option("--r", o.r, "single radius instead of a sweep (a_B*)");
    sub->add_option("--r-min", o.r_min, "sweep start (a_B*)")->capture_default_str();
    sub->add_option("--r-max", o.r_max, "sweep end (a_B*)")->capture_default_str();
    sub->add_option("--points", o.points, "sweep points (default 60)");
    sub->add_flag("--log,!--linear", o.log, "log-spaced radii (default)");
    sub->add_option("--tol", o.tol, "root tolerance in alpha")->capture_default_str();
    sub->add_option("--engines", o.engines, "comma list of coulomb, variational, oracle");
}

void add_common(CLI::App* sub, Options& o)
{
    sub->add_option("--out", o.out, "output path (default stdout)");
    sub->add_option("--config", o.config, "flat key=value file; flags win");
}

SweepConfig make_sweep(const Options& o)
{
    SweepConfig s;
    s.r_min = o.r_min;
    s.r_max = o.r_max;
    if (o.points >= 0) {
        s.n_points = o.points;
    }
    s.spacing = o.log ? Spacing::log : Spacing::linear;
    if (!o.states.empty()) {
        s.states = parse_states(o.states);
    }
    if (!o.engines.empty()) {
        s.engines = parse_engines(o.engines);
    }
    s.single_r = o.r;
    s.tol = o.tol;
    return s;
}

QuadratureSpec make_quad(const Options& o)
{
    if (o.quad_panels < 1) {
        throw UsageError("--quad-panels must be >= 1");
    }
    QuadratureSpec q;
    q.radial_panels = o.quad_panels;
    q.angular_panels = std::max(1, (2 * o.quad_panels + 2) / 3);
    return q;
}

// Tokens from the config file go right after the subcommand name, so that
// later command-line flags override them.
std::vector<std::string> inject_config(const std::vector<std::string>& args, CLI::App& app)
{
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (!path) {
        return args;
    }
    const auto sub_pos = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
        return app.get_subcommand_no_throw(a) != nullptr;
    });
    if (sub_pos == args.end()) {
        return args;
    }
    CLI::App* sub = app.get_subcommand(*sub_pos);
    std::vector<std::string> tokens;
    for (const auto& [raw_key, value] : read_config(*path)) {
        std::string key = raw_key;
        std::replace(key.begin(), key.end(), '_', '-');
        if (key == "config") {
            continue;
        }
        const CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr) {
            bool elsewhere = false;
            for (const auto* other : app.get_subcommands({})) {
                elsewhere = elsewhere || other->get_option_no_throw("--" + key) != nullptr;
            }
            if (!elsewhere) {
                throw UsageError(*path + ": unknown key '" + key + "'");
            }
            continue;
        }
        if (opt->get_expected_max() == 0) {
            tokens.push_back("--" + key + "=" + value);
        } else {
            tokens.push_back("--" + key);
            tokens.push_back(value);
        }
    }
    std::vector<std::string> merged(args.begin(), sub_pos + 1);
    merged.insert(merged.end(), tokens.begin(), tokens.end());
    merged.insert(merged.end(), sub_pos + 1, args.end());
    return merged;
}

void emit(const Options& o, const std::string& text, std::ostream& out)
{
    if (o.out.empty() || o.out == "-") {
        out << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
        throw IoError("cannot open output file " + o.out);
    }
    file << text;
    file.close();
    if (!file) {
        throw IoError("failed writing output file " + o.out);
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exciton bound states on a cylinder of radius r (energies in Ry*, lengths in a_B*)", "exciton"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    Options o;

    auto* pot = app.add_subcommand("potential", "closed-form v_eff against direct quadrature");
    pot->add_option("--r", o.r, "radius (default 0.1)");
    pot->add_option("--x-min", o.x_min, "first abscissa")->capture_default_str();
    pot->add_option("--x-max", o.x_max, "last abscissa")->capture_default_str();
    pot->add_option("--points", o.points, "grid points (default 50)");
    add_common(pot, o);

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Coulomb-model energies and alphas over a radius sweep");
    add_sweep_options(spectrum_cmd, o);
    spectrum_cmd->add_option("--states", o.states, "comma list, e.g. 1s,2p,2s,3p");
    add_common(spectrum_cmd, o);

    auto* var = app.add_subcommand("variational", "minimise the 1s or 2p trial energy (JSON)");
    var->add_option("--r", o.r, "radius (default 0.1)");
    var->add_option("--states", o.states, "1s or 2p (default 2p)");
    var->add_option("--quad-panels", o.quad_panels, "radial panels of the product rule")->capture_default_str();
    add_common(var, o);

    auto* cmp = app.add_subcommand("compare", "model, variational and finite-difference energies side by side");
    add_sweep_options(cmp, o);
    cmp->add_option("--quad-panels", o.quad_panels, "radial panels of the product rule")->capture_default_str();
    add_common(cmp, o);

    auto* conv = app.add_subcommand("convert-units", "radius in angstrom to effective Bohr radii");
    conv->add_option("--r-angstrom", o.r_angstrom, "radius in angstrom")->required();
    conv->add_option("--epsilon", o.epsilon, "dielectric constant")->capture_default_str();
    conv->add_option("--mu", o.mu, "reduced mass in electron masses")->capture_default_str();
    add_common(conv, o);

    std::vector<std::string> warnings;

    try {
        auto argv = inject_config(args, app);
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);

        std::ostringstream text;
        if (pot->parsed()) {
            const Radius r(o.r.value_or(0.1));
            const int n = o.points >= 0 ? o.points : 50;
            const std::string meta = "exciton " + std::string(kVersion) + "; potential; r=" + format_number(r.value()) +
                                     "; x_min=" + format_number(o.x_min) + "; x_max=" + format_number(o.x_max) +
                                     "; points=" + std::to_string(n) + "; " + std::string(kUnits);
            write_csv(text, meta, cmd_potential(r, o.x_min, o.x_max, n));
        } else if (spectrum_cmd->parsed()) {
            const auto sweep = make_sweep(o);
            const std::string meta = sweep_metadata("spectrum", sweep) +
                                     "; states=" + join_states(sweep.resolved_states()) + "; " + std::string(kUnits);
            write_csv(text, meta, cmd_spectrum(sweep));
        } else if (var->parsed()) {
            const Radius r(o.r.value_or(0.1));
            const auto state = o.states.empty() ? StateLabel::make(2, Parity::odd) : StateLabel::parse(o.states);
            if (state == StateLabel::make(1, Parity::even)) {
                err << "note: the 1s trial exp(-sqrt(x^2/k^2 + y^2/q^2)) is a reconstructed companion trial\n";
            }
            const auto j = cmd_variational(r, state, make_quad(o));
            text << j.dump(2) << '\n';
            if (!j["converged"].get<bool>()) {
                warnings.push_back("variational minimisation did not converge");
            }
        } else if (cmp->parsed()) {
            const auto sweep = make_sweep(o);
            const auto quad = make_quad(o);
            std::string meta = sweep_metadata("compare", sweep) + "; engines=" + join_engines(sweep.engines) +
                               "; quad_panels=" + std::to_string(quad.radial_panels);
            if (sweep.uses(Engine::variational)) {
                meta += "; trial_1s=reconstructed";
            }
            if (sweep.uses(Engine::oracle)) {
                meta += "; fd_grid=L25_n10000";
            }
            meta += "; " + std::string(kUnits);
            const auto table = cmd_compare(sweep, quad);
            write_csv(text, meta, table);
            warnings = table.warnings;
        } else if (conv->parsed()) {
            const PhysicalParams phys{o.epsilon, o.mu};
            const Radius r = convert_radius(o.r_angstrom, phys);
            std::string meta = "exciton " + std::string(kVersion) + "; convert-units; a_B* = 0.529 A * epsilon / mu";
            if (const auto note = radius_note(r)) {
                meta += "; note: " + *note;
                err << "note: " << *note << '\n';
            }
            Table t;
            t.columns = {"r_angstrom", "epsilon", "mu", "a_B_angstrom", "r"};
            t.rows.push_back({o.r_angstrom, o.epsilon, o.mu, kBohrAngstrom * o.epsilon / o.mu, r.value()});
            write_csv(text, meta, t);
        }
        emit(o, text.str(), out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const AccuracyError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::no_convergence;
    } catch (const RootNotFoundError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::no_convergence;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::io;
    }
    for (const auto& w : warnings) {
        err << "warning: " << w << '\n';
    }
    return warnings.empty() ? ExitCode::ok : ExitCode::no_convergence;
}

} // namespace exciton::cli
