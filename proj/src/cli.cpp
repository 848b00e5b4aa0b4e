#include <ksoliton/cli.hpp>

#include <ksoliton/errors.hpp>
#include <ksoliton/io.hpp>
#include <ksoliton/verify.hpp>

#include "parallel.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

namespace ksol::cli {

using geometry::SpaceKind;
using soliton::Mode;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

geometry::AmbientSpace resolve_space(const RunConfig& c) {
    if (c.n && c.m) throw ValidationError("give either --n or --m, not both");
    switch (c.kind) {
        case SpaceKind::Euclidean:
        case SpaceKind::Sphere:
            if (c.m) throw ValidationError("--m only applies to hyperbolic spaces; use --n");
            if (!c.n) throw ValidationError("--n is required for this space");
            return geometry::make_space(c.kind, *c.n);
        case SpaceKind::HypReal:
            if (!c.n && !c.m) throw ValidationError("--n (or --m) is required for hyp-real");
            return geometry::make_space(c.kind, c.n ? *c.n : *c.m);
        case SpaceKind::HypOctonionic:
            if (c.n && *c.n != 16) throw ValidationError("hyp-octonionic has n = 16");
            return geometry::make_space(c.kind, c.m.value_or(2));
        case SpaceKind::HypComplex:
        case SpaceKind::HypQuaternionic: {
            const int dim_f = c.kind == SpaceKind::HypComplex ? 2 : 4;
            if (c.m) return geometry::make_space(c.kind, *c.m);
            if (!c.n) throw ValidationError("--m is required for this space");
            if (*c.n % dim_f != 0)
                throw ValidationError("--n must be a multiple of " + std::to_string(dim_f));
            return geometry::make_space(c.kind, *c.n / dim_f);
        }
    }
    throw ValidationError("unknown space");
}

std::string title_for(const soliton::SolitonParams& p) {
    std::ostringstream out;
    out << "translating K^alpha soliton: " << geometry::describe(p.space)
        << ", alpha=" << p.alpha;
    return out.str();
}

// Writes to `output` atomically, or to `out` when no path is given.
void emit(const std::string& output, const std::string& content, std::ostream& out) {
    if (output.empty()) {
        out << content;
    } else {
        io::atomic_write(output, content);
    }
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
}

}  // namespace

soliton::SolitonParams to_params(const RunConfig& config) { return to_params(config, config.alpha); }

soliton::SolitonParams to_params(const RunConfig& config, double alpha) {
    soliton::SolitonParams params;
    params.space = resolve_space(config);
    params.alpha = alpha;
    params.mode = config.mode;
    if (config.quad_tol) params.quad_tol = *config.quad_tol;
    if (config.root_tol) params.root_tol = *config.root_tol;
    if (config.ode_tol) params.ode_tol = *config.ode_tol;
    params.g_scale = config.debug_perturb_g;
    soliton::validate(params);
    return params;
}

soliton::GridSpec to_grid(const RunConfig& config) {
    if (config.s_end && config.tau_end)
        throw ValidationError("give either --s-end or --tau-end, not both");
    soliton::GridSpec grid;
    const bool drawing = config.command == "plot" || config.command == "mesh";
    if (drawing) {
        grid.spacing = soliton::Spacing::SUniform;
        grid.points = config.command == "mesh" ? 32 : 512;
        if (!config.tau_end)
            grid.s_end = config.kind == SpaceKind::Sphere ? std::numbers::pi / 2 - 5e-4 : 3.0;
    }
    if (config.points) grid.points = *config.points;
    if (config.spacing) grid.spacing = *config.spacing;
    if (config.s_end) grid.s_end = config.s_end;
    if (config.tau_end) {
        grid.tau_end = *config.tau_end;
        grid.s_end.reset();
    }
    if (grid.points < 2) throw ValidationError("--points must be at least 2");
    return grid;
}

int cmd_profile(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto params = to_params(config);
        const auto grid = to_grid(config);
        if (config.format != "csv" && config.format != "json" && config.format != "both")
            throw ValidationError("--format must be csv, json or both");
        if (config.format == "both" && config.output.empty())
            throw ValidationError("--format both needs --output as a base path");

        const auto prof = soliton::build_profile(params, grid);
        if (config.format == "both") {
            io::atomic_write(config.output + ".csv", io::profile_csv(prof));
            io::atomic_write(config.output + ".json", io::profile_json(prof).dump(2) + "\n");
        } else if (config.format == "csv") {
            emit(config.output, io::profile_csv(prof), out);
        } else {
            emit(config.output, io::profile_json(prof).dump(2) + "\n", out);
        }
        return kExitOk;
    });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto params = to_params(config);
        const auto grid = to_grid(config);
        const auto report = verify::run_suite(params, grid);
        emit(config.output, io::report_json(report).dump(2) + "\n", out);
        for (const auto& c : report.checks) {
            err << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.sup_deviation
                << " (tol " << c.tolerance << ") " << c.detail << '\n';
        }
        return report.overall ? kExitOk : kExitVerificationFailed;
    });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto grid = to_grid(config);
        std::vector<soliton::SolitonParams> params;
        for (double a : config.alphas) params.push_back(to_params(config, a));

        std::vector<io::SweepRow> rows(params.size());
        std::vector<std::string> failures(params.size());
        detail::for_each_index(params.size(), soliton::Execution::Parallel, [&](std::size_t i) {
            rows[i] = {params[i].alpha, kNaN, kNaN, kNaN};
            try {
                const soliton::Construction c(params[i]);
                const auto prof = c.build(grid, soliton::Execution::Serial);
                double sup = 0.0;
                for (double r : prof.residual) sup = std::max(sup, std::abs(r));
                const double s99 = c.radius_at_tau(0.99);
                rows[i] = {params[i].alpha, sup, s99, c.height(s99)};
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        });

        emit(config.output, io::sweep_csv(rows), out);
        bool ok = true;
        for (std::size_t i = 0; i < failures.size(); ++i) {
            if (failures[i].empty()) continue;
            ok = false;
            err << "alpha = " << rows[i].alpha << ": " << failures[i] << '\n';
        }
        return ok ? kExitOk : kExitVerificationFailed;
    });
}

int cmd_plot(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto params = to_params(config);
        const auto prof = soliton::build_profile(params, to_grid(config));
        io::PlotOptions opts;
        opts.title = title_for(params);
        opts.asymptote = params.space.kind == SpaceKind::Sphere;
        emit(config.output, io::profile_svg(prof, opts), out);
        return kExitOk;
    });
}

int cmd_mesh(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto params = to_params(config);
        if (params.space.kind != SpaceKind::Euclidean || params.space.n != 2) {
            throw ValidationError(
                "mesh embeds the surface of revolution in R^3 = R^2 x R, so it needs "
                "--space euclidean --n 2");
        }
        const auto prof = soliton::build_profile(params, to_grid(config));
        emit(config.output, io::profile_obj(prof, config.angular), out);
        return kExitOk;
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rotational translating solitons to K^alpha-flows in M x R"};
    app.require_subcommand(1);
    app.set_version_flag("--version", io::tool_version());

    RunConfig config;
    std::string space_name;
    std::string mode_name = "strict";
    std::string spacing_name;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--space", space_name,
                        "euclidean|sphere|hyp-real|hyp-complex|hyp-quaternionic|hyp-octonionic")
            ->required();
        sub->add_option("--n", config.n, "real dimension (euclidean, sphere, hyp-real)");
        sub->add_option("--m", config.m, "hyperbolic F-dimension");
        sub->add_option("--mode", mode_name, "strict|exploratory");
        sub->add_option("--points", config.points, "grid points");
        sub->add_option("--spacing", spacing_name, "psi-uniform|s-uniform");
        sub->add_option("--s-end", config.s_end, "last grid radius");
        sub->add_option("--tau-end", config.tau_end, "grid ends where tau reaches this value");
        sub->add_option("-o,--output", config.output, "output path (default: stdout)");
        sub->add_option("--quad-tol", config.quad_tol);
        sub->add_option("--root-tol", config.root_tol);
        sub->add_option("--ode-tol", config.ode_tol);
        sub->add_option("--debug-perturb-g", config.debug_perturb_g,
                        "scale g inside the construction (mutation testing)");
    };

    auto* profile = app.add_subcommand("profile", "sample the soliton profile to CSV/JSON");
    add_common(profile);
    profile->add_option("--alpha", config.alpha)->required();
    profile->add_option("--format", config.format, "csv|json|both");

    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite, write a JSON report");
    add_common(verify_cmd);
    verify_cmd->add_option("--alpha", config.alpha)->required();

    auto* sweep = app.add_subcommand("sweep", "summary table over several exponents");
    add_common(sweep);
    sweep->add_option("--alphas", config.alphas, "comma-separated exponents")->delimiter(',');

    auto* plot = app.add_subcommand("plot", "SVG of the bowl profile");
    add_common(plot);
    plot->add_option("--alpha", config.alpha)->required();

    auto* mesh = app.add_subcommand("mesh", "OBJ surface of revolution (euclidean, n = 2)");
    add_common(mesh);
    mesh->add_option("--alpha", config.alpha)->required();
    mesh->add_option("--angular", config.angular, "angular samples per ring");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidConfig;
    }

    const auto kind = geometry::parse_kind(space_name);
    if (!kind) {
        err << "error: unknown --space '" << space_name << "'\n";
        return kExitInvalidConfig;
    }
    config.kind = *kind;
    if (mode_name == "strict") {
        config.mode = Mode::Strict;
    } else if (mode_name == "exploratory") {
        config.mode = Mode::Exploratory;
    } else {
        err << "error: --mode must be strict or exploratory\n";
        return kExitInvalidConfig;
    }
    if (!spacing_name.empty()) {
        if (spacing_name == "psi-uniform") {
            config.spacing = soliton::Spacing::PsiUniform;
        } else if (spacing_name == "s-uniform") {
            config.spacing = soliton::Spacing::SUniform;
        } else {
            err << "error: --spacing must be psi-uniform or s-uniform\n";
            return kExitInvalidConfig;
        }
    }

    const auto* chosen = app.get_subcommands().front();
    config.command = chosen->get_name();
    if (config.command == "profile") return cmd_profile(config, out, err);
    if (config.command == "verify") return cmd_verify(config, out, err);
    if (config.command == "sweep") return cmd_sweep(config, out, err);
    if (config.command == "plot") return cmd_plot(config, out, err);
    return cmd_mesh(config, out, err);
}

}  // namespace ksol::cli
