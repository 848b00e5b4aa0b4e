#pragma once

#include <ksoliton/geometry.hpp>
#include <ksoliton/soliton.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ksol::cli {

// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInvalidConfig = 2;

struct RunConfig {
    std::string command;
    geometry::SpaceKind kind = geometry::SpaceKind::Euclidean;
    std::optional<int> n;
    std::optional<int> m;
    double alpha = 0.5;
    soliton::Mode mode = soliton::Mode::Strict;

    std::optional<int> points;
    std::optional<soliton::Spacing> spacing;
    std::optional<double> s_end;
    std::optional<double> tau_end;

    std::string format = "csv";  // csv | json | both
    std::string output;          // empty: standard output

    std::optional<double> quad_tol;
    std::optional<double> root_tol;
    std::optional<double> ode_tol;
    double debug_perturb_g = 1.0;

    std::vector<double> alphas;  // sweep
    int angular = 64;            // mesh
};

/// Resolves the space from --n/--m and checks every SolitonParams invariant
/// (ValidationError otherwise).
soliton::SolitonParams to_params(const RunConfig& config);
soliton::SolitonParams to_params(const RunConfig& config, double alpha);

/// Grid for a command, filling in that command's defaults.
soliton::GridSpec to_grid(const RunConfig& config);

int cmd_profile(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_plot(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_mesh(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv, dispatches to the subcommand and returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ksol::cli
