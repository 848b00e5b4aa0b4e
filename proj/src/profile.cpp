// Profile assembly. Every stage is a data-parallel loop over grid indices; the
// serial path runs the very same per-index bodies in order, so both paths are
// bitwise identical. Prefix sums stay sequential.

#include <ksoliton/soliton.hpp>

#include <ksoliton/errors.hpp>

#include "parallel.hpp"

#include <cmath>
#include <sstream>

namespace ksol::soliton {

namespace {

void validate_grid(const GridSpec& grid) {
    if (grid.points < 2) throw ValidationError("grid: at least two points are required");
    if (!grid.s_end && !(grid.tau_end > 0.0 && grid.tau_end < 1.0))
        throw ValidationError("grid: tau_end must lie in (0, 1)");
    if (grid.s_end && !(*grid.s_end > 0.0))
        throw ValidationError("grid: s_end must be positive");
}

std::vector<double> grid_radii(const Construction& c, const GridSpec& grid, Execution exec) {
    const auto count = static_cast<std::size_t>(grid.points);
    const double last = static_cast<double>(count - 1);

    double s_end = 0.0;
    double psi_end = 0.0;
    if (grid.s_end) {
        s_end = *grid.s_end;
        if (!c.s_max_effective().exceeds(s_end)) {
            std::ostringstream msg;
            msg << "grid: s_end = " << s_end << " is not below the effective radius "
                << c.s_max_effective().value();
            throw DomainError(msg.str());
        }
        if (grid.spacing == Spacing::PsiUniform) psi_end = c.radial_integral(s_end);
    } else {
        psi_end = c.tau_integral(grid.tau_end);
        s_end = c.radial_from_integral(psi_end);
    }

    std::vector<double> s(count, 0.0);
    if (grid.spacing == Spacing::SUniform) {
        for (std::size_t i = 1; i + 1 < count; ++i) s[i] = s_end * (static_cast<double>(i) / last);
    } else {
        detail::for_each_index(count, exec, [&](std::size_t i) {
            if (i == 0 || i + 1 == count) return;
            s[i] = c.radial_from_integral(psi_end * (static_cast<double>(i) / last));
        });
    }
    s.back() = s_end;
    return s;
}

}  // namespace

SolitonProfile Construction::build(const GridSpec& grid, Execution exec) const {
    validate_grid(grid);

    SolitonProfile prof;
    prof.family = family_;
    prof.n = n_;
    prof.alpha = alpha_;
    prof.mode = mode_;
    prof.s_max_effective = s_max_;
    prof.space = space_;

    prof.s = grid_radii(*this, grid, exec);
    const std::size_t count = prof.s.size();
    const auto& s = prof.s;

    // Psi by segments, then a sequential prefix sum.
    std::vector<double> psi_segment(count, 0.0);
    detail::for_each_index(count, exec, [&](std::size_t i) {
        if (i == 0) return;
        const double n = n_;
        auto weight = [this, n](double v) { return n * scaled_g(v); };
        psi_segment[i] = numerics::integrate(weight, s[i - 1], s[i], rel_opts()).value;
    });
    prof.psi.assign(count, 0.0);
    for (std::size_t i = 1; i < count; ++i) prof.psi[i] = prof.psi[i - 1] + psi_segment[i];

    std::vector<Level> levels(count);
    detail::for_each_index(count, exec, [&](std::size_t i) {
        if (i > 0) levels[i] = level_from_integral(prof.psi[i]);
    });
    prof.tau.assign(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) prof.tau[i] = levels[i].tau;

    prof.rho.assign(count, 0.0);
    prof.rho_prime.assign(count, 0.0);
    prof.theta.assign(count, 0.0);
    prof.K.assign(count, 0.0);
    prof.residual.assign(count, 0.0);
    detail::for_each_index(count, exec, [&](std::size_t i) {
        const PointState st = state_from_level(s[i], levels[i]);
        prof.rho[i] = st.rho;
        prof.rho_prime[i] = st.rho_prime;
        prof.theta[i] = st.theta;
        prof.K[i] = st.K;
        prof.residual[i] = st.residual;
    });

    std::vector<double> phi_segment(count, 0.0);
    detail::for_each_index(count, exec, [&](std::size_t i) {
        if (i == 0) return;
        phi_segment[i] = height_between(s[i - 1], levels[i - 1], s[i], levels[i]);
    });
    prof.phi.assign(count, 0.0);
    for (std::size_t i = 1; i < count; ++i) prof.phi[i] = prof.phi[i - 1] + phi_segment[i];

    return prof;
}

}  // namespace ksol::soliton
