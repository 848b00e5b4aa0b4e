#include <ksoliton/io.hpp>

#include <ksoliton/errors.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <system_error>

#ifndef KSOLITON_VERSION
#define KSOLITON_VERSION "0.0.0"
#endif

namespace ksol::io {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string short_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

std::string tool_version() { return KSOLITON_VERSION; }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ProfileRow profile_row(const soliton::SolitonProfile& p, std::size_t i) {
    return {p.s[i], p.tau[i], p.rho[i], p.rho_prime[i], p.phi[i], p.theta[i], p.K[i], p.residual[i]};
}

std::string profile_csv(const soliton::SolitonProfile& profile) {
    std::string out = kProfileCsvHeader;
    out += '\n';
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const ProfileRow row = profile_row(profile, i);
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out += ',';
            out += format_double(row[k]);
        }
        out += '\n';
    }
    return out;
}

json profile_json(const soliton::SolitonProfile& profile) {
    json meta;
    meta["space"] = profile.family;
    meta["n"] = profile.n;
    meta["alpha"] = profile.alpha;
    meta["mode"] = std::string(soliton::mode_name(profile.mode));
    meta["s_max_effective"] = profile.s_max_effective.is_unbounded()
                                  ? json(nullptr)
                                  : json(profile.s_max_effective.value());
    meta["tool_version"] = tool_version();

    json rows = json::array();
    for (std::size_t i = 0; i < profile.size(); ++i) {
        json row = json::array();
        for (double v : profile_row(profile, i)) row.push_back(number_or_null(v));
        rows.push_back(std::move(row));
    }
    return json{{"meta", std::move(meta)}, {"rows", std::move(rows)}};
}

std::vector<ProfileRow> parse_profile_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kProfileCsvHeader)
        throw ValidationError("profile csv: unexpected header");
    std::vector<ProfileRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ProfileRow row{};
        std::istringstream fields(line);
        std::string field;
        std::size_t k = 0;
        while (std::getline(fields, field, ',')) {
            if (k >= row.size()) throw ValidationError("profile csv: too many fields");
            row[k++] = std::strtod(field.c_str(), nullptr);
        }
        if (k != row.size()) throw ValidationError("profile csv: expected 8 fields");
        rows.push_back(row);
    }
    return rows;
}

json params_json(const soliton::SolitonParams& params, const soliton::GridSpec& grid) {
    const auto& space = params.space;
    json j;
    j["space"] = std::string(geometry::kind_name(space.kind));
    j["n"] = space.n;
    if (space.is_hyperbolic()) {
        j["m"] = space.m;
        j["p"] = space.p;
    }
    j["alpha"] = params.alpha;
    j["mode"] = std::string(soliton::mode_name(params.mode));
    j["quad_tol"] = params.quad_tol;
    j["root_tol"] = params.root_tol;
    j["ode_tol"] = params.ode_tol;
    if (params.g_scale != 1.0) j["debug_perturb_g"] = params.g_scale;
    j["grid"] = {
        {"points", grid.points},
        {"spacing", grid.spacing == soliton::Spacing::PsiUniform ? "psi-uniform" : "s-uniform"},
        {"s_end", grid.s_end ? json(*grid.s_end) : json(nullptr)},
        {"tau_end", grid.tau_end},
    };
    return j;
}

json report_json(const verify::VerificationReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"sup_deviation", number_or_null(c.sup_deviation)},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed},
                          {"detail", c.detail}});
    }
    return json{{"params", params_json(report.params, report.grid)},
                {"checks", std::move(checks)},
                {"overall", report.overall},
                {"wall_time_s", report.wall_time_s},
                {"tool_version", tool_version()}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = kSweepCsvHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += format_double(r.alpha) + ',' + format_double(r.sup_residual) + ',' +
               format_double(r.s_at_tau_099) + ',' + format_double(r.phi_at_s) + '\n';
    }
    return out;
}

std::string profile_svg(const soliton::SolitonProfile& profile, const PlotOptions& options) {
    constexpr double width = 800.0;
    constexpr double height = 600.0;
    constexpr double margin = 60.0;

    double s_max = profile.s.back();
    double phi_max = 0.0;
    for (double v : profile.phi) phi_max = std::max(phi_max, v);
    const double x_extent = options.asymptote ? std::max(s_max, std::numbers::pi / 2) : s_max;
    const double sx = (width - 2 * margin) / (2.0 * std::max(x_extent, 1e-12));
    const double sy = (height - 2 * margin) / std::max(phi_max, 1e-12);
    const double stroke = 2.0 / std::min(sx, sy);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "  <text x=\"" << width / 2 << "\" y=\"" << margin / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << options.title << "</text>\n"
        // Data coordinates: s to the right, phi upwards, origin at the apex.
        << "  <g transform=\"translate(" << width / 2 << ' ' << height - margin << ") scale("
        << short_double(sx) << ' ' << short_double(-sy) << ")\" fill=\"none\">\n";

    svg << "    <line class=\"axis\" x1=\"" << short_double(-x_extent) << "\" y1=\"0\" x2=\""
        << short_double(x_extent) << "\" y2=\"0\" stroke=\"#888\" stroke-width=\""
        << short_double(stroke / 2) << "\"/>\n";
    svg << "    <line class=\"axis\" x1=\"0\" y1=\"0\" x2=\"0\" y2=\"" << short_double(phi_max)
        << "\" stroke=\"#888\" stroke-width=\"" << short_double(stroke / 2) << "\"/>\n";
    if (options.asymptote) {
        for (double x : {-std::numbers::pi / 2, std::numbers::pi / 2}) {
            svg << "    <line class=\"asymptote\" x1=\"" << short_double(x) << "\" y1=\"0\" x2=\""
                << short_double(x) << "\" y2=\"" << short_double(phi_max)
                << "\" stroke=\"#c33\" stroke-dasharray=\"" << short_double(4 * stroke) << ' '
                << short_double(3 * stroke) << "\" stroke-width=\"" << short_double(stroke / 2)
                << "\"/>\n";
        }
    }
    for (double side : {1.0, -1.0}) {
        svg << "    <polyline class=\"" << (side > 0 ? "profile" : "mirror")
            << "\" stroke=\"#1f4e99\" stroke-width=\"" << short_double(stroke) << "\" points=\"";
        for (std::size_t i = 0; i < profile.size(); ++i) {
            if (i) svg << ' ';
            svg << short_double(side * profile.s[i] + 0.0) << ',' << short_double(profile.phi[i]);
        }
        svg << "\"/>\n";
    }
    svg << "  </g>\n</svg>\n";
    return svg.str();
}

std::string profile_obj(const soliton::SolitonProfile& profile, int angular, MeshStats* stats) {
    if (angular < 3) throw ValidationError("mesh: at least 3 angular samples are required");
    if (profile.size() < 2 || profile.s.front() != 0.0)
        throw ValidationError("mesh: radial grid must start at the axis");
    const std::size_t rings = profile.size() - 1;
    const auto cols = static_cast<std::size_t>(angular);

    std::ostringstream obj;
    obj << "# rotational translating soliton over R^2, alpha = " << format_double(profile.alpha)
        << '\n';
    obj << "v 0 0 " << format_double(profile.phi.front()) << '\n';
    for (std::size_t i = 1; i <= rings; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double psi = 2.0 * std::numbers::pi * static_cast<double>(j) / angular;
            obj << "v " << format_double(profile.s[i] * std::cos(psi)) << ' '
                << format_double(profile.s[i] * std::sin(psi)) << ' '
                << format_double(profile.phi[i]) << '\n';
        }
    }
    // OBJ indices are 1-based; vertex 1 is the apex.
    auto ring_vertex = [cols](std::size_t ring, std::size_t j) {
        return 2 + (ring - 1) * cols + (j % cols);
    };
    std::size_t triangles = 0;
    for (std::size_t j = 0; j < cols; ++j) {
        obj << "f 1 " << ring_vertex(1, j) << ' ' << ring_vertex(1, j + 1) << '\n';
        ++triangles;
    }
    for (std::size_t i = 1; i < rings; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t a = ring_vertex(i, j);
            const std::size_t b = ring_vertex(i + 1, j);
            const std::size_t c = ring_vertex(i + 1, j + 1);
            const std::size_t d = ring_vertex(i, j + 1);
            obj << "f " << a << ' ' << b << ' ' << c << '\n';
            obj << "f " << a << ' ' << c << ' ' << d << '\n';
            triangles += 2;
        }
    }
    if (stats) *stats = {1 + rings * cols, triangles};
    return obj.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace ksol::io
