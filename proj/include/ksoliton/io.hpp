#pragma once

// File formats: profile CSV/JSON, verification report JSON, sweep CSV, SVG plot
// and Wavefront OBJ mesh. Writers produce strings; atomic_write puts them on disk.

#include <ksoliton/soliton.hpp>
#include <ksoliton/verify.hpp>

#include <json.hpp>

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ksol::io {

inline constexpr const char* kProfileCsvHeader = "s,tau,rho,rho_prime,phi,theta,K,residual";
inline constexpr const char* kSweepCsvHeader = "alpha,sup_residual,s_at_tau_0.99,phi_at_that_s";

std::string tool_version();

/// 17 significant digits, so binary64 values round-trip.
std::string format_double(double v);

using ProfileRow = std::array<double, 8>;
ProfileRow profile_row(const soliton::SolitonProfile& profile, std::size_t i);

std::string profile_csv(const soliton::SolitonProfile& profile);
nlohmann::json profile_json(const soliton::SolitonProfile& profile);

/// Parses the rows of a profile CSV; throws ValidationError on a bad header.
std::vector<ProfileRow> parse_profile_csv(std::istream& in);

nlohmann::json params_json(const soliton::SolitonParams& params, const soliton::GridSpec& grid);
nlohmann::json report_json(const verify::VerificationReport& report);

struct SweepRow {
    double alpha;
    double sup_residual;
    double s_at_tau_099;
    double phi_at_s;
};
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct PlotOptions {
    std::string title;
    bool asymptote = false;  // dashed verticals at s = +-pi/2
};
/// Bowl profile (s, phi(s)) with its mirror, drawn in data coordinates.
std::string profile_svg(const soliton::SolitonProfile& profile, const PlotOptions& options);

struct MeshStats {
    std::size_t vertices = 0;
    std::size_t triangles = 0;
};
/// Surface of revolution over R^2: apex vertex plus one ring per nonzero radius,
/// fan around the apex, two triangles per quad, counter-clockwise seen from +t.
std::string profile_obj(const soliton::SolitonProfile& profile, int angular, MeshStats* stats = nullptr);

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace ksol::io
