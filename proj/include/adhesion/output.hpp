#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "adhesion/diagnostics.hpp"
#include "adhesion/kinetics.hpp"

namespace adhesion {

/// Rows t,x,z over every sampled time and node (boundaries included).
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records);

/// Rows x,a,rho.
void write_density_csv(const std::filesystem::path& path, const DensityField& rho, const SpaceGrid& space,
                       const AgeGrid& age);

/// Whitespace-separated columns: x followed by one column per sampled time.
/// The first line is a comment naming the times.
void write_profile_columns(const std::filesystem::path& path, const std::vector<double>& x,
                           const std::vector<double>& times, const std::vector<std::vector<double>>& columns,
                           const std::string& quantity);

/// Text file to `path`; throws ConfigError when it cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace adhesion
