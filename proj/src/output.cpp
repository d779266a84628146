#include "adhesion/output.hpp"

#include <fstream>
#include <iomanip>

#include "adhesion/errors.hpp"

namespace adhesion {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << std::setprecision(17);
  return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw ConfigError("error while writing '" + path.string() + "'");
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  auto out = open_out(path);
  out << "t,x,z\n";
  for (std::size_t n = 0; n < traj.t.size(); ++n) {
    for (std::size_t i = 0; i < traj.x.size(); ++i) out << traj.t[n] << ',' << traj.x[i] << ',' << traj.z[n][i] << '\n';
  }
  close_checked(out, path);
}

void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records) {
  auto out = open_out(path);
  out << diagnostics_header() << '\n';
  for (const auto& r : records) out << diagnostics_row(r) << '\n';
  close_checked(out, path);
}

void write_density_csv(const std::filesystem::path& path, const DensityField& rho, const SpaceGrid& space,
                       const AgeGrid& age) {
  auto out = open_out(path);
  out << "x,a,rho\n";
  for (int i = 0; i < space.nx; ++i) {
    for (int j = 0; j <= age.na; ++j) out << space.interior(i) << ',' << age.a(j) << ',' << rho.rho(i, j) << '\n';
  }
  close_checked(out, path);
}

void write_profile_columns(const std::filesystem::path& path, const std::vector<double>& x,
                           const std::vector<double>& times, const std::vector<std::vector<double>>& columns,
                           const std::string& quantity) {
  auto out = open_out(path);
  out << "# x";
  for (double t : times) out << ' ' << quantity << "(t=" << t << ')';
  out << '\n';
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << x[i];
    for (const auto& col : columns) out << ' ' << col[i];
    out << '\n';
  }
  close_checked(out, path);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  close_checked(out, path);
}

}  // namespace adhesion
