#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sshlab/config.hpp"
#include "sshlab/dynamics.hpp"
#include "sshlab/scatter.hpp"
#include "sshlab/spectral.hpp"

namespace sshlab::io {

using json = nlohmann::ordered_json;

// Every numeric CSV field is written with format_double (shortest round-trip),
// so identical inputs give identical bytes.

json to_json(const HybridChainSpec& spec);
json to_json(const StackSpec& spec);
json to_json(const QuenchProtocol& protocol);
json to_json(const EdgeStateReport& report, bool with_amplitudes = false);
json to_json(const BandSweepTable& table);
json to_json(const ScatteringResult& s);

std::string spectrum_csv(const Eigen::VectorXcd& eigenvalues);
std::string spectrum_svg(const Eigen::VectorXcd& eigenvalues, const HybridChainSpec& spec);

/// Columns v, re_E, im_E; one row per (v, eigenvalue index).
std::string band_sweep_csv(const BandSweepTable& table);
/// `imaginary` selects Im E instead of Re E on the y axis.
std::string band_sweep_svg(const BandSweepTable& table, bool imaginary);

std::string edge_states_csv(const std::vector<EdgeStateReport>& reports);
/// Columns site, re_psi, im_psi (1-based sites).
std::string edge_profile_csv(const EdgeStateReport& report);
std::string edge_profiles_svg(const std::vector<EdgeStateReport>& reports, const HybridChainSpec& spec);

/// Time-by-site matrix. First line is a '#' comment with the protocol JSON,
/// then a header row "t,1,2,...,N", then one row per time sample.
std::string lightcone_csv(const LightCone& cone, bool renormalize);
/// Sites run left to right, time runs downward; linear viridis scale.
std::string lightcone_svg(const LightCone& cone, bool renormalize);

/// Columns t, P, preceded by the protocol comment line.
std::string reflection_csv(const ReflectionSignal& signal, const QuenchProtocol& protocol);
std::string reflection_svg(const ReflectionSignal& signal, const QuenchProtocol& protocol);

/// Columns E, r_left, r_right, transmission, abs_diff; failed energies are
/// kept with empty fields and listed in the error column.
std::string scatter_csv(const std::vector<SweepPoint>& points);
std::string scatter_svg(const std::vector<SweepPoint>& points, const StackSpec& stack);

std::string sha256_hex(std::string_view data);

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never see a partial file.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace sshlab::io
