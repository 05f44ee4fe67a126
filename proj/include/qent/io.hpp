// io.hpp: file formats shared by the command-line tools.
//
// Density matrix JSON: {"dims": [2, 2], "data": [[re, im], ...]} row-major.
// Tomography record JSON:
//   {"shots": n, "settings": [{"gate_a": "X90", "gate_b": "I", "counts": [n00, n01, n10, n11]}, ...]}

#pragma once

#include "qent/dielectric.hpp"
#include "qent/entanglement.hpp"
#include "qent/hilbert.hpp"
#include "qent/tomography.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace qent::io {

nlohmann::json density_to_json(const DensityMatrix& rho);
/// Throws std::invalid_argument on malformed input or a non-physical matrix.
DensityMatrix density_from_json(const nlohmann::json& j);

/// Matrix with explicit dims, validated as a DensityMatrix.
nlohmann::json matrix_to_json(const ComplexMatrix& m, const std::vector<std::size_t>& dims);

nlohmann::json record_to_json(const tomography::TomographyRecord& record);
tomography::TomographyRecord record_from_json(const nlohmann::json& j);

/// Shortest round-trip JSON text, two-space indent, trailing newline.
std::string dump(const nlohmann::json& j);

/// %.12g
std::string format_float(double x);

std::string sweep_csv(const std::vector<entanglement::SweepRow>& rows);
std::string permittivity_csv(const std::vector<dielectric::SweepPoint>& points);

std::string read_file(const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace qent::io
