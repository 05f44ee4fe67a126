#include "qent/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qent::io {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m, const std::vector<std::size_t>& dims)
{
    json data = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            data.push_back({m(r, c).real(), m(r, c).imag()});
    return json{{"dims", dims}, {"data", std::move(data)}};
}

json density_to_json(const DensityMatrix& rho)
{
    return matrix_to_json(rho.matrix(), rho.dims());
}

DensityMatrix density_from_json(const json& j)
{
    try {
        if (!j.is_object() || !j.contains("dims") || !j.contains("data"))
            throw std::invalid_argument("density matrix JSON needs \"dims\" and \"data\"");
        std::vector<std::size_t> dims;
        std::size_t d = 1;
        for (const auto& x : j.at("dims")) {
            const auto k = x.get<std::int64_t>();
            if (k <= 0)
                throw std::invalid_argument("density matrix JSON: dims must be positive");
            dims.push_back(static_cast<std::size_t>(k));
            d *= dims.back();
        }
        const auto& data = j.at("data");
        if (!data.is_array() || data.size() != d * d)
            throw std::invalid_argument("density matrix JSON: data length does not match dims");
        ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        std::size_t k = 0;
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c, ++k) {
                const auto& pair = data[k];
                if (!pair.is_array() || pair.size() != 2)
                    throw std::invalid_argument("density matrix JSON: entries must be [re, im] pairs");
                m(r, c) = Complex(pair[0].get<double>(), pair[1].get<double>());
            }
        return DensityMatrix(std::move(dims), std::move(m));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("density matrix JSON: ") + e.what());
    }
}

json record_to_json(const tomography::TomographyRecord& record)
{
    json settings = json::array();
    for (const auto& e : record.entries)
        settings.push_back({{"gate_a", tomography::gate_name(e.setting.gate_a)},
                            {"gate_b", tomography::gate_name(e.setting.gate_b)},
                            {"counts", e.counts}});
    return json{{"shots", record.shots}, {"settings", std::move(settings)}};
}

tomography::TomographyRecord record_from_json(const json& j)
{
    try {
        tomography::TomographyRecord record;
        auto count = [](const json& v) {
            if (!v.is_number_unsigned())
                throw std::invalid_argument("tomography record JSON: counts and shots must be non-negative integers");
            return v.get<std::uint64_t>();
        };
        record.shots = count(j.at("shots"));
        for (const auto& s : j.at("settings")) {
            tomography::SettingCounts entry;
            entry.setting.gate_a = tomography::parse_gate(s.at("gate_a").get<std::string>());
            entry.setting.gate_b = tomography::parse_gate(s.at("gate_b").get<std::string>());
            const auto& counts = s.at("counts");
            if (!counts.is_array() || counts.size() != 4)
                throw std::invalid_argument("tomography record JSON: counts must hold four outcomes");
            for (std::size_t k = 0; k < 4; ++k)
                entry.counts[k] = count(counts[k]);
            record.entries.push_back(entry);
        }
        record.validate();
        return record;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("tomography record JSON: ") + e.what());
    }
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

std::string format_float(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string sweep_csv(const std::vector<entanglement::SweepRow>& rows)
{
    std::ostringstream out;
    out << "theta,n_a_bc,n_b_ac,n_t_ab,n_ab,n_at,n_bt,pi_tangle_raw,pi_tangle\n";
    for (const auto& row : rows) {
        const auto& r = row.report;
        out << format_float(row.theta) << ',' << format_float(r.n_a_bc) << ',' << format_float(r.n_b_ac) << ','
            << format_float(r.n_c_ab) << ',' << format_float(r.n_ab) << ',' << format_float(r.n_ac) << ','
            << format_float(r.n_bc) << ',' << format_float(r.pi_tangle) << ',' << format_float(r.pi_tangle_floored)
            << '\n';
    }
    return out.str();
}

std::string permittivity_csv(const std::vector<dielectric::SweepPoint>& points)
{
    std::ostringstream out;
    out << "eps_r,frequency_hz,shift_hz\n";
    for (const auto& p : points)
        out << format_float(p.eps_r) << ',' << format_float(p.frequency_hz) << ',' << format_float(p.shift_hz) << '\n';
    return out.str();
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::filesystem::path& path)
{
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out)
            throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace qent::io
