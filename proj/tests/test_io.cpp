#include "qent/io.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>

using namespace qent;
using namespace qent::testing;
using nlohmann::json;

TEST_CASE("density matrix JSON round trip is exact")
{
    Rng rng(50);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = random_density({2, 2}, rng);
        const json j = json::parse(io::dump(io::density_to_json(rho)));
        CHECK(j["dims"] == json::array({2, 2}));
        CHECK(j["data"].size() == 16);
        const auto back = io::density_from_json(j);
        CHECK(back.dims() == rho.dims());
        CHECK(back.matrix() == rho.matrix());
    }
    const json j = io::density_to_json(DensityMatrix::maximally_mixed({2}));
    CHECK(j["data"][0][0] == 0.5);
    CHECK(j["data"][1][1] == 0.0);
}

TEST_CASE("malformed density JSON")
{
    CHECK_THROWS_AS(io::density_from_json(json::parse(R"({"data": [[1, 0]]})")), std::invalid_argument);
    CHECK_THROWS_AS(io::density_from_json(json::parse(R"({"dims": [2], "data": [[1, 0]]})")), std::invalid_argument);
    CHECK_THROWS_AS(io::density_from_json(json::parse(R"({"dims": [2], "data": [[1, 0], [0, 0], [0, 0], "x"]})")),
                    std::invalid_argument);
    // well formed but not a state
    CHECK_THROWS_AS(io::density_from_json(json::parse(R"({"dims": [2], "data": [[1, 0], [0, 0], [0, 0], [1, 0]]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(io::density_from_json(json::parse("[1, 2]")), std::invalid_argument);
}

TEST_CASE("tomography record JSON")
{
    const auto record = tomography::simulate_counts(tomography::ideal_density_matrix(), 50, 3);
    const auto back = io::record_from_json(json::parse(io::dump(io::record_to_json(record))));
    CHECK(back.shots == record.shots);
    REQUIRE(back.entries.size() == 16);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(back.entries[i].setting == record.entries[i].setting);
        CHECK(back.entries[i].counts == record.entries[i].counts);
    }
    const json first = io::record_to_json(record)["settings"][0];
    CHECK(first["gate_a"] == "I");
    CHECK(first["counts"].size() == 4);

    json broken = io::record_to_json(record);
    broken["settings"][2]["gate_b"] = "Z90";
    CHECK_THROWS_AS(io::record_from_json(broken), std::invalid_argument);
    broken = io::record_to_json(record);
    broken["settings"][2]["counts"][0] = 1000;
    CHECK_THROWS_AS(io::record_from_json(broken), std::invalid_argument);
    broken = io::record_to_json(record);
    broken["settings"][2]["counts"][0] = -1;
    CHECK_THROWS_AS(io::record_from_json(broken), std::invalid_argument);
}

TEST_CASE("CSV output")
{
    CHECK(io::format_float(0.1) == "0.1");
    CHECK(io::format_float(1.0 / 3.0) == "0.333333333333");
    CHECK(io::format_float(3.271e9) == "3271000000");

    const auto rows = entanglement::theta_sweep(tomography::ideal_density_matrix(), {0.0, 1.0});
    const std::string csv = io::sweep_csv(rows);
    CHECK(csv.rfind("theta,n_a_bc,n_b_ac,n_t_ab,n_ab,n_at,n_bt,pi_tangle_raw,pi_tangle\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

    const std::string p = io::permittivity_csv({{1.0, 3e9, 0.0}});
    CHECK(p == "eps_r,frequency_hz,shift_hz\n1,3000000000,0\n");
}

TEST_CASE("files")
{
    const auto dir = std::filesystem::temp_directory_path() / "qent_test_io";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto path = dir / "x.json";
    io::write_file_atomic(path, "{\"a\": 1}\n");
    CHECK(io::read_json(path)["a"] == 1);
    CHECK_FALSE(std::filesystem::exists(dir / "x.json.tmp"));
    io::write_file_atomic(path, "[]\n");
    CHECK(io::read_file(path) == "[]\n");

    CHECK_THROWS(io::read_file(dir / "missing.json"));
    std::ofstream(dir / "bad.json") << "{not json";
    CHECK_THROWS(io::read_json(dir / "bad.json"));
    std::filesystem::remove_all(dir);
}
