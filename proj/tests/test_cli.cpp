#include "schema_check.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() { return BISTAB_CLI_PATH; }
std::string schema_dir() { return BISTAB_SCHEMA_DIR; }

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               fs::path("bistab-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

int run(const std::string& args, const fs::path& cwd) {
    std::string cmd = "cd " + cwd.string() + " && " + cli_path() + " " + args +
                      " > /dev/null 2> /dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json load_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

void check_against_schema(const fs::path& doc_path, const std::string& schema_file) {
    nlohmann::json doc = load_json(doc_path);
    nlohmann::json schema = load_json(fs::path(schema_dir()) / schema_file);
    std::string err;
    bool ok = schema_check::validate(schema, doc, err);
    INFO(err);
    CHECK(ok);
}

}  // namespace

TEST_CASE("report command: values, nulls, schema") {
    TempDir tmp;
    CHECK(run("report --n 20", tmp.path) == 0);
    auto doc = load_json(tmp.path / "report.json");
    auto rep = doc["reports"][0];
    CHECK(rep["p_wy"]["exact"] == "5/3");
    // the worked rendering example for 17-digit round-trip floats
    CHECK(doc.dump().find("1.6666666666666667") != std::string::npos);
    CHECK(rep["p_star"]["width"].get<double>() <= 1e-12);
    check_against_schema(tmp.path / "report.json", "report.schema.json");

    CHECK(run("report --n 8 --out r8.json", tmp.path) == 0);
    auto r8 = load_json(tmp.path / "r8.json")["reports"][0];
    CHECK(r8["p_wy"].is_null());
    CHECK(r8["gamma0"].is_null());
    CHECK(r8["p_star"].is_null());
    check_against_schema(tmp.path / "r8.json", "report.schema.json");
}

TEST_CASE("scan command: exact header and boolean flags") {
    TempDir tmp;
    CHECK(run("scan --n 20 --gamma-steps 3 --p-steps 3", tmp.path) == 0);
    std::string csv = slurp(tmp.path / "feas.csv");
    CHECK(csv.rfind("n,gamma,p,q,theta,E,cond_E,cond_52,admissible\n", 0) == 0);
    CHECK(csv.find("true") != std::string::npos);
    CHECK(csv.find("false") != std::string::npos);
}

TEST_CASE("verify-appendix: strict exit code and schema") {
    TempDir tmp;
    CHECK(run("verify-appendix --n 20 --samples 16", tmp.path) == 0);
    CHECK(run("verify-appendix --n 20 --samples 16 --strict", tmp.path) == 2);
    auto doc = load_json(tmp.path / "appendix.json");
    CHECK(doc["verdict"] == "inconsistent");
    CHECK(doc["h_at_gamma0"]["exact"] == "1/135");
    CHECK(doc["printed_quartic"] == "768");
    check_against_schema(tmp.path / "appendix.json", "appendix.schema.json");
}

TEST_CASE("verify-identities: strict exit code and schema") {
    TempDir tmp;
    CHECK(run("verify-identities --n 9", tmp.path) == 0);
    CHECK(run("verify-identities --n 9 --strict", tmp.path) == 2);  // 2.6b as printed
    auto doc = load_json(tmp.path / "identities.json");
    CHECK(doc["failures"].get<int>() == 10);
    CHECK(doc["withheld"].get<int>() == 0);
    check_against_schema(tmp.path / "identities.json", "identities.schema.json");
}

TEST_CASE("stability and jl: values and schema") {
    TempDir tmp;
    CHECK(run("stability --n 20 --p 3", tmp.path) == 0);
    auto doc = load_json(tmp.path / "stability.json");
    auto e = doc["entries"][0];
    CHECK(e["Q"]["exact"] == "1792/1");
    CHECK(e["pQ"]["exact"] == "5376/1");
    CHECK(e["stable"] == true);
    CHECK(e["rayleigh"].is_null());
    check_against_schema(tmp.path / "stability.json", "stability.schema.json");

    CHECK(run("jl --n-range 12:13 --out jl.json", tmp.path) == 0);
    auto jl = load_json(tmp.path / "jl.json");
    CHECK(jl["entries"][0]["jl"]["exists"] == false);
    CHECK(jl["entries"][1]["jl"]["exists"] == true);
    check_against_schema(tmp.path / "jl.json", "stability.schema.json");
}

TEST_CASE("usage errors exit 1") {
    TempDir tmp;
    CHECK(run("report --n 20 --format yaml", tmp.path) == 1);
    CHECK(run("nonsense", tmp.path) == 1);
    CHECK(run("report --n 20 --out /nonexistent-dir/x/y.json", tmp.path) == 1);
}

TEST_CASE("outputs are byte-identical across runs and worker counts") {
    TempDir tmp;
    CHECK(run("report --n-range 9:25 --out a.json", tmp.path) == 0);
    CHECK(run("report --n-range 9:25 --out b.json", tmp.path) == 0);
    CHECK(slurp(tmp.path / "a.json") == slurp(tmp.path / "b.json"));

    CHECK(run("scan --n 20 --gamma-steps 12 --p-steps 12 --workers 1 --out s1.csv", tmp.path) ==
          0);
    CHECK(run("scan --n 20 --gamma-steps 12 --p-steps 12 --workers 4 --out s4.csv", tmp.path) ==
          0);
    CHECK(slurp(tmp.path / "s1.csv") == slurp(tmp.path / "s4.csv"));

    CHECK(run("stability --n 13 --p 20 --scan --workers 1 --out w1.json", tmp.path) == 0);
    CHECK(run("stability --n 13 --p 20 --scan --workers 3 --out w3.json", tmp.path) == 0);
    CHECK(slurp(tmp.path / "w1.json") == slurp(tmp.path / "w3.json"));
}
