#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "etakit/cli.hpp"
#include "etakit/io.hpp"
#include "oracles.hpp"

using namespace etakit;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = ETAKIT_FIXTURES;

std::string fx(const char* name) { return (kFixtures / name).string(); }

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

io::Json report_of(const CliResult& r) { return io::Json::parse(r.out); }

fs::path scratch_dir() {
    static std::mt19937_64 rng(std::random_device{}());
    fs::path dir = fs::temp_directory_path() / ("etakit_test_" + std::to_string(rng()));
    fs::create_directories(dir);
    return dir;
}

bool check_passed(const io::Json& report, const std::string& name) {
    for (const auto& c : report["checks"]) {
        if (c["name"] == name) return c["pass"].get<bool>();
    }
    FAIL("check not found: " << name);
    return false;
}

}  // namespace

TEST_CASE("parse_matrix") {
    const ComplexMatrix osc = io::parse_matrix(fx("osc2.json"));
    ComplexMatrix expected(2, 2);
    expected << 0.0, Complex(0, 1), Complex(0, -4), 0.0;
    CHECK(osc == expected);

    const ComplexMatrix one = io::matrix_from_json(io::Json::parse(R"({"n":1,"entries":[[[1,0]]]})"));
    CHECK(one.rows() == 1);
    CHECK(one(0, 0) == Complex(1, 0));

    CHECK_THROWS_AS(io::parse_matrix(fx("ragged.json")), InputError);
    CHECK_THROWS_AS(io::parse_matrix(fx("malformed.json")), InputError);
    CHECK_THROWS_AS(io::parse_matrix(fx("does_not_exist.json")), InputError);
    CHECK_THROWS_AS(io::matrix_from_json(io::Json::parse(R"({"n":0,"entries":[]})")), InputError);
    CHECK_THROWS_AS(io::matrix_from_json(io::Json::parse(R"({"n":1,"entries":[[[1,"a"]]]})")), InputError);
    CHECK_THROWS_AS(io::matrix_from_json(io::Json::parse(R"({"n":1,"entries":[[[1]]]})")), InputError);
    CHECK_THROWS_AS(io::matrix_from_json(io::Json::parse(R"([1,2])")), InputError);
    try {
        io::parse_matrix(fx("ragged.json"));
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("entries[1]") != std::string::npos);
    }
}

TEST_CASE("matrix and vector JSON round-trip at full precision") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> exponent(-300.0, 300.0);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 5;
        ComplexMatrix m = oracle::random_complex(rng, n);
        m(0, 0) *= std::pow(10.0, exponent(rng));
        const std::string text = io::to_json(m).dump();
        CHECK(io::matrix_from_json(io::Json::parse(text)) == m);
        const ComplexVector v = m.col(0);
        CHECK(io::vector_from_json(io::Json::parse(io::to_json(v).dump())) == v);
    }
}

TEST_CASE("parse_vector and parse_spec") {
    CHECK(io::parse_vector(fx("e1.json")) == Eigen::Vector2cd(0, 1));
    const ShiftedPotentialSpec s = io::parse_spec(fx("sextic.json"));
    CHECK(s.potential.degree() == 6);
    CHECK(s.alpha == 0.5);
    CHECK(s.beta == -0.25);
    CHECK(s.gamma == 0.75);
    CHECK(s.theta() == 1.5);
    CHECK(s.momentum.coeffs() == std::vector<double>{0.0, 2.0});
    CHECK_THROWS_AS(io::parse_spec(fx("complex_spec.json")), InputError);
    CHECK_THROWS_AS(io::spec_from_json(io::Json::parse(R"({"V":[1],"alpha":[1,2],"beta":0,"gamma":0})")),
                    InputError);
    CHECK_THROWS_AS(io::spec_from_json(io::Json::parse(R"({"V":[1],"beta":0,"gamma":0})")), InputError);
}

TEST_CASE("parse_complex") {
    CHECK(io::parse_complex("1+1i") == Complex(1, 1));
    CHECK(io::parse_complex("1-2i") == Complex(1, -2));
    CHECK(io::parse_complex("3") == Complex(3, 0));
    CHECK(io::parse_complex("-2.5i") == Complex(0, -2.5));
    CHECK(io::parse_complex("i") == Complex(0, 1));
    CHECK(io::parse_complex("-i") == Complex(0, -1));
    CHECK(io::parse_complex("1e-3+2e+1i") == Complex(1e-3, 20));
    CHECK(io::parse_complex("-1E2-i") == Complex(-100, -1));
    CHECK(io::parse_complex("0.5+0.25j") == Complex(0.5, 0.25));
    CHECK_THROWS_AS(io::parse_complex(""), InputError);
    CHECK_THROWS_AS(io::parse_complex("1+xi"), InputError);
    CHECK_THROWS_AS(io::parse_complex("abc"), InputError);
}

TEST_CASE("weyl residual JSON uses exact rational strings") {
    const ShiftedPotentialSpec s = io::parse_spec(fx("harmonic_gamma1.json"));
    const io::Json j = io::residual_to_json(check_symbolic<ExactComplex>(s, 0.5));
    // (x − i/2)² − (x + i)² = −3i x + 3/4
    REQUIRE(j.size() == 2);
    CHECK(j[0] == io::Json{{"a", 0}, {"b", 0}, {"re", "3/4"}, {"im", "0"}});
    CHECK(j[1] == io::Json{{"a", 1}, {"b", 0}, {"re", "0"}, {"im", "-3"}});
}

TEST_CASE("cli verify: oscillator with sigma_y passes") {
    const auto r = run_cli({"verify", "--hamiltonian", fx("osc2.json"), "--eta", fx("sigma_y.json")});
    CHECK(r.code == 0);
    const io::Json rep = report_of(r);
    CHECK(rep["status"] == "pass");
    CHECK(rep["results"]["residual"].get<double>() == 0.0);
    CHECK(check_passed(rep, "residual"));
    CHECK(rep["checks"][0]["threshold"].get<double>() == 1e-10);
}

TEST_CASE("cli verify: wrong metric fails with exit 1") {
    const auto r = run_cli({"verify", "--hamiltonian", fx("osc2.json"), "--eta", fx("identity2.json")});
    CHECK(r.code == 1);
    CHECK(report_of(r)["status"] == "fail");
    CHECK_FALSE(check_passed(report_of(r), "residual"));
}

TEST_CASE("cli input errors exit 2") {
    CHECK(run_cli({"solve", "--hamiltonian", fx("missing.json")}).code == 2);
    const auto missing = run_cli({"solve", "--hamiltonian", fx("missing.json")});
    CHECK(report_of(missing)["status"] == "input_error");
    CHECK(run_cli({"verify", "--hamiltonian", fx("ragged.json"), "--eta", fx("sigma_y.json")}).code == 2);
    CHECK(run_cli({"verify", "--hamiltonian", fx("malformed.json"), "--eta", fx("sigma_y.json")}).code == 2);
    CHECK(run_cli({"weyl", "--spec", fx("complex_spec.json")}).code == 2);
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"--tol", "-1", "solve", "--hamiltonian", fx("osc2.json")}).code == 2);
    CHECK(run_cli({"perturb", "--hamiltonian", fx("osc2.json"), "--eta", fx("sigma_y.json")}).code == 2);
    CHECK(run_cli({"perturb", "--hamiltonian", fx("osc2.json"), "--eta", fx("sigma_y.json"), "--auto",
                   "--poly", "1,2i"}).code == 2);
    CHECK(run_cli({"example", "oscillator", "--omega", "0"}).code == 2);
    CHECK(run_cli({"example", "two-point", "--x", "2", "--y", "1"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("cli weyl") {
    const auto ok = run_cli({"weyl", "--spec", fx("harmonic_gamma1.json")});
    CHECK(ok.code == 0);
    CHECK(report_of(ok)["results"]["residual"].empty());

    const auto bad = run_cli({"weyl", "--spec", fx("harmonic_gamma1.json"), "--theta", "0"});
    CHECK(bad.code == 1);
    const io::Json terms = report_of(bad)["results"]["residual"];
    REQUIRE(terms.size() == 1);
    CHECK(terms[0] == io::Json{{"a", 1}, {"b", 0}, {"re", "0"}, {"im", "-4"}});

    CHECK(run_cli({"weyl", "--spec", fx("sextic.json")}).code == 0);
    CHECK(run_cli({"weyl", "--spec", fx("sextic.json"), "--float"}).code == 0);
    CHECK(run_cli({"weyl", "--spec", fx("sextic.json"), "--theta", "1.501"}).code == 1);
}

TEST_CASE("cli solve") {
    const auto r = run_cli({"solve", "--hamiltonian", fx("osc2.json"), "--positive"});
    CHECK(r.code == 0);
    const io::Json rep = report_of(r);
    CHECK(rep["results"]["dimension"] == 2);
    CHECK(rep["results"]["basis"].size() == 2);
    CHECK(rep["results"]["metric_class"]["positive"] == true);

    // spectrum 1 ± i is not real, so no positive metric exists
    const fs::path dir = scratch_dir();
    const auto made = run_cli({"example", "two-point", "--x", "1+1i", "--y", "0", "--prefix",
                               (dir / "tp").string()});
    REQUIRE(made.code == 0);
    const auto none = run_cli({"solve", "--hamiltonian", (dir / "tp_H.json").string(), "--positive"});
    CHECK(none.code == 1);
    CHECK(report_of(none)["results"]["metric"].is_null());
    fs::remove_all(dir);
}

TEST_CASE("cli chain") {
    const auto r = run_cli({"chain", "--hamiltonian", fx("osc2.json"), "--eta", fx("sigma_y.json"),
                            "--k-max", "3"});
    CHECK(r.code == 0);
    const io::Json res = report_of(r)["results"];
    CHECK(res["normalized"] == true);
    CHECK(res["etas"].size() == 4);
    CHECK(res["rank"] == 2);
    CHECK(res["shift_alpha"].get<double>() == 0.0);

    const auto raw = run_cli({"chain", "--hamiltonian", fx("osc2.json"), "--eta", fx("sigma_y.json"),
                              "--k-max", "1", "--no-normalize"});
    const ComplexMatrix eta1 = io::matrix_from_json(report_of(raw)["results"]["etas"][1]);
    ComplexMatrix expected(2, 2);
    expected << 4.0, 0.0, 0.0, 1.0;
    CHECK(eta1 == expected);

    const auto degenerate = run_cli({"chain", "--hamiltonian", fx("nilpotent_two_point.json"),
                                     "--eta", fx("sigma_x.json"), "--k-max", "2"});
    CHECK(degenerate.code == 1);
    CHECK_FALSE(check_passed(report_of(degenerate), "invertible[1]"));

    const auto shifted = run_cli({"chain", "--hamiltonian", fx("nilpotent_two_point.json"),
                                  "--eta", fx("sigma_x.json"), "--k-max", "3", "--shift"});
    CHECK(shifted.code == 0);
    CHECK(report_of(shifted)["results"]["shift_alpha"].get<double>() != 0.0);

    const auto bad_eta = run_cli({"chain", "--hamiltonian", fx("osc2.json"), "--eta",
                                  fx("identity2.json")});
    CHECK(bad_eta.code == 1);
    CHECK_FALSE(check_passed(report_of(bad_eta), "eta0_residual"));
}

TEST_CASE("cli perturb") {
    const auto r = run_cli({"perturb", "--hamiltonian", fx("osc2.json"), "--eta", fx("sigma_y.json"),
                            "--K", fx("sigma_y.json"), "--poly", "0,3"});
    CHECK(r.code == 0);
    ComplexMatrix expected(2, 2);
    expected << 0.0, Complex(0, 4), Complex(0, -7), 0.0;
    CHECK(io::matrix_from_json(report_of(r)["results"]["H_tilde"]) == expected);

    const auto a = run_cli({"perturb", "--hamiltonian", fx("osc2.json"), "--eta", fx("sigma_y.json"),
                            "--auto", "--poly", "0,3"});
    CHECK(a.code == 0);
    CHECK(io::matrix_from_json(report_of(a)["results"]["H_tilde"]) == expected);

    const auto nc = run_cli({"perturb", "--hamiltonian", fx("osc2.json"), "--eta", fx("sigma_y.json"),
                             "--K", fx("diag12.json")});
    CHECK(nc.code == 1);
    CHECK_FALSE(check_passed(report_of(nc), "K_commutes_with_eta"));

    const auto herm = run_cli({"perturb", "--hamiltonian", fx("diag12.json"), "--eta",
                               fx("identity2.json"), "--auto", "--poly", "1"});
    CHECK(herm.code == 1);
    const auto allowed = run_cli({"perturb", "--hamiltonian", fx("diag12.json"), "--eta",
                                  fx("identity2.json"), "--auto", "--poly", "1", "--allow-hermitian"});
    CHECK(allowed.code == 0);
}

TEST_CASE("cli quasi") {
    const auto r = run_cli({"quasi", "--hamiltonian", fx("osc2.json"), "--eta", fx("diag41.json"),
                            "--phi", fx("e0.json"), "--psi", fx("e0.json")});
    CHECK(r.code == 0);
    const io::Json res = report_of(r)["results"];
    const ComplexMatrix h_eta = io::matrix_from_json(res["H_eta"]);
    ComplexMatrix expected(2, 2);
    expected << 0.0, Complex(0, 2), Complex(0, -2), 0.0;
    CHECK((h_eta - expected).norm() < 1e-14);
    CHECK(res["inner_product"][0].get<double>() == doctest::Approx(4.0));

    const auto indefinite = run_cli({"quasi", "--hamiltonian", fx("osc2.json"), "--eta", fx("sigma_y.json")});
    CHECK(indefinite.code == 1);
    CHECK_FALSE(check_passed(report_of(indefinite), "eta_positive"));

    const auto form = run_cli({"quasi", "--hamiltonian", fx("osc2.json"), "--eta", fx("sigma_y.json"),
                               "--phi", fx("e0.json"), "--psi", fx("e1.json"), "--allow-indefinite"});
    CHECK(form.code == 0);
    CHECK(report_of(form)["results"]["inner_product"] == io::Json::array({0.0, 1.0}));
}

TEST_CASE("cli example writes files that round-trip") {
    const fs::path dir = scratch_dir();
    const auto r = run_cli({"example", "oscillator", "--omega", "2", "--prefix", (dir / "osc").string()});
    CHECK(r.code == 0);
    ComplexMatrix expected(2, 2);
    expected << 0.0, Complex(0, 1), Complex(0, -4), 0.0;
    CHECK(io::parse_matrix(dir / "osc_H.json") == expected);
    CHECK(io::parse_matrix(dir / "osc_eta.json") == io::parse_matrix(fx("sigma_y.json")));

    const auto tp = run_cli({"example", "two-point", "--x", "1+1i", "--y", "0", "--prefix",
                             (dir / "tp").string()});
    CHECK(tp.code == 0);
    ComplexMatrix h(2, 2);
    h << Complex(1, 1), 0.0, 0.0, Complex(1, -1);
    CHECK(io::parse_matrix(dir / "tp_H.json") == h);
    CHECK(io::parse_matrix(dir / "tp_eta.json") == io::parse_matrix(fx("sigma_x.json")));
    fs::remove_all(dir);
}

TEST_CASE("cli reports are byte-deterministic") {
    const std::vector<std::vector<std::string>> configs = {
        {"verify", "--hamiltonian", fx("osc2.json"), "--eta", fx("sigma_y.json")},
        {"--seed", "7", "solve", "--hamiltonian", fx("diag12.json"), "--positive"},
        {"chain", "--hamiltonian", fx("osc2.json"), "--eta", fx("sigma_y.json"), "--k-max", "5"},
        {"--format", "text", "weyl", "--spec", fx("sextic.json"), "--theta", "1"},
        {"quasi", "--hamiltonian", fx("osc2.json"), "--eta", fx("diag41.json")},
        {"solve", "--hamiltonian", fx("missing.json")},
    };
    for (const auto& cfg : configs) {
        const auto a = run_cli(cfg);
        const auto b = run_cli(cfg);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("cli --out and --format text") {
    const fs::path dir = scratch_dir();
    const fs::path out = dir / "report.json";
    const auto r = run_cli({"--out", out.string(), "verify", "--hamiltonian", fx("osc2.json"), "--eta",
                            fx("sigma_y.json")});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(io::read_json_file(out)["status"] == "pass");

    const auto text = run_cli({"verify", "--hamiltonian", fx("osc2.json"), "--eta", fx("sigma_y.json"),
                               "--format", "text"});
    CHECK(text.code == 0);
    CHECK(text.out.find("[PASS] residual") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("exit-code contract matches report status") {
    CHECK(cli::exit_code(cli::Status::pass) == 0);
    CHECK(cli::exit_code(cli::Status::fail) == 1);
    CHECK(cli::exit_code(cli::Status::input_error) == 2);
    cli::RunConfig cfg;
    cfg.command = cli::Command::verify;
    cfg.hamiltonian_path = fx("osc2.json");
    cfg.eta_path = fx("sigma_y.json");
    for (const char* eta : {"sigma_y.json", "identity2.json", "ragged.json"}) {
        cfg.eta_path = fx(eta);
        const cli::Report rep = cli::run(cfg);
        const bool all = std::all_of(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.pass; });
        if (rep.status != cli::Status::input_error) CHECK((rep.status == cli::Status::pass) == all);
    }
}
