#include "etakit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "etakit/chain.hpp"
#include "etakit/perturbation.hpp"
#include "etakit/quasi.hpp"
#include "etakit/weyl.hpp"

namespace etakit::cli {

const char* to_string(Command c) {
    switch (c) {
        case Command::verify: return "verify";
        case Command::solve: return "solve";
        case Command::chain: return "chain";
        case Command::perturb: return "perturb";
        case Command::quasi: return "quasi";
        case Command::weyl: return "weyl";
        case Command::example: return "example";
    }
    return "unknown";
}

const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::input_error: return "input_error";
    }
    return "unknown";
}

int exit_code(Status s) {
    switch (s) {
        case Status::pass: return 0;
        case Status::fail: return 1;
        case Status::input_error: return 2;
    }
    return 2;
}

io::Json Report::to_json() const {
    io::Json checks_json = io::Json::array();
    for (const auto& c : checks) {
        checks_json.push_back({{"name", c.name},
                               {"pass", c.pass},
                               {"value", c.value},
                               {"relation", c.relation},
                               {"threshold", c.threshold}});
    }
    io::Json j{{"command", command}, {"status", cli::to_string(status)}};
    if (!error.empty()) j["error"] = error;
    j["inputs"] = inputs;
    j["results"] = results;
    j["checks"] = std::move(checks_json);
    return j;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "command: " << command << '\n' << "status: " << cli::to_string(status) << '\n';
    if (!error.empty()) os << "error: " << error << '\n';
    if (!checks.empty()) {
        os << "checks:\n";
        for (const auto& c : checks) {
            os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": "
               << io::Json(c.value).dump() << ' ' << c.relation << ' '
               << io::Json(c.threshold).dump() << '\n';
        }
    }
    if (!results.empty()) os << "results:\n" << results.dump(2) << '\n';
    return os.str();
}

std::string render(const Report& report, OutputFormat format) {
    if (format == OutputFormat::text) return report.to_text();
    return report.to_json().dump(2) + "\n";
}

namespace {

class ReportBuilder {
public:
    explicit ReportBuilder(Report& r) : r_(r) {}

    bool le(std::string name, double value, double threshold) {
        return add(std::move(name), value <= threshold, value, threshold, "<=");
    }
    bool gt(std::string name, double value, double threshold) {
        return add(std::move(name), value > threshold, value, threshold, ">");
    }
    bool ge(std::string name, double value, double threshold) {
        return add(std::move(name), value >= threshold, value, threshold, ">=");
    }
    bool flag(std::string name, bool ok) {
        return add(std::move(name), ok, ok ? 1.0 : 0.0, 1.0, "==");
    }

private:
    bool add(std::string name, bool pass, double value, double threshold, const char* rel) {
        r_.checks.push_back({std::move(name), pass, value, threshold, rel});
        return pass;
    }
    Report& r_;
};

io::Json digest(const std::string& path, const ComplexMatrix& m) {
    return {{"path", path}, {"n", m.rows()}, {"frobenius_norm", m.norm()}};
}

io::Json sorted_eigenvalues(const ComplexMatrix& m) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    io::Json out = io::Json::array();
    for (Complex z : ev) out.push_back(io::Json::array({z.real(), z.imag()}));
    return out;
}

double inverse_ratio(const MetricClass& c) {
    return c.max_singular_value > 0.0 ? c.min_singular_value / c.max_singular_value : 0.0;
}

void load_pair(const RunConfig& cfg, Report& r, ComplexMatrix& h, ComplexMatrix& eta) {
    h = io::parse_matrix(cfg.hamiltonian_path);
    eta = io::parse_matrix(cfg.eta_path);
    require_same_dimension(h, eta, "hamiltonian/eta");
    r.inputs["hamiltonian"] = digest(cfg.hamiltonian_path, h);
    r.inputs["eta"] = digest(cfg.eta_path, eta);
}

void run_verify(const RunConfig& cfg, Report& r) {
    ComplexMatrix h, eta;
    load_pair(cfg, r, h, eta);
    ReportBuilder b(r);
    const double res = residual(h, eta);
    const MetricClass cls = classify_metric(eta, cfg.tol);
    r.results["residual"] = res;
    r.results["eta_class"] = io::to_json(cls);
    if (singular_values_invertible(cls.min_singular_value, cls.max_singular_value, cfg.tol)) {
        const ComplexMatrix conj = eta * h * eta.inverse() - h.adjoint();
        r.results["residual_inverse_form"] = conj.norm() / std::max(1.0, h.norm());
    }
    r.results["hamiltonian_eigenvalues"] = sorted_eigenvalues(h);
    b.le("residual", res, cfg.tol);
    b.le("eta_hermitian", cls.hermiticity_defect, cfg.tol);
    b.gt("eta_invertible", inverse_ratio(cls), cfg.tol);
}

void run_solve(const RunConfig& cfg, Report& r) {
    const ComplexMatrix h = io::parse_matrix(cfg.hamiltonian_path);
    r.inputs["hamiltonian"] = digest(cfg.hamiltonian_path, h);
    r.inputs["positive"] = cfg.want_positive;
    ReportBuilder b(r);

    const MetricBasis basis = solve_metric_space(h, cfg.tol);
    r.results = io::to_json(basis);
    double worst = 0.0;
    for (const auto& m : basis.basis) worst = std::max(worst, residual(h, m));

    const auto metric = find_metric(basis, cfg.want_positive, cfg.tol, cfg.seed);
    if (metric) {
        r.results["metric"] = io::to_json(*metric);
        r.results["metric_class"] = io::to_json(classify_metric(*metric, cfg.tol));
        r.results["metric_residual"] = residual(h, *metric);
    } else {
        r.results["metric"] = nullptr;
    }

    b.ge("metric_space_nonempty", static_cast<double>(basis.dimension()), 1.0);
    if (basis.dimension() > 0) b.le("basis_residual_max", worst, cfg.tol);
    b.flag(cfg.want_positive ? "positive_metric_found" : "invertible_metric_found", metric.has_value());
}

void run_chain(const RunConfig& cfg, Report& r) {
    ComplexMatrix h, eta;
    load_pair(cfg, r, h, eta);
    if (cfg.k_max < 0) throw InputError("--k-max must be nonnegative");
    r.inputs["k_max"] = cfg.k_max;
    r.inputs["normalize"] = cfg.normalize;
    r.inputs["shift"] = cfg.shift;
    ReportBuilder b(r);

    const bool herm = b.le("eta0_hermitian", hermiticity_defect(eta), cfg.tol);
    const bool inter = b.le("eta0_residual", residual(h, eta), cfg.tol);
    if (!herm || !inter) return;

    const EtaChain chain = cfg.shift ? chain_via_shift(h, eta, cfg.k_max, cfg.normalize, cfg.tol)
                                     : build_chain(h, eta, cfg.k_max, cfg.normalize, cfg.tol);
    r.results = io::to_json(chain);
    for (std::size_t k = 0; k < chain.etas.size(); ++k) {
        const std::string idx = "[" + std::to_string(k) + "]";
        b.le("residual" + idx, chain.residuals[k], cfg.tol);
        b.le("hermitian" + idx, chain.classes[k].hermiticity_defect, cfg.tol);
        b.gt("invertible" + idx, inverse_ratio(chain.classes[k]), cfg.tol);
    }
}

void run_perturb(const RunConfig& cfg, Report& r) {
    ComplexMatrix h, eta;
    load_pair(cfg, r, h, eta);
    const RealPolynomial f = RealPolynomial::parse(cfg.poly);
    r.inputs["poly"] = f.coeffs();
    r.inputs["allow_hermitian"] = cfg.allow_hermitian;
    ReportBuilder b(r);

    // --K file: H̃ = H + f(K).  Otherwise K = f(η) and H̃ = H + K.
    ComplexMatrix k;
    RealPolynomial applied = f;
    if (!cfg.k_path.empty()) {
        k = io::parse_matrix(cfg.k_path);
        require_same_dimension(h, k, "hamiltonian/K");
        r.inputs["K"] = digest(cfg.k_path, k);
    } else {
        k = matrix_poly(eta, f);
        applied = RealPolynomial({0.0, 1.0});
        r.inputs["K"] = "f(eta)";
    }

    const MetricClass cls = classify_metric(eta, cfg.tol);
    bool ok = b.le("eta_hermitian", cls.hermiticity_defect, cfg.tol);
    ok = b.gt("eta_invertible", inverse_ratio(cls), cfg.tol) && ok;
    ok = b.le("eta_residual", residual(h, eta), cfg.tol) && ok;
    ok = b.le("K_hermitian", hermiticity_defect(k), cfg.tol) && ok;
    ok = b.le("K_commutes_with_eta", commutator_defect(k, eta), cfg.tol) && ok;
    if (!cfg.allow_hermitian) ok = b.gt("H_non_hermitian", hermiticity_defect(h), cfg.tol) && ok;
    if (!ok) return;

    try {
        const PerturbedHamiltonian p = perturb(h, eta, k, applied, {cfg.tol, cfg.allow_hermitian});
        r.results["H_tilde"] = io::to_json(p.perturbed);
        r.results["K"] = io::to_json(p.k);
        r.results["f"] = p.f.coeffs();
        r.results["residual"] = p.residual;
        r.results["commutator_defect"] = p.commutator_defect;
        const ComplexMatrix drift =
            (p.perturbed - p.perturbed.adjoint()) - (h - h.adjoint());
        b.le("perturbed_residual", p.residual, cfg.tol);
        b.le("anti_hermitian_part_preserved", drift.norm() / std::max(1.0, h.norm()), cfg.tol);
    } catch (const PreconditionError& e) {
        r.results["failure"] = e.what();
        b.flag(e.check(), false);
    }
}

void run_quasi(const RunConfig& cfg, Report& r) {
    ComplexMatrix h, eta;
    load_pair(cfg, r, h, eta);
    const bool with_vectors = !cfg.phi_path.empty() || !cfg.psi_path.empty();
    if (with_vectors && (cfg.phi_path.empty() || cfg.psi_path.empty())) {
        throw InputError("--phi and --psi must be given together");
    }
    r.inputs["allow_indefinite"] = cfg.allow_indefinite;
    ReportBuilder b(r);

    const MetricClass cls = classify_metric(eta, cfg.tol);
    r.results["eta_class"] = io::to_json(cls);
    const bool herm = b.le("eta_hermitian", cls.hermiticity_defect, cfg.tol);
    const double res = residual(h, eta);
    const bool inter = b.le("eta_residual", res, cfg.tol);

    if (cls.positive || !(cfg.allow_indefinite && with_vectors)) {
        if (!b.gt("eta_positive", cls.min_eigenvalue_of_hermitian_part, 0.0) || !cls.positive || !herm) {
            return;
        }
        const InducedForm form = metric_sqrt(eta, cfg.tol);
        r.results["sqrt_eta"] = io::to_json(form.sqrt_eta);
        r.results["inv_sqrt_eta"] = io::to_json(form.inv_sqrt_eta);
        b.le("sqrt_reproduces_eta",
             (form.sqrt_eta * form.sqrt_eta - eta).norm() / std::max(1.0, eta.norm()), cfg.tol);
        if (inter) {
            const ComplexMatrix h_eta = induced_hamiltonian(h, form, cfg.tol);
            r.results["H_eta"] = io::to_json(h_eta);
            Eigen::ComplexEigenSolver<ComplexMatrix> es(h_eta, false);
            const double max_imag = es.eigenvalues().imag().cwiseAbs().maxCoeff();
            r.results["H_eta_eigenvalues"] = sorted_eigenvalues(h_eta);
            b.le("induced_hermitian", hermiticity_defect(h_eta), cfg.tol);
            b.le("spectrum_real", max_imag, 10.0 * cfg.tol * std::max(1.0, h.norm()));
        }
    }

    if (with_vectors) {
        const ComplexVector phi = io::parse_vector(cfg.phi_path);
        const ComplexVector psi = io::parse_vector(cfg.psi_path);
        r.inputs["phi"] = cfg.phi_path;
        r.inputs["psi"] = cfg.psi_path;
        if (!herm) return;
        const Complex ab = induced_inner(phi, psi, eta, cfg.allow_indefinite, cfg.tol);
        const Complex ba = induced_inner(psi, phi, eta, cfg.allow_indefinite, cfg.tol);
        r.results["inner_product"] = io::Json::array({ab.real(), ab.imag()});
        b.le("conjugate_symmetry", std::abs(ab - std::conj(ba)) / std::max(1.0, std::abs(ab)),
             cfg.tol);
    }
}

void run_weyl(const RunConfig& cfg, Report& r) {
    const ShiftedPotentialSpec spec = io::parse_spec(cfg.spec_path);
    r.inputs["spec"] = io::spec_to_json(spec);
    r.inputs["spec"]["path"] = cfg.spec_path;
    const double theta = cfg.theta.value_or(spec.theta());
    if (!std::isfinite(theta)) throw InputError("--theta must be finite");
    r.results["theta"] = theta;
    r.results["coefficients"] = cfg.float_coefficients ? "float" : "exact";
    ReportBuilder b(r);

    if (cfg.float_coefficients) {
        const auto h = build_shifted_hamiltonian<std::complex<double>>(spec);
        const auto res = check_symbolic<std::complex<double>>(spec, theta);
        r.results["hamiltonian"] = to_string(h);
        r.results["residual"] = io::residual_to_json(res);
        r.results["residual_text"] = to_string(res);
        b.le("residual_norm", coefficient_norm(res), cfg.tol * std::max(1.0, coefficient_norm(h)));
    } else {
        const auto h = build_shifted_hamiltonian<ExactComplex>(spec);
        const auto res = check_symbolic<ExactComplex>(spec, theta);
        r.results["hamiltonian"] = to_string(h);
        r.results["residual"] = io::residual_to_json(res);
        r.results["residual_text"] = to_string(res);
        b.le("residual_terms", static_cast<double>(res.size()), 0.0);
    }
}

void run_example(const RunConfig& cfg, Report& r) {
    HamiltonianWithMetric pair;
    if (cfg.example_name == "two-point") {
        const Complex x = io::parse_complex(cfg.x);
        const Complex y = io::parse_complex(cfg.y);
        r.inputs["x"] = io::Json::array({x.real(), x.imag()});
        r.inputs["y"] = io::Json::array({y.real(), y.imag()});
        pair = catalog_two_point(x, y);
    } else if (cfg.example_name == "oscillator") {
        if (!cfg.omega) throw InputError("oscillator example requires --omega");
        r.inputs["omega"] = *cfg.omega;
        pair = catalog_oscillator(*cfg.omega);
    } else {
        throw InputError("unknown example '" + cfg.example_name + "' (expected two-point or oscillator)");
    }

    const std::string prefix = cfg.prefix.empty() ? cfg.example_name : cfg.prefix;
    const std::string h_path = prefix + "_H.json";
    const std::string eta_path = prefix + "_eta.json";
    io::write_text_file(h_path, io::to_json(pair.hamiltonian).dump(2) + "\n");
    io::write_text_file(eta_path, io::to_json(pair.eta).dump(2) + "\n");

    r.results["hamiltonian_path"] = h_path;
    r.results["eta_path"] = eta_path;
    r.results["hamiltonian"] = io::to_json(pair.hamiltonian);
    r.results["eta"] = io::to_json(pair.eta);

    ReportBuilder b(r);
    b.le("residual", residual(pair.hamiltonian, pair.eta), 1e-12);
    const bool lossless = io::parse_matrix(h_path) == pair.hamiltonian &&
                          io::parse_matrix(eta_path) == pair.eta;
    b.flag("round_trip", lossless);
}

}  // namespace

Report run(const RunConfig& cfg) {
    Report r;
    r.command = to_string(cfg.command);
    try {
        if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) throw InputError("--tol must be positive");
        r.inputs["tol"] = cfg.tol;
        r.inputs["seed"] = cfg.seed;
        switch (cfg.command) {
            case Command::verify: run_verify(cfg, r); break;
            case Command::solve: run_solve(cfg, r); break;
            case Command::chain: run_chain(cfg, r); break;
            case Command::perturb: run_perturb(cfg, r); break;
            case Command::quasi: run_quasi(cfg, r); break;
            case Command::weyl: run_weyl(cfg, r); break;
            case Command::example: run_example(cfg, r); break;
        }
        const bool all = std::all_of(r.checks.begin(), r.checks.end(),
                                     [](const Check& c) { return c.pass; });
        r.status = all ? Status::pass : Status::fail;
    } catch (const std::exception& e) {
        r.status = Status::input_error;
        r.error = e.what();
        r.results = io::Json::object();
        r.checks.clear();
    }
    return r;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string format = "json";
    std::string out_path;

    CLI::App app{"Metric operators for pseudo-Hermitian Hamiltonians", "etakit"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--tol", cfg.tol, "relative tolerance")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for the randomized metric search")->capture_default_str();
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "check eta H = H^dagger eta for a given pair");
    verify->add_option("--hamiltonian", cfg.hamiltonian_path)->required();
    verify->add_option("--eta", cfg.eta_path)->required();

    auto* solve = app.add_subcommand("solve", "compute all Hermitian metrics of H");
    solve->add_option("--hamiltonian", cfg.hamiltonian_path)->required();
    solve->add_flag("--positive", cfg.want_positive, "search for a positive metric");

    auto* chain = app.add_subcommand("chain", "generate eta_k = (H^dagger)^k eta_0");
    chain->add_option("--hamiltonian", cfg.hamiltonian_path)->required();
    chain->add_option("--eta", cfg.eta_path)->required();
    chain->add_option("--k-max", cfg.k_max)->capture_default_str();
    chain->add_flag("--no-normalize{false}", cfg.normalize, "keep raw (unnormalized) chain elements");
    chain->add_flag("--shift", cfg.shift, "build the chain on H + alpha I when H is singular");

    auto* perturb_cmd = app.add_subcommand("perturb", "H + f(K) for Hermitian K commuting with eta");
    perturb_cmd->add_option("--hamiltonian", cfg.hamiltonian_path)->required();
    perturb_cmd->add_option("--eta", cfg.eta_path)->required();
    auto* k_opt = perturb_cmd->add_option("--K", cfg.k_path, "perturbation matrix file");
    bool auto_k = false;
    perturb_cmd->add_flag("--auto", auto_k, "use K = f(eta)")->excludes(k_opt);
    perturb_cmd->add_option("--poly", cfg.poly, "real coefficients, constant term first")
        ->capture_default_str();
    perturb_cmd->add_flag("--allow-hermitian", cfg.allow_hermitian);

    auto* quasi = app.add_subcommand("quasi", "square root of a positive metric and induced Hermitian H");
    quasi->add_option("--hamiltonian", cfg.hamiltonian_path)->required();
    quasi->add_option("--eta", cfg.eta_path)->required();
    quasi->add_option("--phi", cfg.phi_path);
    quasi->add_option("--psi", cfg.psi_path);
    quasi->add_flag("--allow-indefinite", cfg.allow_indefinite);

    auto* weyl = app.add_subcommand("weyl", "exact check of p^2 + f(p) + alpha V(x - beta - i gamma)");
    weyl->add_option("--spec", cfg.spec_path)->required();
    weyl->add_option("--theta", cfg.theta, "boost parameter (default 2 gamma)");
    weyl->add_flag("--float", cfg.float_coefficients, "double-precision coefficients");

    auto* example = app.add_subcommand("example", "write a catalog Hamiltonian and its metric");
    example->add_option("name", cfg.example_name)->required()->check(CLI::IsMember({"two-point", "oscillator"}));
    example->add_option("--x", cfg.x)->capture_default_str();
    example->add_option("--y", cfg.y)->capture_default_str();
    example->add_option("--omega", cfg.omega);
    example->add_option("--prefix", cfg.prefix);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "etakit: " << e.what() << '\n';
        return exit_code(Status::input_error);
    }

    const std::pair<CLI::App*, Command> table[] = {
        {verify, Command::verify}, {solve, Command::solve},   {chain, Command::chain},
        {perturb_cmd, Command::perturb}, {quasi, Command::quasi}, {weyl, Command::weyl},
        {example, Command::example}};
    for (const auto& [sub, cmd] : table) {
        if (sub->parsed()) cfg.command = cmd;
    }
    if (cfg.command == Command::perturb && cfg.k_path.empty() && !auto_k) {
        err << "etakit: perturb requires --K <file> or --auto\n";
        return exit_code(Status::input_error);
    }
    cfg.format = format == "text" ? OutputFormat::text : OutputFormat::json;
    if (!out_path.empty()) cfg.output_path = out_path;

    const Report report = run(cfg);
    const std::string text = render(report, cfg.format);
    if (cfg.output_path) {
        try {
            io::write_text_file(*cfg.output_path, text);
        } catch (const std::exception& e) {
            err << "etakit: " << e.what() << '\n';
            return exit_code(Status::input_error);
        }
    } else {
        out << text;
    }
    if (report.status == Status::input_error) err << "etakit: " << report.error << '\n';
    return exit_code(report.status);
}

}  // namespace etakit::cli
