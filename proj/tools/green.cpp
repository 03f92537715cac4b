// Command line front end: partition inspection, bound verification suites,
// end-to-end learning, parameter sweeps and machine-readable result files.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <Eigen/QR>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <green/elliptic.hpp>
#include <green/io.hpp>
#include <green/partition.hpp>
#include <green/reconstruct.hpp>
#include <green/rng.hpp>
#include <green/rsvd.hpp>
#include <green/version.hpp>

using namespace green;

namespace {

// every flag that shaped a run, serialized into each output file
struct RunConfig {
    std::string subcommand;
    std::map<std::string, std::string> flags;

    void set(const std::string& key, const std::string& value) { flags[key] = value; }
    void set(const std::string& key, double value) { flags[key] = format_g17(value); }
    void set(const std::string& key, long long value) { flags[key] = std::to_string(value); }

    std::string header() const {
        std::ostringstream out;
        out << "# greenlearn " << version << " subcommand=" << subcommand;
        for (const auto& [k, v] : flags) out << " " << k << "=" << v;
        return out.str();
    }

    Json json() const {
        Json j{{"version", version}, {"subcommand", subcommand}};
        for (const auto& [k, v] : flags) j[k] = v;
        return j;
    }
};

void write_text(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << body;
}

void write_json_output(const std::string& path, Json j, const RunConfig& config) {
    j["_config"] = config.json();
    if (path.empty() || path == "-")
        std::cout << j.dump(1) << "\n";
    else
        write_json_file(path, j);
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("GREEN_SEED")) return std::strtoull(env, nullptr, 10);
    return flag_seed;
}

CovKernelSpec parse_kernel(const std::string& text) {
    if (text.rfind("se:", 0) == 0)
        return CovKernelSpec::squared_exponential(std::stod(text.substr(3)));
    throw CLI::ValidationError("--kernel", "expected se:<length-scale>, got '" + text + "'");
}

CoefficientField parse_coeff(const std::string& text, int dim) {
    if (text == "identity") return CoefficientField::identity(dim);
    if (text == "sinusoidal") return CoefficientField::sinusoidal(dim);
    if (text.rfind("diag:", 0) == 0) {
        std::array<double, 3> entries{1.0, 1.0, 1.0};
        std::stringstream ss(text.substr(5));
        std::string item;
        int d = 0;
        while (std::getline(ss, item, ',') && d < 3) entries[d++] = std::stod(item);
        return CoefficientField::diagonal(dim, entries);
    }
    throw CLI::ValidationError("--coeff", "expected identity|diag:a1,a2,a3|sinusoidal");
}

// ---------------------------------------------------------------------------
// verify-bounds suites

struct BoundRow {
    std::string name;
    std::string params;
    double empirical = 0.0;
    double bound = 0.0;
    bool pass = false;
};

Matrix random_normal(Index rows, Index cols, std::uint64_t seed) {
    NormalStream stream(seed);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = stream();
    return m;
}

CovKernelSpec identity_like_kernel(const Grid& grid) {
    Matrix table = Matrix::Zero(grid.size(), grid.size());
    for (Index i = 0; i < grid.size(); ++i) table(i, i) = 1.0 / grid.weights()(i);
    return CovKernelSpec::tabulated(grid, table);
}

HsOperator synthetic_operator(const Grid& grid, const Vector& singular_values,
                              std::uint64_t seed) {
    const Index n = grid.size();
    const Index r = singular_values.size();
    const auto u = orthonormalize(Quasimatrix(grid, random_normal(n, r, seed)));
    const auto v = orthonormalize(Quasimatrix(grid, random_normal(n, r, seed ^ 0x5bd1e995)));
    return HsOperator(grid, grid,
                      u.columns * singular_values.asDiagonal() * v.columns.transpose());
}

std::vector<BoundRow> suite_deterministic(Index trials, std::uint64_t seed) {
    double worst = -std::numeric_limits<double>::infinity();
    for (Index t = 0; t < trials; ++t) {
        const Index n = 8 + static_cast<Index>(mix64(seed + t) % 17);
        const Grid g = Grid::uniform(Box::unit(1), n);
        const HsOperator op(g, g, random_normal(n, n, derive_seed(seed, 2 * t)));
        const Index k = 1 + static_cast<Index>(mix64(seed + 3 * t + 1) % 5);
        const Index l = k + 2 + static_cast<Index>(mix64(seed + 5 * t + 2) % 4);
        const Quasimatrix omega(g, random_normal(n, l, derive_seed(seed, 2 * t + 1)));
        const DeterministicBound b = deterministic_bound(op, omega, k);
        worst = std::max(worst, (b.lhs - b.rhs) / std::max(b.rhs, 1e-300));
    }
    BoundRow row{"deterministic_error_bound", "sizes<=24", worst, 1e-8, worst <= 1e-8};
    return {row};
}

std::vector<BoundRow> suite_pinv(Index trials, std::uint64_t seed) {
    std::vector<BoundRow> rows;
    const PinvNormStatistics st =
        pinv_norm_statistics(Matrix::Identity(5, 5), 5, 10, trials, seed);
    rows.push_back({"pinv_mean", "C=I k=5 l=10",
                    std::abs(st.mean_sq_pinv_norm / st.expected_mean - 1.0), 0.05,
                    std::abs(st.mean_sq_pinv_norm / st.expected_mean - 1.0) <= 0.05});
    for (const auto& [kk, ll] : {std::pair<Index, Index>{4, 10}, {8, 16}}) {
        const PinvNormStatistics tail =
            pinv_norm_statistics(Matrix::Identity(kk, kk), kk, ll, trials, seed + 1);
        for (const ExceedancePoint& pt : tail.exceedance) {
            if (pt.parameter < 1.5) continue;
            const double se = std::sqrt(pt.frequency * (1.0 - pt.frequency) / double(trials));
            std::ostringstream params;
            params << "k=" << kk << " l=" << ll << " t=" << pt.parameter;
            rows.push_back({"pinv_tail", params.str(), pt.frequency, pt.bound + 3.0 * se,
                            pt.frequency <= pt.bound + 3.0 * se});
        }
    }
    return rows;
}

std::vector<BoundRow> suite_omega2(Index trials, std::uint64_t seed) {
    std::vector<BoundRow> rows;
    const Grid g = Grid::uniform(Box::unit(1), 64);
    const MercerBasis basis = build_mercer(CovKernelSpec::squared_exponential(0.2), g);
    const QuasimatrixNormStatistics st = omega2_tail_check(basis, 8, trials, seed);
    rows.push_back({"omega_norm_mean", "se:0.2 l=8",
                    std::abs(st.mean_sq_norm / st.expected_mean - 1.0), 0.05,
                    std::abs(st.mean_sq_norm / st.expected_mean - 1.0) <= 0.05});
    for (const ExceedancePoint& pt : st.exceedance) {
        const double se = std::sqrt(pt.frequency * (1.0 - pt.frequency) / double(trials));
        std::ostringstream params;
        params << "se:0.2 l=8 s=" << pt.parameter;
        rows.push_back({"omega_norm_tail", params.str(), pt.frequency, pt.bound + 3.0 * se,
                        pt.frequency <= pt.bound + 3.0 * se});
    }
    return rows;
}

std::vector<BoundRow> suite_expectation(Index trials, std::uint64_t seed) {
    const Grid g = Grid::uniform(Box::unit(1), 30);
    const MercerBasis basis = build_mercer(identity_like_kernel(g), g);
    Vector sv(30);
    for (Index j = 0; j < 30; ++j) sv(j) = std::pow(2.0, -double(j + 1));
    const HsOperator op = synthetic_operator(g, sv, seed);
    const WeightedSvd svd = weighted_svd(op);
    const Index k = 8, p = 4;
    double sum = 0.0;
    for (Index t = 0; t < trials; ++t)
        sum += *randomized_range(op, basis, k, p, derive_seed(seed, t)).achieved_error;
    const double mean = sum / double(trials);
    const double bound = evaluate_expectation_bound(svd.tail(k), 1.0, k, p);
    return {{"expectation_bound", "sigma_j=2^-j k=8 p=4", mean, bound, mean <= bound}};
}

std::vector<BoundRow> suite_energy(Index trials, std::uint64_t seed) {
    const Grid g = Grid::uniform(Box::unit(1), 16);
    const MercerBasis basis = build_mercer(CovKernelSpec::squared_exponential(0.3), g);
    const HsOperator op(g, g, random_normal(16, 16, seed));
    const Matrix t = random_normal(6, 3, seed + 1);
    const EnergyCheck chk = sigma2_omega2_energy_check(op, basis, t, trials, seed + 2);
    return {{"tail_energy", "16x16 T=6x3", chk.empirical_mean,
             chk.bound + 3.0 * chk.std_error,
             chk.empirical_mean <= chk.bound + 3.0 * chk.std_error}};
}

std::vector<BoundRow> suite_gamma(Index trials, std::uint64_t seed) {
    std::vector<BoundRow> rows;
    const Grid g = Grid::uniform(Box::unit(1), 32);
    const MercerBasis basis = build_mercer(CovKernelSpec::squared_exponential(0.15), g);

    const Index k = 5;
    const KernelQuality diag =
        covariance_capture(basis, Quasimatrix(g, basis.eigenfunctions.leftCols(k)));
    double harmonic = 0.0;
    for (Index j = 0; j < k; ++j) harmonic += basis.eigenvalues(0) / basis.eigenvalues(j);
    const double dev = std::abs(diag.gamma_k * harmonic / double(k) - 1.0);
    rows.push_back({"gamma_diagonal", "v=psi_1..5", dev, 1e-10, dev <= 1e-10});

    const MercerBasis flat = build_mercer(identity_like_kernel(g), g);
    const KernelQuality one = covariance_capture(
        flat, orthonormalize(Quasimatrix(g, random_normal(32, 6, seed))));
    rows.push_back({"gamma_flat", "equal eigenvalues", std::abs(one.gamma_k - 1.0), 1e-10,
                    std::abs(one.gamma_k - 1.0) <= 1e-10});

    const Index kk = 4, m = 3;
    double upper = 0.0;
    for (Index j = m; j < kk + m; ++j) upper += basis.eigenvalues(0) / basis.eigenvalues(j);
    upper /= double(kk);
    double worst_upper = -1.0, worst_lower = -1.0;
    const Index rotations = std::max<Index>(trials / 200, 50);
    for (Index t = 0; t < rotations; ++t) {
        const Eigen::HouseholderQR<Matrix> qr(random_normal(kk + m, kk, derive_seed(seed, t)));
        const Matrix rot = qr.householderQ() * Matrix::Identity(kk + m, kk);
        const KernelQuality q = covariance_capture(
            basis, Quasimatrix(g, basis.eigenfunctions.leftCols(kk + m) * rot));
        worst_upper = std::max(worst_upper, 1.0 / q.gamma_k - upper);
        worst_lower = std::max(worst_lower, q.harmonic_lower_bound - 1.0 / q.gamma_k);
    }
    rows.push_back({"gamma_span_upper", "k=4 m=3", worst_upper, 1e-8, worst_upper <= 1e-8});
    rows.push_back({"gamma_harmonic_lower", "k=4 m=3", worst_lower, 1e-8, worst_lower <= 1e-8});
    return rows;
}

int run_verify(const std::string& suite, Index trials, std::uint64_t seed,
               const std::string& out, RunConfig config) {
    std::vector<BoundRow> rows;
    auto append = [&rows](std::vector<BoundRow> more) {
        rows.insert(rows.end(), more.begin(), more.end());
    };
    if (suite == "deterministic" || suite == "all") append(suite_deterministic(trials, seed));
    if (suite == "pinv" || suite == "all") append(suite_pinv(trials, seed));
    if (suite == "omega2" || suite == "all") append(suite_omega2(trials, seed));
    if (suite == "expectation" || suite == "all")
        append(suite_expectation(std::min<Index>(trials, 500), seed));
    if (suite == "energy" || suite == "all") append(suite_energy(trials, seed));
    if (suite == "gamma" || suite == "all") append(suite_gamma(trials, seed));
    if (rows.empty())
        throw CLI::ValidationError("--suite",
                                   "expected deterministic|pinv|omega2|expectation|energy|gamma|all");

    std::ostringstream csv;
    csv << config.header() << "\n";
    csv << "name,parameters,empirical,bound,pass\n";
    bool all_pass = true;
    for (const BoundRow& row : rows) {
        csv << row.name << "," << row.params << "," << format_g17(row.empirical) << ","
            << format_g17(row.bound) << "," << (row.pass ? "pass" : "fail") << "\n";
        all_pass = all_pass && row.pass;
    }
    write_text(out, csv.str());
    if (out != "-" && !out.empty())
        std::cout << (all_pass ? "all bounds hold\n" : "BOUND VIOLATION, see " + out + "\n");
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

ErrorReport missing_report() {
    ErrorReport r;
    r.relative_l2_error = std::numeric_limits<double>::quiet_NaN();
    r.admissible_relative_error = std::numeric_limits<double>::quiet_NaN();
    r.gamma_eps = std::numeric_limits<double>::quiet_NaN();
    return r;
}

std::string report_csv_row(const HierGreen& g, const ErrorReport& r) {
    std::ostringstream row;
    row << format_g17(g.epsilon_target) << "," << g.k << "," << g.p << ","
        << g.partition.levels << "," << g.total_queries << ","
        << format_g17(r.relative_l2_error) << "," << format_g17(r.admissible_relative_error)
        << "," << format_g17(r.gamma_eps);
    return row.str();
}

constexpr const char* report_csv_columns =
    "epsilon,k,p,n,N_queries,rel_error,rel_error_admissible,Gamma_eps";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greenlearn: learning the Green's function of an elliptic operator "
                 "from input-output pairs"};
    app.require_subcommand(1);

    // ---- partition ----
    auto* cmd_partition = app.add_subcommand("partition", "build and emit a hierarchical partition");
    int part_dim = 3, part_levels = 2;
    double part_rho = default_rho;
    std::string part_out = "-";
    cmd_partition->add_option("--dim", part_dim)->check(CLI::Range(1, 3));
    cmd_partition->add_option("--levels", part_levels);
    cmd_partition->add_option("--rho", part_rho);
    cmd_partition->add_option("--out", part_out);

    // ---- mercer ----
    auto* cmd_mercer = app.add_subcommand("mercer", "eigendecompose a covariance kernel on a grid");
    int mercer_dim = 1;
    Index mercer_n = 64;
    std::string mercer_kernel = "se:0.2";
    double mercer_cutoff = 1e-12;
    std::string mercer_out = "-";
    cmd_mercer->add_option("--dim", mercer_dim)->check(CLI::Range(1, 3));
    cmd_mercer->add_option("--n", mercer_n);
    cmd_mercer->add_option("--kernel", mercer_kernel);
    cmd_mercer->add_option("--rank-cutoff", mercer_cutoff);
    cmd_mercer->add_option("--out", mercer_out);

    // ---- verify-bounds ----
    auto* cmd_verify = app.add_subcommand("verify-bounds", "run the Monte-Carlo bound suites");
    std::string verify_suite = "all";
    Index verify_trials = 10000;
    std::uint64_t verify_seed = 0;
    std::string verify_out = "-";
    cmd_verify->add_option("--suite", verify_suite);
    cmd_verify->add_option("--trials", verify_trials);
    cmd_verify->add_option("--seed", verify_seed);
    cmd_verify->add_option("--out", verify_out);

    // ---- learn / sweep (shared flags) ----
    double learn_epsilon = 0.1;
    Index learn_k = 0, learn_p = 0;
    int learn_levels = 0;
    std::string learn_kernel = "se:0.05";
    std::uint64_t learn_seed = 0;
    std::string learn_coeff = "identity";
    Index learn_n = 256;
    int learn_dim = 1;
    double learn_rho = default_rho;
    double learn_c_kappa = 1.0;  // decay-constant estimate feeding the depth choice
    double learn_c_sep = 1.0;    // separation constant feeding the rank choice
    Index learn_cap = 8000;
    bool learn_no_report = false;
    std::string learn_out, learn_report;

    auto add_learn_flags = [&](CLI::App* cmd) {
        cmd->add_option("--epsilon", learn_epsilon);
        cmd->add_option("--k", learn_k);
        cmd->add_option("--p", learn_p);
        cmd->add_option("--levels", learn_levels);
        cmd->add_option("--kernel", learn_kernel);
        cmd->add_option("--seed", learn_seed);
        cmd->add_option("--coeff", learn_coeff);
        cmd->add_option("--n", learn_n);
        cmd->add_option("--dim", learn_dim)->check(CLI::Range(1, 3));
        cmd->add_option("--rho", learn_rho);
        cmd->add_option("--c-kappa", learn_c_kappa);
        cmd->add_option("--c-sep", learn_c_sep);
        cmd->add_option("--cap", learn_cap);
        cmd->add_flag("--no-report", learn_no_report);
    };
    auto* cmd_learn = app.add_subcommand("learn", "learn the Green's function through the oracle");
    add_learn_flags(cmd_learn);
    cmd_learn->add_option("--out", learn_out);
    cmd_learn->add_option("--report", learn_report);

    auto* cmd_sweep = app.add_subcommand("sweep", "learn across a range of epsilon or k");
    std::string sweep_param = "epsilon";
    std::vector<double> sweep_values;
    std::string sweep_out = "-";
    add_learn_flags(cmd_sweep);
    cmd_sweep->add_option("--param", sweep_param);
    cmd_sweep->add_option("--values", sweep_values)->delimiter(',')->required();
    cmd_sweep->add_option("--out", sweep_out);

    // ---- apply ----
    auto* cmd_apply = app.add_subcommand("apply", "apply a learned model to a right-hand side");
    std::string apply_model, apply_rhs = "sin", apply_rhs_file, apply_out = "-";
    cmd_apply->add_option("--model", apply_model)->required();
    cmd_apply->add_option("--rhs", apply_rhs);
    cmd_apply->add_option("--rhs-file", apply_rhs_file);
    cmd_apply->add_option("--out", apply_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_partition->parsed()) {
            RunConfig config{"partition", {}};
            config.set("dim", (long long)part_dim);
            config.set("levels", (long long)part_levels);
            config.set("rho", part_rho);
            const AdmissiblePartition part = build_partition(part_dim, part_levels, part_rho);
            write_json_output(part_out, to_json(part), config);
            return 0;
        }

        if (cmd_mercer->parsed()) {
            RunConfig config{"mercer", {}};
            config.set("dim", (long long)mercer_dim);
            config.set("n", (long long)mercer_n);
            config.set("kernel", mercer_kernel);
            config.set("rank_cutoff", mercer_cutoff);
            const Grid grid = Grid::uniform(Box::unit(mercer_dim), mercer_n);
            const MercerBasis basis =
                build_mercer(parse_kernel(mercer_kernel), grid, mercer_cutoff);
            write_json_output(mercer_out, to_json(basis), config);
            return 0;
        }

        if (cmd_verify->parsed()) {
            verify_seed = effective_seed(verify_seed);
            RunConfig config{"verify-bounds", {}};
            config.set("suite", verify_suite);
            config.set("trials", (long long)verify_trials);
            config.set("seed", (long long)verify_seed);
            return run_verify(verify_suite, verify_trials, verify_seed, verify_out, config);
        }

        if (cmd_learn->parsed() || cmd_sweep->parsed()) {
            learn_seed = effective_seed(learn_seed);
            RunConfig config{cmd_learn->parsed() ? "learn" : "sweep", {}};
            config.set("epsilon", learn_epsilon);
            config.set("k", (long long)learn_k);
            config.set("p", (long long)learn_p);
            config.set("levels", (long long)learn_levels);
            config.set("kernel", learn_kernel);
            config.set("seed", (long long)learn_seed);
            config.set("coeff", learn_coeff);
            config.set("n", (long long)learn_n);
            config.set("dim", (long long)learn_dim);
            config.set("rho", learn_rho);
            config.set("c_kappa", learn_c_kappa);
            config.set("c_sep", learn_c_sep);

            const Grid grid = Grid::uniform(Box::unit(learn_dim), learn_n);
            const EllipticOracle oracle(parse_coeff(learn_coeff, learn_dim), grid);
            const CovKernelSpec kernel = parse_kernel(learn_kernel);

            const bool want_report = !learn_no_report && grid.size() <= learn_cap;
            std::optional<DenseGreen> ref;
            if (want_report) ref = dense_green(oracle, learn_cap);

            auto configure = [&](double eps, Index k_val) {
                LearnConfig lc;
                lc.epsilon = eps;
                if (k_val > 0) lc.k = k_val;
                if (learn_p > 0) lc.p = learn_p;
                if (learn_levels > 0) lc.levels = learn_levels;
                lc.rho = learn_rho;
                lc.c_kappa = learn_c_kappa;
                lc.c_sep = learn_c_sep;
                lc.seed = learn_seed;
                return lc;
            };

            if (cmd_learn->parsed()) {
                const HierGreen model =
                    learn_green(oracle, kernel, configure(learn_epsilon, learn_k));
                if (!learn_out.empty()) write_json_output(learn_out, to_json(model), config);
                std::ostringstream csv;
                csv << config.header() << "\n" << report_csv_columns << "\n";
                if (ref) {
                    const ErrorReport report = global_error(model, *ref);
                    csv << report_csv_row(model, report) << "\n";
                    std::cout << "learned " << model.blocks.size() << " pairs with "
                              << model.total_queries
                              << " queries; rel_error=" << format_g17(report.relative_l2_error)
                              << " admissible=" << format_g17(report.admissible_relative_error)
                              << " Gamma_eps=" << format_g17(report.gamma_eps) << "\n";
                } else {
                    csv << report_csv_row(model, missing_report()) << "\n";
                    std::cout << "learned " << model.blocks.size() << " pairs with "
                              << model.total_queries << " queries (no dense reference)\n";
                }
                if (!learn_report.empty()) write_text(learn_report, csv.str());
                return 0;
            }

            // sweep
            if (sweep_param != "epsilon" && sweep_param != "k")
                throw CLI::ValidationError("--param", "expected epsilon|k");
            std::ostringstream csv;
            csv << config.header() << "\n" << report_csv_columns << "\n";
            for (const double value : sweep_values) {
                LearnConfig lc = sweep_param == "k"
                                     ? configure(learn_epsilon, static_cast<Index>(value))
                                     : configure(value, learn_k);
                const HierGreen model = learn_green(oracle, kernel, lc);
                const ErrorReport report = ref ? global_error(model, *ref) : missing_report();
                csv << report_csv_row(model, report) << "\n";
            }
            write_text(sweep_out, csv.str());
            return 0;
        }

        if (cmd_apply->parsed()) {
            RunConfig config{"apply", {}};
            config.set("model", apply_model);
            config.set("rhs", apply_rhs_file.empty() ? apply_rhs : apply_rhs_file);
            const HierGreen model = hiergreen_from_json(read_json_file(apply_model));
            const Grid& grid = model.grid;
            Vector f(grid.size());
            if (!apply_rhs_file.empty()) {
                const Json j = read_json_file(apply_rhs_file);
                if (static_cast<Index>(j.size()) != grid.size())
                    throw std::runtime_error("right-hand side length does not match the grid");
                for (Index i = 0; i < f.size(); ++i) f(i) = j.at(i).get<double>();
            } else if (apply_rhs == "ones") {
                f.setOnes();
            } else if (apply_rhs == "sin") {
                for (Index i = 0; i < f.size(); ++i) {
                    double v = 1.0;
                    for (int d = 0; d < grid.dim(); ++d)
                        v *= std::sin(3.14159265358979323846 * grid.nodes()(i, d));
                    f(i) = v;
                }
            } else {
                throw CLI::ValidationError("--rhs", "expected sin|ones or --rhs-file");
            }
            const Vector u = apply_green(model, f);
            Json j;
            j["u"] = Json::array();
            for (Index i = 0; i < u.size(); ++i) j["u"].push_back(u(i));
            write_json_output(apply_out, std::move(j), config);
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
