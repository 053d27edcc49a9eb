#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "compmat/classify.hpp"
#include "compmat/core.hpp"
#include "compmat/io.hpp"
#include "compmat/oracle.hpp"
#include "compmat/recover.hpp"

namespace {

// Exit codes: 0 = positive verdict / success, 1 = negative verdict
// (not a composition matrix, conflict, counterexample), 2 = I/O or usage.
constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

double tolerance_from_env() {
    if (const char* env = std::getenv("COMPMAT_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0') {
            throw std::invalid_argument(std::string("COMPMAT_TOL is not a number: ") + env);
        }
        return v;
    }
    return 1e-9;
}

compmat::io::MatrixFormat format_from_extension(const std::string& path) {
    auto lower_ends_with = [&](const char* suffix) {
        std::string p = path;
        for (char& c : p) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        const std::string s = suffix;
        return p.size() >= s.size() && p.compare(p.size() - s.size(), s.size(), s) == 0;
    };
    if (lower_ends_with(".mtx") || lower_ends_with(".mm")) {
        return compmat::io::MatrixFormat::matrix_market;
    }
    if (lower_ends_with(".csv")) {
        return compmat::io::MatrixFormat::dense_csv;
    }
    throw std::invalid_argument("cannot tell the matrix format of '" + path +
                                "': use a .mtx, .mm or .csv extension");
}

compmat::Expected<compmat::CompositionMatrix> load_composition(const std::string& path,
                                                               double tol) {
    const compmat::DenseRealMatrix a = compmat::io::read_matrix(path);
    const auto bin = compmat::binarize(a, compmat::Tolerance(tol));
    if (!bin.ok()) return bin.failure();
    return compmat::try_into_composition(bin.value());
}

void print_witness(const compmat::Witness& w) {
    std::cerr << "error: " << w.clause << " "
              << compmat::io::witness_to_json(w).dump() << "\n";
}

struct ClassifyOptions {
    std::string input;
    double tol = 1e-9;
    bool tol_set = false;
    bool all_witnesses = false;
    bool json = false;
};

int run_classify(const ClassifyOptions& opt) {
    const double tol = opt.tol_set ? opt.tol : tolerance_from_env();
    const compmat::DenseRealMatrix a = compmat::io::read_matrix(opt.input);
    const compmat::ClassificationReport report =
        compmat::classify_full(a, compmat::Tolerance(tol), opt.all_witnesses);
    if (opt.json) {
        std::cout << compmat::io::report_to_json(report).dump(2) << "\n";
    } else {
        compmat::io::write_report_text(report, std::cout);
    }
    return report.is_composition_matrix ? kExitOk : kExitNegative;
}

struct ConvertOptions {
    std::string injection;
    std::string matrix;
    std::string out;
    double tol = 1e-9;
    bool tol_set = false;
};

int run_convert(const ConvertOptions& opt) {
    if (!opt.injection.empty()) {
        const compmat::Injection pi = compmat::io::read_injection(opt.injection);
        const compmat::DenseRealMatrix dense =
            compmat::to_dense(compmat::injection_to_matrix(pi));
        std::ofstream out(opt.out);
        if (!out) throw compmat::io::ParseError(opt.out, 0, "cannot open file for writing");
        compmat::io::write_matrix(dense, out, format_from_extension(opt.out));
        return kExitOk;
    }
    const double tol = opt.tol_set ? opt.tol : tolerance_from_env();
    const auto p = load_composition(opt.matrix, tol);
    if (!p.ok()) {
        print_witness(p.failure());
        return kExitNegative;
    }
    compmat::io::write_injection(compmat::matrix_to_injection(p.value()), opt.out);
    return kExitOk;
}

struct ApplyOptions {
    std::string matrix;
    std::string vector_path;
    bool transpose = false;
};

int run_apply(const ApplyOptions& opt) {
    const auto p = load_composition(opt.matrix, tolerance_from_env());
    if (!p.ok()) {
        print_witness(p.failure());
        return kExitNegative;
    }
    const compmat::RealVector v = compmat::io::read_vector(opt.vector_path);
    const compmat::RealVector result = opt.transpose
                                           ? compmat::apply_pushforward(p.value(), v)
                                           : compmat::apply_pullback(p.value(), v);
    std::cout << compmat::io::format_vector(result) << "\n";
    return kExitOk;
}

struct CertifyOptions {
    std::size_t max_m = 0;
    std::size_t max_n = 0;
    std::string grid = "-1,0,0.5,1,2";
};

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty()) {
                char* end = nullptr;
                const double v = std::strtod(cur.c_str(), &end);
                if (end != cur.c_str() + cur.size()) {
                    throw std::invalid_argument("bad grid value '" + cur + "'");
                }
                grid.push_back(v);
            }
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    return grid;
}

int run_certify(const CertifyOptions& opt) {
    compmat::SweepConfig cfg;
    cfg.max_m = opt.max_m;
    cfg.max_n = opt.max_n;
    cfg.real_grid = parse_grid(opt.grid);
    cfg.max_cells = opt.max_m * opt.max_n;

    bool ok = true;

    const auto report_sweep = [&](const char* name, const compmat::SweepReport& r) {
        if (r.ok()) {
            std::cout << name << ": " << r.shapes_checked << " shapes, " << r.matrices_checked
                      << " matrices, no counterexample\n";
        } else {
            ok = false;
            const auto& ce = *r.counterexample;
            std::cout << name << ": COUNTEREXAMPLE at shape " << ce.m << "x" << ce.n
                      << " pattern " << ce.pattern << " (definition " << ce.definition_holds
                      << ", multiplicative " << ce.multiplicative_on_basis << ", diag "
                      << ce.diag_commutation_on_basis << ")\n";
        }
    };

    report_sweep("row-characterization", compmat::row_characterization_sweep(cfg));
    report_sweep("column-characterization", compmat::column_characterization_sweep(cfg));

    for (std::size_t m = 1; m <= opt.max_m; ++m) {
        for (std::size_t n = 1; n <= opt.max_n; ++n) {
            const compmat::ClassCounts c = compmat::count_classes(m, n);
            const std::uint64_t row_expected = compmat::row_permutation_like_count(m, n);
            const std::uint64_t col_expected = compmat::column_permutation_like_count(m, n);
            const std::uint64_t comp_expected = compmat::composition_matrix_count(m, n);
            const bool match = c.n_row_permutation_like == row_expected &&
                               c.n_column_permutation_like == col_expected &&
                               c.n_composition == comp_expected;
            std::cout << "counts " << m << "x" << n << ": row " << c.n_row_permutation_like
                      << "/" << row_expected << ", column " << c.n_column_permutation_like << "/"
                      << col_expected << ", composition " << c.n_composition << "/"
                      << comp_expected << (match ? " OK" : " MISMATCH") << "\n";
            ok = ok && match;
        }
    }

    std::cout << "certify: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kExitOk : kExitNegative;
}

struct CountOptions {
    std::size_t m = 0;
    std::size_t n = 0;
};

int run_count(const CountOptions& opt) {
    std::cout << compmat::io::counts_to_json(compmat::count_classes(opt.m, opt.n)).dump(2)
              << "\n";
    return kExitOk;
}

struct RecoverOptions {
    std::string input;
    std::string mode;
    int probes = 64;
    std::uint64_t seed = 0;
    std::string out;
};

int run_recover(const RecoverOptions& opt) {
    const compmat::DenseRealMatrix c = compmat::io::read_matrix(opt.input);
    const auto result = opt.mode == "rowwise"
                            ? compmat::project_rowwise(c, opt.probes, opt.seed)
                            : compmat::project_injective(c, opt.probes, opt.seed);
    if (!result.ok()) {
        print_witness(result.failure());
        return kExitNegative;
    }
    const auto& r = result.value();
    std::cerr << "mode=" << compmat::to_string(r.mode) << "\n";
    std::cerr << "score=" << compmat::io::format_double(r.score) << "\n";
    std::cerr << "residual=" << compmat::io::format_double(r.residual) << "\n";
    std::cerr << "ties_broken=" << r.ties_broken << "\n";

    const compmat::Injection pi = compmat::matrix_to_injection(r.matrix);
    if (opt.out.empty()) {
        compmat::io::write_injection(pi, std::cout);
        return kExitOk;
    }
    bool matrix_out = false;
    try {
        matrix_out = format_from_extension(opt.out) == compmat::io::MatrixFormat::matrix_market;
    } catch (const std::invalid_argument&) {
        matrix_out = false;  // injection file
    }
    if (matrix_out) {
        std::ofstream out(opt.out);
        if (!out) throw compmat::io::ParseError(opt.out, 0, "cannot open file for writing");
        compmat::io::write_matrix(compmat::to_dense(r.matrix), out,
                                  compmat::io::MatrixFormat::matrix_market);
    } else {
        compmat::io::write_injection(pi, opt.out);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete composition matrices: construct, apply, classify, certify, recover"};
    app.require_subcommand(1);

    ClassifyOptions classify_opt;
    CLI::App* classify = app.add_subcommand(
        "classify", "Classify a real matrix: binary, row/column-permutation-like, composition");
    classify->add_option("--input", classify_opt.input, "Matrix file (.mtx/.mm/.csv)")
        ->required();
    CLI::Option* tol_opt =
        classify->add_option("--tol", classify_opt.tol, "Absolute 0/1 tolerance (default 1e-9)");
    classify->add_flag("--all-witnesses", classify_opt.all_witnesses,
                       "Report every violation, not just the first per check");
    classify->add_flag("--json", classify_opt.json, "Emit the JSON report");

    ConvertOptions convert_opt;
    CLI::App* convert =
        app.add_subcommand("convert", "Convert between injection files and matrix files");
    CLI::Option* conv_inj = convert->add_option("--injection", convert_opt.injection,
                                                "Injection file to expand into a matrix");
    CLI::Option* conv_mat = convert->add_option("--matrix", convert_opt.matrix,
                                                "Matrix file to read back as an injection");
    convert->add_option("--out", convert_opt.out, "Output file")->required();
    CLI::Option* conv_tol =
        convert->add_option("--tol", convert_opt.tol, "Absolute 0/1 tolerance (default 1e-9)");
    conv_inj->excludes(conv_mat);
    conv_mat->excludes(conv_inj);

    ApplyOptions apply_opt;
    CLI::App* apply =
        app.add_subcommand("apply", "Apply a composition matrix to a vector (pullback)");
    apply->add_option("--matrix", apply_opt.matrix, "Composition matrix file")->required();
    apply->add_option("--vector", apply_opt.vector_path, "Vector CSV file")->required();
    apply->add_flag("--transpose", apply_opt.transpose, "Apply the transpose (pushforward)");

    CertifyOptions certify_opt;
    CLI::App* certify = app.add_subcommand(
        "certify", "Exhaustively check the characterization equivalences and class counts");
    certify->add_option("--max-m", certify_opt.max_m, "Largest row count")->required();
    certify->add_option("--max-n", certify_opt.max_n, "Largest column count")->required();
    certify->add_option("--grid", certify_opt.grid,
                        "Comma-separated entry grid (default \"-1,0,0.5,1,2\")");

    CountOptions count_opt;
    CLI::App* count =
        app.add_subcommand("count", "Count matrix classes over all binary matrices of a shape");
    count->add_option("--m", count_opt.m, "Rows")->required();
    count->add_option("--n", count_opt.n, "Columns")->required();

    RecoverOptions recover_opt;
    CLI::App* recover = app.add_subcommand(
        "recover", "Project a noisy real matrix onto the nearest composition matrix");
    recover->add_option("--input", recover_opt.input, "Matrix file")->required();
    recover->add_option("--mode", recover_opt.mode, "rowwise or injective")
        ->required()
        ->check(CLI::IsMember({"rowwise", "injective"}));
    recover->add_option("--probes", recover_opt.probes, "Random probes for the residual (>= 1)");
    recover->add_option("--seed", recover_opt.seed, "Probe seed");
    recover->add_option("--out", recover_opt.out,
                        "Output file (.mtx/.mm for Matrix Market, else injection file); "
                        "default: injection file on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*classify) {
            classify_opt.tol_set = tol_opt->count() > 0;
            return run_classify(classify_opt);
        }
        if (*convert) {
            if (convert_opt.injection.empty() && convert_opt.matrix.empty()) {
                std::cerr << "error: convert needs --injection or --matrix\n";
                return kExitError;
            }
            convert_opt.tol_set = conv_tol->count() > 0;
            return run_convert(convert_opt);
        }
        if (*apply) return run_apply(apply_opt);
        if (*certify) return run_certify(certify_opt);
        if (*count) return run_count(count_opt);
        if (*recover) return run_recover(recover_opt);
    } catch (const compmat::io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
