// opscale: generate operator matrices and CDDHF bases, scale signal files,
// and run the accuracy sweeps.
//
// Exit codes: 0 success, 1 computational failure, 2 input or usage error.

#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opscale/opscale.hpp"

namespace {

using namespace opscale;

constexpr int kExitOk = 0;
constexpr int kExitCompute = 1;
constexpr int kExitUsage = 2;

/// Input or usage problem detected by the tool itself.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

IndexScheme scheme_from(const std::string& text) {
    if (auto s = parse_scheme(text)) return *s;
    throw usage_error("unknown scheme '" + text + "' (expected centered or ordinary)");
}

void require_positive_m(double m) {
    if (!(m > 0.0) || !std::isfinite(m)) throw usage_error("--m must be positive and finite");
}

/// Writes the whole payload or fails; nothing is written for "-" but stdout.
void emit(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        std::cout.flush();
        if (!std::cout) throw std::runtime_error("failed writing to standard output");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << payload;
    out.close();
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

struct GenOptions {
    std::string kind;
    std::size_t n = 0;
    std::string scheme = "centered";
    std::optional<double> m;
    std::string out;
};

std::string run_gen(const GenOptions& o) {
    if (o.n < 1) throw usage_error("--n must be at least 1");
    const bool wants_m = o.kind == "scaling";
    if (wants_m && !o.m) throw usage_error("--m is required for --kind scaling");
    if (!wants_m && o.m) throw usage_error("--m only applies to --kind scaling");
    if (o.m) require_positive_m(*o.m);

    io::MatrixHeader header{o.kind, o.n, o.scheme, o.m};
    ComplexMatrix matrix;
    std::vector<double> labels;

    if (o.kind == "u2_pei" || o.kind == "d2_pei") {
        header.scheme = "pei";
        for (std::size_t i = 0; i < o.n; ++i) labels.push_back(static_cast<double>(i));
        const ComplexMatrix u2 = pei_u_squared(o.n);
        matrix = o.kind == "u2_pei" ? u2 : pei_d_squared(u2, pei_centered_dft(o.n));
    } else {
        const IndexScheme scheme = scheme_from(o.scheme);
        const SampleGrid grid = index_grid(o.n, scheme);
        labels = grid.indices;
        if (o.kind == "dft") {
            matrix = dft_matrix(grid);
        } else if (o.kind == "u") {
            matrix = coord_matrix(grid);
        } else if (o.kind == "d" || o.kind == "generator" || o.kind == "scaling") {
            const OperatorSet ops = make_operator_set(o.n, scheme);
            if (o.kind == "d")
                matrix = ops.d;
            else if (o.kind == "generator")
                matrix = ops.generator;
            else
                matrix = scaling_matrix(ScalingSpec{*o.m, o.n, scheme}, ops);
        } else {
            throw usage_error("unknown --kind '" + o.kind + "'");
        }
    }
    std::ostringstream out;
    io::write_matrix(out, header, labels, matrix);
    return out.str();
}

struct ScaleOptions {
    std::string in;
    double m = 1.0;
    std::string method = "operator";
    std::string scheme = "centered";
    std::string out;
};

std::string run_scale(const ScaleOptions& o) {
    require_positive_m(o.m);
    const IndexScheme scheme = scheme_from(o.scheme);
    const auto method = parse_method(o.method);
    if (!method) throw usage_error("unknown --method '" + o.method + "'");

    std::ifstream in(o.in, std::ios::binary);
    if (!in) throw usage_error("cannot open input '" + o.in + "'");
    const io::SignalData data = io::read_signal(in);

    const SampleGrid grid = index_grid(data.values.size(), scheme);
    for (std::size_t k = 0; k < grid.n_samples; ++k)
        if (data.indices[k] != grid.indices[k])
            throw usage_error("row " + std::to_string(k + 2) + ": index " + io::format_real(data.indices[k]) +
                              " does not match the " + std::string(to_string(scheme)) + " grid (expected " +
                              io::format_real(grid.indices[k]) + ")");

    ComplexVector result;
    switch (*method) {
        case Method::Operator:
            result = scale_signal(data.values, ScalingSpec{o.m, grid.n_samples, scheme},
                                  make_operator_set(grid.n_samples, scheme));
            break;
        case Method::Cddhf: result = pei_scale(data.values, o.m); break;
        case Method::Interp: result = interp_scale(data.values, grid, o.m); break;
    }
    std::ostringstream out;
    io::write_signal(out, grid.indices, result);
    return out.str();
}

struct BenchOptions {
    std::string function = "all";
    std::string methods = "operator";
    std::string format = "csv";
    std::vector<double> m;
    std::vector<std::size_t> n;
    bool no_amplitude = false;
    std::string out;
    std::string meta;
};

BenchTable run_bench_cmd(const BenchOptions& o, TableFormat& format) {
    BenchConfig config;
    if (o.function == "all") {
        config.functions = {TestFunction::ChirpedPulse, TestFunction::Trapezoid};
    } else if (auto fn = parse_function(o.function)) {
        config.functions = {*fn};
    } else {
        throw usage_error("unknown --function '" + o.function + "'");
    }
    config.methods.clear();
    for (auto name : io::split(o.methods)) {
        auto m = parse_method(name);
        if (!m) throw usage_error("unknown method '" + std::string(name) + "' in --methods");
        config.methods.push_back(*m);
    }
    if (!o.m.empty()) {
        for (double m : o.m) require_positive_m(m);
        config.m_factors = o.m;
    }
    if (!o.n.empty()) {
        for (auto n : o.n)
            if (n < 1) throw usage_error("--n values must be at least 1");
        config.n_values = o.n;
    }
    config.amplitude = o.no_amplitude ? Amplitude::Plain : Amplitude::Unitary;
    auto f = parse_format(o.format);
    if (!f) throw usage_error("unknown --format '" + o.format + "'");
    format = *f;
    return run_bench(config);
}

struct BasisOptions {
    std::size_t n = 0;
    double m = 1.0;
    std::string out;
};

std::string run_basis(const BasisOptions& o) {
    if (o.n < 1) throw usage_error("--n must be at least 1");
    require_positive_m(o.m);
    const CddhfBasis basis = cddhf_basis(o.n, o.m);
    if (basis.near_degenerate > 0)
        std::cerr << "opscale: warning: " << basis.near_degenerate << " near-degenerate eigenvalue gap(s) below "
                  << CddhfBasis::kNearDegenerateGap << '\n';
    std::ostringstream out;
    io::write_basis(out, basis);
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"opscale: unitary discrete scaling by hyperdifferential operators"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write an operator matrix");
    gen_cmd->add_option("--kind", gen.kind, "dft | u | d | generator | scaling | u2_pei | d2_pei")->required();
    gen_cmd->add_option("--n", gen.n, "Number of samples")->required();
    gen_cmd->add_option("--scheme", gen.scheme, "centered | ordinary");
    gen_cmd->add_option("--m", gen.m, "Scaling factor (kind=scaling only)");
    gen_cmd->add_option("--out", gen.out, "Output path (default: stdout)");

    ScaleOptions scale;
    auto* scale_cmd = app.add_subcommand("scale", "Scale a signal file");
    scale_cmd->add_option("--in", scale.in, "Input signal CSV")->required();
    scale_cmd->add_option("--m", scale.m, "Scaling factor")->required();
    scale_cmd->add_option("--method", scale.method, "operator | cddhf | interp");
    scale_cmd->add_option("--scheme", scale.scheme, "centered | ordinary");
    scale_cmd->add_option("--out", scale.out, "Output path (default: stdout)");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run the NMSE sweep");
    bench_cmd->add_option("--function", bench.function, "chirp | trapezoid | all");
    bench_cmd->add_option("--methods,--method", bench.methods, "Comma list of operator, cddhf, interp");
    bench_cmd->add_option("--format", bench.format, "csv | markdown");
    bench_cmd->add_option("--m", bench.m, "Override the scaling factors")->delimiter(',');
    bench_cmd->add_option("--n", bench.n, "Override the sample counts")->delimiter(',');
    bench_cmd->add_flag("--no-amplitude-factor", bench.no_amplitude, "Compare against f(u/M) without M^-1/2");
    bench_cmd->add_option("--out", bench.out, "Output path (default: stdout)");
    bench_cmd->add_option("--meta", bench.meta, "Also write sweep metadata as JSON");

    BasisOptions basis;
    auto* basis_cmd = app.add_subcommand("basis", "Write the CDDHF basis for (N, M)");
    basis_cmd->add_option("--n", basis.n, "Number of samples")->required();
    basis_cmd->add_option("--m", basis.m, "Scaling factor");
    basis_cmd->add_option("--out", basis.out, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen_cmd) {
            emit(gen.out, run_gen(gen));
        } else if (*scale_cmd) {
            emit(scale.out, run_scale(scale));
        } else if (*bench_cmd) {
            TableFormat format = TableFormat::Csv;
            const BenchTable table = run_bench_cmd(bench, format);
            emit(bench.out, emit_table(table, format));
            if (!bench.meta.empty()) emit(bench.meta, emit_metadata(table));
        } else if (*basis_cmd) {
            emit(basis.out, run_basis(basis));
        }
    } catch (const usage_error& e) {
        std::cerr << "opscale: " << e.what() << '\n';
        return kExitUsage;
    } catch (const io::parse_error& e) {
        std::cerr << "opscale: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "opscale: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "opscale: " << e.what() << '\n';
        return kExitCompute;
    }
    return kExitOk;
}
