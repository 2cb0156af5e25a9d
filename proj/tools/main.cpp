#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "reproduce.hpp"
#include "tsqrt/errors.hpp"
#include "tsqrt/image_io.hpp"
#include "tsqrt/imaging.hpp"
#include "tsqrt/io.hpp"
#include "tsqrt/solvers.hpp"
#include "tsqrt/tbw.hpp"
#include "tsqrt/tensor_ops.hpp"
#include "tsqrt/version.hpp"

namespace {

using namespace tsqrt;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNumericMiss = 2;

void write_manifest(const io::RunManifest& manifest, const std::string& anchor_output) {
    io::RunManifest m = manifest;
    m.version = kVersion;
    io::atomic_write_text(anchor_output + ".manifest.json", io::manifest_to_json(m));
}

std::string fmt(double v) { return io::format_double(v); }

// ---- sqrt ----------------------------------------------------------------

struct SqrtArgs {
    std::string input;
    std::string method = "newton";
    double tol = 1e-12;
    std::size_t max_iter = 50;
    bool no_early_stop = false;
    std::string out;
    std::string inv_out;
    std::string trace_out;
};

int run_sqrt(const SqrtArgs& args) {
    const Tensor3 a = io::read_tensor(args.input);
    IterationConfig cfg;
    cfg.tolerance = args.tol;
    cfg.max_iterations = args.max_iter;
    cfg.early_stop = !args.no_early_stop;

    SqrtSolution sol;
    if (args.method == "newton") {
        sol = newton_tsqrt(a, cfg);
    } else if (args.method == "db") {
        sol = db_tsqrt(a, cfg);
    } else if (args.method == "direct") {
        sol.sqrt = t_sqrt_direct(a);
        sol.trace.residuals.push_back(residual(a, sol.sqrt));
        sol.trace.converged = true;
        sol.trace.iterations_run = 0;
    } else {
        throw Error("sqrt: unknown method " + args.method);
    }

    io::write_tensor(sol.sqrt, args.out);
    std::vector<std::string> outputs{args.out};
    if (sol.inv_sqrt) {
        // the coupled method always produces the inverse root; default its
        // path off --out when no explicit location is given
        std::string inv_path = args.inv_out;
        if (inv_path.empty()) {
            const std::filesystem::path p(args.out);
            inv_path = (p.parent_path() / (p.stem().string() + ".inv" + p.extension().string()))
                           .string();
        }
        io::write_tensor(*sol.inv_sqrt, inv_path);
        outputs.push_back(inv_path);
    }
    if (!args.trace_out.empty()) {
        io::atomic_write_text(args.trace_out, io::trace_to_csv(sol.trace));
        outputs.push_back(args.trace_out);
    }

    io::RunManifest m;
    m.command = "sqrt";
    m.inputs = {args.input};
    m.parameters = {{"method", args.method},
                    {"tol", fmt(args.tol)},
                    {"max_iter", std::to_string(args.max_iter)},
                    {"early_stop", args.no_early_stop ? "false" : "true"}};
    m.outputs = outputs;
    write_manifest(m, args.out);

    std::printf("method=%s iterations=%zu residual=%s converged=%s\n", args.method.c_str(),
                sol.trace.iterations_run, fmt(sol.trace.residuals.back()).c_str(),
                sol.trace.converged ? "true" : "false");
    return sol.trace.converged ? kExitOk : kExitNumericMiss;
}

// ---- tbw -----------------------------------------------------------------

struct TbwArgs {
    std::string a;
    std::string b;
    std::string method = "direct";
    std::string report_out;
};

int run_tbw(const TbwArgs& args) {
    const Tensor3 a = io::read_tensor(args.a);
    const Tensor3 b = io::read_tensor(args.b);
    SqrtStrategy strategy = SqrtStrategy::Direct;
    if (args.method == "newton") strategy = SqrtStrategy::Newton;
    else if (args.method == "db") strategy = SqrtStrategy::DenmanBeavers;
    else if (args.method != "direct") throw Error("tbw: unknown method " + args.method);

    const TbwReport report = tbw_report(a, b, strategy);
    std::printf("%s\n", fmt(report.total).c_str());

    std::vector<std::string> outputs;
    if (!args.report_out.empty()) {
        io::atomic_write_text(args.report_out, io::tbw_report_to_csv(report));
        outputs.push_back(args.report_out);
        io::RunManifest m;
        m.command = "tbw";
        m.inputs = {args.a, args.b};
        m.parameters = {{"method", args.method}};
        m.outputs = outputs;
        write_manifest(m, args.report_out);
    }
    return kExitOk;
}

// ---- grayscale -----------------------------------------------------------

struct GrayscaleArgs {
    std::string image;
    std::string method = "tdg";
    std::string out;
    std::string metrics_out;
};

int run_grayscale(const GrayscaleArgs& args) {
    using namespace tsqrt::imaging;
    const ImageTensor img = load_image(args.image);
    RealMatrix gray;
    if (args.method == "tdg") {
        gray = tdg_grayscale(img).display;
    } else if (args.method == "luminance") {
        gray = luminance_grayscale(img);
    } else if (args.method == "pca") {
        gray = pca_grayscale(img);
    } else {
        throw Error("grayscale: unknown method " + args.method);
    }
    save_grayscale(gray, args.out);

    std::vector<std::string> outputs{args.out};
    if (!args.metrics_out.empty()) {
        QualityMetrics metrics;
        const RealMatrix reference = luminance_grayscale(img);
        metrics.ssim = ssim(gray, reference);
        metrics.eme = eme(gray);
        metrics.di = decorrelation_index(img);
        metrics.channel_correlations = pearson_channel_correlations(img);
        io::atomic_write_text(args.metrics_out, io::metrics_to_json(metrics));
        outputs.push_back(args.metrics_out);
    }

    io::RunManifest m;
    m.command = "grayscale";
    m.inputs = {args.image};
    m.parameters = {{"method", args.method}};
    m.outputs = outputs;
    write_manifest(m, args.out);
    return kExitOk;
}

// ---- whiten ----------------------------------------------------------------

struct WhitenArgs {
    std::string image;
    std::string method = "t";
    std::string out;
    std::string metrics_out;
};

int run_whiten(const WhitenArgs& args) {
    using namespace tsqrt::imaging;
    const ImageTensor img = load_image(args.image);
    ImageTensor white;
    if (args.method == "t") {
        white = t_whiten_image(img);
    } else if (args.method == "matrix") {
        white = matrix_whiten(img);
    } else if (args.method == "channelwise") {
        white = channelwise_pca_whiten(img);
    } else {
        throw Error("whiten: unknown method " + args.method);
    }

    // Whitened values are unbounded; the saved image is display-normalized.
    ImageTensor display = white;
    {
        double lo = display.values.front(), hi = lo;
        for (double v : display.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double range = hi > lo ? hi - lo : 1.0;
        for (double& v : display.values) v = (v - lo) / range;
    }
    save_image(display, args.out);

    std::vector<std::string> outputs{args.out};
    if (!args.metrics_out.empty()) {
        QualityMetrics metrics;
        metrics.di = decorrelation_index(white);
        metrics.channel_correlations = pearson_channel_correlations(white);
        metrics.ssim = 1.0;
        metrics.eme = display.channels == 3 ? eme(luminance_grayscale(display)) : 0.0;
        io::atomic_write_text(args.metrics_out, io::metrics_to_json(metrics));
        outputs.push_back(args.metrics_out);
    }

    io::RunManifest m;
    m.command = "whiten";
    m.inputs = {args.image};
    m.parameters = {{"method", args.method}};
    m.outputs = outputs;
    write_manifest(m, args.out);
    return kExitOk;
}

// ---- transfer --------------------------------------------------------------

struct TransferArgs {
    std::string source;
    std::string target;
    std::string method = "tensor";
    std::string out;
};

int run_transfer(const TransferArgs& args) {
    using namespace tsqrt::imaging;
    const ImageTensor source = load_image(args.source);
    const ImageTensor target = load_image(args.target);
    ImageTensor out;
    if (args.method == "tensor") {
        out = color_transfer(source, target).display;
    } else if (args.method == "channelwise") {
        out = reinhard_channelwise_transfer(source, target);
        for (double& v : out.values) v = std::clamp(v, 0.0, 1.0);
    } else {
        throw Error("transfer: unknown method " + args.method);
    }
    save_image(out, args.out);

    io::RunManifest m;
    m.command = "transfer";
    m.inputs = {args.source, args.target};
    m.parameters = {{"method", args.method}};
    m.outputs = {args.out};
    write_manifest(m, args.out);
    return kExitOk;
}

// ---- bench-stability -------------------------------------------------------

struct BenchArgs {
    std::size_t n = 3;
    std::size_t p = 3;
    std::string kappa_list = "4,50,1102";
    std::size_t iterations = 20;
    std::uint64_t seed = 1;
    std::string out;
};

int run_bench_stability(const BenchArgs& args) {
    std::vector<double> kappas;
    std::stringstream ss(args.kappa_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) kappas.push_back(std::stod(tok));
    }
    if (kappas.empty()) throw Error("bench-stability: empty kappa list");

    std::ostringstream csv;
    csv << "kappa,method,r_min,r_final,r_final_over_min,growth_per_iteration\n";
    for (double kappa : kappas) {
        const Tensor3 a = make_conditioned_spd_tensor(args.n, args.p, kappa, args.seed);
        const StabilityReport rep = stability_experiment(a, args.iterations);
        const MethodStability* methods[2] = {&rep.newton, &rep.denman_beavers};
        const char* names[2] = {"newton", "db"};
        for (int i = 0; i < 2; ++i) {
            csv << fmt(kappa) << "," << names[i] << "," << fmt(methods[i]->r_min) << ","
                << fmt(methods[i]->residuals.back()) << "," << fmt(methods[i]->final_over_min)
                << "," << fmt(methods[i]->growth_per_iteration) << "\n";
        }
    }
    io::atomic_write_text(args.out, csv.str());

    io::RunManifest m;
    m.command = "bench-stability";
    m.parameters = {{"n", std::to_string(args.n)},
                    {"p", std::to_string(args.p)},
                    {"kappa", args.kappa_list},
                    {"iterations", std::to_string(args.iterations)},
                    {"seed", std::to_string(args.seed)}};
    m.outputs = {args.out};
    write_manifest(m, args.out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"T-product tensor square roots, Bures-Wasserstein distances and "
                 "image decorrelation tools"};
    app.set_version_flag("--version", tsqrt::kVersion);
    app.require_subcommand(1);

    SqrtArgs sqrt_args;
    auto* sqrt_cmd = app.add_subcommand("sqrt", "Principal T-square root of a tensor file");
    sqrt_cmd->add_option("--in", sqrt_args.input, "input tensor JSON")->required();
    sqrt_cmd->add_option("--method", sqrt_args.method, "newton|db|direct");
    sqrt_cmd->add_option("--tol", sqrt_args.tol, "residual tolerance");
    sqrt_cmd->add_option("--max-iter", sqrt_args.max_iter, "iteration cap");
    sqrt_cmd->add_flag("--no-early-stop", sqrt_args.no_early_stop, "run all iterations");
    sqrt_cmd->add_option("--out", sqrt_args.out, "output tensor JSON")->required();
    sqrt_cmd->add_option("--inv-out", sqrt_args.inv_out, "inverse root output (db only)");
    sqrt_cmd->add_option("--trace-out", sqrt_args.trace_out, "trace CSV path");

    TbwArgs tbw_args;
    auto* tbw_cmd = app.add_subcommand("tbw", "Bures-Wasserstein distance between two tensors");
    tbw_cmd->add_option("--a", tbw_args.a, "first tensor JSON")->required();
    tbw_cmd->add_option("--b", tbw_args.b, "second tensor JSON")->required();
    tbw_cmd->add_option("--method", tbw_args.method, "direct|newton|db inner roots");
    tbw_cmd->add_option("--report-out", tbw_args.report_out, "slice report CSV path");

    GrayscaleArgs gray_args;
    auto* gray_cmd = app.add_subcommand("grayscale", "Decorrelated / classical grayscale");
    gray_cmd->add_option("--image", gray_args.image, "input image (PNG/PPM)")->required();
    gray_cmd->add_option("--method", gray_args.method, "tdg|luminance|pca");
    gray_cmd->add_option("--out", gray_args.out, "output image")->required();
    gray_cmd->add_option("--metrics-out", gray_args.metrics_out, "metrics JSON path");

    WhitenArgs whiten_args;
    auto* whiten_cmd = app.add_subcommand("whiten", "Channel whitening");
    whiten_cmd->add_option("--image", whiten_args.image, "input image (PNG/PPM)")->required();
    whiten_cmd->add_option("--method", whiten_args.method, "t|matrix|channelwise");
    whiten_cmd->add_option("--out", whiten_args.out, "output image")->required();
    whiten_cmd->add_option("--metrics-out", whiten_args.metrics_out, "metrics JSON path");

    TransferArgs transfer_args;
    auto* transfer_cmd = app.add_subcommand("transfer", "Color transfer between images");
    transfer_cmd->add_option("--source", transfer_args.source, "source image")->required();
    transfer_cmd->add_option("--target", transfer_args.target, "target palette image")->required();
    transfer_cmd->add_option("--method", transfer_args.method, "tensor|channelwise");
    transfer_cmd->add_option("--out", transfer_args.out, "output image")->required();

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench-stability", "Condition-number stability sweep");
    bench_cmd->add_option("--n", bench_args.n, "slice dimension");
    bench_cmd->add_option("--p", bench_args.p, "depth");
    bench_cmd->add_option("--kappa", bench_args.kappa_list, "comma-separated condition numbers");
    bench_cmd->add_option("--iterations", bench_args.iterations, "iterations per run");
    bench_cmd->add_option("--seed", bench_args.seed, "generator seed");
    bench_cmd->add_option("--out", bench_args.out, "sweep CSV path")->required();

    std::string repro_which = "all";
    std::string repro_out_dir = "reproduce_out";
    auto* repro_cmd = app.add_subcommand("reproduce", "Golden-reference checks");
    repro_cmd->add_option(
        "--which", repro_which,
        "newton-table|db-table|stability-table|kappa-sweep|tbw-example|grayscale-example|"
        "image-cov-table|all");
    repro_cmd->add_option("--out-dir", repro_out_dir, "directory for emitted CSVs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sqrt_cmd) return run_sqrt(sqrt_args);
        if (*tbw_cmd) return run_tbw(tbw_args);
        if (*gray_cmd) return run_grayscale(gray_args);
        if (*whiten_cmd) return run_whiten(whiten_args);
        if (*transfer_cmd) return run_transfer(transfer_args);
        if (*bench_cmd) return run_bench_stability(bench_args);
        if (*repro_cmd) return tsqrt::cli::run_reproduce(repro_which, repro_out_dir);
    } catch (const tsqrt::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    }
    return kExitInputError;
}
