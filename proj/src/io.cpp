#include "tsqrt/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tsqrt/errors.hpp"
#include "tsqrt/version.hpp"

namespace tsqrt::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Tensor3 tensor_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("tensor parse: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dims") || !j.contains("data"))
        throw Error("tensor parse: expected object with dims and data");
    const auto& dims = j["dims"];
    if (!dims.is_array() || dims.size() != 3)
        throw Error("tensor parse: dims must be [n, m, p]");
    const std::size_t n = dims[0].get<std::size_t>();
    const std::size_t m = dims[1].get<std::size_t>();
    const std::size_t p = dims[2].get<std::size_t>();
    if (n < 1 || m < 1 || p < 1) throw Error("tensor parse: dims must be positive");
    const auto& data = j["data"];
    if (!data.is_array() || data.size() != n * m * p)
        throw Error("tensor parse: data length does not match dims");
    Tensor3 t(n, m, p);
    for (std::size_t i = 0; i < t.data.size(); ++i) {
        if (!data[i].is_number()) throw Error("tensor parse: non-numeric entry");
        t.data[i] = data[i].get<double>();
        if (!std::isfinite(t.data[i])) throw Error("tensor parse: non-finite entry");
    }
    return t;
}

std::string tensor_to_json_text(const Tensor3& t) {
    std::ostringstream out;
    out << "{\"dims\": [" << t.n << ", " << t.m << ", " << t.p << "], \"data\": [";
    for (std::size_t i = 0; i < t.data.size(); ++i) {
        if (i) out << ", ";
        out << format_double(t.data[i]);
    }
    out << "]}\n";
    return out.str();
}

Tensor3 read_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("read_tensor: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return tensor_from_json_text(buf.str());
}

void write_tensor(const Tensor3& t, const std::string& path) {
    atomic_write_text(path, tensor_to_json_text(t));
}

std::string trace_to_csv(const ConvergenceTrace& trace) {
    std::ostringstream out;
    out << "k,residual,rho,q\n";
    for (std::size_t k = 0; k < trace.residuals.size(); ++k) {
        out << k << "," << format_double(trace.residuals[k]) << ",";
        if (k >= 1 && std::isfinite(trace.rho[k - 1])) out << format_double(trace.rho[k - 1]);
        out << ",";
        if (k >= 1 && std::isfinite(trace.q[k - 1])) out << format_double(trace.q[k - 1]);
        out << "\n";
    }
    return out.str();
}

std::string tbw_report_to_csv(const TbwReport& report) {
    std::ostringstream out;
    out << "slice,trace_a,trace_b,trace_cross_sqrt,d_squared\n";
    for (std::size_t i = 0; i < report.per_slice.size(); ++i) {
        const auto& r = report.per_slice[i];
        out << (i + 1) << "," << format_double(r.trace_a) << "," << format_double(r.trace_b) << ","
            << format_double(r.trace_cross_sqrt) << "," << format_double(r.d_squared) << "\n";
    }
    out << "total,,,," << format_double(report.total) << "\n";
    return out.str();
}

std::string metrics_to_json(const imaging::QualityMetrics& metrics) {
    json j;
    j["ssim"] = metrics.ssim;
    j["eme"] = metrics.eme;
    j["di"] = metrics.di;
    json corr = json::array();
    for (std::size_t i = 0; i < metrics.channel_correlations.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < metrics.channel_correlations.cols(); ++k)
            row.push_back(metrics.channel_correlations(i, k));
        corr.push_back(row);
    }
    j["correlations"] = corr;
    return j.dump(2) + "\n";
}

std::string manifest_to_json(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["inputs"] = m.inputs;
    j["parameters"] = m.parameters;
    j["outputs"] = m.outputs;
    j["versions"] = m.version.empty() ? std::string(kVersion) : m.version;
    return j.dump(2) + "\n";
}

void atomic_write_text(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error("atomic_write_text: cannot open " + tmp);
        out << content;
        if (!out) throw Error("atomic_write_text: write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace tsqrt::io
