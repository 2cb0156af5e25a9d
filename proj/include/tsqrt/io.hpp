#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsqrt/imaging.hpp"
#include "tsqrt/solvers.hpp"
#include "tsqrt/tbw.hpp"
#include "tsqrt/tensor3.hpp"

namespace tsqrt::io {

// Tensor file format: a JSON object {"dims": [n, m, p], "data": [ ... ]} with
// data flat in slice-major, row-major order. Doubles are written with
// round-trip precision.
Tensor3 read_tensor(const std::string& path);
void write_tensor(const Tensor3& t, const std::string& path);

Tensor3 tensor_from_json_text(const std::string& text);
std::string tensor_to_json_text(const Tensor3& t);

// Trace CSV: header "k,residual,rho,q", one row per iteration; ratios missing
// at k = 0 (or where undefined) are empty fields.
std::string trace_to_csv(const ConvergenceTrace& trace);

// Report CSV: "slice,trace_a,trace_b,trace_cross_sqrt,d_squared" rows plus a
// trailing total line.
std::string tbw_report_to_csv(const TbwReport& report);

std::string metrics_to_json(const imaging::QualityMetrics& metrics);

struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::map<std::string, std::string> parameters;
    std::vector<std::string> outputs;
    std::string version;
};
std::string manifest_to_json(const RunManifest& m);

// Temp-then-rename text write.
void atomic_write_text(const std::string& path, const std::string& content);

std::string format_double(double v);  // shortest round-trip

}  // namespace tsqrt::io
