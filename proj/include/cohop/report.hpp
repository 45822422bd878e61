// Copyright 2026 The cohop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COHOP_REPORT_HPP
#define COHOP_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace cohop {

/// How abs_error / rel_error are compared with the tolerance.
enum class ToleranceMode {
    absolute,
    relative,
    /// Either error within tolerance.
    either,
    /// The absolute error must reach at least the tolerance (a deviation witness).
    exceeds,
};

struct CheckReport {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    std::vector<double> computed;
    std::vector<double> reference;
    double abs_error = std::numeric_limits<double>::quiet_NaN();
    double rel_error = std::numeric_limits<double>::quiet_NaN();
    double tolerance = 0;
    ToleranceMode mode = ToleranceMode::absolute;
    bool pass = false;
    int cutoff = 0;
    int safe_sector = 0;
    long long runtime_ms = 0;
    /// Set when the check could not be evaluated (infeasible parameters).
    std::optional<std::string> error;
};

/// Round to 15 significant digits so the JSON and CSV streams carry the same numbers.
inline double round15(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

inline std::string format15(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

/// Fills abs_error, rel_error and pass from computed and reference.
inline void grade(CheckReport &r) {
    double abs_err = 0;
    double ref_scale = 0;
    size_t n = std::min(r.computed.size(), r.reference.size());
    for (size_t i = 0; i < n; ++i) {
        double diff = std::abs(r.computed[i] - r.reference[i]);
        if (std::isnan(diff)) {
            abs_err = diff;
            break;
        }
        abs_err = std::max(abs_err, diff);
        ref_scale = std::max(ref_scale, std::abs(r.reference[i]));
    }
    r.abs_error = abs_err;
    r.rel_error = ref_scale > 0 ? abs_err / ref_scale : (abs_err == 0 ? 0 : std::numeric_limits<double>::infinity());
    switch (r.mode) {
        case ToleranceMode::absolute:
            r.pass = r.abs_error <= r.tolerance;
            break;
        case ToleranceMode::relative:
            r.pass = r.rel_error <= r.tolerance;
            break;
        case ToleranceMode::either:
            r.pass = r.abs_error <= r.tolerance || r.rel_error <= r.tolerance;
            break;
        case ToleranceMode::exceeds:
            r.pass = r.abs_error >= r.tolerance;
            break;
    }
    if (n == 0 || r.computed.size() != r.reference.size() || !std::isfinite(r.abs_error)) {
        r.pass = false;
    }
}

namespace detail {

inline nlohmann::json number(double x) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return round15(x);
}

inline nlohmann::json numbers(const std::vector<double> &xs) {
    nlohmann::json out = nlohmann::json::array();
    for (double x : xs) {
        out.push_back(number(x));
    }
    return out;
}

inline std::string csv_quote(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

inline std::string joined(const std::vector<double> &xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        out += (i ? ";" : "") + format15(xs[i]);
    }
    return out;
}

}  // namespace detail

inline nlohmann::json to_json(const CheckReport &r) {
    nlohmann::json j;
    j["check"] = r.check;
    j["params"] = r.params;
    j["computed"] = detail::numbers(r.computed);
    j["reference"] = detail::numbers(r.reference);
    j["abs_error"] = detail::number(r.abs_error);
    j["rel_error"] = detail::number(r.rel_error);
    j["tolerance"] = detail::number(r.tolerance);
    j["pass"] = r.pass;
    j["cutoff"] = r.cutoff;
    j["safe_sector"] = r.safe_sector;
    j["runtime_ms"] = r.runtime_ms;
    if (r.error) {
        j["error"] = *r.error;
    }
    return j;
}

inline void write_ndjson(std::ostream &out, const std::vector<CheckReport> &reports) {
    for (const auto &r : reports) {
        out << to_json(r).dump() << '\n';
    }
}

inline const char *kCsvHeader =
    "check,params,computed,reference,abs_error,rel_error,tolerance,pass,cutoff,safe_sector,runtime_ms,error";

inline void write_csv(std::ostream &out, const std::vector<CheckReport> &reports) {
    out << kCsvHeader << '\n';
    for (const auto &r : reports) {
        out << detail::csv_quote(r.check) << ',' << detail::csv_quote(r.params.dump()) << ','
            << detail::csv_quote(detail::joined(r.computed)) << ',' << detail::csv_quote(detail::joined(r.reference))
            << ',' << format15(r.abs_error) << ',' << format15(r.rel_error) << ',' << format15(r.tolerance) << ','
            << (r.pass ? "true" : "false") << ',' << r.cutoff << ',' << r.safe_sector << ',' << r.runtime_ms << ','
            << detail::csv_quote(r.error.value_or("")) << '\n';
    }
}

}  // namespace cohop

#endif
