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

#include "cohop/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cohop/suites.hpp"
#include "gtest/gtest.h"

using namespace cohop;

namespace {

CheckReport sample(std::vector<double> computed, std::vector<double> reference, double tol, ToleranceMode mode) {
    CheckReport r;
    r.check = "sample";
    r.params = {{"n", 1}};
    r.computed = std::move(computed);
    r.reference = std::move(reference);
    r.tolerance = tol;
    r.mode = mode;
    grade(r);
    return r;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        out.push_back(item);
    }
    return out;
}

}  // namespace

TEST(report, grading_modes) {
    ASSERT_TRUE(sample({1.0}, {1.0 + 1e-9}, 1e-8, ToleranceMode::absolute).pass);
    ASSERT_FALSE(sample({1.0}, {1.1}, 1e-8, ToleranceMode::absolute).pass);
    CheckReport rel = sample({1000.0}, {1000.001}, 1e-5, ToleranceMode::relative);
    ASSERT_TRUE(rel.pass);
    ASSERT_NEAR(rel.rel_error, 0.001 / 1000.001, 1e-15);
    ASSERT_TRUE(sample({1000.0}, {1000.001}, 1e-5, ToleranceMode::either).pass);
    ASSERT_TRUE(sample({0.5}, {0.0}, 0.05, ToleranceMode::exceeds).pass);
    ASSERT_FALSE(sample({0.01}, {0.0}, 0.05, ToleranceMode::exceeds).pass);
    ASSERT_FALSE(sample({}, {}, 1, ToleranceMode::absolute).pass);
    double nan = std::numeric_limits<double>::quiet_NaN();
    ASSERT_FALSE(sample({nan}, {0.0}, 1, ToleranceMode::absolute).pass);
}

TEST(report, json_fields) {
    CheckReport r = sample({1.0 / 3}, {0.0}, 1, ToleranceMode::absolute);
    r.cutoff = 256;
    r.safe_sector = 64;
    nlohmann::json j = to_json(r);
    for (const char *key : {"check", "params", "computed", "reference", "abs_error", "rel_error", "tolerance", "pass",
                            "cutoff", "safe_sector", "runtime_ms"}) {
        ASSERT_TRUE(j.contains(key)) << key;
    }
    ASSERT_FALSE(j.contains("error"));
    ASSERT_TRUE(j["rel_error"].is_null());
    ASSERT_EQ(j["computed"][0].get<double>(), round15(1.0 / 3));
    r.error = "overflow: boom";
    ASSERT_EQ(to_json(r)["error"], "overflow: boom");
}

TEST(report, csv_mirrors_json) {
    std::vector<CheckReport> rs = {
        sample({1.0 / 3, -2.0 / 7}, {0.3, -0.3}, 1, ToleranceMode::absolute),
        sample({12345.678901234567}, {12345.6}, 1, ToleranceMode::absolute)};
    std::ostringstream json;
    std::ostringstream csv;
    write_ndjson(json, rs);
    write_csv(csv, rs);
    auto json_lines = split(json.str(), '\n');
    auto csv_lines = split(csv.str(), '\n');
    ASSERT_EQ(csv_lines[0], kCsvHeader);
    ASSERT_EQ(json_lines.size() + 1, csv_lines.size());
    for (size_t i = 0; i < rs.size(); ++i) {
        nlohmann::json j = nlohmann::json::parse(json_lines[i]);
        // Third CSV column, quoted and semicolon-joined.
        std::string line = csv_lines[i + 1];
        size_t start = line.find("\",\"", line.find("}\"")) + 3;
        std::string computed = line.substr(start, line.find('"', start) - start);
        auto parts = split(computed, ';');
        ASSERT_EQ(parts.size(), j["computed"].size());
        for (size_t k = 0; k < parts.size(); ++k) {
            ASSERT_EQ(std::stod(parts[k]), j["computed"][k].get<double>());
        }
    }
}

TEST(suites, names_and_unknown) {
    ASSERT_TRUE(is_suite("all"));
    ASSERT_TRUE(is_suite("paris"));
    ASSERT_FALSE(is_suite("bogus"));
    try {
        run_suite("bogus");
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::invalid_argument);
    }
}

TEST(suites, order_independent_of_jobs) {
    SuiteOptions one;
    SuiteOptions two;
    two.jobs = 3;
    auto a = run_suite("laguerre", one);
    auto b = run_suite("laguerre", two);
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(a[i].check, b[i].check);
        ASSERT_EQ(a[i].params, b[i].params);
        ASSERT_EQ(a[i].computed, b[i].computed);
    }
    ASSERT_TRUE(all_pass(a));
    for (size_t i = 1; i < a.size(); ++i) {
        ASSERT_LE(a[i - 1].check, a[i].check);
    }
}

TEST(suites, infeasible_parameters_become_structured_failures) {
    SuiteOptions o;
    o.z_re = 20;
    o.cutoff = 64;
    auto rs = run_suite("u-elements", o);
    ASSERT_FALSE(rs.empty());
    ASSERT_FALSE(all_pass(rs));
    for (const auto &r : rs) {
        ASSERT_TRUE(r.error.has_value());
        ASSERT_NE(r.error->find("amplitude-too-large"), std::string::npos);
    }
}

TEST(suites, conjecture_override) {
    SuiteOptions o;
    o.two_k = 2;
    o.chi = 0.5;
    auto rs = run_suite("conjecture", o);
    ASSERT_EQ(rs.size(), 1u);
    ASSERT_TRUE(rs[0].pass);
    ASSERT_NEAR(rs[0].computed[0], 2.0 / 3, 1e-4);
}

TEST(suites, su11_trace_spot) {
    auto rs = run_suite("su11-trace");
    ASSERT_TRUE(all_pass(rs));
    int spots = 0;
    for (const auto &r : rs) {
        if (r.check == "su11-trace/spot") {
            ++spots;
            ASSERT_NEAR(r.computed[0], 1.0 / 3, 1e-14);
        }
    }
    ASSERT_EQ(spots, 1);
}
