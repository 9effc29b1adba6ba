/*
 * Copyright 2026 The cpdgeo Authors. All rights reserved.
 * This file is licensed to you under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software distributed under
 * the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR REPRESENTATIONS
 * OF ANY KIND, either express or implied. See the License for the specific language
 * governing permissions and limitations under the License.
 */
#include <cpd/error.hpp>
#include <cpd/report.hpp>
#include <cpd/simd/kernels.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace cpd {

std::string to_string(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Marginal: return "marginal";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
    }
    return "?";
}

Status classify(double residual, double tol)
{
    if (!(residual == residual))
        return Status::Fail;
    if (residual <= tol)
        return Status::Pass;
    if (residual <= 10.0 * tol)
        return Status::Marginal;
    return Status::Fail;
}

ReportEntry make_entry(std::string name, const std::vector<double>& residuals,
                       const std::vector<Eigen::VectorXd>& params, double tol, std::size_t excluded)
{
    ReportEntry e;
    e.name = std::move(name);
    e.tol = tol;
    e.excluded = excluded;
    e.samples = residuals.size();
    if (residuals.empty()) {
        e.status = Status::Skip;
        e.reason = "no admissible samples";
        return e;
    }
    const std::vector<double> zeros(residuals.size(), 0.0);
    const simd::DiffStats st = simd::abs_diff_stats(residuals, zeros);
    e.max = st.max;
    e.mean = st.sum / static_cast<double>(st.count);
    if (st.argmax < params.size())
        e.worst = params[st.argmax];
    e.status = classify(e.max, tol);
    for (double r : residuals)
        if (!(r == r))
            e.status = Status::Fail;
    return e;
}

ReportEntry skipped_entry(std::string name, double tol, std::string reason)
{
    ReportEntry e;
    e.name = std::move(name);
    e.tol = tol;
    e.status = Status::Skip;
    e.reason = std::move(reason);
    return e;
}

const ReportEntry* ResidualReport::find(const std::string& name) const
{
    for (const auto& e : entries)
        if (e.name == name)
            return &e;
    return nullptr;
}

void ResidualReport::add(ReportEntry e) { entries.push_back(std::move(e)); }

void ResidualReport::finalize()
{
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ReportEntry& a, const ReportEntry& b) { return a.name < b.name; });
}

bool ResidualReport::all_pass() const
{
    return std::all_of(entries.begin(), entries.end(),
                       [](const ReportEntry& e) { return e.skipped() || e.passed(); });
}

namespace {

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9e", v);
    return buf;
}

} // namespace

std::string ResidualReport::to_text() const
{
    std::string out;
    out += "# surface\t" + surface + "\n";
    out += "# grid\t" + std::to_string(grid_u) + "\t" + std::to_string(grid_v) + "\n";
    out += "# fd_step\t" + num(fd_step) + "\n";
    out += "# name\tmax\tmean\tworst_u\tworst_v\ttol\tpass\n";
    for (const auto& e : entries) {
        out += e.name;
        if (e.skipped()) {
            out += "\t-\t-\t-\t-\t" + num(e.tol) + "\tskip";
        } else {
            const std::string wu = e.worst.size() > 0 ? num(e.worst[0]) : "-";
            const std::string wv = e.worst.size() > 1 ? num(e.worst[1]) : "-";
            out += "\t" + num(e.max) + "\t" + num(e.mean) + "\t" + wu + "\t" + wv + "\t" + num(e.tol) +
                   "\t" + to_string(e.status);
        }
        if (!e.reason.empty())
            out += "\t" + e.reason;
        out += "\n";
    }
    if (inconsistent)
        out += "# inconsistent\tequivalent conditions disagree beyond the marginal band\n";
    for (const auto& n : notes)
        out += "# note\t" + n + "\n";
    return out;
}

void ResidualReport::write(const std::string& path) const
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error(ErrorKind::Export, "cannot open report file " + path);
    os << to_text();
}

} // namespace cpd
