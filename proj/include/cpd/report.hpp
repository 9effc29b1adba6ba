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
#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace cpd {

enum class Status { Pass, Marginal, Fail, Skip };

std::string to_string(Status s);

struct ReportEntry {
    std::string name;
    double max = 0.0;
    double mean = 0.0;
    Eigen::VectorXd worst; // parameters of the worst sample
    double tol = 0.0;
    Status status = Status::Skip;
    std::string reason;    // why skipped, or a note
    std::size_t samples = 0;
    std::size_t excluded = 0;

    bool passed() const { return status == Status::Pass; }
    bool failed() const { return status == Status::Fail; }
    bool skipped() const { return status == Status::Skip; }
};

/// Entry from residual samples: pass if max <= tol, marginal up to 10 tol, fail beyond.
ReportEntry make_entry(std::string name, const std::vector<double>& residuals,
                       const std::vector<Eigen::VectorXd>& params, double tol,
                       std::size_t excluded = 0);
ReportEntry skipped_entry(std::string name, double tol, std::string reason);

/// Status for a residual against a tolerance with the 10x marginal band.
Status classify(double residual, double tol);

struct ResidualReport {
    std::string surface;
    int grid_u = 0;
    int grid_v = 0;
    double fd_step = 0.0;
    std::vector<ReportEntry> entries;
    bool inconsistent = false;
    std::vector<std::string> notes;

    const ReportEntry* find(const std::string& name) const;
    void add(ReportEntry e);
    /// Sorts entries by name; call before writing.
    void finalize();
    /// True iff every non-skipped entry passes.
    bool all_pass() const;
    std::string to_text() const;
    void write(const std::string& path) const;
};

} // namespace cpd
