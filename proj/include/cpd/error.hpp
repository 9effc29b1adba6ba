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

#include <stdexcept>
#include <string>
#include <string_view>

namespace cpd {

enum class ErrorKind {
    Domain,
    DegenerateCurve,
    ImmersionDegeneracy,
    FocalSet,
    Transversality,
    ZeroField,
    Precondition,
    SingularIntegrand,
    CutLocus,
    OutsideTube,
    Inconsistency,
    Parse,
    Export,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` lets callers dispatch.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::DegenerateCurve: return "degenerate curve";
    case ErrorKind::ImmersionDegeneracy: return "degenerate immersion";
    case ErrorKind::FocalSet: return "focal set";
    case ErrorKind::Transversality: return "transversality";
    case ErrorKind::ZeroField: return "conformal field vanishes";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::SingularIntegrand: return "singular integrand";
    case ErrorKind::CutLocus: return "cut locus";
    case ErrorKind::OutsideTube: return "outside tubular neighborhood";
    case ErrorKind::Inconsistency: return "inconsistent derivative data";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Export: return "export error";
    }
    return "error";
}

} // namespace cpd
