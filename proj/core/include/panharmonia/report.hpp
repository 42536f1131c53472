// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "panharmonia/detector.hpp"
#include "panharmonia/verify.hpp"

namespace panharmonia {

/// {check_id, passed, max_relative_residual, threshold, hypothesis_met, cases, notes}
std::string report_to_json(const CheckReport& report, int indent = -1);
/// Inverse of report_to_json. Throws ParseError on malformed input.
CheckReport report_from_json(std::string_view text);

/// One row per report: check_id,passed,max_relative_residual,threshold,cases,notes.
std::string suite_csv(const std::vector<CheckReport>& reports);

/// {class, mu_hat, confidence, residual_profile:[[r, residual], ...]}
std::string verdict_to_json(const Verdict& verdict, int indent = -1);

}  // namespace panharmonia
