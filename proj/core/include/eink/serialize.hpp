#pragma once

#include <string>
#include <vector>

#include "eink/families.hpp"
#include "eink/invariants.hpp"
#include "eink/verify.hpp"

namespace eink {

/// {"family": "...", "params": {...}, "grid": N}
std::string descriptor_to_json(const FamilyDescriptor& d, int grid);
FamilyDescriptor descriptor_from_json(const std::string& text, int* grid_out = nullptr);

/// Report serialization. -infinity is rendered as the string "-inf".
std::string report_to_json(const FamilyDescriptor& d, const InvariantReport& rep,
                           const std::vector<std::pair<double, double>>& k_min_eigs);

/// Fixed column order: family,params,k,min_eig,ein_upper,ein_lower,grid,delta
std::string report_csv_header();
std::string report_to_csv(const FamilyDescriptor& d, const InvariantReport& rep,
                          const std::vector<std::pair<double, double>>& k_min_eigs);

/// One JSON object per check: {check, params, lhs, rhs, residual, pass}.
std::string suites_to_json(const std::vector<SuiteResult>& suites);
std::string checks_to_csv(const std::vector<SuiteResult>& suites);

std::string params_brief(const FamilyDescriptor& d);

}  // namespace eink
