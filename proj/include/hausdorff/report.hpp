#pragma once

#include "hausdorff/regularity.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hausdorff {

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

nlohmann::json to_json(const ConditionsReport& r);
nlohmann::json to_json(const ToeplitzReport& r);
nlohmann::json to_json(const EmpiricalResult& r);

/// One CSV line per condition: id,label,verdict,witness,evidence...
std::string conditions_csv(const ConditionsReport& r);

std::string csv_row(const std::vector<std::string>& fields);

} // namespace hausdorff
