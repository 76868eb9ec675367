#pragma once

#include <string>
#include <vector>

#include "quermass/inequality.hpp"

namespace quermass {

/// Round-trip decimal form of v (%.17g); the one formatting used in every
/// emitted file, so equal inputs give equal bytes.
std::string format_double(double v);

/// CSV table with one row per report: name, lhs, rhs, gap, relative_gap,
/// tolerance, pass, residuals (name=value pairs joined by ';'), metadata.
std::string reports_to_csv(const std::vector<InequalityReport>& reports);

/// JSON array holding every report field. Same formatting guarantee.
std::string reports_to_json(const std::vector<InequalityReport>& reports);

/// Overwrite path with text (binary mode; no newline translation). Throws
/// std::runtime_error when the file cannot be written.
void write_text_file(const std::string& path, const std::string& text);

std::string read_text_file(const std::string& path);

}  // namespace quermass
