#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "etameta/verify.hpp"

namespace etameta::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInvalid = 2;

/// Fixed CSV header of an output row.
std::string csv_header();
/// One CSV line (no trailing newline). Oracle fields are blank when skipped.
std::string csv_row(const EtaReport& report);
/// JSON object with exactly the CSV field names; skipped oracle fields are null.
std::string json_row(const EtaReport& report);
/// JSON array of rows.
std::string json_rows(const std::vector<EtaReport>& reports);

/// Entry point shared by the executable and the tests.
///
///   compute --p P --alpha A --beta B --epsilon E --delta D --sign {+|-} [--verify] [--json]
///   sweep --p P --max-order-exp N [--signs +,-] [--oracle-budget M] --format {csv|json} [--out FILE]
///   check --max-order-exp N
///
/// Exit codes: 0 success, 1 verification mismatch, 2 invalid parameters.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace etameta::cli
