#pragma once

#include <iosfwd>

#include "json.hpp"

#include "syzygy/bounds.hpp"
#include "syzygy/koszul.hpp"

namespace syzygy {

// JSON renderings. Big integers are written as decimal strings.

nlohmann::json to_json(const RangePrediction& r);
nlohmann::json to_json(const BettiTable& t);
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const DualityReport& r);

/// Rows q, columns p, zero cells as ".", refused cells as "?".
void print_betti_table(std::ostream& out, const BettiTable& t);

void print_range(std::ostream& out, const RangePrediction& r);
void print_verification(std::ostream& out, const VerificationReport& r);
void print_duality(std::ostream& out, const DualityReport& r);

}  // namespace syzygy
