#include "syzygy/report.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace syzygy {

using nlohmann::json;

json to_json(const RangePrediction& r) {
  return json{{"q", r.q},
              {"n_d", r.n_d.str()},
              {"N_d", r.N_d.str()},
              {"p_min", r.p_min.str()},
              {"p_max", r.p_max.str()},
              {"sharp", r.sharp},
              {"effective_ok", r.effective_ok},
              {"expansion_gap_ok", r.expansion_gap_ok},
              {"dual_shape_ok", r.dual_shape_ok}};
}

json to_json(const BettiTable& t) {
  json cells = json::array();
  for (const auto& c : t.cells) {
    json cell{{"p", c.p}, {"q", c.q}};
    if (c.dim) {
      cell["dim"] = c.dim->str();
      cell["certainty"] = std::string(to_string(c.certainty));
    } else {
      cell["dim"] = nullptr;
      cell["certainty"] = "refused";
      cell["note"] = c.note;
    }
    cells.push_back(std::move(cell));
  }
  return json{{"variety", t.embedding.variety.to_string()},
              {"A", t.embedding.A.to_string()},
              {"B", t.embedding.B.to_string()},
              {"d", t.embedding.d},
              {"p_limit", t.p_limit},
              {"q_max", t.q_max},
              {"primes", {t.primes[0], t.primes[1]}},
              {"cells", std::move(cells)}};
}

json to_json(const VerificationReport& r) {
  json discrepancies = json::array();
  for (const auto& d : r.discrepancies) discrepancies.push_back({{"p", d.p}, {"kind", d.kind}});
  json j{{"prediction", to_json(r.prediction)},
         {"interval", {r.lower.str(), r.upper.str()}},
         {"degenerate", r.degenerate},
         {"computed_support", std::vector<int>(r.computed_support.begin(), r.computed_support.end())},
         {"containment", std::string(to_string(r.containment))},
         {"equality", r.equality ? json(*r.equality) : json(nullptr)},
         {"discrepancies", std::move(discrepancies)},
         {"verdict", std::string(to_string(r.overall()))}};
  return j;
}

json to_json(const DualityReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"p", v.p},
                          {"q", v.q},
                          {"dim", v.dim.str()},
                          {"p_dual", v.p_dual},
                          {"q_dual", v.q_dual},
                          {"dim_dual", v.dim_dual.str()}});
  }
  json mismatches = json::array();
  for (const auto& m : r.mismatches) {
    mismatches.push_back(
        {{"p", m.p}, {"q", m.q}, {"p_dual", m.p_dual}, {"q_dual", m.q_dual}, {"reason", m.reason}});
  }
  return json{{"cells_compared", r.cells_compared},
              {"violations", std::move(violations)},
              {"range_mismatches", std::move(mismatches)}};
}

void print_betti_table(std::ostream& out, const BettiTable& t) {
  std::vector<std::vector<std::string>> grid(static_cast<std::size_t>(t.q_max + 1),
                                             std::vector<std::string>(static_cast<std::size_t>(t.p_limit + 1)));
  std::size_t width = std::to_string(t.p_limit).size();
  for (const auto& c : t.cells) {
    std::string s = !c.dim ? "?" : (*c.dim == 0 ? "." : c.dim->str());
    width = std::max(width, s.size());
    grid[static_cast<std::size_t>(c.q)][static_cast<std::size_t>(c.p)] = std::move(s);
  }
  const auto w = static_cast<int>(width);
  out << std::setw(4) << "" << ' ';
  for (int p = 0; p <= t.p_limit; ++p) out << ' ' << std::setw(w) << p;
  out << '\n';
  for (int q = 0; q <= t.q_max; ++q) {
    out << std::setw(4) << q << ':';
    for (const auto& s : grid[static_cast<std::size_t>(q)]) out << ' ' << std::setw(w) << s;
    out << '\n';
  }
}

void print_range(std::ostream& out, const RangePrediction& r) {
  out << "q=" << r.q << "  n_d=" << r.n_d << "  N_d=" << r.N_d << "  range [" << r.p_min << ", "
      << r.p_max << "]" << (r.sharp ? " (sharp)" : "") << "  effective_ok=" << std::boolalpha
      << r.effective_ok << " expansion_gap_ok=" << r.expansion_gap_ok
      << " dual_shape_ok=" << r.dual_shape_ok << std::noboolalpha << '\n';
}

void print_verification(std::ostream& out, const VerificationReport& r) {
  out << "q=" << r.prediction.q << "  interval [" << r.lower << ", " << r.upper << "]"
      << (r.degenerate ? " (degenerate)" : "") << "\n  support {";
  bool first = true;
  for (int p : r.computed_support) {
    out << (first ? "" : ", ") << p;
    first = false;
  }
  out << "}\n  containment: " << to_string(r.containment) << "\n  equality: "
      << (r.equality ? (*r.equality ? "true" : "false") : "unknown") << '\n';
  for (const auto& d : r.discrepancies) out << "  " << d.kind << " p=" << d.p << '\n';
  out << "  verdict: " << to_string(r.overall()) << '\n';
}

void print_duality(std::ostream& out, const DualityReport& r) {
  out << "cells compared: " << r.cells_compared << "\nviolations: " << r.violations.size() << '\n';
  for (const auto& v : r.violations) {
    out << "  K_{" << v.p << "," << v.q << "} = " << v.dim << " but dual K_{" << v.p_dual << "," << v.q_dual
        << "} = " << v.dim_dual << '\n';
  }
  out << "range mismatches: " << r.mismatches.size() << '\n';
  for (const auto& m : r.mismatches) {
    out << "  K_{" << m.p << "," << m.q << "} vs K_{" << m.p_dual << "," << m.q_dual << "}: " << m.reason << '\n';
  }
}

}  // namespace syzygy
