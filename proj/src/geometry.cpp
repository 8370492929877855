#include "syzygy/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace syzygy {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw InputError("invalid integer '" + std::string(text) + "' in " + std::string(what));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

VarietySpec VarietySpec::projective_space(int n) {
  if (n < 1) throw InputError("projective space needs n >= 1");
  return {VarietyKind::projective_space, n, 0};
}

VarietySpec VarietySpec::product(int s, int t) {
  if (s < 1 || t < 1) throw InputError("product P^s x P^t needs s, t >= 1");
  return {VarietyKind::product, s, t};
}

VarietySpec VarietySpec::grassmannian_2_4() { return {VarietyKind::grassmannian_2_4, 0, 0}; }

VarietySpec VarietySpec::parse(std::string_view text) {
  if (text == "gr24") return grassmannian_2_4();
  if (text.starts_with("pn:")) {
    return projective_space(static_cast<int>(parse_int(text.substr(3), "variety")));
  }
  if (text.starts_with("pp:")) {
    auto parts = split(text.substr(3), ',');
    if (parts.size() != 2) throw InputError("expected pp:<s>,<t>, got '" + std::string(text) + "'");
    return product(static_cast<int>(parse_int(parts[0], "variety")),
                   static_cast<int>(parse_int(parts[1], "variety")));
  }
  throw InputError("unknown variety '" + std::string(text) + "' (expected pn:<n>, pp:<s>,<t> or gr24)");
}

int VarietySpec::dim() const {
  switch (kind_) {
    case VarietyKind::projective_space: return a_;
    case VarietyKind::product: return a_ + b_;
    case VarietyKind::grassmannian_2_4: return 4;
  }
  return 0;
}

std::string VarietySpec::to_string() const {
  switch (kind_) {
    case VarietyKind::projective_space: return "pn:" + std::to_string(a_);
    case VarietyKind::product: return "pp:" + std::to_string(a_) + "," + std::to_string(b_);
    case VarietyKind::grassmannian_2_4: return "gr24";
  }
  return {};
}

DivisorClass DivisorClass::parse(std::string_view text) {
  std::vector<std::int64_t> coords;
  for (auto part : split(text, ',')) coords.push_back(parse_int(part, "divisor class"));
  return DivisorClass(std::move(coords));
}

DivisorClass DivisorClass::uniform(int picard_rank, std::int64_t c) {
  return DivisorClass(std::vector<std::int64_t>(static_cast<std::size_t>(picard_rank), c));
}

std::string DivisorClass::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out << ',';
    out << coords_[i];
  }
  return out.str();
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
  if (other.size() != size()) throw InputError("divisor classes of different lengths");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
  if (other.size() != size()) throw InputError("divisor classes of different lengths");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

DivisorClass operator*(std::int64_t k, DivisorClass a) {
  for (auto& c : a.coords_) c *= k;
  return a;
}

void check_class(const VarietySpec& v, const DivisorClass& c) {
  if (c.size() != static_cast<std::size_t>(v.picard_rank())) {
    throw InputError("divisor class '" + c.to_string() + "' has " + std::to_string(c.size()) +
                     " coordinates but " + v.to_string() + " has Picard rank " +
                     std::to_string(v.picard_rank()));
  }
}

BigInt grassmannian_sections(std::int64_t m) {
  BigInt num = BigInt(m + 1) * (m + 2) * (m + 2) * (m + 3);
  return num / 12;
}

BigInt h0(const VarietySpec& v, const DivisorClass& c) {
  check_class(v, c);
  for (auto x : c.coords()) {
    if (x < 0) return 0;
  }
  switch (v.kind()) {
    case VarietyKind::projective_space: return binomial(c[0] + v.n(), v.n());
    case VarietyKind::product: return binomial(c[0] + v.s(), v.s()) * binomial(c[1] + v.t(), v.t());
    case VarietyKind::grassmannian_2_4: return grassmannian_sections(c[0]);
  }
  return 0;
}

DivisorClass canonical_class(const VarietySpec& v) {
  switch (v.kind()) {
    case VarietyKind::projective_space: return DivisorClass({-(v.n() + 1)});
    case VarietyKind::product: return DivisorClass({-(v.s() + 1), -(v.t() + 1)});
    case VarietyKind::grassmannian_2_4: return DivisorClass({-4});
  }
  return {};
}

Positivity positivity(const VarietySpec& v, const DivisorClass& c) {
  check_class(v, c);
  const auto& xs = c.coords();
  if (std::all_of(xs.begin(), xs.end(), [](auto x) { return x >= 1; })) return Positivity::very_ample;
  if (std::all_of(xs.begin(), xs.end(), [](auto x) { return x >= 0; })) {
    return Positivity::globally_generated_only;
  }
  return Positivity::not_globally_generated;
}

std::string_view to_string(Positivity p) {
  switch (p) {
    case Positivity::very_ample: return "very_ample";
    case Positivity::globally_generated_only: return "globally_generated_only";
    case Positivity::not_globally_generated: return "not_globally_generated";
  }
  return {};
}

}  // namespace syzygy
