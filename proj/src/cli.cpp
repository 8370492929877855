#include "syzygy/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "syzygy/bounds.hpp"
#include "syzygy/koszul.hpp"
#include "syzygy/report.hpp"

namespace syzygy::cli {

namespace {

using nlohmann::json;

constexpr const char* kRankCaveat =
    "ranks are computed modulo primes; a modular rank never exceeds the rational rank, so a "
    "reported dim K_{p,q} can only overestimate the characteristic-zero value";

const std::vector<std::string> kCommands{"range", "phi", "betti", "verify", "duality"};

std::array<std::uint32_t, 2> parse_primes(const std::string& text) {
  auto cls = DivisorClass::parse(text);
  if (cls.size() != 2) throw InputError("--primes expects p1,p2");
  std::array<std::uint32_t, 2> out{};
  for (std::size_t i = 0; i < 2; ++i) {
    if (cls[i] <= 0 || cls[i] > 0xffffffffLL) throw InputError("prime out of range: " + std::to_string(cls[i]));
    out[i] = static_cast<std::uint32_t>(cls[i]);
  }
  return out;
}

Embedding embedding_of(const RunConfig& c) {
  Embedding e{VarietySpec::parse(c.variety), DivisorClass::parse(c.A), DivisorClass::parse(c.B), c.d};
  e.validate();
  return e;
}

KoszulOptions koszul_options(const RunConfig& c) {
  KoszulOptions o;
  o.primes = c.primes;
  o.threads = c.threads;
  o.size_cap = c.size_cap;
  return o;
}

std::vector<int> q_values(const RunConfig& c, int n) {
  if (c.q) return {*c.q};
  std::vector<int> qs;
  for (int q = 1; q <= n; ++q) qs.push_back(q);
  return qs;
}

json header(const RunConfig& c) {
  return json{{"command", c.command}, {"config", c.canonical()}, {"variety", c.variety}, {"A", c.A},
              {"B", c.B}, {"d", c.d}, {"seed", std::to_string(c.seed)}};
}

int cmd_range(const RunConfig& c, std::ostream& out) {
  const Embedding e = embedding_of(c);
  const auto dual = dual_twist(e);
  const auto dec = decompose_adjoint(e.variety, e.A, e.B);
  json predictions = json::array();
  std::vector<RangePrediction> results;
  for (int q : q_values(c, e.variety.dim())) {
    results.push_back(predict_range(PolarizedSetup{e, q}));
    predictions.push_back(to_json(results.back()));
  }
  if (c.format == "json") {
    json j = header(c);
    j["b"] = dec.b;
    j["dual_twist"] = {{"B_dual", dual.B_dual.to_string()},
                       {"b_dual", dual.decomposition.b},
                       {"adjoint_shape", dual.decomposition.adjoint_shape}};
    j["predictions"] = std::move(predictions);
    out << j.dump(2) << '\n';
  } else {
    out << e.variety.to_string() << "  A=" << e.A.to_string() << "  B=" << e.B.to_string() << "  d=" << e.d
        << "  b=" << dec.b << "  B'=" << dual.B_dual.to_string() << '\n';
    for (const auto& r : results) print_range(out, r);
  }
  return kOk;
}

int cmd_phi(const RunConfig& c, std::ostream& out) {
  const VarietySpec v = VarietySpec::parse(c.variety);
  if (c.L.empty()) throw InputError("phi needs --L");
  std::vector<DivisorClass> H;
  for (const auto& h : c.H) H.push_back(DivisorClass::parse(h));
  const BigInt value = phi(v, H, DivisorClass::parse(c.L));
  if (c.format == "json") {
    json j{{"command", "phi"}, {"config", c.canonical()}, {"variety", c.variety}, {"H", c.H},
           {"L", c.L}, {"phi", value.str()}};
    out << j.dump(2) << '\n';
  } else {
    out << value << '\n';
  }
  return kOk;
}

int cmd_betti(const RunConfig& c, std::ostream& out) {
  const Embedding e = embedding_of(c);
  BettiStats stats;
  const BettiTable t = betti_table(e, c.p_limit.value_or(-1), -1, koszul_options(c), &stats);
  if (c.format == "json") {
    json j = header(c);
    j.update(to_json(t));
    j["prime_disagreements"] = stats.prime_disagreements;
    j["rank_caveat"] = kRankCaveat;
    out << j.dump(2) << '\n';
  } else {
    print_betti_table(out, t);
  }
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const Embedding e = embedding_of(c);
  const auto qs = q_values(c, e.variety.dim());
  std::vector<RangePrediction> predictions;
  for (int q : qs) predictions.push_back(predict_range(PolarizedSetup{e, q}));
  const int q_max = *std::max_element(qs.begin(), qs.end());
  const BettiTable t = betti_table(e, c.p_limit.value_or(-1), q_max, koszul_options(c));

  Verdict worst = Verdict::pass;
  json reports = json::array();
  std::vector<VerificationReport> results;
  for (const auto& pred : predictions) {
    results.push_back(verify(pred, t));
    const Verdict v = results.back().overall();
    if (v == Verdict::fail || (v == Verdict::inconclusive && worst == Verdict::pass)) worst = v;
    reports.push_back(to_json(results.back()));
  }
  if (c.format == "json") {
    json j = header(c);
    j["reports"] = std::move(reports);
    j["verdict"] = std::string(to_string(worst));
    j["rank_caveat"] = kRankCaveat;
    out << j.dump(2) << '\n';
  } else {
    for (const auto& r : results) print_verification(out, r);
  }
  switch (worst) {
    case Verdict::pass: return kOk;
    case Verdict::fail: return kViolation;
    case Verdict::inconclusive: return kInconclusive;
  }
  return kError;
}

int cmd_duality(const RunConfig& c, std::ostream& out) {
  const Embedding e = embedding_of(c);
  Embedding dual = e;
  dual.B = dual_twist(e).B_dual;
  const int n = e.variety.dim();
  const int p_limit = c.p_limit.value_or(-1);
  const BettiTable t = betti_table(e, p_limit, n, koszul_options(c));
  const BettiTable td = betti_table(dual, p_limit, n, koszul_options(c));
  const DualityReport report = duality_check(t, td);
  if (c.format == "json") {
    json j = header(c);
    j["B_dual"] = dual.B.to_string();
    j.update(to_json(report));
    out << j.dump(2) << '\n';
  } else {
    out << "B' = " << dual.B.to_string() << '\n';
    print_duality(out, report);
  }
  if (!report.violations.empty()) return kViolation;
  if (!report.mismatches.empty()) return kInconclusive;
  return kOk;
}

}  // namespace

std::vector<std::string> RunConfig::to_args() const {
  std::vector<std::string> args{command, "--variety", variety, "--A", A, "--B", B, "--d", std::to_string(d)};
  if (q) args.insert(args.end(), {"--q", std::to_string(*q)});
  if (p_limit) args.insert(args.end(), {"--p-limit", std::to_string(*p_limit)});
  for (const auto& h : H) args.insert(args.end(), {"--H", h});
  if (!L.empty()) args.insert(args.end(), {"--L", L});
  args.insert(args.end(), {"--primes", std::to_string(primes[0]) + "," + std::to_string(primes[1]),
                           "--seed", std::to_string(seed), "--threads", std::to_string(threads),
                           "--format", format, "--size-cap", std::to_string(size_cap)});
  return args;
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& a : to_args()) {
    if (!out.empty()) out += ' ';
    out += a;
  }
  return out;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  std::string primes;
  int q = 0;
  int p_limit = 0;
  CLI::App app{"Koszul cohomology workbench: predicted syzygy ranges and exact Betti tables", "syzygy"};
  app.require_subcommand(1);
  for (const auto& name : kCommands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--variety", c.variety, "pn:<n>, pp:<s>,<t> or gr24")->envname("SYZYGY_VARIETY");
    sub->add_option("--A", c.A, "polarization (default: all ones)")->envname("SYZYGY_A");
    sub->add_option("--B", c.B, "twist, comma-separated coordinates")->envname("SYZYGY_B");
    sub->add_option("--d", c.d, "L_d = d*A")->envname("SYZYGY_D");
    sub->add_option("--q", q, "row index (default: all of 1..n)")->envname("SYZYGY_Q");
    sub->add_option("--p-limit", p_limit, "largest p to compute (default: dim V)")->envname("SYZYGY_P_LIMIT");
    sub->add_option("--H", c.H, "divisor class of one intersected divisor (phi)");
    sub->add_option("--L", c.L, "line bundle class (phi)");
    sub->add_option("--primes", primes, "two primes in (2^20, 2^31)")->envname("SYZYGY_PRIMES");
    sub->add_option("--seed", c.seed, "seed for randomized checks")->envname("SYZYGY_SEED");
    sub->add_option("--threads", c.threads, "worker threads (0 = all cores)")->envname("SYZYGY_THREADS");
    sub->add_option("--format", c.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}))
        ->envname("SYZYGY_FORMAT");
    sub->add_option("--size-cap", c.size_cap, "largest middle term per cell")->envname("SYZYGY_SIZE_CAP");
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream help;
    app.exit(e, help, help);
    throw HelpRequested(help.str());
  }

  for (auto* sub : app.get_subcommands()) {
    c.command = sub->get_name();
    if (!sub->get_option("--q")->empty()) c.q = q;
    if (!sub->get_option("--p-limit")->empty()) c.p_limit = p_limit;
  }
  if (!primes.empty()) c.primes = parse_primes(primes);
  if (c.A.empty()) c.A = DivisorClass::uniform(VarietySpec::parse(c.variety).picard_rank(), 1).to_string();
  return c;
}

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "range") return cmd_range(c, out);
    if (c.command == "phi") return cmd_phi(c, out);
    if (c.command == "betti") return cmd_betti(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "duality") return cmd_duality(c, out);
    err << "unknown command '" << c.command << "'\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& e) {
    out << e.what();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return execute(config, out, err);
}

}  // namespace syzygy::cli
