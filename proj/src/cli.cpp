#include "fatpoint/cli.hpp"

#include "fatpoint/bounds.hpp"
#include "fatpoint/oracle.hpp"
#include "fatpoint/serialization.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fatpoint::cli {

namespace {

Integer parse_integer(const std::string& text) {
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
  std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (t.size() == start || t.find_first_not_of("0123456789", start) != std::string::npos)
    throw UsageError("not an integer: '" + text + "'");
  if (t[0] == '+') t.erase(0, 1);
  return Integer(t);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FATPOINT_SEED")) {
    Integer v = parse_integer(env);
    if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) throw UsageError("FATPOINT_SEED out of range");
    return static_cast<std::uint64_t>(v);
  }
  return OracleConfig{}.seed;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

struct Flags {
  int n = 0;
  std::string degree;
  std::string mults;
  std::string strategy = "greedy";
  std::string script;
  std::string cert;
  std::uint64_t points = 0;
  std::int64_t power = 0;
  std::uint64_t prime = OracleConfig{}.prime;
  unsigned trials = OracleConfig{}.trials;
  std::uint64_t seed = 0;
  std::uint64_t from = 0, to = 0;
  std::string check;
};

}  // namespace

AffineValue parse_value(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() == 1) return AffineValue::constant(parse_integer(parts[0]));
  if (parts.size() == 2) return AffineValue(parse_integer(parts[0]), parse_integer(parts[1]));
  throw UsageError("expected S,I or I: '" + text + "'");
}

std::vector<MultiplicityRun> parse_mults(const std::string& text) {
  std::vector<MultiplicityRun> runs;
  if (text.find_first_not_of(" ") == std::string::npos) return runs;
  for (const auto& item : split(text, ';')) {
    auto parts = split(item, ':');
    if (parts.empty() || parts.size() > 2) throw UsageError("expected VALUE:COUNT: '" + item + "'");
    std::uint64_t count = 1;
    if (parts.size() == 2) {
      Integer c = parse_integer(parts[1]);
      if (c < 1 || c > std::numeric_limits<std::uint32_t>::max()) throw UsageError("bad count in '" + item + "'");
      count = static_cast<std::uint64_t>(c);
    }
    runs.push_back({parse_value(parts[0]), count});
  }
  return runs;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Emptiness certificates, Waldschmidt bounds and a dimension oracle for fat-point systems",
               "fatpoint"};
  app.require_subcommand(1);
  Flags f;
  std::uint64_t seed_default = 0;
  try {
    seed_default = default_seed();
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  f.seed = seed_default;

  auto* prove = app.add_subcommand("prove-empty", "search for an emptiness certificate");
  prove->add_option("--n", f.n, "ambient dimension N")->required();
  prove->add_option("--degree", f.degree, "degree as S,I (S*m + I) or I")->required();
  prove->add_option("--mults", f.mults, "multiplicities S,I:C;...")->required();
  auto* strat = prove->add_option("--strategy", f.strategy, "search strategy")->check(CLI::IsMember({"greedy"}));
  prove->add_option("--script", f.script, "JSON pivot script")->check(CLI::ExistingFile)->excludes(strat);

  auto* verify = app.add_subcommand("verify", "replay a certificate");
  verify->add_option("--cert", f.cert, "certificate JSON file")->required()->check(CLI::ExistingFile);

  auto add_points = [&](CLI::App* sub) {
    sub->add_option("--n", f.n, "ambient dimension N")->required()->check(CLI::Range(2, 64));
    sub->add_option("--points", f.points, "number of generic points")->required()->check(CLI::PositiveNumber);
  };
  auto* bound = app.add_subcommand("bound", "lower bound on the Waldschmidt constant");
  add_points(bound);
  auto* hh = app.add_subcommand("hh-check", "alpha-hat > (reg+N-1)/N");
  add_points(hh);
  auto* chud = app.add_subcommand("chudnovsky", "alpha-hat >= (alpha+N-1)/N");
  add_points(chud);
  auto* thr = app.add_subcommand("threshold", "containment threshold r(s,N)");
  add_points(thr);

  auto* odim = app.add_subcommand("oracle-dim", "dimension at random points mod p");
  odim->add_option("--n", f.n, "ambient dimension N")->required()->check(CLI::Range(2, 64));
  odim->add_option("--degree", f.degree, "degree D")->required();
  odim->add_option("--mults", f.mults, "multiplicities M:C;...")->required();
  odim->add_option("--prime", f.prime, "prime p")->capture_default_str();
  odim->add_option("--trials", f.trials, "number of trials")->capture_default_str()->check(CLI::PositiveNumber);
  odim->add_option("--seed", f.seed, "random seed (default from FATPOINT_SEED)");

  auto* alpha = app.add_subcommand("alpha", "least degree of the m-th symbolic power, by oracle");
  add_points(alpha);
  alpha->add_option("--power", f.power, "symbolic power m")->required()->check(CLI::PositiveNumber);

  auto* sw = app.add_subcommand("sweep", "check every s in a range; CSV output");
  sw->add_option("--n", f.n, "ambient dimension N")->required()->check(CLI::Range(2, 64));
  sw->add_option("--from", f.from, "first s")->required()->check(CLI::PositiveNumber);
  sw->add_option("--to", f.to, "last s")->required()->check(CLI::PositiveNumber);
  sw->add_option("--check", f.check, "hh or chudnovsky")->required()->check(CLI::IsMember({"hh", "chudnovsky"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*prove) {
      FatPointSystem sys(f.n, parse_value(f.degree), parse_mults(f.mults));
      Strategy strategy = f.script.empty() ? Strategy::greedy() : Strategy::scripted(parse_script(read_file(f.script)));
      ProveResult r = prove_empty(sys, strategy);
      if (!r.ok()) {
        emit(out, {{"claim", system_to_json(sys)},
                   {"failure", r.failure},
                   {"attempted_steps", r.attempted.size()}});
        return kExitNoProof;
      }
      out << serialize_certificate(*r.certificate);
      return kExitOk;
    }
    if (*verify) {
      std::string text = read_file(f.cert);
      std::optional<Certificate> parsed;
      try {
        parsed = parse_certificate(text);
      } catch (const std::exception& e) {
        emit(out, {{"ok", false}, {"failing_step", nullptr}, {"reason", e.what()}});
        return kExitFalse;
      }
      const Certificate& cert = *parsed;
      VerifyResult v = verify_certificate(cert);
      Json j = {{"ok", v.ok}, {"claim", system_to_json(cert.claim)}, {"m0", integer_to_json(cert.m0)}};
      if (!v.ok) {
        j["failing_step"] = v.failing_step;
        j["reason"] = v.reason;
      }
      emit(out, j);
      return v.ok ? kExitOk : kExitFalse;
    }
    if (*bound) {
      emit(out, bound_to_json(waldschmidt_lower_bound(f.n, f.points)));
      return kExitOk;
    }
    if (*hh || *chud) {
      CheckReport r = run_check(*hh ? Check::HarbourneHuneke : Check::Chudnovsky, f.n, f.points);
      emit(out, report_to_json(r));
      return r.verdict ? kExitOk : kExitFalse;
    }
    if (*thr) {
      BoundFact b = waldschmidt_lower_bound(f.n, f.points);
      std::int64_t reg = regularity_generic(f.n, f.points);
      std::int64_t r = containment_threshold(f.n, b.bound, reg);
      emit(out, {{"N", f.n},
                 {"s", f.points},
                 {"bound", rational_to_json(b.bound)},
                 {"reg", reg},
                 {"r_threshold", r}});
      return kExitOk;
    }
    if (*odim) {
      AffineValue d = parse_value(f.degree);
      std::vector<std::int64_t> mults;
      for (const auto& run : parse_mults(f.mults)) {
        if (!run.value.is_constant()) throw UsageError("oracle-dim takes concrete multiplicities");
        mults.insert(mults.end(), run.count, to_int64(run.value.intercept));
      }
      if (!d.is_constant()) throw UsageError("oracle-dim takes a concrete degree");
      OracleConfig cfg{.prime = f.prime, .trials = f.trials, .seed = f.seed};
      emit(out, oracle_report_to_json(linear_system_dim(f.n, to_int64(d.intercept), mults, cfg)));
      return kExitOk;
    }
    if (*alpha) {
      OracleConfig cfg{.seed = f.seed};
      std::int64_t a = alpha_symbolic_power(f.n, f.points, f.power, cfg);
      emit(out, {{"N", f.n},
                 {"s", f.points},
                 {"m", f.power},
                 {"alpha", a},
                 {"p", cfg.prime},
                 {"trials", cfg.trials},
                 {"seed", cfg.seed}});
      return kExitOk;
    }
    if (*sw) {
      if (f.from > f.to) throw UsageError("--from must not exceed --to");
      Check c = f.check == "hh" ? Check::HarbourneHuneke : Check::Chudnovsky;
      bool all = true;
      out << "s,bound,rhs,verdict\n";
      for (const auto& r : sweep(c, f.n, f.from, f.to)) {
        all = all && r.verdict;
        out << r.points << "," << rational_str(r.bound) << "," << rational_str(r.rhs) << ","
            << (r.verdict ? "true" : "false") << "\n";
      }
      return all ? kExitOk : kExitFalse;
    }
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << Json{{"error", "precondition violated"}, {"detail", e.what()}}.dump() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace fatpoint::cli
