#include "mixedbad/cli.hpp"

#include <algorithm>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixedbad/transcript.hpp"

namespace mixedbad {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

Integer positive_integer(const std::string& text, const char* what) {
  const Integer v = parse_integer(text);
  if (v < 1) throw UsageError(std::string(what) + " must be a positive integer");
  return v;
}

std::size_t small_count(const std::string& text, const char* what) {
  const Integer v = positive_integer(text, what);
  if (!v.fits_ulong_p()) throw UsageError(std::string(what) + " is too large");
  return v.get_ui();
}

struct PlayFlags {
  std::string alpha, beta, b1 = "0,1", i, j, seq, rounds = "20";
  std::string adversary = "adv:leftmost", strategy = "paper-a", out;
  std::uint64_t seed = 0;
  std::vector<std::string> multi, combine;
};

int cmd_play(const PlayFlags& f, std::ostream& out) {
  const GameParams params(parse_rational(f.alpha), parse_rational(f.beta),
                          parse_interval(f.b1));
  if (params.alpha * 4 > 1) {
    throw UsageError("paper-a needs alpha <= 1/4 (got " + to_string(params.alpha) + ")");
  }
  std::vector<NormTerm> terms{{DigitSequence::parse(f.seq), parse_rational(f.i)}};
  for (const auto& m : f.multi) {
    const auto parts = split(m, ';');
    if (parts.size() != 2) throw UsageError("--multi expects \"seq;i\", got '" + m + "'");
    terms.push_back({DigitSequence::parse(parts[0]), parse_rational(parts[1])});
  }
  GameSetup setup{params, {}, f.adversary, f.seed,
                  small_count(f.rounds, "--rounds"), {}};
  setup.targets.emplace_back(std::move(terms), parse_rational(f.j));
  for (const auto& c : f.combine) {
    const auto parts = split(c, ';');
    if (parts.size() != 3) {
      throw UsageError("--combine expects \"seq;i;j\", got '" + c + "'");
    }
    setup.targets.push_back(Target::single(DigitSequence::parse(parts[0]),
                                           parse_rational(parts[1]),
                                           parse_rational(parts[2])));
  }
  std::string expected = "paper-a";
  if (setup.targets.size() > 1) {
    expected = "combine:paper-a";
    for (std::size_t t = 1; t < setup.targets.size(); ++t) expected += "+paper-a";
  }
  if (f.strategy != expected) {
    throw UsageError("strategy '" + f.strategy + "' does not match the targets (expected '" +
                     expected + "')");
  }
  parse_adversary(setup.adversary, setup.seed);

  const Transcript t = run_game(setup);
  const std::string json = to_json(t);
  if (f.out.empty()) {
    out << json;
    return kExitOk;
  }
  save_text(f.out, json);
  out << "final=" << to_string(t.moves.back().interval) << "\n";
  for (std::size_t d = 0; d < t.targets.size(); ++d) {
    out << "c";
    if (t.targets.size() > 1) out << "[" << d << "]";
    out << "=" << to_string(t.targets[d].c) << "\n";
  }
  return kExitOk;
}

struct VerifyFlags {
  std::string transcript, qmax, horizon = "auto", out;
};

int cmd_verify(const VerifyFlags& f, std::ostream& out) {
  if (f.horizon != "auto") throw UsageError("--horizon only accepts 'auto'");
  Transcript t = [&] {
    try {
      return load_transcript(f.transcript);
    } catch (const TranscriptError& e) {
      throw UsageError(e.what());
    }
  }();
  AuditOptions options;
  if (!f.qmax.empty()) options.q_max = positive_integer(f.qmax, "--qmax");
  const AuditReport report = audit_transcript(t, options);
  if (!f.out.empty()) save_text(f.out, to_json(report));

  if (!report.structural_ok) {
    out << "structural=FAIL " << report.structural_error << "\n";
  }
  for (const auto& a : report.targets) {
    out << "target " << a.delegate << ": horizon=" << to_string(a.horizon)
        << " delta=" << (a.ok() ? "pass" : "FAIL");
    if (a.final_report) {
      out << " direct=" << (a.final_report->direct_ok() ? "pass" : "FAIL");
    }
    out << " c=" << to_string(a.target.c)
        << " c_eff=" << (a.c_eff ? to_string(*a.c_eff) : std::string("none"));
    if (!a.beyond_horizon.empty()) {
      out << " beyond_horizon=" << a.beyond_horizon.size() << " (informational)";
    }
    out << "\n";
  }
  if (auto w = report.witness()) {
    out << "witness=" << to_string(w->r) << "/" << to_string(w->q) << "\n";
  }
  out << "verdict=" << (report.ok() ? "pass" : "fail") << "\n";
  return report.ok() ? kExitOk : kExitVerification;
}

struct FactsFlags {
  std::string seq = "per:2", i, j, c, alpha = "1/4", beta, b1 = "0,1", nmax,
              qcap = "100000";
};

int cmd_facts(const FactsFlags& f, std::ostream& out) {
  const GameParams gp(parse_rational(f.alpha), parse_rational(f.beta),
                      parse_interval(f.b1));
  const Target target = Target::single(DigitSequence::parse(f.seq),
                                       parse_rational(f.i), parse_rational(f.j));
  const Rational c = f.c.empty() ? choose_c(target, gp.alpha, gp.beta, gp.b1).c
                                 : parse_rational(f.c);
  if (c <= 0) throw UsageError("--c must be positive");
  const ApproxParams params(target, c);
  const FactsReport report =
      facts_check(params, gp.ratio(), gp.b1.length(), small_count(f.nmax, "--nmax"),
                  positive_integer(f.qcap, "--qcap"));

  nlohmann::ordered_json j;
  j["c"] = to_string(c);
  j["R"] = to_string(gp.ratio());
  j["ok"] = report.ok();
  auto bands = nlohmann::ordered_json::array();
  for (const auto& b : report.bands) {
    nlohmann::ordered_json bj;
    bj["band"] = b.band;
    bj["q_lo"] = to_string(b.range.lo);
    bj["q_hi"] = to_string(b.range.hi);
    bj["clipped"] = b.clipped;
    bj["dangerous"] = b.members;
    bands.push_back(bj);
  }
  j["bands"] = bands;
  j["failure_count"] = report.failure_count;
  auto failures = nlohmann::ordered_json::array();
  for (const auto& fl : report.failures) {
    nlohmann::ordered_json fj;
    fj["fact"] = fl.fact;
    fj["band"] = fl.band;
    fj["q1"] = to_string(fl.q1);
    fj["q2"] = to_string(fl.q2);
    failures.push_back(fj);
  }
  j["failures"] = failures;
  out << j.dump(2) << "\n";
  return report.ok() ? kExitOk : kExitVerification;
}

struct ScanFlags {
  std::string x, seq = "per:2", qmax, csv;
};

int cmd_scan(const ScanFlags& f, std::ostream& out) {
  const ScanPoint x = f.x.starts_with("surd:")
                          ? ScanPoint(QuadraticSurd::parse(f.x))
                          : ScanPoint(parse_rational(f.x));
  const auto rows = liminf_scan(x, DigitSequence::parse(f.seq),
                                positive_integer(f.qmax, "--qmax"));
  const std::string csv = render_scan_csv(rows);
  if (f.csv.empty()) {
    out << csv;
  } else {
    save_text(f.csv, csv);
  }
  return kExitOk;
}

int cmd_norm(const std::string& seq_text, const std::string& q_text,
             std::ostream& out) {
  const DigitSequence seq = DigitSequence::parse(seq_text);
  const DNormValue v = d_norm(seq, positive_integer(q_text, "--q"));
  out << "omega=" << v.level << " |q|_D=" << to_string(v.value) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app("Schmidt games for mixed badly approximable numbers", "mixedbad");
  app.require_subcommand(1);

  PlayFlags pf;
  auto* play = app.add_subcommand("play", "play a game and write its transcript");
  play->add_option("--alpha", pf.alpha, "alpha")->required();
  play->add_option("--beta", pf.beta, "beta")->required();
  play->add_option("--b1", pf.b1, "opening interval lo,hi");
  play->add_option("--i", pf.i, "norm exponent i")->required();
  play->add_option("--j", pf.j, "distance exponent j")->required();
  play->add_option("--seq", pf.seq, "digit sequence, e.g. per:2")->required();
  play->add_option("--rounds", pf.rounds, "number of (A,B) exchanges");
  play->add_option("--adversary", pf.adversary,
                   "adv:leftmost|adv:rightmost|adv:greedy|adv:random[:SEED]");
  play->add_option("--strategy", pf.strategy, "paper-a or combine:paper-a+paper-a");
  play->add_option("--seed", pf.seed, "seed for the random adversary");
  play->add_option("--out", pf.out, "transcript path");
  play->add_option("--multi", pf.multi, "extra norm term \"seq;i\" (repeatable)");
  play->add_option("--combine", pf.combine,
                   "extra target \"seq;i;j\" played round-robin (repeatable)");

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "audit a transcript with the oracles");
  verify->add_option("--transcript", vf.transcript, "transcript path")->required();
  verify->add_option("--qmax", vf.qmax, "informational range above the horizon");
  verify->add_option("--horizon", vf.horizon, "auto");
  verify->add_option("--out", vf.out, "report path (JSON)");

  FactsFlags ff;
  auto* facts = app.add_subcommand("facts", "check the band facts");
  facts->add_option("--seq", ff.seq, "digit sequence");
  facts->add_option("--i", ff.i, "norm exponent i")->required();
  facts->add_option("--j", ff.j, "distance exponent j")->required();
  facts->add_option("--c", ff.c, "constant (default: chosen from the game)");
  facts->add_option("--alpha", ff.alpha, "alpha");
  facts->add_option("--beta", ff.beta, "beta")->required();
  facts->add_option("--b1", ff.b1, "opening interval lo,hi");
  facts->add_option("--nmax", ff.nmax, "last band")->required();
  facts->add_option("--qcap", ff.qcap, "largest denominator checked");

  ScanFlags sf;
  auto* scan = app.add_subcommand("scan", "running minimum of q |q|_D ||qx||");
  scan->add_option("--x", sf.x, "rational or surd:a,b,d,e")->required();
  scan->add_option("--seq", sf.seq, "digit sequence");
  scan->add_option("--qmax", sf.qmax, "largest q")->required();
  scan->add_option("--csv", sf.csv, "output path (default stdout)");

  std::string norm_seq, norm_q;
  auto* norm = app.add_subcommand("norm", "print omega(q) and |q|_D");
  norm->add_option("--seq", norm_seq, "digit sequence")->required();
  norm->add_option("--q", norm_q, "positive integer")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*play) return cmd_play(pf, out);
    if (*verify) return cmd_verify(vf, out);
    if (*facts) return cmd_facts(ff, out);
    if (*scan) return cmd_scan(sf, out);
    if (*norm) return cmd_norm(norm_seq, norm_q, out);
  } catch (const NoValidInterval& e) {
    err << "strategy failure: " << e.what() << "\n";
    return kExitStrategy;
  } catch (const InvariantViolation& e) {
    err << "strategy failure: " << e.what() << "\n";
    return kExitStrategy;
  } catch (const MoveError& e) {
    err << "strategy failure: " << e.what() << "\n";
    return kExitStrategy;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mixedbad
