// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <filesystem>
#include <algorithm>
#include <iostream>
#include <map>
#include <sstream>

#include "corrupt.hpp"
#include "mixedbad/cli.hpp"
#include "mixedbad/transcript.hpp"
#include "oracles.hpp"

using namespace mixedbad;
namespace fs = std::filesystem;

namespace {

Rational q(long n, long d = 1) {
  Rational out(n, d);
  out.canonicalize();
  return out;
}

struct Grid {
  Rational beta;
  Rational i;
  Rational j;
  std::string seq;

  std::string label() const {
    std::ostringstream s;
    s << seq << " i=" << i << " j=" << j << " beta=" << beta;
    return s.str();
  }
  Target target() const { return Target::single(DigitSequence::parse(seq), i, j); }
};

std::vector<Grid> grid() {
  std::vector<Grid> out;
  for (const Rational& beta : {q(1, 2), q(2, 3), q(9, 10)}) {
    for (const auto& [i, j] : {std::pair{q(1, 3), q(2, 3)}, std::pair{q(1, 2), q(1, 2)},
                               std::pair{q(2, 3), q(1, 3)}}) {
      for (const char* seq : {"per:2", "per:3", "per:2,3"}) out.push_back({beta, i, j, seq});
    }
  }
  return out;
}

const std::vector<std::string> kAdversaries{
    "adv:leftmost", "adv:rightmost", "adv:greedy",   "adv:random:1",
    "adv:random:2", "adv:random:3",  "adv:random:4", "adv:random:5"};

const GameParams& unit_game(const Rational& beta) {
  static std::map<std::string, GameParams> cache;
  const auto key = beta.get_str();
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, GameParams(q(1, 4), beta, RInterval(q(0), q(1)))).first;
  }
  return it->second;
}

GameSetup grid_setup(const Grid& g, const std::string& adversary, std::size_t rounds) {
  GameSetup s{unit_game(g.beta), {g.target()}, adversary, 7, rounds, {}};
  s.options.recheck_every = 1;
  return s;
}

class Report {
 public:
  void line(int id, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " C" << id << ": " << detail << std::endl;
    all_ = all_ && pass;
  }
  bool all() const { return all_; }

 private:
  bool all_ = true;
};

void info(const std::string& text) { std::cout << "  " << text << "\n"; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_double(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

// Criteria 1-3 share the grid games.
void grid_games(Report& report, std::vector<std::pair<GameSetup, std::string>>& kept) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t games = 0, strategy_failures = 0, move_violations = 0;
  std::size_t final_violations = 0, nonpositive = 0;
  std::string first_c1, first_c2, first_c3;
  double worst_ratio = -1, play_seconds = 0, audit_seconds = 0;
  for (const Grid& g : grid()) {
    for (const std::string& adv : kAdversaries) {
      ++games;
      const std::string label = g.label() + " " + adv;
      const GameSetup setup = grid_setup(g, adv, 20);
      std::optional<Transcript> t;
      const auto t_play = std::chrono::steady_clock::now();
      try {
        t = run_game(setup);
        play_seconds += seconds_since(t_play);
      } catch (const std::exception& e) {
        ++strategy_failures;
        if (first_c1.empty()) first_c1 = label + ": " + e.what();
        continue;
      }
      const auto t_audit = std::chrono::steady_clock::now();
      const AuditReport audit = audit_transcript(*t);
      audit_seconds += seconds_since(t_audit);
      const TargetAudit& a = audit.targets.front();
      if (!audit.structural_ok || !a.move_witnesses.empty()) {
        ++move_violations;
        if (first_c1.empty()) first_c1 = label + ": avoidance invariant broken";
      }
      if (!a.final_report || !a.final_report->delta_ok()) {
        ++final_violations;
        if (first_c2.empty()) first_c2 = label;
      }
      const Rational& c = a.target.c;
      if (!a.c_eff || *a.c_eff <= 0) {
        ++nonpositive;
        if (first_c3.empty()) first_c3 = label;
        info("game " + label + " c=" + c.get_str() + " c_eff=none");
      } else {
        const double ratio = Rational(*a.c_eff / c).get_d();
        if (worst_ratio < 0 || ratio < worst_ratio) worst_ratio = ratio;
        info("game " + label + " c=" + c.get_str() + " horizon=" + a.horizon.get_str() +
             " c_eff=" + a.c_eff->get_str() + " c_eff/c=" + fmt_double(ratio));
      }
      if (games % 8 == 3) kept.emplace_back(setup, to_json(*t));
    }
  }
  const std::string elapsed = "criteria 1-3 took " + fmt_double(seconds_since(t0)) +
                              "s: play " + fmt_double(play_seconds) + "s, audits " +
                              fmt_double(audit_seconds) + "s";
  report.line(1, strategy_failures == 0 && move_violations == 0,
              std::to_string(games) + " games, " + std::to_string(strategy_failures) +
                  " strategy failures, " + std::to_string(move_violations) +
                  " A moves meeting a forbidden neighbourhood (" + elapsed + ")" +
                  (first_c1.empty() ? "" : "; first: " + first_c1));
  report.line(2, final_violations == 0 && strategy_failures == 0,
              std::to_string(games - strategy_failures) +
                  " final intervals checked against every dangerous r/q below the horizon, " +
                  std::to_string(final_violations) + " violations" +
                  (first_c2.empty() ? "" : "; first: " + first_c2));
  report.line(3, nonpositive == 0 && strategy_failures == 0,
              "effective badness positive in " +
                  std::to_string(games - strategy_failures - nonpositive) + "/" +
                  std::to_string(games) + " games, smallest c_eff/c = " +
                  fmt_double(worst_ratio) + (first_c3.empty() ? "" : "; first: " + first_c3));
}

void norms(Report& report) {
  std::size_t mismatches = 0;
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    const DigitSequence seq = DigitSequence::constant(p);
    for (unsigned long qv = 1; qv <= 10000; ++qv) {
      const unsigned v = oracle::valuation(qv, p);
      Integer pv;
      mpz_ui_pow_ui(pv.get_mpz_t(), p, v);
      const DNormValue got = d_norm(seq, Integer(qv));
      if (got.level != v || got.value != Rational(Integer(1), pv)) ++mismatches;
    }
  }
  report.line(4, mismatches == 0,
              "d_norm vs trial division for p in {2,3,5}, q <= 10^4: " +
                  std::to_string(mismatches) + " mismatches");
}

void facts(Report& report) {
  std::size_t configs = 0, failing = 0, bands = 0, members = 0;
  std::string first;
  for (const Grid& g : grid()) {
    const GameParams& gp = unit_game(g.beta);
    const Target t = g.target();
    const ApproxParams params(t, choose_c(t, gp.alpha, gp.beta, gp.b1).c);
    const FactsReport r = facts_check(params, gp.ratio(), gp.b1.length(), 60, 100000);
    ++configs;
    bands += r.bands.size();
    for (const auto& b : r.bands) members += b.members;
    if (!r.ok()) {
      ++failing;
      if (first.empty()) first = g.label() + " " + r.failures.front().fact;
    }
  }
  const Target half = Target::single(DigitSequence::constant(2), q(1, 2), q(1, 2));
  const FactsReport bad = facts_check(ApproxParams(half, q(1)), q(8), q(1), 60, 100000);
  std::string witness;
  for (const auto& f : bad.failures) {
    if (f.fact == "fact1") {
      witness = "band " + std::to_string(f.band) + " q=" + f.q1.get_str();
      break;
    }
  }
  report.line(5, failing == 0 && !witness.empty(),
              std::to_string(configs) + " configurations, " + std::to_string(bands) +
                  " bands, " + std::to_string(members) + " dangerous denominators, " +
                  std::to_string(failing) + " failing; c = 1 gives " +
                  std::to_string(bad.failure_count) + " failures" +
                  (witness.empty() ? "" : " (fact1 at " + witness + ")") +
                  (first.empty() ? "" : "; first: " + first));
}

void combined(Report& report) {
  const GameParams gp(q(1, 4), q(1, 2), RInterval(q(0), q(1)));
  const std::vector<Target> targets{
      Target::single(DigitSequence::constant(2), q(1, 3), q(2, 3)),
      Target::single(DigitSequence::constant(3), q(2, 3), q(1, 3))};
  std::size_t games = 0, bad = 0;
  std::string first;
  for (const std::string& adv : kAdversaries) {
    ++games;
    GameSetup setup{gp, targets, adv, 11, 16, {}};
    setup.options.recheck_every = 1;
    try {
      const Transcript t = run_game(setup);
      const AuditReport audit = audit_transcript(t);
      bool ok = audit.structural_ok && audit.targets.size() == 2;
      for (const TargetAudit& a : audit.targets) {
        const ApproxParams params(a.target.target, a.target.c);
        ok = ok && a.ratio == 64 && a.local_rounds == 8 && a.move_witnesses.empty();
        // Recompute the delegate's horizon and run the oracle directly.
        const QRange below = below_q_range(params.j(), q(64), a.local_rounds - 1);
        ok = ok && below.hi == a.horizon;
        ok = ok && delta_avoidance_oracle(t.record().final_interval(), params, 1, below.hi)
                       .empty();
        ok = ok && a.c_eff && *a.c_eff > 0;
        info("combined " + adv + " delegate " + std::to_string(a.delegate) +
             " c=" + a.target.c.get_str() + " horizon=" + a.horizon.get_str() +
             " c_eff=" + (a.c_eff ? a.c_eff->get_str() : std::string("none")));
      }
      if (!ok) {
        ++bad;
        if (first.empty()) first = adv;
      }
    } catch (const std::exception& e) {
      ++bad;
      if (first.empty()) first = adv + ": " + e.what();
    }
  }
  report.line(6, bad == 0,
              "k=2 combined games (R_eff=64, 16 rounds): " +
                  std::to_string(games - bad) + "/" + std::to_string(games) +
                  " pass both delegates' oracles" + (first.empty() ? "" : "; first: " + first));
}

void constant_choice(Report& report) {
  const Target half = Target::single(DigitSequence::constant(2), q(1, 2), q(1, 2));
  const CChoice ch = choose_c(half, q(1, 4), q(1, 2), RInterval(q(0), q(1)));
  // With R = 8, |B_1| = 1 and i = j = 1/2 the two conditions square out to
  // 16 R^2 c < 1 and 4 R^(2/3) c < 1, i.e. c < 1/1024 and c < 1/16.
  const Rational length_bound = 1 / (16 * q(64));
  const Rational gap_bound = q(1, 16);
  const Rational threshold = std::min(length_bound, gap_bound);
  // Numerically, via 256-bit floats: (4R)^-2 and (2 R^(1/3))^-2.
  oracle::Big r13 = oracle::rational_power(q(8), 1, 3);
  mpfr_mul_ui(r13.get(), r13.get(), 2, MPFR_RNDN);
  mpfr_ui_div(r13.get(), 1, r13.get(), MPFR_RNDN);
  mpfr_sqr(r13.get(), r13.get(), MPFR_RNDN);
  const bool numeric = std::abs(r13.to_double() - 1.0 / 16) < 1e-15;
  const bool ok = ch.length_threshold == length_bound && ch.gap_threshold == gap_bound &&
                  threshold == q(1, 1024) && ch.c == q(1, 4096) && ch.c < threshold &&
                  meets_length_condition(half, ch.c, q(8), q(1)) &&
                  meets_gap_condition(half, ch.c, q(8), q(1)) &&
                  !meets_length_condition(half, threshold, q(8), q(1)) && numeric &&
                  16 * 64 * ch.c < 1 && 4 * 4 * ch.c < 1;
  report.line(7, ok,
              "threshold min(" + length_bound.get_str() + ", " + gap_bound.get_str() +
                  ") = " + threshold.get_str() + ", c = " + ch.c.get_str() +
                  " re-verified exactly");
}

void scans(Report& report) {
  const DigitSequence two = DigitSequence::constant(2);
  const auto third = liminf_scan(ScanPoint(q(1, 3)), two, 100000);
  const bool third_ok = !third.empty() && third.back().q == 3 &&
                        std::get<Rational>(third.back().value) == 0;

  const QuadraticSurd root2 = QuadraticSurd::parse("surd:0,1,2,1");
  const auto rows = liminf_scan(ScanPoint(root2), two, 100000);
  bool root2_ok = !rows.empty();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& v = std::get<QuadraticSurd>(rows[k].value);
    root2_ok = root2_ok && v.sign() > 0;
    if (k > 0) root2_ok = root2_ok && v < std::get<QuadraticSurd>(rows[k - 1].value);
  }

  // Exact distances against 200-bit floats for every q, and the scan values.
  double worst = 0;
  for (unsigned long qv = 1; qv <= 100000; ++qv) {
    const QuadraticSurd d = nearest_integer_distance(root2 * Rational(Integer(qv)));
    const double exact = oracle::decimal(d.truncated_decimal(20));
    const double numeric = oracle::surd_distance(0, 1, 2, 1, qv).to_double();
    worst = std::max(worst, std::abs(exact - numeric));
  }
  for (const auto& row : rows) {
    oracle::Big x = oracle::surd_distance(0, 1, 2, 1, row.q.get_ui());
    const Rational scale = Rational(row.q) * d_norm(two, row.q).value;
    oracle::Big s = oracle::Big::of(scale, 200);
    mpfr_mul(x.get(), x.get(), s.get(), MPFR_RNDN);
    const double exact =
        oracle::decimal(std::get<QuadraticSurd>(row.value).truncated_decimal(20));
    worst = std::max(worst, std::abs(exact - x.to_double()));
  }
  const std::string last = rows.empty() ? "none" : render_scan_value(rows.back().value);
  report.line(8, third_ok && root2_ok && worst < 1e-12,
              std::string("1/3 reaches 0 at q=") +
                  (third.empty() ? "?" : third.back().q.get_str()) + "; sqrt 2: " +
                  std::to_string(rows.size()) + " decreasing positive minima, last " + last +
                  "; max deviation from 200-bit floats " + fmt_double(worst));
}

void determinism(Report& report, const std::vector<std::pair<GameSetup, std::string>>& kept) {
  std::size_t same = 0;
  for (const auto& [setup, text] : kept) {
    if (to_json(run_game(setup)) == text) ++same;
  }

  const fs::path dir = fs::temp_directory_path() / "mixedbad_acceptance";
  fs::create_directories(dir);
  const fs::path path = dir / "corrupted.json";
  Grid g{q(1, 2), q(1, 3), q(2, 3), "per:2"};
  Transcript t = run_game(grid_setup(g, "adv:greedy", 20));
  const auto index = testing_support::corrupt_one_move(t);
  std::ostringstream out, err;
  int code = -1;
  std::string witness;
  if (index) {
    save_text(path.string(), to_json(t));
    code = run_cli({"verify", "--transcript", path.string()}, out, err);
    const auto at = out.str().find("witness=");
    if (at != std::string::npos) {
      witness = out.str().substr(at + 8, out.str().find('\n', at) - at - 8);
    }
  }
  report.line(9, same == kept.size() && code == kExitVerification && !witness.empty(),
              std::to_string(same) + "/" + std::to_string(kept.size()) +
                  " replayed games byte-identical; corrupted move " +
                  (index ? std::to_string(*index) : std::string("none")) +
                  " -> verify exit " + std::to_string(code) + " witness " +
                  (witness.empty() ? "none" : witness));
}

}  // namespace

int main() {
  Report report;
  std::vector<std::pair<GameSetup, std::string>> kept;
  grid_games(report, kept);
  norms(report);
  facts(report);
  combined(report);
  constant_choice(report);
  scans(report);
  determinism(report, kept);
  return report.all() ? 0 : 1;
}
