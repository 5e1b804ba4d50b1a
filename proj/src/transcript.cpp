#include "mixedbad/transcript.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mixedbad {

using nlohmann::ordered_json;

namespace {

std::string strategy_name(std::size_t k) {
  if (k == 1) return "paper-a";
  std::string out = "combine:paper-a";
  for (std::size_t t = 1; t < k; ++t) out += "+paper-a";
  return out;
}

ordered_json interval_json(const RInterval& r) {
  ordered_json out;
  out["lo"] = to_string(r.lo());
  out["hi"] = to_string(r.hi());
  return out;
}

ordered_json target_json(const TargetRecord& rec) {
  ordered_json out;
  ordered_json seqs = ordered_json::array();
  ordered_json is = ordered_json::array();
  for (const auto& term : rec.target.terms()) {
    seqs.push_back(term.seq.to_string());
    is.push_back(to_string(term.exponent));
  }
  out["seqs"] = seqs;
  if (rec.target.is_single()) {
    out["i"] = is.front();
  } else {
    out["i"] = is;
  }
  out["j"] = to_string(rec.target.j());
  out["c"] = to_string(rec.c);
  return out;
}

const ordered_json& field(const ordered_json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw TranscriptError(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

std::string text_field(const ordered_json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_string()) {
    throw TranscriptError(std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

TargetRecord target_from_json(const ordered_json& obj) {
  const auto& seqs = field(obj, "seqs");
  const auto& is = field(obj, "i");
  std::vector<std::string> seq_text;
  std::vector<std::string> i_text;
  if (seqs.is_string()) {
    seq_text.push_back(seqs.get<std::string>());
  } else if (seqs.is_array()) {
    for (const auto& s : seqs) seq_text.push_back(s.get<std::string>());
  } else {
    throw TranscriptError("field 'seqs' must be a string or an array");
  }
  if (is.is_string()) {
    i_text.push_back(is.get<std::string>());
  } else if (is.is_array()) {
    for (const auto& s : is) i_text.push_back(s.get<std::string>());
  } else {
    throw TranscriptError("field 'i' must be a string or an array");
  }
  if (seq_text.size() != i_text.size() || seq_text.empty()) {
    throw TranscriptError("'seqs' and 'i' must have the same nonzero length");
  }
  std::vector<NormTerm> terms;
  for (std::size_t s = 0; s < seq_text.size(); ++s) {
    terms.push_back({DigitSequence::parse(seq_text[s]), parse_rational(i_text[s])});
  }
  Target target(std::move(terms), parse_rational(text_field(obj, "j")));
  const Rational c = parse_rational(text_field(obj, "c"));
  if (c <= 0) throw TranscriptError("c must be positive");
  return {std::move(target), c};
}

std::string describe(const DangerousRational& d) {
  return to_string(d.r) + "/" + to_string(d.q);
}

ordered_json witness_json(const DangerousRational& d) {
  ordered_json out;
  out["r"] = to_string(d.r);
  out["q"] = to_string(d.q);
  return out;
}

}  // namespace

AdversarySpec parse_adversary(const std::string& text,
                              std::uint64_t fallback_seed) {
  if (text == "adv:leftmost") return {AdversaryKind::Leftmost, fallback_seed};
  if (text == "adv:rightmost") return {AdversaryKind::Rightmost, fallback_seed};
  if (text == "adv:greedy") return {AdversaryKind::Greedy, fallback_seed};
  if (text == "adv:random") return {AdversaryKind::Random, fallback_seed};
  const std::string prefix = "adv:random:";
  if (text.starts_with(prefix)) {
    const Integer seed = parse_integer(std::string_view(text).substr(prefix.size()));
    if (seed < 0 || mpz_sizeinbase(seed.get_mpz_t(), 2) > 64) {
      throw ParseError("random seed must fit in 64 bits: '" + text + "'");
    }
    std::uint64_t value = 0;
    mpz_export(&value, nullptr, -1, sizeof(value), 0, 0, seed.get_mpz_t());
    return {AdversaryKind::Random, value};
  }
  throw ParseError("unknown adversary '" + text + "'");
}

std::string adversary_name(const AdversarySpec& spec) {
  switch (spec.kind) {
    case AdversaryKind::Leftmost:
      return "adv:leftmost";
    case AdversaryKind::Rightmost:
      return "adv:rightmost";
    case AdversaryKind::Greedy:
      return "adv:greedy";
    case AdversaryKind::Random:
      return "adv:random:" + std::to_string(spec.seed);
  }
  return "adv:?";
}

Transcript run_game(const GameSetup& setup) {
  if (setup.rounds == 0) throw std::invalid_argument("rounds must be positive");
  if (setup.targets.empty()) throw std::invalid_argument("no target");
  require_quarter_alpha(setup.params.alpha);
  const AdversarySpec adv = parse_adversary(setup.adversary, setup.seed);
  const std::size_t k = setup.targets.size();

  CombinedStrategy a(setup.targets, setup.options);
  std::vector<ApproxParams> lookahead;
  if (adv.kind == AdversaryKind::Greedy) {
    const Rational beta_eff =
        effective_beta(setup.params.alpha, setup.params.beta, k);
    for (const auto& t : setup.targets) {
      lookahead.emplace_back(
          t, choose_c(t, setup.params.alpha, beta_eff, setup.params.b1).c);
    }
  }
  Adversary b(adv.kind, adv.seed, std::move(lookahead),
              adv.kind == AdversaryKind::Greedy
                  ? std::optional<Rational>(setup.params.ratio())
                  : std::nullopt);
  GameRecord rec = play(setup.params, a, b, setup.rounds);

  Transcript out{setup.params, strategy_name(k), adversary_name(adv),
                 adv.seed,     setup.rounds,     {},
                 std::move(rec.moves)};
  for (std::size_t t = 0; t < k; ++t) {
    // Delegates that never moved still get the constant their B_1 implies.
    Rational c;
    if (a.choices()[t]) {
      c = a.choices()[t]->c;
    } else {
      c = choose_c(setup.targets[t], setup.params.alpha,
                   effective_beta(setup.params.alpha, setup.params.beta, k),
                   setup.params.b1)
              .c;
    }
    out.targets.push_back({setup.targets[t], c});
  }
  return out;
}

std::string to_json(const Transcript& t) {
  ordered_json out;
  out["alpha"] = to_string(t.params.alpha);
  out["beta"] = to_string(t.params.beta);
  out["b1"] = to_string(t.params.b1);
  const ordered_json first = target_json(t.targets.front());
  out["seqs"] = first["seqs"];
  out["i"] = first["i"];
  out["j"] = first["j"];
  out["c"] = first["c"];
  out["strategy"] = t.strategy;
  out["adversary"] = t.adversary;
  out["seed"] = t.seed;
  out["rounds"] = t.rounds;
  ordered_json targets = ordered_json::array();
  for (const auto& rec : t.targets) targets.push_back(target_json(rec));
  out["targets"] = targets;
  ordered_json moves = ordered_json::array();
  for (const auto& m : t.moves) {
    ordered_json mv;
    mv["player"] = to_string(m.player);
    mv["lo"] = to_string(m.interval.lo());
    mv["hi"] = to_string(m.interval.hi());
    moves.push_back(mv);
  }
  out["moves"] = moves;
  out["final"] = interval_json(t.moves.empty() ? t.params.b1
                                               : t.moves.back().interval);
  return out.dump(2) + "\n";
}

Transcript transcript_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw TranscriptError(std::string("not valid JSON: ") + e.what());
  }
  try {
    GameParams params(parse_rational(text_field(doc, "alpha")),
                      parse_rational(text_field(doc, "beta")),
                      parse_interval(text_field(doc, "b1")));
    std::vector<TargetRecord> targets;
    if (doc.contains("targets")) {
      for (const auto& t : field(doc, "targets")) {
        targets.push_back(target_from_json(t));
      }
    } else {
      targets.push_back(target_from_json(doc));
    }
    if (targets.empty()) throw TranscriptError("no targets");

    std::vector<Move> moves;
    for (const auto& m : field(doc, "moves")) {
      const std::string who = text_field(m, "player");
      if (who != "A" && who != "B") {
        throw TranscriptError("player must be \"A\" or \"B\"");
      }
      moves.push_back({who == "A" ? Player::A : Player::B,
                       RInterval(parse_rational(text_field(m, "lo")),
                                 parse_rational(text_field(m, "hi")))});
    }
    const std::size_t rounds =
        doc.contains("rounds") ? doc.at("rounds").get<std::size_t>()
                               : moves.size() / 2;
    const std::uint64_t seed =
        doc.contains("seed") ? doc.at("seed").get<std::uint64_t>() : 0;
    const std::string strategy = doc.contains("strategy")
                                     ? text_field(doc, "strategy")
                                     : strategy_name(targets.size());
    const std::string adversary =
        doc.contains("adversary") ? text_field(doc, "adversary") : "";
    return Transcript{std::move(params), strategy, adversary, seed,
                      rounds,            std::move(targets), std::move(moves)};
  } catch (const TranscriptError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw TranscriptError(std::string("bad transcript field: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw TranscriptError(std::string("bad transcript value: ") + e.what());
  }
}

Transcript load_transcript(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TranscriptError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return transcript_from_json(buf.str());
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

bool AuditReport::ok() const {
  if (!structural_ok) return false;
  for (const auto& t : targets) {
    if (!t.ok()) return false;
  }
  return true;
}

std::optional<DangerousRational> AuditReport::witness() const {
  for (const auto& t : targets) {
    if (!t.move_witnesses.empty()) return t.move_witnesses.front().witness;
    if (t.final_report && !t.final_report->delta_violations.empty()) {
      return t.final_report->delta_violations.front();
    }
  }
  return std::nullopt;
}

AuditReport audit_transcript(const Transcript& t, const AuditOptions& options) {
  AuditReport report;
  const GameRecord rec = t.record();
  try {
    const GameState state = replay(rec);
    if (t.rounds != 0 && state.moves().size() != 2 * t.rounds + 1) {
      throw std::runtime_error("transcript has " +
                               std::to_string(state.moves().size() - 1) +
                               " moves, expected " +
                               std::to_string(2 * t.rounds));
    }
    if (state.moves().size() % 2 == 0) {
      throw std::runtime_error("transcript does not end with a B move");
    }
  } catch (const std::exception& e) {
    report.structural_ok = false;
    report.structural_error = e.what();
  }

  const std::vector<RInterval> intervals = rec.intervals();
  const std::size_t a_total = intervals.size() / 2;
  const std::size_t k = t.targets.size();
  const Rational beta_eff = effective_beta(t.params.alpha, t.params.beta, k);
  const Rational ratio = 1 / (t.params.alpha * beta_eff);
  const RInterval& last = intervals.back();

  for (std::size_t d = 0; d < k; ++d) {
    TargetAudit audit{d, t.targets[d], ratio, 0, Integer(0), {}, {}, {}, {}};
    const ApproxParams params(t.targets[d].target, t.targets[d].c);
    const Rational& j = params.j();
    for (std::size_t a = d; a < a_total; a += k) {
      const std::size_t local_n = a / k;
      ++audit.local_rounds;
      if (!options.check_moves || local_n == 0) continue;
      const QRange below = below_q_range(j, ratio, local_n);
      const auto hits = delta_avoidance_oracle(
          intervals[2 * a + 1], params, Integer(1), below.hi, options.oracle);
      for (const auto& h : hits) audit.move_witnesses.push_back({2 * a + 1, h});
    }
    if (!report.structural_ok) {
      // Individual A moves are still checked; the final interval means
      // nothing for a broken chain.
      audit.horizon = 0;
    } else if (audit.local_rounds >= 2) {
      audit.horizon = below_q_range(j, ratio, audit.local_rounds - 1).hi;
      audit.final_report =
          check_membership(last, params, audit.horizon, options.oracle);
      if (options.badness) {
        BadnessOptions bo;
        bo.oracle = options.oracle;
        bo.start_exponent =
            mpz_sizeinbase(params.c().get_den_mpz_t(), 2) - 1;
        audit.c_eff = effective_badness(last, params.target(), audit.horizon,
                                        options.t_max, bo);
        audit.final_report->c_eff = audit.c_eff;
      }
    } else {
      audit.horizon = 0;
    }
    if (report.structural_ok && options.q_max && *options.q_max > audit.horizon) {
      audit.beyond_horizon = delta_avoidance_oracle(
          last, params, Integer(audit.horizon + 1), *options.q_max,
          options.oracle);
    }
    report.targets.push_back(std::move(audit));
  }
  return report;
}

std::string to_json(const AuditReport& report) {
  ordered_json out;
  out["ok"] = report.ok();
  out["structural_ok"] = report.structural_ok;
  if (!report.structural_ok) out["structural_error"] = report.structural_error;
  ordered_json targets = ordered_json::array();
  for (const auto& t : report.targets) {
    ordered_json tj = target_json(t.target);
    tj["delegate"] = t.delegate;
    tj["R"] = to_string(t.ratio);
    tj["local_rounds"] = t.local_rounds;
    tj["horizon"] = to_string(t.horizon);
    tj["delta_ok"] = t.ok();
    ordered_json mw = ordered_json::array();
    for (const auto& w : t.move_witnesses) {
      ordered_json e = witness_json(w.witness);
      e["move"] = w.move;
      mw.push_back(e);
    }
    tj["move_witnesses"] = mw;
    if (t.final_report) {
      const auto& fr = *t.final_report;
      ordered_json fj;
      fj["candidates"] = fr.candidates;
      fj["direct_ok"] = fr.direct_ok();
      fj["delta_ok"] = fr.delta_ok();
      ordered_json viol = ordered_json::array();
      for (const auto& q : fr.violations) viol.push_back(to_string(q));
      fj["direct_violations"] = viol;
      ordered_json bq = ordered_json::array();
      for (const auto& q : fr.boundary_qs) bq.push_back(to_string(q));
      fj["boundary_qs"] = bq;
      ordered_json dv = ordered_json::array();
      for (const auto& d : fr.delta_violations) dv.push_back(witness_json(d));
      fj["delta_violations"] = dv;
      tj["final"] = fj;
    }
    tj["c_eff"] = t.c_eff ? ordered_json(to_string(*t.c_eff)) : ordered_json("none");
    if (t.c_eff) tj["c_eff_over_c"] = to_string(Rational(*t.c_eff / t.target.c));
    ordered_json beyond = ordered_json::array();
    for (const auto& d : t.beyond_horizon) beyond.push_back(witness_json(d));
    tj["beyond_horizon_informational"] = beyond;
    targets.push_back(tj);
  }
  out["targets"] = targets;
  if (auto w = report.witness()) out["witness"] = describe(*w);
  return out.dump(2) + "\n";
}

}  // namespace mixedbad
