#include "roughproof/rules.hpp"

#include <map>
#include <sstream>

#include "roughproof/parser.hpp"

namespace rp {

std::optional<CalculusId> calculus_of_name(const std::string& name) {
  if (name == "D.TQBA") return CalculusId::TQBA;
  if (name == "D.TQBA5") return CalculusId::TQBA5;
  if (name == "D.IA1") return CalculusId::IA1;
  if (name == "D.IA2") return CalculusId::IA2;
  if (name == "D.IA3") return CalculusId::IA3;
  if (name == "D.PRA") return CalculusId::PRA;
  return std::nullopt;
}

std::string calculus_name(CalculusId c) {
  switch (c) {
    case CalculusId::TQBA: return "D.TQBA";
    case CalculusId::TQBA5: return "D.TQBA5";
    case CalculusId::IA1: return "D.IA1";
    case CalculusId::IA2: return "D.IA2";
    case CalculusId::IA3: return "D.IA3";
    case CalculusId::PRA: return "D.PRA";
  }
  return "?";
}

std::string rule_kind_name(RuleKind k) {
  switch (k) {
    case RuleKind::Identity: return "identity";
    case RuleKind::Cut: return "cut";
    case RuleKind::Display: return "display";
    case RuleKind::Structural: return "structural";
    case RuleKind::Operational: return "operational";
  }
  return "?";
}

namespace {

constexpr uint8_t bit(CalculusId c) { return static_cast<uint8_t>(1u << static_cast<int>(c)); }

// Calculus masks. Every extension calculus contains all D.TQBA rules, etc.
constexpr uint8_t ALL = 0b111111;
constexpr uint8_t T5UP = ALL & ~bit(CalculusId::TQBA);          // D.TQBA5 and above
constexpr uint8_t IA1P = bit(CalculusId::IA1) | bit(CalculusId::PRA);
constexpr uint8_t IA2P = bit(CalculusId::IA2) | bit(CalculusId::PRA);
constexpr uint8_t IA3P = bit(CalculusId::IA3) | bit(CalculusId::PRA);

Sequent schema(const std::string& text) {
  ParseOptions opt;
  opt.allow_metavars = true;
  return parse_sequent(text, opt);
}

std::vector<Rule> build_catalog() {
  std::vector<Rule> cat;
  auto add = [&cat](const std::string& name, RuleKind kind, bool bidi, uint8_t mask,
                    std::vector<std::string> prems, const std::string& concl) {
    Rule r;
    r.name = name;
    r.kind = kind;
    r.bidirectional = bidi;
    r.calculi = mask;
    for (const auto& p : prems) r.premises.push_back(schema(p));
    r.conclusion = schema(concl);
    cat.push_back(std::move(r));
  };

  // ---- identity and cut ----
  add("Id_D", RuleKind::Identity, false, ALL, {}, "(seq P P)");
  add("Cut_D", RuleKind::Cut, false, ALL, {"(seq X A)", "(seq A Y)"}, "(seq X Y)");
  add("Cut_KI", RuleKind::Cut, false, ALL, {"(seq GAMMA ALPHA)", "(seq ALPHA DELTA)"},
      "(seq GAMMA DELTA)");
  add("Cut_KC", RuleKind::Cut, false, ALL, {"(seq PI XI)", "(seq XI SIGMA)"},
      "(seq PI SIGMA)");

  // ---- display rules (all double-line) ----
  add("res_D", RuleKind::Display, true, ALL, {"(seq Y (s-arrow X Z))"},
      "(seq (s-wedge X Y) Z)");
  add("res_D", RuleKind::Display, true, ALL, {"(seq (s-excl Y X) Z)"},
      "(seq X (s-vee Y Z))");
  add("gal_D", RuleKind::Display, true, ALL, {"(seq (s-neg Y) X)"}, "(seq (s-neg X) Y)");
  add("gal_D", RuleKind::Display, true, ALL, {"(seq Y (s-neg X))"}, "(seq X (s-neg Y))");
  add("res_KI", RuleKind::Display, true, ALL, {"(seq DELTA (s-supR GAMMA LAMBDA))"},
      "(seq (s-cap GAMMA DELTA) LAMBDA)");
  add("res_KI", RuleKind::Display, true, ALL, {"(seq (s-supL DELTA GAMMA) LAMBDA)"},
      "(seq GAMMA (s-cup DELTA LAMBDA))");
  add("res_KC", RuleKind::Display, true, ALL, {"(seq SIGMA (s-sqsupR PI OMEGA))"},
      "(seq (s-sqcap PI SIGMA) OMEGA)");
  add("res_KC", RuleKind::Display, true, ALL, {"(seq (s-sqsupL SIGMA PI) OMEGA)"},
      "(seq PI (s-sqcup SIGMA OMEGA))");
  add("ad_DKI", RuleKind::Display, true, ALL, {"(seq GAMMA (s-boxI Y))"},
      "(seq (s-circI GAMMA) Y)");
  add("ad_DKI", RuleKind::Display, true, ALL, {"(seq (s-diamI Y) GAMMA)"},
      "(seq Y (s-circI GAMMA))");
  add("ad_DKC", RuleKind::Display, true, ALL, {"(seq (s-diamC Y) PI)"},
      "(seq Y (s-circC PI))");
  add("ad_DKC", RuleKind::Display, true, ALL, {"(seq PI (s-boxC Y))"},
      "(seq (s-circC PI) Y)");
  add("gal_KI", RuleKind::Display, true, T5UP, {"(seq (s-sim DELTA) GAMMA)"},
      "(seq (s-sim GAMMA) DELTA)");
  add("gal_KI", RuleKind::Display, true, T5UP, {"(seq DELTA (s-sim GAMMA))"},
      "(seq GAMMA (s-sim DELTA))");
  add("gal_KC", RuleKind::Display, true, T5UP, {"(seq (s-minus SIGMA) PI)"},
      "(seq (s-minus PI) SIGMA)");
  add("gal_KC", RuleKind::Display, true, T5UP, {"(seq PI (s-minus SIGMA))"},
      "(seq SIGMA (s-minus PI))");

  // ---- structural rules, type D ----
  add("W_D", RuleKind::Structural, false, ALL, {"(seq X Y)"}, "(seq (s-wedge X Z) Y)");
  add("W_D", RuleKind::Structural, false, ALL, {"(seq X Y)"}, "(seq X (s-vee Y Z))");
  add("C_D", RuleKind::Structural, false, ALL, {"(seq (s-wedge X X) Y)"}, "(seq X Y)");
  add("C_D", RuleKind::Structural, false, ALL, {"(seq X (s-vee Y Y))"}, "(seq X Y)");
  add("E_D", RuleKind::Structural, false, ALL, {"(seq (s-wedge Y X) Z)"},
      "(seq (s-wedge X Y) Z)");
  add("E_D", RuleKind::Structural, false, ALL, {"(seq X (s-vee Z Y))"},
      "(seq X (s-vee Y Z))");
  add("A_D", RuleKind::Structural, true, ALL, {"(seq (s-wedge X (s-wedge Y Z)) W)"},
      "(seq (s-wedge (s-wedge X Y) Z) W)");
  add("A_D", RuleKind::Structural, true, ALL, {"(seq X (s-vee Y (s-vee Z W)))"},
      "(seq X (s-vee (s-vee Y Z) W))");
  add("cont", RuleKind::Structural, true, ALL, {"(seq X Y)"},
      "(seq (s-neg Y) (s-neg X))");
  add("unit_top", RuleKind::Structural, true, ALL, {"(seq (s-wedge X s-top) Y)"},
      "(seq X Y)");
  add("unit_bot", RuleKind::Structural, true, ALL, {"(seq X (s-vee Y s-bot))"},
      "(seq X Y)");

  // ---- structural rules, type KI ----
  add("W_KI", RuleKind::Structural, false, ALL, {"(seq GAMMA DELTA)"},
      "(seq (s-cap GAMMA LAMBDA) DELTA)");
  add("W_KI", RuleKind::Structural, false, ALL, {"(seq GAMMA DELTA)"},
      "(seq GAMMA (s-cup DELTA LAMBDA))");
  add("C_KI", RuleKind::Structural, false, ALL, {"(seq (s-cap GAMMA GAMMA) DELTA)"},
      "(seq GAMMA DELTA)");
  add("C_KI", RuleKind::Structural, false, ALL, {"(seq GAMMA (s-cup DELTA DELTA))"},
      "(seq GAMMA DELTA)");
  add("E_KI", RuleKind::Structural, false, ALL, {"(seq (s-cap DELTA GAMMA) LAMBDA)"},
      "(seq (s-cap GAMMA DELTA) LAMBDA)");
  add("E_KI", RuleKind::Structural, false, ALL, {"(seq GAMMA (s-cup LAMBDA DELTA))"},
      "(seq GAMMA (s-cup DELTA LAMBDA))");
  add("A_KI", RuleKind::Structural, true, ALL,
      {"(seq (s-cap GAMMA (s-cap DELTA LAMBDA)) THETA)"},
      "(seq (s-cap (s-cap GAMMA DELTA) LAMBDA) THETA)");
  add("A_KI", RuleKind::Structural, true, ALL,
      {"(seq GAMMA (s-cup DELTA (s-cup LAMBDA THETA)))"},
      "(seq GAMMA (s-cup (s-cup DELTA LAMBDA) THETA))");
  add("unit_1I", RuleKind::Structural, true, ALL, {"(seq (s-cap GAMMA s-1I) DELTA)"},
      "(seq GAMMA DELTA)");
  add("unit_0I", RuleKind::Structural, true, ALL, {"(seq GAMMA (s-cup DELTA s-0I))"},
      "(seq GAMMA DELTA)");
  add("cont_I", RuleKind::Structural, true, T5UP, {"(seq GAMMA DELTA)"},
      "(seq (s-sim DELTA) (s-sim GAMMA))");

  // ---- structural rules, type KC ----
  add("W_KC", RuleKind::Structural, false, ALL, {"(seq PI SIGMA)"},
      "(seq (s-sqcap PI OMEGA) SIGMA)");
  add("W_KC", RuleKind::Structural, false, ALL, {"(seq PI SIGMA)"},
      "(seq PI (s-sqcup SIGMA OMEGA))");
  add("C_KC", RuleKind::Structural, false, ALL, {"(seq (s-sqcap PI PI) SIGMA)"},
      "(seq PI SIGMA)");
  add("C_KC", RuleKind::Structural, false, ALL, {"(seq PI (s-sqcup SIGMA SIGMA))"},
      "(seq PI SIGMA)");
  add("E_KC", RuleKind::Structural, false, ALL, {"(seq (s-sqcap SIGMA PI) OMEGA)"},
      "(seq (s-sqcap PI SIGMA) OMEGA)");
  add("E_KC", RuleKind::Structural, false, ALL, {"(seq PI (s-sqcup OMEGA SIGMA))"},
      "(seq PI (s-sqcup SIGMA OMEGA))");
  add("A_KC", RuleKind::Structural, true, ALL,
      {"(seq (s-sqcap PI (s-sqcap SIGMA OMEGA)) RHO)"},
      "(seq (s-sqcap (s-sqcap PI SIGMA) OMEGA) RHO)");
  add("A_KC", RuleKind::Structural, true, ALL,
      {"(seq PI (s-sqcup SIGMA (s-sqcup OMEGA RHO)))"},
      "(seq PI (s-sqcup (s-sqcup SIGMA OMEGA) RHO))");
  add("unit_1C", RuleKind::Structural, true, ALL, {"(seq (s-sqcap PI s-1C) SIGMA)"},
      "(seq PI SIGMA)");
  add("unit_0C", RuleKind::Structural, true, ALL, {"(seq PI (s-sqcup SIGMA s-0C))"},
      "(seq PI SIGMA)");
  add("cont_C", RuleKind::Structural, true, T5UP, {"(seq PI SIGMA)"},
      "(seq (s-minus SIGMA) (s-minus PI))");

  // ---- multi-type structural rules ----
  add("circI_1I", RuleKind::Structural, true, ALL, {"(seq s-top Y)"},
      "(seq (s-circI s-1I) Y)");
  add("boxI_bot", RuleKind::Structural, true, ALL, {"(seq GAMMA (s-boxI s-bot))"},
      "(seq GAMMA s-0I)");
  add("diamC_top", RuleKind::Structural, true, ALL, {"(seq (s-diamC s-top) PI)"},
      "(seq s-1C PI)");
  add("circC_0C", RuleKind::Structural, true, ALL, {"(seq X s-bot)"},
      "(seq X (s-circC s-0C))");
  add("circI_emb", RuleKind::Structural, true, ALL, {"(seq GAMMA DELTA)"},
      "(seq (s-circI GAMMA) (s-circI DELTA))");
  add("circC_emb", RuleKind::Structural, true, ALL, {"(seq PI SIGMA)"},
      "(seq (s-circC PI) (s-circC SIGMA))");
  add("diamI_boxI", RuleKind::Structural, false, ALL, {"(seq (s-diamI X) (s-boxI Y))"},
      "(seq X Y)");
  add("diamC_boxC", RuleKind::Structural, false, ALL, {"(seq (s-diamC X) (s-boxC Y))"},
      "(seq X Y)");
  add("IC", RuleKind::Structural, true, ALL, {"(seq X (s-circI (s-boxI (s-neg Y))))"},
      "(seq X (s-neg (s-circC (s-diamC Y))))");
  add("IC", RuleKind::Structural, true, ALL, {"(seq X (s-circC (s-boxC (s-neg Y))))"},
      "(seq X (s-neg (s-circI (s-diamI Y))))");
  add("CI", RuleKind::Structural, true, ALL, {"(seq (s-circC (s-diamC (s-neg X))) Y)"},
      "(seq (s-neg (s-circI (s-boxI X))) Y)");
  add("CI", RuleKind::Structural, true, ALL, {"(seq (s-circI (s-diamI (s-neg X))) Y)"},
      "(seq (s-neg (s-circC (s-boxC X))) Y)");
  add("circI_boxI", RuleKind::Structural, true, T5UP, {"(seq X (s-circI (s-boxI Y)))"},
      "(seq X (s-circC (s-boxC Y)))");
  add("circI_sim", RuleKind::Structural, true, T5UP, {"(seq X (s-circI (s-sim GAMMA)))"},
      "(seq X (s-neg (s-circI GAMMA)))");
  add("circC_minus", RuleKind::Structural, true, T5UP, {"(seq X (s-circC (s-minus PI)))"},
      "(seq X (s-neg (s-circC PI)))");

  // ---- extension structural rules ----
  add("cgri", RuleKind::Structural, false, IA1P, {"(seq (s-cap GAMMA DELTA) LAMBDA)"},
      "(seq DELTA (s-cup (s-sim GAMMA) LAMBDA))");
  add("cgri", RuleKind::Structural, false, IA1P, {"(seq (s-sqcap PI SIGMA) OMEGA)"},
      "(seq SIGMA (s-sqcup (s-minus PI) OMEGA))");
  add("boxI-cup", RuleKind::Structural, false, IA2P, {"(seq GAMMA (s-boxI (s-vee X Y)))"},
      "(seq GAMMA (s-cup (s-boxI X) (s-boxI Y)))");
  add("diamC-cap", RuleKind::Structural, false, IA2P, {"(seq (s-diamC (s-wedge X Y)) PI)"},
      "(seq (s-sqcap (s-diamC X) (s-diamC Y)) PI)");
  add("ia3", RuleKind::Structural, false, IA3P, {"(seq X Y)", "(seq W Z)"},
      "(seq (s-wedge X (s-circC (s-diamC W))) (s-vee (s-circI (s-boxI Y)) Z))");

  // ---- operational rules, type D ----
  add("top_R", RuleKind::Operational, false, ALL, {}, "(seq s-top top)");
  add("top_L", RuleKind::Operational, false, ALL, {"(seq s-top X)"}, "(seq top X)");
  add("bot_L", RuleKind::Operational, false, ALL, {}, "(seq bot s-bot)");
  add("bot_R", RuleKind::Operational, false, ALL, {"(seq X s-bot)"}, "(seq X bot)");
  add("and_L", RuleKind::Operational, false, ALL, {"(seq (s-wedge A B) X)"},
      "(seq (and A B) X)");
  add("and_R", RuleKind::Operational, false, ALL, {"(seq X A)", "(seq Y B)"},
      "(seq (s-wedge X Y) (and A B))");
  add("or_R", RuleKind::Operational, false, ALL, {"(seq X (s-vee A B))"},
      "(seq X (or A B))");
  add("or_L", RuleKind::Operational, false, ALL, {"(seq A X)", "(seq B Y)"},
      "(seq (or A B) (s-vee X Y))");
  add("neg_L", RuleKind::Operational, false, ALL, {"(seq (s-neg A) X)"},
      "(seq (neg A) X)");
  add("neg_R", RuleKind::Operational, false, ALL, {"(seq X (s-neg A))"},
      "(seq X (neg A))");

  // ---- operational rules, type KI ----
  add("oneI_R", RuleKind::Operational, false, ALL, {}, "(seq s-1I 1I)");
  add("oneI_L", RuleKind::Operational, false, ALL, {"(seq s-1I GAMMA)"},
      "(seq 1I GAMMA)");
  add("zeroI_L", RuleKind::Operational, false, ALL, {}, "(seq 0I s-0I)");
  add("zeroI_R", RuleKind::Operational, false, ALL, {"(seq GAMMA s-0I)"},
      "(seq GAMMA 0I)");
  add("cap_L", RuleKind::Operational, false, ALL, {"(seq (s-cap ALPHA BETA) GAMMA)"},
      "(seq (cap ALPHA BETA) GAMMA)");
  add("cap_R", RuleKind::Operational, false, ALL, {"(seq GAMMA ALPHA)", "(seq DELTA BETA)"},
      "(seq (s-cap GAMMA DELTA) (cap ALPHA BETA))");
  add("cup_R", RuleKind::Operational, false, ALL, {"(seq GAMMA (s-cup ALPHA BETA))"},
      "(seq GAMMA (cup ALPHA BETA))");
  add("cup_L", RuleKind::Operational, false, ALL, {"(seq ALPHA GAMMA)", "(seq BETA DELTA)"},
      "(seq (cup ALPHA BETA) (s-cup GAMMA DELTA))");
  add("sim_L", RuleKind::Operational, false, T5UP, {"(seq (s-sim ALPHA) GAMMA)"},
      "(seq (simK ALPHA) GAMMA)");
  add("sim_R", RuleKind::Operational, false, T5UP, {"(seq GAMMA (s-sim ALPHA))"},
      "(seq GAMMA (simK ALPHA))");

  // ---- operational rules, type KC ----
  add("oneC_R", RuleKind::Operational, false, ALL, {}, "(seq s-1C 1C)");
  add("oneC_L", RuleKind::Operational, false, ALL, {"(seq s-1C PI)"}, "(seq 1C PI)");
  add("zeroC_L", RuleKind::Operational, false, ALL, {}, "(seq 0C s-0C)");
  add("zeroC_R", RuleKind::Operational, false, ALL, {"(seq PI s-0C)"}, "(seq PI 0C)");
  add("sqcap_L", RuleKind::Operational, false, ALL, {"(seq (s-sqcap XI CHI) PI)"},
      "(seq (sqcap XI CHI) PI)");
  add("sqcap_R", RuleKind::Operational, false, ALL, {"(seq PI XI)", "(seq SIGMA CHI)"},
      "(seq (s-sqcap PI SIGMA) (sqcap XI CHI))");
  add("sqcup_R", RuleKind::Operational, false, ALL, {"(seq PI (s-sqcup XI CHI))"},
      "(seq PI (sqcup XI CHI))");
  add("sqcup_L", RuleKind::Operational, false, ALL, {"(seq XI PI)", "(seq CHI SIGMA)"},
      "(seq (sqcup XI CHI) (s-sqcup PI SIGMA))");
  add("minus_L", RuleKind::Operational, false, T5UP, {"(seq (s-minus XI) PI)"},
      "(seq (minusK XI) PI)");
  add("minus_R", RuleKind::Operational, false, T5UP, {"(seq PI (s-minus XI))"},
      "(seq PI (minusK XI))");

  // ---- operational rules, multi-type ----
  add("diamI_L", RuleKind::Operational, false, ALL, {"(seq (s-diamI A) GAMMA)"},
      "(seq (diamI A) GAMMA)");
  add("diamI_R", RuleKind::Operational, false, ALL, {"(seq X A)"},
      "(seq (s-diamI X) (diamI A))");
  add("boxI_R", RuleKind::Operational, false, ALL, {"(seq GAMMA (s-boxI A))"},
      "(seq GAMMA (boxI A))");
  add("boxI_L", RuleKind::Operational, false, ALL, {"(seq A X)"},
      "(seq (boxI A) (s-boxI X))");
  add("diamC_L", RuleKind::Operational, false, ALL, {"(seq (s-diamC A) PI)"},
      "(seq (diamC A) PI)");
  add("diamC_R", RuleKind::Operational, false, ALL, {"(seq X A)"},
      "(seq (s-diamC X) (diamC A))");
  add("boxC_R", RuleKind::Operational, false, ALL, {"(seq PI (s-boxC A))"},
      "(seq PI (boxC A))");
  add("boxC_L", RuleKind::Operational, false, ALL, {"(seq A X)"},
      "(seq (boxC A) (s-boxC X))");
  add("circI_L", RuleKind::Operational, false, ALL, {"(seq (s-circI ALPHA) X)"},
      "(seq (circI ALPHA) X)");
  add("circI_R", RuleKind::Operational, false, ALL, {"(seq X (s-circI ALPHA))"},
      "(seq X (circI ALPHA))");
  add("circC_L", RuleKind::Operational, false, ALL, {"(seq (s-circC XI) X)"},
      "(seq (circC XI) X)");
  add("circC_R", RuleKind::Operational, false, ALL, {"(seq X (s-circC XI))"},
      "(seq X (circC XI))");

  return cat;
}

const std::map<std::string, std::string>& alias_map() {
  static const std::map<std::string, std::string> aliases = {
      {"pra", "ia3"},
      {"boxI-vee", "boxI-cup"},
  };
  return aliases;
}

}  // namespace

const std::vector<Rule>& rule_catalog() {
  static const std::vector<Rule> cat = build_catalog();
  return cat;
}

std::vector<const Rule*> rule_set(CalculusId c) {
  std::vector<const Rule*> out;
  for (const Rule& r : rule_catalog())
    if (r.in_calculus(c)) out.push_back(&r);
  return out;
}

std::string canonical_rule_name(const std::string& name) {
  auto it = alias_map().find(name);
  return it == alias_map().end() ? name : it->second;
}

std::vector<const Rule*> rules_by_name(CalculusId c, const std::string& name) {
  std::string canon = canonical_rule_name(name);
  std::vector<const Rule*> out;
  for (const Rule& r : rule_catalog())
    if (r.name == canon && r.in_calculus(c)) out.push_back(&r);
  return out;
}

bool rule_name_exists(const std::string& name) {
  std::string canon = canonical_rule_name(name);
  for (const Rule& r : rule_catalog())
    if (r.name == canon) return true;
  return false;
}

std::vector<Subst> match_schema(const Rule& r, const Sequent& concrete) {
  std::vector<Subst> out;
  Subst s;
  if (match_sequent(r.conclusion, concrete, s)) out.push_back(std::move(s));
  return out;
}

std::string export_rules(CalculusId c) {
  std::ostringstream os;
  os << "calculus " << calculus_name(c) << "\n";
  for (const Rule* r : rule_set(c)) {
    os << "rule " << r->name << "  kind=" << rule_kind_name(r->kind)
       << (r->bidirectional ? "  double-line" : "  single-line") << "\n";
    for (const auto& p : r->premises) os << "  premise    " << render(p) << "\n";
    os << "  conclusion " << render(r->conclusion) << "\n";
  }
  return os.str();
}

}  // namespace rp
