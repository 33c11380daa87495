#include "wonder/certify.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "wonder/errors.hpp"

namespace wonder {

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::AtomFact: return "ATOM_FACT";
    case Rule::EmptyOrdinary: return "EMPTY_ORDINARY";
    case Rule::PointOrdinary: return "POINT_ORDINARY";
    case Rule::EkedahlProduct: return "EKEDAHL_PRODUCT";
    case Rule::IllusieProjBundle: return "ILLUSIE_PROJ_BUNDLE";
    case Rule::IllusieBlowup: return "ILLUSIE_BLOWUP";
    case Rule::DominantTransform: return "DOMINANT_TRANSFORM";
    case Rule::OrdImpliesHw: return "ORD_IMPLIES_HW";
    case Rule::MainTheorem: return "MAIN_THEOREM";
    case Rule::OrdinaryBuildingSet: return "ORDINARY_BUILDING_SET";
  }
  return "?";
}

Rule rule_from_string(std::string_view s) {
  static const std::map<std::string_view, Rule> table = {
      {"ATOM_FACT", Rule::AtomFact},
      {"EMPTY_ORDINARY", Rule::EmptyOrdinary},
      {"POINT_ORDINARY", Rule::PointOrdinary},
      {"EKEDAHL_PRODUCT", Rule::EkedahlProduct},
      {"ILLUSIE_PROJ_BUNDLE", Rule::IllusieProjBundle},
      {"ILLUSIE_BLOWUP", Rule::IllusieBlowup},
      {"DOMINANT_TRANSFORM", Rule::DominantTransform},
      {"ORD_IMPLIES_HW", Rule::OrdImpliesHw},
      {"MAIN_THEOREM", Rule::MainTheorem},
      {"ORDINARY_BUILDING_SET", Rule::OrdinaryBuildingSet},
  };
  auto it = table.find(s);
  if (it == table.end()) throw std::invalid_argument("not a rule: " + std::string(s));
  return it->second;
}

std::string_view to_string(Property p) {
  return p == Property::Ordinary ? "ordinary" : "hodge_witt";
}

Property property_from_string(std::string_view s) {
  if (s == "ordinary") return Property::Ordinary;
  if (s == "hodge_witt") return Property::HodgeWitt;
  throw std::invalid_argument("not a property: " + std::string(s));
}

std::string subject_text(const Subject& s) {
  if (const Space* sp = std::get_if<Space>(&s)) return to_text(*sp);
  if (const BuildingSetRef* b = std::get_if<BuildingSetRef>(&s)) {
    std::ostringstream out;
    out << "building set of " << to_text(b->ambient) << " with " << b->members.size()
        << " members";
    return out.str();
  }
  const TraceRef& t = std::get<TraceRef>(s);
  std::ostringstream out;
  out << "wonderful compactification " << to_text(t.final_space) << " ("
      << t.stage_count << " stages)";
  return out.str();
}

Tristate eval_ekedahl_product(Tristate ord_l, Tristate hw_l, Tristate ord_r,
                              Tristate hw_r) {
  return or3(and3(ord_l, hw_r), and3(ord_r, hw_l));
}

Tristate eval_illusie_blowup(Tristate ord_ambient, Tristate ord_center) {
  return and3(ord_ambient, ord_center);
}

Tristate eval_illusie_proj_bundle(Tristate ord_base) { return ord_base; }

Tristate eval_ord_implies_hw(Tristate ordinary) {
  return ordinary == Tristate::True ? Tristate::True : Tristate::Unknown;
}

Tristate eval_dominant_transform(Tristate ord_prev, Tristate ord_meet) {
  return and3(ord_prev, ord_meet);
}

Tristate eval_conjunction(const std::vector<Tristate>& vs) {
  Tristate acc = Tristate::True;
  for (Tristate v : vs) acc = and3(acc, v);
  return acc;
}

namespace {

CertPtr make_cert(Claim claim, Rule rule, std::vector<CertPtr> premises,
                  std::optional<TransformCase> dt_case = std::nullopt) {
  auto c = std::make_shared<Certificate>();
  c->claim = std::move(claim);
  c->rule = rule;
  c->dt_case = dt_case;
  c->premises = std::move(premises);
  return c;
}

// Memoizes on node identity so shared subexpressions certify once.
struct CertContext {
  std::map<std::pair<const void*, Property>, CertPtr> memo;

  CertPtr space(const Space& s, Property p);
};

CertPtr CertContext::space(const Space& s, Property p) {
  auto memo_key = std::make_pair(static_cast<const void*>(nullptr), p);
  // Identity-based memoization is an optimization only; structurally
  // equal nodes that are not shared just certify twice.
  memo_key.first = s.identity();
  if (auto it = memo.find(memo_key); it != memo.end()) return it->second;

  CertPtr result;
  if (p == Property::HodgeWitt) {
    if (s.kind() == SpaceKind::Atom && s.atom_facts().hodge_witt_asserted) {
      result = make_cert({Subject(s), p, s.atom_facts().hodge_witt},
                         Rule::AtomFact, {});
    } else {
      CertPtr ord = space(s, Property::Ordinary);
      result = make_cert({Subject(s), p, eval_ord_implies_hw(ord->claim.verdict)},
                         Rule::OrdImpliesHw, {ord});
    }
  } else {
    switch (s.kind()) {
      case SpaceKind::Empty:
        result = make_cert({Subject(s), p, Tristate::True}, Rule::EmptyOrdinary, {});
        break;
      case SpaceKind::Point:
        result = make_cert({Subject(s), p, Tristate::True}, Rule::PointOrdinary, {});
        break;
      case SpaceKind::Atom:
        result = make_cert({Subject(s), p, s.atom_facts().ordinary},
                           Rule::AtomFact, {});
        break;
      case SpaceKind::Product: {
        CertPtr ol = space(s.left(), Property::Ordinary);
        CertPtr hl = space(s.left(), Property::HodgeWitt);
        CertPtr orr = space(s.right(), Property::Ordinary);
        CertPtr hr = space(s.right(), Property::HodgeWitt);
        Tristate v = eval_ekedahl_product(ol->claim.verdict, hl->claim.verdict,
                                          orr->claim.verdict, hr->claim.verdict);
        result = make_cert({Subject(s), p, v}, Rule::EkedahlProduct,
                           {ol, hl, orr, hr});
        break;
      }
      case SpaceKind::ProjBundle: {
        CertPtr base = space(s.base(), Property::Ordinary);
        result = make_cert(
            {Subject(s), p, eval_illusie_proj_bundle(base->claim.verdict)},
            Rule::IllusieProjBundle, {base});
        break;
      }
      case SpaceKind::Blowup: {
        if (s.codim() == 1) {
          // Divisorial blowups are isomorphisms (rank-1 bundles over the
          // pre-blowup space); the center does not enter.
          CertPtr amb = space(s.ambient(), Property::Ordinary);
          result = make_cert(
              {Subject(s), p, eval_illusie_proj_bundle(amb->claim.verdict)},
              Rule::IllusieProjBundle, {amb});
        } else {
          CertPtr amb = space(s.ambient(), Property::Ordinary);
          CertPtr ctr = space(s.center(), Property::Ordinary);
          Tristate v = eval_illusie_blowup(amb->claim.verdict, ctr->claim.verdict);
          result = make_cert({Subject(s), p, v}, Rule::IllusieBlowup, {amb, ctr});
        }
        break;
      }
    }
  }
  memo.emplace(memo_key, result);
  return result;
}

}  // namespace

CertPtr certify_space(const Space& s, Property property) {
  CertContext ctx;
  return ctx.space(s, property);
}

CertPtr certify_building_set(const BuildingSet& bs) {
  CertContext ctx;
  std::vector<CertPtr> premises;
  premises.push_back(ctx.space(bs.arrangement.ambient(), Property::Ordinary));
  for (const ElementId& id : meet_closure(bs.arrangement, bs.members))
    premises.push_back(
        ctx.space(bs.arrangement.at(id).space, Property::Ordinary));
  std::vector<Tristate> vs;
  vs.reserve(premises.size());
  for (const CertPtr& p : premises) vs.push_back(p->claim.verdict);
  BuildingSetRef ref{bs.arrangement.ambient(), bs.members};
  return make_cert({Subject(std::move(ref)), Property::Ordinary, eval_conjunction(vs)},
                   Rule::OrdinaryBuildingSet, std::move(premises));
}

CertPtr certify_wonderful(const BlowupTrace& trace) {
  CertPtr bset = certify_building_set(trace.building_set);
  TraceRef ref{trace.final_space, trace.stages.size()};
  return make_cert({Subject(std::move(ref)), Property::Ordinary, bset->claim.verdict},
                   Rule::MainTheorem, {bset});
}

CertPtr certify_trace(const BlowupTrace& trace) {
  CertContext ctx;

  // Stage-0 claims are structural certificates of the original data.
  std::map<ElementId, CertPtr> prev_claims;
  for (const auto& [id, e] : trace.building_set.arrangement.elements())
    prev_claims.emplace(id, ctx.space(e.space, Property::Ordinary));
  CertPtr ambient_claim = ctx.space(trace.initial_space(), Property::Ordinary);

  const MeetTable* prev_meet = &trace.building_set.arrangement.table();
  for (size_t k = 0; k < trace.stages.size(); ++k) {
    const TraceStage& stage = trace.stages[k];
    auto center_claim_it = prev_claims.find(stage.center_id);
    if (center_claim_it == prev_claims.end())
      throw std::invalid_argument("malformed trace: unknown center " +
                                  stage.center_id);
    CertPtr center_claim = center_claim_it->second;

    std::map<ElementId, CertPtr> claims;
    for (const auto& [id, element] : stage.elements) {
      auto y_it = prev_claims.find(id);
      if (y_it == prev_claims.end())
        throw std::invalid_argument("malformed trace: element " + id +
                                    " appears mid-trace");
      CertPtr y_prev = y_it->second;
      auto w = table_meet(*prev_meet, id, stage.center_id);
      CertPtr meet_claim =
          w ? prev_claims.at(*w)
            : make_cert({Subject(empty_space()), Property::Ordinary, Tristate::True},
                        Rule::EmptyOrdinary, {});
      Tristate v =
          eval_dominant_transform(y_prev->claim.verdict, meet_claim->claim.verdict);
      claims.emplace(
          id, make_cert({Subject(element.space), Property::Ordinary, v},
                        Rule::DominantTransform, {y_prev, meet_claim},
                        element.tcase));
    }

    Tristate v = eval_illusie_blowup(ambient_claim->claim.verdict,
                                     center_claim->claim.verdict);
    ambient_claim = make_cert({Subject(stage.ambient), Property::Ordinary, v},
                              Rule::IllusieBlowup, {ambient_claim, center_claim});
    prev_claims = std::move(claims);
    prev_meet = &stage.meet;
  }
  return ambient_claim;
}

namespace {

void collect_blocking(const Certificate& cert, std::set<const Certificate*>& seen,
                      std::set<std::string>& out) {
  if (cert.claim.verdict != Tristate::Unknown) return;
  if (!seen.insert(&cert).second) return;
  const Space* sp = std::get_if<Space>(&cert.claim.subject);
  if (cert.rule == Rule::AtomFact && sp && sp->kind() == SpaceKind::Atom) {
    out.insert(sp->atom_name());
    return;
  }
  // An undetermined Hodge-Witt status on an atom blocks even when the
  // ordinarity premise is settled False.
  if (cert.rule == Rule::OrdImpliesHw && sp && sp->kind() == SpaceKind::Atom)
    out.insert(sp->atom_name());
  for (const CertPtr& p : cert.premises) collect_blocking(*p, seen, out);
}

}  // namespace

std::set<std::string> blocking_atoms(const Certificate& cert) {
  std::set<const Certificate*> seen;
  std::set<std::string> out;
  collect_blocking(cert, seen, out);
  return out;
}

namespace {

constexpr size_t kMaxRenderNodes = 200000;

void render(const Certificate& cert, std::ostream& out, int depth, size_t& budget) {
  if (budget-- == 0)
    throw UnsupportedRangeError(
        "certificate too large to render expanded; rebuild with a smaller instance");
  for (int i = 0; i < depth; ++i) out << "  ";
  out << "[" << to_string(cert.rule);
  if (cert.dt_case) out << "/" << to_string(*cert.dt_case);
  out << "] " << to_string(cert.claim.property) << "("
      << subject_text(cert.claim.subject) << ") => " << to_string(cert.claim.verdict);
  if (cert.rule == Rule::AtomFact) out << "  (asserted fact)";
  if (cert.rule == Rule::EmptyOrdinary)
    out << "  (the empty scheme is ordinary by convention)";
  if (cert.rule == Rule::PointOrdinary)
    out << "  (a point is ordinary by convention)";
  out << "\n";
  for (const CertPtr& p : cert.premises) render(*p, out, depth + 1, budget);
}

}  // namespace

std::string explain_text(const Certificate& cert) {
  std::ostringstream out;
  out << "verdict: " << to_string(cert.claim.verdict) << "\n";
  if (cert.claim.verdict == Tristate::Unknown) {
    out << "blocked by:";
    for (const std::string& name : blocking_atoms(cert)) out << " " << name;
    out << "\n";
  }
  size_t budget = kMaxRenderNodes;
  render(cert, out, 0, budget);
  return out.str();
}

namespace {

struct Checker {
  CheckReport report;
  std::set<const Certificate*> seen;

  void issue(const Certificate& c, const std::string& what) {
    report.ok = false;
    report.issues.push_back("[" + std::string(to_string(c.rule)) + " " +
                            subject_text(c.claim.subject) + "] " + what);
  }

  const Space* space_subject(const Certificate& c) {
    return std::get_if<Space>(&c.claim.subject);
  }

  void expect_premise_property(const Certificate& c, size_t i, Property p) {
    if (i < c.premises.size() && c.premises[i]->claim.property != p)
      issue(c, "premise " + std::to_string(i) + " should claim " +
                   std::string(to_string(p)));
  }

  void check(const Certificate& c) {
    if (!seen.insert(&c).second) return;
    for (const CertPtr& p : c.premises) {
      if (!p) { issue(c, "null premise"); continue; }
      check(*p);
    }

    const bool leaf_rule = c.rule == Rule::AtomFact ||
                           c.rule == Rule::EmptyOrdinary ||
                           c.rule == Rule::PointOrdinary;
    if (leaf_rule != c.premises.empty()) {
      issue(c, leaf_rule ? "leaf rule with premises" : "non-leaf rule without premises");
      return;
    }

    auto premise_verdict = [&](size_t i) { return c.premises[i]->claim.verdict; };

    switch (c.rule) {
      case Rule::AtomFact: {
        const Space* s = space_subject(c);
        if (!s || s->kind() != SpaceKind::Atom) { issue(c, "subject is not an atom"); break; }
        const PropertyFacts& f = s->atom_facts();
        if (c.claim.property == Property::HodgeWitt && !f.hodge_witt_asserted)
          issue(c, "hodge_witt fact was not directly asserted on this atom");
        Tristate expect = c.claim.property == Property::Ordinary ? f.ordinary
                                                                 : f.hodge_witt;
        if (c.claim.verdict != expect) issue(c, "verdict disagrees with the atom's fact");
        break;
      }
      case Rule::EmptyOrdinary: {
        const Space* s = space_subject(c);
        if (!s || !s->is_empty()) issue(c, "subject is not the empty space");
        if (c.claim.verdict != Tristate::True) issue(c, "verdict must be true");
        break;
      }
      case Rule::PointOrdinary: {
        const Space* s = space_subject(c);
        if (!s || s->kind() != SpaceKind::Point) issue(c, "subject is not a point");
        if (c.claim.verdict != Tristate::True) issue(c, "verdict must be true");
        break;
      }
      case Rule::EkedahlProduct: {
        if (c.premises.size() != 4) { issue(c, "needs 4 premises"); break; }
        const Space* s = space_subject(c);
        if (!s || s->kind() != SpaceKind::Product) { issue(c, "subject is not a product"); break; }
        expect_premise_property(c, 0, Property::Ordinary);
        expect_premise_property(c, 1, Property::HodgeWitt);
        expect_premise_property(c, 2, Property::Ordinary);
        expect_premise_property(c, 3, Property::HodgeWitt);
        const Space* sides[4] = {&s->left(), &s->left(), &s->right(), &s->right()};
        for (size_t i = 0; i < 4; ++i) {
          const Space* ps = std::get_if<Space>(&c.premises[i]->claim.subject);
          if (!ps || !(*ps == *sides[i]))
            issue(c, "premise " + std::to_string(i) + " is not about the matching factor");
        }
        Tristate v = eval_ekedahl_product(premise_verdict(0), premise_verdict(1),
                                          premise_verdict(2), premise_verdict(3));
        if (c.claim.verdict != v) issue(c, "verdict does not recompute");
        break;
      }
      case Rule::IllusieProjBundle: {
        if (c.premises.size() != 1) { issue(c, "needs 1 premise"); break; }
        const Space* s = space_subject(c);
        const Space* expected = nullptr;
        if (s && s->kind() == SpaceKind::ProjBundle) expected = &s->base();
        else if (s && s->kind() == SpaceKind::Blowup && s->codim() == 1)
          expected = &s->ambient();  // divisorial blowup, an isomorphism
        else issue(c, "subject is neither a bundle nor a divisorial blowup");
        expect_premise_property(c, 0, Property::Ordinary);
        if (expected) {
          const Space* ps = std::get_if<Space>(&c.premises[0]->claim.subject);
          if (!ps || !(*ps == *expected)) issue(c, "premise is not about the base");
        }
        if (c.claim.verdict != eval_illusie_proj_bundle(premise_verdict(0)))
          issue(c, "verdict does not recompute");
        break;
      }
      case Rule::IllusieBlowup: {
        if (c.premises.size() != 2) { issue(c, "needs 2 premises"); break; }
        const Space* s = space_subject(c);
        if (!s || s->kind() != SpaceKind::Blowup) { issue(c, "subject is not a blowup"); break; }
        expect_premise_property(c, 0, Property::Ordinary);
        expect_premise_property(c, 1, Property::Ordinary);
        const Space* pa = std::get_if<Space>(&c.premises[0]->claim.subject);
        const Space* pc = std::get_if<Space>(&c.premises[1]->claim.subject);
        if (!pa || !(*pa == s->ambient())) issue(c, "premise 0 is not about the ambient");
        if (!pc || !(*pc == s->center())) issue(c, "premise 1 is not about the center");
        if (c.claim.verdict != eval_illusie_blowup(premise_verdict(0), premise_verdict(1)))
          issue(c, "verdict does not recompute");
        break;
      }
      case Rule::DominantTransform: {
        if (c.premises.size() != 2) { issue(c, "needs 2 premises"); break; }
        if (!c.dt_case) issue(c, "missing transform case");
        expect_premise_property(c, 0, Property::Ordinary);
        expect_premise_property(c, 1, Property::Ordinary);
        if (c.claim.verdict !=
            eval_dominant_transform(premise_verdict(0), premise_verdict(1)))
          issue(c, "verdict does not recompute");
        break;
      }
      case Rule::OrdImpliesHw: {
        if (c.premises.size() != 1) { issue(c, "needs 1 premise"); break; }
        if (c.claim.property != Property::HodgeWitt)
          issue(c, "conclusion must claim hodge_witt");
        expect_premise_property(c, 0, Property::Ordinary);
        const Space* s = space_subject(c);
        const Space* ps = std::get_if<Space>(&c.premises[0]->claim.subject);
        if (!s || !ps || !(*s == *ps)) issue(c, "premise must be about the same space");
        if (s && s->kind() == SpaceKind::Atom && s->atom_facts().hodge_witt_asserted)
          issue(c, "hodge_witt was directly asserted; the implication must not be used");
        if (c.claim.verdict != eval_ord_implies_hw(premise_verdict(0)))
          issue(c, "verdict does not recompute");
        break;
      }
      case Rule::MainTheorem: {
        if (c.premises.size() != 1) { issue(c, "needs 1 premise"); break; }
        if (c.premises[0]->rule != Rule::OrdinaryBuildingSet)
          issue(c, "premise must be a building-set certificate");
        if (!std::holds_alternative<TraceRef>(c.claim.subject))
          issue(c, "subject must reference a trace");
        if (c.claim.verdict != premise_verdict(0)) issue(c, "verdict does not recompute");
        break;
      }
      case Rule::OrdinaryBuildingSet: {
        if (c.premises.empty()) { issue(c, "needs premises"); break; }
        const BuildingSetRef* ref = std::get_if<BuildingSetRef>(&c.claim.subject);
        if (!ref) { issue(c, "subject must reference a building set"); break; }
        std::vector<Tristate> vs;
        for (size_t i = 0; i < c.premises.size(); ++i) {
          expect_premise_property(c, i, Property::Ordinary);
          vs.push_back(premise_verdict(i));
        }
        const Space* first = std::get_if<Space>(&c.premises[0]->claim.subject);
        if (!first || !(*first == ref->ambient))
          issue(c, "premise 0 must be about the ambient");
        if (c.claim.verdict != eval_conjunction(vs)) issue(c, "verdict does not recompute");
        break;
      }
    }
  }
};

}  // namespace

CheckReport verify_certificate(const Certificate& cert) {
  Checker checker;
  checker.check(cert);
  return std::move(checker.report);
}

}  // namespace wonder
