#include "wonder/blowup.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wonder {

std::string_view to_string(TransformCase c) {
  switch (c) {
    case TransformCase::Equal: return "equal";
    case TransformCase::Pullback: return "pullback";
    case TransformCase::Disjoint: return "disjoint";
    case TransformCase::Strict: return "strict";
  }
  return "?";
}

TransformCase transform_case_from_string(std::string_view s) {
  if (s == "equal") return TransformCase::Equal;
  if (s == "pullback") return TransformCase::Pullback;
  if (s == "disjoint") return TransformCase::Disjoint;
  if (s == "strict") return TransformCase::Strict;
  throw std::invalid_argument("not a transform case: " + std::string(s));
}

StageState initial_state(const BuildingSet& bs, std::vector<ElementId> order) {
  StageState st;
  st.stage = 0;
  st.ambient = bs.arrangement.ambient();
  for (const auto& [id, e] : bs.arrangement.elements()) {
    StageElement se;
    se.id = id;
    se.space = e.space;
    se.dim = e.dim;
    se.origin_chain = {{0, id}};
    st.elements.emplace(id, std::move(se));
  }
  st.meet = bs.arrangement.table();
  st.pending = std::move(order);
  return st;
}

StageElement dominant_transform(const StageElement& y, const StageElement& z,
                                const Space& ambient, const MeetTable& meet,
                                const std::map<ElementId, StageElement>& elements) {
  StageElement out;
  out.id = y.id;
  out.origin_chain = y.origin_chain;
  const int codim_z = ambient.dim() - z.dim;

  if (y.id == z.id) {
    out.tcase = TransformCase::Equal;  // the exceptional divisor
    out.space = proj_bundle(z.space, codim_z);
  } else {
    auto m = table_meet(meet, y.id, z.id);
    if (!m) {
      out.tcase = TransformCase::Disjoint;
      out.space = y.space;
    } else if (*m == y.id) {
      out.tcase = TransformCase::Pullback;  // y strictly inside the center
      out.space = proj_bundle(y.space, codim_z);
    } else {
      const StageElement& w = elements.at(*m);
      int inner_codim = y.dim - w.dim;
      if (inner_codim < 1)
        throw std::invalid_argument("dominant transform of " + y.id +
                                    ": meet with " + z.id +
                                    " does not drop dimension");
      out.tcase = TransformCase::Strict;
      out.space = blow_up(y.space, w.space, inner_codim);
    }
  }
  out.dim = out.space.dim();
  return out;
}

StageState blowup_step(const StageState& prev, const ElementId& center_id) {
  auto pend = std::find(prev.pending.begin(), prev.pending.end(), center_id);
  if (pend == prev.pending.end())
    throw std::invalid_argument("center " + center_id +
                                " is not a pending building-set member");
  for (const ElementId& m : prev.pending)
    if (m != center_id && table_leq(prev.meet, m, center_id))
      throw std::invalid_argument("out-of-order center " + center_id +
                                  ": pending member " + m +
                                  " is strictly contained in it");

  const StageElement& z = prev.elements.at(center_id);
  const int codim_z = prev.ambient.dim() - z.dim;

  StageState next;
  next.stage = prev.stage + 1;
  next.ambient = blow_up(prev.ambient, z.space, codim_z);

  for (const auto& [id, y] : prev.elements) {
    StageElement t = dominant_transform(y, z, prev.ambient, prev.meet, prev.elements);
    t.origin_chain.insert(t.origin_chain.begin(), {next.stage, id});
    next.elements.emplace(id, std::move(t));
  }

  auto leq_prev = [&](const ElementId& a, const ElementId& b) {
    return table_leq(prev.meet, a, b);
  };
  for (const auto& [pair, w] : prev.meet) {
    const auto& [a, b] = pair;
    if (!w) {
      next.meet[pair] = std::nullopt;
      continue;
    }
    // Strict transforms separate over the blown-up locus. Entries that
    // survive point at the meet's transform; the induced table is
    // bookkeeping for the certifier (which only reads emptiness and
    // identity from it), not a dimension-consistent lattice.
    if (leq_prev(*w, center_id) && !leq_prev(a, center_id) &&
        !leq_prev(b, center_id)) {
      next.meet[pair] = std::nullopt;
      continue;
    }
    next.meet[pair] = w;
  }

  next.pending.reserve(prev.pending.size() - 1);
  for (const ElementId& m : prev.pending)
    if (m != center_id) next.pending.push_back(m);
  return next;
}

BlowupTrace wonderful(const BuildingSet& bs) {
  ValidationReport report = is_building_set(bs.arrangement, bs.members);
  if (!report.valid) {
    std::ostringstream msg;
    msg << "invalid building set:";
    for (const ValidationCheck* v : report.violations())
      msg << " [" << v->element << ": " << v->detail << "]";
    throw std::invalid_argument(msg.str());
  }

  BlowupTrace trace;
  trace.building_set = bs;
  trace.order = inclusion_order(bs);

  StageState state = initial_state(bs, trace.order);
  for (const ElementId& center : trace.order) {
    int codim = state.ambient.dim() - state.elements.at(center).dim;
    state = blowup_step(state, center);
    TraceStage stage;
    stage.center_id = center;
    stage.center_codim = codim;
    stage.ambient = state.ambient;
    stage.elements = state.elements;
    stage.meet = state.meet;
    trace.stages.push_back(std::move(stage));
  }
  trace.final_space = state.ambient;
  return trace;
}

BlowupTrace wonderful(const Space& ambient, const BuildingSet& bs) {
  if (!(ambient == bs.arrangement.ambient()))
    throw std::invalid_argument(
        "wonderful: ambient does not match the building set's arrangement");
  return wonderful(bs);
}

}  // namespace wonder
