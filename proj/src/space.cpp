#include "wonder/space.hpp"

#include <sstream>
#include <stdexcept>

namespace wonder {

PropertyFacts make_facts(Tristate ordinary, Tristate hodge_witt) {
  if (ordinary == Tristate::True && hodge_witt == Tristate::False)
    throw std::invalid_argument(
        "inconsistent facts: ordinary = true forces hodge_witt = true");
  PropertyFacts f;
  f.ordinary = ordinary;
  f.hodge_witt_asserted = (hodge_witt != Tristate::Unknown);
  f.hodge_witt = ordinary == Tristate::True ? Tristate::True : hodge_witt;
  return f;
}

struct SpaceNode {
  SpaceKind kind = SpaceKind::Empty;
  int dim = -1;  // sentinel for Empty

  // Atom
  std::string name;
  PropertyFacts facts;
  std::optional<PoincarePolynomial> poincare;

  // Product / ProjBundle / Blowup children
  Space a;  // left / base / ambient
  Space b;  // right / - / center
  int arg = 0;  // fiber_rank / codim
};

namespace {

std::logic_error kind_error(const char* what) {
  return std::logic_error(std::string("space accessor mismatch: ") + what);
}

}  // namespace

// The empty space is the null handle; every other kind owns a node.
Space::Space() = default;
Space::Space(std::shared_ptr<const SpaceNode> node) : node_(std::move(node)) {}

SpaceKind Space::kind() const { return node_ ? node_->kind : SpaceKind::Empty; }

const void* Space::identity() const { return node_.get(); }

int Space::dim() const {
  if (!node_)
    throw std::invalid_argument("dimension of the empty space is undefined");
  return node_->dim;
}

const std::string& Space::atom_name() const {
  if (kind() != SpaceKind::Atom) throw kind_error("atom_name");
  return node_->name;
}

const PropertyFacts& Space::atom_facts() const {
  if (kind() != SpaceKind::Atom) throw kind_error("atom_facts");
  return node_->facts;
}

const std::optional<PoincarePolynomial>& Space::atom_poincare() const {
  if (kind() != SpaceKind::Atom) throw kind_error("atom_poincare");
  return node_->poincare;
}

const Space& Space::left() const {
  if (kind() != SpaceKind::Product) throw kind_error("left");
  return node_->a;
}

const Space& Space::right() const {
  if (kind() != SpaceKind::Product) throw kind_error("right");
  return node_->b;
}

const Space& Space::base() const {
  if (kind() != SpaceKind::ProjBundle) throw kind_error("base");
  return node_->a;
}

int Space::fiber_rank() const {
  if (kind() != SpaceKind::ProjBundle) throw kind_error("fiber_rank");
  return node_->arg;
}

const Space& Space::ambient() const {
  if (kind() != SpaceKind::Blowup) throw kind_error("ambient");
  return node_->a;
}

const Space& Space::center() const {
  if (kind() != SpaceKind::Blowup) throw kind_error("center");
  return node_->b;
}

int Space::codim() const {
  if (kind() != SpaceKind::Blowup) throw kind_error("codim");
  return node_->arg;
}

bool Space::operator==(const Space& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;  // exactly one of them is empty
  if (node_->kind != o.node_->kind || node_->dim != o.node_->dim) return false;
  switch (node_->kind) {
    case SpaceKind::Empty:
    case SpaceKind::Point:
      return true;
    case SpaceKind::Atom:
      return node_->name == o.node_->name && node_->facts == o.node_->facts &&
             node_->poincare == o.node_->poincare;
    case SpaceKind::Product:
      return node_->a == o.node_->a && node_->b == o.node_->b;
    case SpaceKind::ProjBundle:
      return node_->arg == o.node_->arg && node_->a == o.node_->a;
    case SpaceKind::Blowup:
      return node_->arg == o.node_->arg && node_->a == o.node_->a &&
             node_->b == o.node_->b;
  }
  return false;
}

Space empty_space() { return Space(); }

Space point() {
  auto n = std::make_shared<SpaceNode>();
  n->kind = SpaceKind::Point;
  n->dim = 0;
  return Space(std::move(n));
}

Space atom(std::string name, int dim, Tristate ordinary, Tristate hodge_witt,
           std::optional<PoincarePolynomial> poincare) {
  if (name.empty()) throw std::invalid_argument("atom: empty name");
  if (dim < 0) throw std::invalid_argument("atom: negative dimension");
  if (poincare) {
    if (poincare->degree() > 2 * dim)
      throw std::invalid_argument("atom " + name +
                                  ": poincare degree exceeds 2*dim");
    if (poincare->coeff(0) != 1)
      throw std::invalid_argument("atom " + name +
                                  ": poincare constant coefficient must be 1");
  }
  auto n = std::make_shared<SpaceNode>();
  n->kind = SpaceKind::Atom;
  n->dim = dim;
  n->name = std::move(name);
  n->facts = make_facts(ordinary, hodge_witt);
  n->poincare = std::move(poincare);
  return Space(std::move(n));
}

Space projective_space(int d) {
  if (d < 0) throw std::invalid_argument("projective_space: negative dimension");
  return atom("P" + std::to_string(d), d, Tristate::True, Tristate::True,
              PoincarePolynomial::projective(d + 1));
}

Space product(const Space& a, const Space& b) {
  if (a.is_empty() || b.is_empty())
    throw std::invalid_argument("product: empty operand");
  auto n = std::make_shared<SpaceNode>();
  n->kind = SpaceKind::Product;
  n->dim = a.dim() + b.dim();
  n->a = a;
  n->b = b;
  return Space(std::move(n));
}

Space proj_bundle(const Space& base, int fiber_rank) {
  if (base.is_empty()) throw std::invalid_argument("proj_bundle: empty base");
  if (fiber_rank < 1)
    throw std::invalid_argument("proj_bundle: fiber_rank must be >= 1");
  auto n = std::make_shared<SpaceNode>();
  n->kind = SpaceKind::ProjBundle;
  n->dim = base.dim() + fiber_rank - 1;
  n->a = base;
  n->arg = fiber_rank;
  return Space(std::move(n));
}

Space blow_up(const Space& ambient, const Space& center, int codim) {
  if (ambient.is_empty()) throw std::invalid_argument("blow_up: empty ambient");
  if (center.is_empty()) return ambient;  // identity, not an error
  if (codim < 1) throw std::invalid_argument("blow_up: codim must be >= 1");
  if (center.dim() + codim != ambient.dim()) {
    std::ostringstream msg;
    msg << "blow_up: dimension mismatch, dim(center) + codim = "
        << center.dim() + codim << " but dim(ambient) = " << ambient.dim();
    throw std::invalid_argument(msg.str());
  }
  auto n = std::make_shared<SpaceNode>();
  n->kind = SpaceKind::Blowup;
  n->dim = ambient.dim();
  n->a = ambient;
  n->b = center;
  n->arg = codim;
  return Space(std::move(n));
}

bool is_divisorial(const Space& s) {
  return s.kind() == SpaceKind::Blowup && s.codim() == 1;
}

std::string to_text(const Space& s) {
  switch (s.kind()) {
    case SpaceKind::Empty: return "(empty)";
    case SpaceKind::Point: return "pt";
    case SpaceKind::Atom: return s.atom_name();
    case SpaceKind::Product:
      return "(" + to_text(s.left()) + " x " + to_text(s.right()) + ")";
    case SpaceKind::ProjBundle:
      return "P(" + to_text(s.base()) + ", " + std::to_string(s.fiber_rank()) + ")";
    case SpaceKind::Blowup:
      return "Bl(" + to_text(s.ambient()) + ", " + to_text(s.center()) + ", " +
             std::to_string(s.codim()) + ")";
  }
  return "?";
}

namespace {

void collect_atoms(const Space& s, std::set<std::string>& out) {
  switch (s.kind()) {
    case SpaceKind::Atom: out.insert(s.atom_name()); break;
    case SpaceKind::Product:
      collect_atoms(s.left(), out);
      collect_atoms(s.right(), out);
      break;
    case SpaceKind::ProjBundle: collect_atoms(s.base(), out); break;
    case SpaceKind::Blowup:
      collect_atoms(s.ambient(), out);
      collect_atoms(s.center(), out);
      break;
    default: break;
  }
}

}  // namespace

std::set<std::string> atom_names(const Space& s) {
  std::set<std::string> out;
  collect_atoms(s, out);
  return out;
}

Space apply_fact_overrides(const Space& s,
                           const std::map<std::string, FactOverride>& overrides) {
  switch (s.kind()) {
    case SpaceKind::Empty:
    case SpaceKind::Point:
      return s;
    case SpaceKind::Atom: {
      auto it = overrides.find(s.atom_name());
      if (it == overrides.end()) return s;
      const PropertyFacts& f = s.atom_facts();
      // Recover the raw assertions, then override and re-normalize.
      Tristate raw_hw = f.hodge_witt_asserted ? f.hodge_witt : Tristate::Unknown;
      Tristate ord = it->second.ordinary.value_or(f.ordinary);
      Tristate hw = it->second.hodge_witt.value_or(raw_hw);
      return atom(s.atom_name(), s.dim(), ord, hw, s.atom_poincare());
    }
    case SpaceKind::Product:
      return product(apply_fact_overrides(s.left(), overrides),
                     apply_fact_overrides(s.right(), overrides));
    case SpaceKind::ProjBundle:
      return proj_bundle(apply_fact_overrides(s.base(), overrides), s.fiber_rank());
    case SpaceKind::Blowup:
      return blow_up(apply_fact_overrides(s.ambient(), overrides),
                     apply_fact_overrides(s.center(), overrides), s.codim());
  }
  return s;
}

}  // namespace wonder
