#include "etameta/engine.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace etameta {

__extension__ typedef unsigned __int128 u128;

namespace {

void require_member(const FiniteGroupView& view, Element g) {
  if (!view.contains(g))
    throw Error(ErrorKind::ForeignHandle, "handle " + std::to_string(g) +
                                              " is not an element of " + view.describe() +
                                              " (order " + std::to_string(view.order()) + ")");
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

void check_budget(std::uint64_t order, std::uint64_t budget, const std::string& what) {
  if (order > budget)
    throw Error(ErrorKind::BudgetExceeded, what + " has order " + std::to_string(order) +
                                               ", above the enumeration budget " +
                                               std::to_string(budget));
}

Element power_unchecked(const FiniteGroupView& view, Element g, std::uint64_t n) noexcept {
  Element result = view.identity();
  Element base = g;
  while (n > 0) {
    if (n & 1u) result = view.multiply_unchecked(result, base);
    n >>= 1u;
    if (n > 0) base = view.multiply_unchecked(base, base);
  }
  return result;
}

std::uint64_t order_unchecked(const FiniteGroupView& view, Element g) noexcept {
  const auto p = static_cast<std::uint64_t>(view.prime());
  std::uint64_t n = 1;
  for (Element h = g; h != view.identity(); h = power_unchecked(view, h, p)) n *= p;
  return n;
}

}  // namespace

Element multiply(const FiniteGroupView& view, Element g, Element h) {
  require_member(view, g);
  require_member(view, h);
  return view.multiply_unchecked(g, h);
}

Element inverse(const FiniteGroupView& view, Element g) {
  require_member(view, g);
  return view.inverse_unchecked(g);
}

Element power(const FiniteGroupView& view, Element g, std::int64_t n) {
  require_member(view, g);
  if (n < 0) {
    // -(n + 1) + 1 avoids overflow at INT64_MIN.
    const auto magnitude = static_cast<std::uint64_t>(-(n + 1)) + 1;
    return power_unchecked(view, view.inverse_unchecked(g), magnitude);
  }
  return power_unchecked(view, g, static_cast<std::uint64_t>(n));
}

Element conjugate(const FiniteGroupView& view, Element g, Element h) {
  require_member(view, g);
  require_member(view, h);
  return view.multiply_unchecked(view.multiply_unchecked(view.inverse_unchecked(h), g), h);
}

std::uint64_t element_order(const FiniteGroupView& view, Element g) {
  require_member(view, g);
  return order_unchecked(view, g);
}

// ---------------------------------------------------------------------------
// MetacyclicView

MetacyclicView::MetacyclicView(const GroupParams& params)
    : params_(params),
      mod_a_(params.p_pow_alpha()),
      mod_b_(params.p_pow_beta()),
      carry_(*checked_pow(static_cast<std::uint64_t>(params.p()),
                          static_cast<unsigned>(params.alpha() - params.epsilon())) %
             params.p_pow_alpha()),
      order_(group_order(params)) {
  r_powers_.resize(mod_b_);
  std::uint64_t acc = 1 % mod_a_;
  for (std::uint64_t b = 0; b < mod_b_; ++b) {
    r_powers_[b] = acc;
    acc = mul_mod(acc, params.r(), mod_a_);
  }
  generators_ = {x(), y()};
}

Element MetacyclicView::multiply_unchecked(Element g, Element h) const noexcept {
  const std::uint64_t a1 = g % mod_a_, b1 = g / mod_a_;
  const std::uint64_t a2 = h % mod_a_, b2 = h / mod_a_;
  std::uint64_t b = b1 + b2;
  std::uint64_t a = (mul_mod(a1, r_powers_[b2], mod_a_) + a2) % mod_a_;
  if (b >= mod_b_) {
    b -= mod_b_;
    a = (a + carry_) % mod_a_;
  }
  return a + mod_a_ * b;
}

Element MetacyclicView::inverse_unchecked(Element g) const noexcept {
  // (y^b x^a)(y^b' x^a') = 1 with b' = -b mod p^beta forces
  // a' = -(a r^b' + carry * [b > 0]).
  const std::uint64_t a = g % mod_a_, b = g / mod_a_;
  const std::uint64_t b_inv = (mod_b_ - b) % mod_b_;
  std::uint64_t t = mul_mod(a, r_powers_[b_inv], mod_a_);
  if (b > 0) t = (t + carry_) % mod_a_;
  const std::uint64_t a_inv = (mod_a_ - t) % mod_a_;
  return a_inv + mod_a_ * b_inv;
}

Element MetacyclicView::element(std::int64_t a, std::int64_t b) const {
  return multiply_unchecked(power(*this, y(), b), power(*this, x(), a));
}

Element MetacyclicView::encode(GroupElement e) const {
  if (e.a >= mod_a_ || e.b >= mod_b_)
    throw Error(ErrorKind::ForeignHandle, "normal form exponents out of range");
  return e.a + mod_a_ * e.b;
}

GroupElement MetacyclicView::decode(Element g) const {
  require_member(*this, g);
  return GroupElement{g % mod_a_, g / mod_a_};
}

std::shared_ptr<const MetacyclicView> make_metacyclic(const GroupParams& params,
                                                      std::uint64_t budget) {
  check_budget(group_order(params), budget, params.to_string());
  return std::make_shared<const MetacyclicView>(params);
}

// ---------------------------------------------------------------------------
// DirectProductView

DirectProductView::DirectProductView(int p, int a, int b) : p_(p), a_(a), b_(b) {
  if (!is_prime(p)) throw Error(ErrorKind::NonPrimeP, "p must be prime");
  if (a < 0 || b < 0)
    throw Error(ErrorKind::ConstraintViolated, "direct factor exponents must be >= 0");
  auto u = checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(a));
  auto v = checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(b));
  auto both = checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(a + b));
  if (!u || !v || !both) throw Error(ErrorKind::Overflow, "direct product order exceeds 2^63");
  mod_u_ = *u;
  mod_v_ = *v;
  if (a > 0) generators_.push_back(element(1, 0));
  if (b > 0) generators_.push_back(element(0, 1));
}

Element DirectProductView::multiply_unchecked(Element g, Element h) const noexcept {
  const std::uint64_t u = (g % mod_u_ + h % mod_u_) % mod_u_;
  const std::uint64_t v = (g / mod_u_ + h / mod_u_) % mod_v_;
  return u + mod_u_ * v;
}

Element DirectProductView::inverse_unchecked(Element g) const noexcept {
  const std::uint64_t u = (mod_u_ - g % mod_u_) % mod_u_;
  const std::uint64_t v = (mod_v_ - g / mod_u_) % mod_v_;
  return u + mod_u_ * v;
}

std::string DirectProductView::describe() const {
  std::ostringstream os;
  os << "C_" << p_ << '^' << a_ << " x C_" << p_ << '^' << b_;
  return os.str();
}

std::shared_ptr<const DirectProductView> make_direct_product(int p, int a, int b,
                                                             std::uint64_t budget) {
  auto view = std::make_shared<const DirectProductView>(p, a, b);
  check_budget(view->order(), budget, view->describe());
  return view;
}

// ---------------------------------------------------------------------------
// Subgroups

SubgroupElements::SubgroupElements(ViewPtr ambient, ElementSet elements)
    : ambient_(std::move(ambient)), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  member_.assign(ambient_->order(), false);
  for (Element g : elements_) {
    require_member(*ambient_, g);
    member_[g] = true;
  }
}

SubgroupElements subgroup_closure(const ViewPtr& view, std::span<const Element> generators) {
  for (Element g : generators) require_member(*view, g);
  std::vector<bool> seen(view->order(), false);
  ElementSet found{view->identity()};
  seen[view->identity()] = true;
  // Right-multiplying by generators reaches every product of generators; in a
  // finite group those already form the subgroup.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (Element s : generators) {
      const Element next = view->multiply_unchecked(found[i], s);
      if (!seen[next]) {
        seen[next] = true;
        found.push_back(next);
      }
    }
  }
  return SubgroupElements(view, std::move(found));
}

SubgroupElements normal_closure(const ViewPtr& view, std::span<const Element> generators) {
  std::vector<Element> gens(generators.begin(), generators.end());
  for (;;) {
    SubgroupElements current = subgroup_closure(view, gens);
    bool grown = false;
    for (Element g : gens) {
      for (Element h : view->generators()) {
        const Element c = conjugate(*view, g, h);
        if (!current.contains(c)) {
          gens.push_back(c);
          grown = true;
        }
      }
    }
    if (!grown) return current;
  }
}

SubgroupElements whole_group(const ViewPtr& view) {
  ElementSet all(view->order());
  for (Element g = 0; g < all.size(); ++g) all[g] = g;
  return SubgroupElements(view, std::move(all));
}

SubgroupElements trivial_subgroup(const ViewPtr& view) {
  return SubgroupElements(view, ElementSet{view->identity()});
}

bool is_normal(const SubgroupElements& n) {
  const FiniteGroupView& view = *n.ambient();
  constexpr std::uint64_t kExhaustiveLimit = std::uint64_t{1} << 12;
  auto stable_under = [&](Element h) {
    const Element h_inv = view.inverse_unchecked(h);
    for (Element k : n.elements())
      if (!n.contains(view.multiply_unchecked(view.multiply_unchecked(h_inv, k), h)))
        return false;
    return true;
  };
  if (view.order() <= kExhaustiveLimit) {
    for (Element h = 0; h < view.order(); ++h)
      if (!stable_under(h)) return false;
    return true;
  }
  return std::all_of(view.generators().begin(), view.generators().end(), stable_under);
}

// ---------------------------------------------------------------------------
// QuotientView

QuotientView::QuotientView(const SubgroupElements& n)
    : parent_(n.ambient()), kernel_size_(n.size()) {
  if (!is_normal(n))
    throw Error(ErrorKind::NotNormal,
                "subgroup of order " + std::to_string(n.size()) + " is not normal in " +
                    parent_->describe());
  const std::uint64_t unassigned = parent_->order();
  coset_of_.assign(parent_->order(), unassigned);
  for (Element g = 0; g < parent_->order(); ++g) {
    if (coset_of_[g] != unassigned) continue;
    const Element id = representatives_.size();
    representatives_.push_back(g);
    for (Element k : n.elements()) coset_of_[parent_->multiply_unchecked(g, k)] = id;
  }
  for (Element s : parent_->generators()) {
    const Element c = coset_of_[s];
    if (c != identity() && std::find(generators_.begin(), generators_.end(), c) == generators_.end())
      generators_.push_back(c);
  }
}

Element QuotientView::multiply_unchecked(Element g, Element h) const noexcept {
  return coset_of_[parent_->multiply_unchecked(representatives_[g], representatives_[h])];
}

Element QuotientView::inverse_unchecked(Element g) const noexcept {
  return coset_of_[parent_->inverse_unchecked(representatives_[g])];
}

std::string QuotientView::describe() const {
  return parent_->describe() + " / N(" + std::to_string(kernel_size_) + ")";
}

std::shared_ptr<const QuotientView> quotient_view(const SubgroupElements& n) {
  return std::make_shared<const QuotientView>(n);
}

// ---------------------------------------------------------------------------
// SubgroupView

SubgroupView::SubgroupView(const SubgroupElements& subgroup)
    : ambient_(subgroup.ambient()), members_(subgroup.elements()) {
  local_of_.assign(ambient_->order(), members_.size());
  for (Element i = 0; i < members_.size(); ++i) local_of_[members_[i]] = i;

  // Greedy generating set, largest element orders first.
  std::vector<std::pair<std::uint64_t, Element>> by_order;
  by_order.reserve(members_.size());
  for (Element g : members_) by_order.emplace_back(order_unchecked(*ambient_, g), g);
  std::sort(by_order.begin(), by_order.end(),
            [](const auto& l, const auto& r) { return l.first > r.first || (l.first == r.first && l.second < r.second); });
  std::vector<Element> ambient_gens;
  SubgroupElements span = trivial_subgroup(ambient_);
  for (const auto& [ord, g] : by_order) {
    if (span.size() == members_.size()) break;
    if (span.contains(g)) continue;
    ambient_gens.push_back(g);
    span = subgroup_closure(ambient_, ambient_gens);
  }
  for (Element g : ambient_gens) generators_.push_back(local_of_[g]);
}

Element SubgroupView::multiply_unchecked(Element g, Element h) const noexcept {
  return local_of_[ambient_->multiply_unchecked(members_[g], members_[h])];
}

Element SubgroupView::inverse_unchecked(Element g) const noexcept {
  return local_of_[ambient_->inverse_unchecked(members_[g])];
}

Element SubgroupView::to_local(Element ambient_element) const noexcept {
  return ambient_element < local_of_.size() ? local_of_[ambient_element] : members_.size();
}

std::string SubgroupView::describe() const {
  return "subgroup of order " + std::to_string(members_.size()) + " in " + ambient_->describe();
}

std::shared_ptr<const SubgroupView> subgroup_view(const SubgroupElements& subgroup) {
  return std::make_shared<const SubgroupView>(subgroup);
}

std::vector<std::uint64_t> element_order_profile(const FiniteGroupView& view) {
  std::vector<std::uint64_t> orders(view.order());
  for (Element g = 0; g < view.order(); ++g) orders[g] = order_unchecked(view, g);
  std::sort(orders.begin(), orders.end());
  return orders;
}

}  // namespace etameta
