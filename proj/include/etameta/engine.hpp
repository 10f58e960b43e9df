#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "etameta/params.hpp"

namespace etameta {

/// Dense element handle in [0, order). Handle 0 is always the identity.
using Element = std::uint64_t;

/// Sorted, duplicate-free list of handles.
using ElementSet = std::vector<Element>;

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 16;

/// Finite p-group with dense integer handles.
///
/// Implementations are immutable after construction, so a view can be shared
/// freely between threads. The *_unchecked members skip the handle range check
/// and are meant for inner loops; everything else should go through the free
/// functions below.
class FiniteGroupView {
 public:
  virtual ~FiniteGroupView() = default;

  virtual std::uint64_t order() const noexcept = 0;
  /// The prime p of this p-group.
  virtual int prime() const noexcept = 0;
  virtual Element multiply_unchecked(Element g, Element h) const noexcept = 0;
  virtual Element inverse_unchecked(Element g) const noexcept = 0;
  /// A generating set (may be empty for the trivial group).
  virtual const std::vector<Element>& generators() const noexcept = 0;
  virtual std::string describe() const = 0;

  Element identity() const noexcept { return 0; }
  bool contains(Element g) const noexcept { return g < order(); }
};

using ViewPtr = std::shared_ptr<const FiniteGroupView>;

// Checked group operations; Error(ForeignHandle) on out-of-range handles.
Element multiply(const FiniteGroupView& view, Element g, Element h);
Element inverse(const FiniteGroupView& view, Element g);
Element power(const FiniteGroupView& view, Element g, std::int64_t n);
/// h^-1 g h
Element conjugate(const FiniteGroupView& view, Element g, Element h);
std::uint64_t element_order(const FiniteGroupView& view, Element g);

/// Normal form y^b x^a of the metacyclic presentation.
struct GroupElement {
  std::uint64_t a = 0;  // exponent of x, in [0, p^alpha)
  std::uint64_t b = 0;  // exponent of y, in [0, p^beta)
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// G_p(alpha, beta, epsilon, delta, +/-) realized on normal forms y^b x^a with
/// handle a + p^alpha * b.
///
///   (y^b1 x^a1)(y^b2 x^a2) = y^(b1+b2) x^(a1 r^b2 + a2)
///
/// When b1 + b2 wraps past p^beta, one factor y^(p^beta) = x^(p^(alpha-epsilon))
/// is carried into the x exponent before reducing mod p^alpha.
class MetacyclicView final : public FiniteGroupView {
 public:
  explicit MetacyclicView(const GroupParams& params);

  std::uint64_t order() const noexcept override { return order_; }
  int prime() const noexcept override { return params_.p(); }
  Element multiply_unchecked(Element g, Element h) const noexcept override;
  Element inverse_unchecked(Element g) const noexcept override;
  const std::vector<Element>& generators() const noexcept override { return generators_; }
  std::string describe() const override { return params_.to_string(); }

  const GroupParams& params() const noexcept { return params_; }

  /// Handle of y^b x^a; exponents are reduced (a mod p^alpha, b via the carry rule).
  Element element(std::int64_t a, std::int64_t b) const;
  Element encode(GroupElement e) const;
  GroupElement decode(Element g) const;

  Element x() const noexcept { return 1; }
  Element y() const noexcept { return params_.p_pow_alpha(); }

 private:
  GroupParams params_;
  std::uint64_t mod_a_;   // p^alpha
  std::uint64_t mod_b_;   // p^beta
  std::uint64_t carry_;   // p^(alpha-epsilon) mod p^alpha
  std::uint64_t order_;
  std::vector<std::uint64_t> r_powers_;  // r^b mod p^alpha for b in [0, p^beta)
  std::vector<Element> generators_;
};

/// C_{p^a} x C_{p^b} with handle u + p^a * v.
class DirectProductView final : public FiniteGroupView {
 public:
  DirectProductView(int p, int a, int b);

  std::uint64_t order() const noexcept override { return mod_u_ * mod_v_; }
  int prime() const noexcept override { return p_; }
  Element multiply_unchecked(Element g, Element h) const noexcept override;
  Element inverse_unchecked(Element g) const noexcept override;
  const std::vector<Element>& generators() const noexcept override { return generators_; }
  std::string describe() const override;

  Element element(std::uint64_t u, std::uint64_t v) const noexcept {
    return (u % mod_u_) + mod_u_ * (v % mod_v_);
  }

 private:
  int p_;
  int a_;
  int b_;
  std::uint64_t mod_u_;
  std::uint64_t mod_v_;
  std::vector<Element> generators_;
};

std::shared_ptr<const MetacyclicView> make_metacyclic(
    const GroupParams& params, std::uint64_t budget = kDefaultEnumerationBudget);

std::shared_ptr<const DirectProductView> make_direct_product(
    int p, int a, int b, std::uint64_t budget = kDefaultEnumerationBudget);

/// A subgroup as a set of handles of its ambient view.
class SubgroupElements {
 public:
  SubgroupElements(ViewPtr ambient, ElementSet elements);

  const ViewPtr& ambient() const noexcept { return ambient_; }
  const ElementSet& elements() const noexcept { return elements_; }
  std::uint64_t size() const noexcept { return elements_.size(); }
  bool contains(Element g) const noexcept { return g < member_.size() && member_[g]; }

  friend bool operator==(const SubgroupElements& a, const SubgroupElements& b) {
    return a.elements_ == b.elements_;
  }

 private:
  ViewPtr ambient_;
  ElementSet elements_;
  std::vector<bool> member_;
};

/// Smallest subgroup containing `generators` (BFS closure under right
/// multiplication by the generators).
SubgroupElements subgroup_closure(const ViewPtr& view, std::span<const Element> generators);

/// Smallest normal subgroup containing `generators`.
SubgroupElements normal_closure(const ViewPtr& view, std::span<const Element> generators);

SubgroupElements whole_group(const ViewPtr& view);
SubgroupElements trivial_subgroup(const ViewPtr& view);

/// Exhaustive for views of order <= 2^12, generator-based above.
bool is_normal(const SubgroupElements& n);

/// G/N on coset handles; coset 0 is N itself.
class QuotientView final : public FiniteGroupView {
 public:
  /// Throws Error(NotNormal) if n is not normal in its ambient view.
  explicit QuotientView(const SubgroupElements& n);

  std::uint64_t order() const noexcept override { return representatives_.size(); }
  int prime() const noexcept override { return parent_->prime(); }
  Element multiply_unchecked(Element g, Element h) const noexcept override;
  Element inverse_unchecked(Element g) const noexcept override;
  const std::vector<Element>& generators() const noexcept override { return generators_; }
  std::string describe() const override;

  const ViewPtr& parent() const noexcept { return parent_; }
  Element coset_of(Element parent_element) const { return coset_of_.at(parent_element); }
  Element representative(Element coset) const { return representatives_.at(coset); }
  std::uint64_t kernel_size() const noexcept { return kernel_size_; }

 private:
  ViewPtr parent_;
  std::uint64_t kernel_size_;
  std::vector<Element> coset_of_;
  std::vector<Element> representatives_;
  std::vector<Element> generators_;
};

std::shared_ptr<const QuotientView> quotient_view(const SubgroupElements& n);

/// A subgroup regarded as a group in its own right. Local handle i is the i-th
/// smallest ambient handle, so local 0 is the identity.
class SubgroupView final : public FiniteGroupView {
 public:
  explicit SubgroupView(const SubgroupElements& subgroup);

  std::uint64_t order() const noexcept override { return members_.size(); }
  int prime() const noexcept override { return ambient_->prime(); }
  Element multiply_unchecked(Element g, Element h) const noexcept override;
  Element inverse_unchecked(Element g) const noexcept override;
  const std::vector<Element>& generators() const noexcept override { return generators_; }
  std::string describe() const override;

  const ViewPtr& ambient() const noexcept { return ambient_; }
  Element to_ambient(Element local) const { return members_.at(local); }
  /// Local handle of an ambient element; order() if it is not a member.
  Element to_local(Element ambient_element) const noexcept;

 private:
  ViewPtr ambient_;
  std::vector<Element> members_;
  std::vector<Element> local_of_;  // indexed by ambient handle
  std::vector<Element> generators_;
};

std::shared_ptr<const SubgroupView> subgroup_view(const SubgroupElements& subgroup);

/// Multiset of element orders, sorted ascending.
std::vector<std::uint64_t> element_order_profile(const FiniteGroupView& view);

}  // namespace etameta
