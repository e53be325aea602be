#pragma once

#include <set>
#include <vector>

#include "cusp/snf.hpp"

namespace cusp {

// Finite abelian group Z/d_1 x ... x Z/d_k (d_1 | ... | d_k, all d_i > 1) with an automorphism theta
// acting on coordinate vectors by an integer matrix.
class FinAbGroup {
public:
    using Element = std::vector<long long>;
    using Subgroup = std::set<Element>;

    struct Presented;
    struct Embedded;

    FinAbGroup() = default;
    FinAbGroup(std::vector<long long> orders, IntMatrix theta);
    explicit FinAbGroup(std::vector<long long> orders);

    // Z^n / relations Z^m with the automorphism induced by theta_lift on Z^n.
    static Presented from_presentation(const IntMatrix& relations, const IntMatrix& theta_lift);

    std::size_t rank() const { return orders_.size(); }
    const std::vector<long long>& orders() const { return orders_; }
    const IntMatrix& theta() const { return theta_; }
    long long size() const;
    long long exponent() const { return orders_.empty() ? 1 : orders_.back(); }

    Element zero() const { return Element(rank(), 0); }
    Element reduce(const Element& x) const;
    Element add(const Element& x, const Element& y) const;
    Element neg(const Element& x) const;
    Element scale(long long k, const Element& x) const;
    Element apply_theta(const Element& x, long long power = 1) const;
    long long element_order(const Element& x) const;
    long long theta_order() const;
    std::vector<Element> elements() const;

    Subgroup everything() const;
    Subgroup trivial_subgroup() const { return {zero()}; }
    Subgroup generated_by(const std::vector<Element>& gens) const;
    Subgroup invariants() const;
    // (1 - theta) G
    Subgroup theta_commutator() const;
    bool is_theta_stable(const Subgroup& H) const;

    // Character group with the same invariants; pairing takes values in Z/exponent().
    FinAbGroup dual() const;
    long long pairing(const Element& x, const Element& chi) const;
    // Characters of G trivial on H, as a subgroup of dual().
    Subgroup annihilator(const Subgroup& H) const;

    friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) {
        return a.orders_ == b.orders_ && a.theta_ == b.theta_;
    }

private:
    std::vector<long long> orders_;
    IntMatrix theta_;
};

// A group given with the projection from the presenting coordinates and a section back.
struct FinAbGroup::Presented {
    FinAbGroup group;
    IntMatrix projection;
    IntMatrix section;
    Element project(const Element& x) const;
};

// A group with an injective map into an ambient group.
struct FinAbGroup::Embedded {
    FinAbGroup group;
    IntMatrix embedding;
    FinAbGroup::Element image(const FinAbGroup& ambient, const Element& x) const;
};

FinAbGroup::Subgroup intersect(const FinAbGroup::Subgroup& a, const FinAbGroup::Subgroup& b);
FinAbGroup::Subgroup sum(const FinAbGroup& G, const FinAbGroup::Subgroup& a, const FinAbGroup::Subgroup& b);
long long index(const FinAbGroup::Subgroup& big, const FinAbGroup::Subgroup& small);
bool is_subset(const FinAbGroup::Subgroup& a, const FinAbGroup::Subgroup& b);

// G / H for a theta-stable subgroup H.
FinAbGroup::Presented quotient(const FinAbGroup& G, const FinAbGroup::Subgroup& H);
// G / (1 - theta) G
FinAbGroup::Presented coinvariants(const FinAbGroup& G);
// H as an abstract group with theta restricted from G.
FinAbGroup::Embedded to_group(const FinAbGroup& G, const FinAbGroup::Subgroup& H);

}  // namespace cusp
