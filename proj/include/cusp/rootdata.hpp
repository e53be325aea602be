#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cusp/abgroup.hpp"

namespace cusp {

using Perm = std::vector<int>;

Perm identity_perm(int n);
// (a * b)(i) = a(b(i))
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
Perm perm_power(const Perm& p, long long k);
long long perm_order(const Perm& p);
std::vector<std::vector<int>> perm_cycles(const Perm& p);

// Finite irreducible Cartan type with Bourbaki numbering (node i of the matrix is Bourbaki i+1).
struct CartanType {
    char family = 'A';
    int rank = 0;
    std::string str() const { return std::string(1, family) + std::to_string(rank); }
    friend auto operator<=>(const CartanType&, const CartanType&) = default;
};

// A_{ij} = <alpha_j, alpha_i^vee>
IntMatrix cartan_matrix(const CartanType& type);
IntMatrix submatrix(const IntMatrix& m, const std::vector<int>& nodes);
// Positive roots in simple-root coordinates, sorted by height.
std::vector<IntVector> positive_roots(const IntMatrix& cartan);
IntVector highest_root(const IntMatrix& cartan);
long long positive_root_count(const CartanType& type);
std::vector<int> invariant_degrees(const CartanType& type);
// Untwisted affine Cartan matrix, extending node first.
IntMatrix affine_cartan_matrix(const CartanType& type);
// Primitive positive vector n with A n = 0.
IntVector null_vector(const IntMatrix& affine_cartan);
// Type of a connected finite Cartan matrix.
std::optional<CartanType> identify_cartan(const IntMatrix& cartan);
std::vector<std::vector<int>> connected_components(const IntMatrix& cartan, const std::vector<int>& nodes);
// Node permutation induced by -w_0.
Perm opposition_involution(const IntMatrix& cartan);
std::vector<Perm> diagram_automorphisms(const IntMatrix& cartan);
// Standard outer automorphism of order 2 or 3 on the finite nodes.
Perm outer_twist(const CartanType& type, int order);

struct BasedRootDatum {
    CartanType type;
    // Columns span X_* inside the coweight lattice, in fundamental-coweight coordinates.
    IntMatrix cocharacter_basis;
    // Rows: simple roots in the dual basis of X_*; columns: simple coroots in the X_* basis.
    IntMatrix roots, coroots;
    IntMatrix pairing() const { return roots * coroots; }
};

// Semisimple group over a p-adic field, split over the maximal unramified extension,
// given by its affine diagram, Frobenius permutation and fundamental-group subgroup.
class UnramifiedGroup {
public:
    static UnramifiedGroup make(const CartanType& type, int outer_order, const std::string& isogeny);
    // d copies of base permuted cyclically, with the base Frobenius on return to the first copy.
    static UnramifiedGroup restrict_scalars(const UnramifiedGroup& base, int d);
    static std::vector<std::string> isogeny_tokens(const CartanType& type, int outer_order);

    const CartanType& base_type() const { return type_; }
    int outer_order() const { return outer_; }
    int factor_count() const { return factors_; }
    const std::string& isogeny() const { return isogeny_; }
    std::string type_label() const;

    int node_count() const { return static_cast<int>(marks_.size()); }
    int nodes_per_factor() const { return type_.rank + 1; }
    int factor_of(int node) const { return node / nodes_per_factor(); }
    int local_index(int node) const { return node % nodes_per_factor(); }
    int semisimple_rank() const { return factors_ * type_.rank; }
    const IntMatrix& cartan() const { return cartan_; }
    const std::vector<long long>& marks() const { return marks_; }
    const Perm& theta() const { return theta_; }
    // Permutation of the factors induced by theta.
    Perm factor_theta() const;

    const FinAbGroup& omega_ad() const { return omega_ad_; }
    const FinAbGroup::Subgroup& omega() const { return omega_; }
    const Perm& omega_perm(const FinAbGroup::Element& x) const;
    // Element of omega_ad attached to a tuple of special local nodes, one per factor.
    const FinAbGroup::Element& special_element(const std::vector<int>& local_nodes) const;
    // Special local nodes attached to an element of omega_ad.
    std::vector<int> special_nodes(const FinAbGroup::Element& x) const;
    // Automorphisms of the finite diagram of a single factor, extended to fix node 0.
    std::vector<Perm> finite_automorphisms() const;
    // Conjugation action of a node permutation on omega_ad.
    FinAbGroup::Element transport(const Perm& tau, const FinAbGroup::Element& x) const;
    bool stabilizes_omega(const Perm& tau) const;
    bool commutes_with_theta(const Perm& tau) const { return compose(tau, theta_) == compose(theta_, tau); }

    BasedRootDatum root_datum() const;

private:
    void init_fundamental_group();

    CartanType type_;
    int outer_ = 1;
    int factors_ = 1;
    std::string isogeny_;
    IntMatrix cartan_;
    std::vector<long long> marks_;
    Perm theta_;
    FinAbGroup omega_ad_;
    FinAbGroup::Subgroup omega_;
    std::map<FinAbGroup::Element, Perm> perms_;
    std::map<std::vector<int>, FinAbGroup::Element> special_;
    std::vector<int> special_local_;
    IntMatrix coweight_projection_;
};

struct GroupSpec {
    CartanType type;
    int outer_order = 1;
    std::string isogeny;
    std::string form;
    std::string type_label() const;
    std::string str() const { return type_label() + ":" + isogeny + ":" + form; }
};

// Parses TYPE:ISOGENY:TWIST; throws std::invalid_argument with the failing position.
GroupSpec parse_spec(const std::string& text);
// Parses a type label such as A5, 2A5, 3D4, 2E6.
std::pair<CartanType, int> parse_type_label(const std::string& label);

}  // namespace cusp
