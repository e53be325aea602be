#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cusp/cyclo.hpp"
#include "cusp/padic.hpp"

namespace cusp {

// Affine diagram of the dual group twisted by the Frobenius, with Kac labels.
struct DualDiagram {
    std::string name;
    IntMatrix cartan;
    std::vector<long long> labels;
    // Finite type of the dual group.
    CartanType dual_type;
    int twist = 1;
};

DualDiagram dual_affine_diagram(const CartanType& type, int outer_order);

// Types of the components left after deleting a node, with small-rank coincidences normalized.
std::vector<CartanType> deletion_type(const DualDiagram& diagram, int node);
std::vector<CartanType> canonical_types(const std::vector<CartanType>& types);
std::string types_str(const std::vector<CartanType>& types);

// Patterns are sequences of items such as A2, C*, B? where * means a nonempty factor and ? allows rank 0.
bool matches_pattern(const std::string& pattern, const std::vector<CartanType>& types);

enum class SubgroupRule { Trivial, Full, Eta, FormGroup };
std::string to_string(SubgroupRule rule);

struct CaseRow {
    std::string id;
    std::string group;
    std::string support;
    std::string form_rule;
    std::string geometric;
    std::string ns_rule;
    SubgroupRule N = SubgroupRule::Trivial;
    SubgroupRule M = SubgroupRule::Trivial;
    // Zero means one Galois orbit of size phi(n_s) per entry.
    int b_ad = 1;
    std::string component_group;
    // Enhancement dimension and |S#| rule for the formal degree identity; empty when not encoded.
    std::string hii;
};

const std::vector<CaseRow>& case_table();
const CaseRow& case_row(const std::string& id);

struct CaseMatch {
    const CaseRow* row = nullptr;
    std::map<std::string, int> params;
    // Geometric diagram with parameters substituted; may still contain wildcards.
    std::string geometric;
    std::vector<int> ns_allowed;
};

// Case row of a degree class of cuspidal entries on a parahoric class of a simple group.
CaseMatch classify(const UnramifiedGroup& G, const InnerForm& form, const ParahoricClass& pc,
                   const std::vector<CuspidalEntry>& degree_class);

FinAbGroup::Subgroup resolve_subgroup(const UnramifiedGroup& G, const InnerForm& form, SubgroupRule rule);

// An sl2 string of highest weight h on which Frobenius acts through exp(2 pi i exponent / order).
struct WeightString {
    long long order = 1;
    long long exponent = 0;
    int h = 0;
    friend auto operator<=>(const WeightString&, const WeightString&) = default;
};

struct UnramifiedParam {
    int node = 0;
    long long ns = 1;
    std::vector<long long> kac_coordinates;
    std::vector<CartanType> centralizer;
    std::string unipotent_class;
    std::optional<std::vector<WeightString>> weights;
};

class Unavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Nodes of the dual diagram whose deletion fits the pattern and whose label is allowed.
std::vector<int> kac_candidates(const DualDiagram& diagram, const std::string& pattern, const std::vector<int>& ns_allowed);
UnramifiedParam make_param(const DualDiagram& diagram, int node);

// Ad of the parameter with the principal sl2 of the centralizer; simply laced untwisted duals
// with centralizer of type A only.
std::vector<WeightString> adjoint_weights(const DualDiagram& diagram, int node);
long long weights_dimension(const std::vector<WeightString>& w);
bool inversion_closed(const std::vector<WeightString>& w);

struct WDLocalFactors {
    // L(s) and L(1-s), epsilon and gamma at s = s2 / 2.
    RatFunc L_s;
    RatFunc L_dual;
    RatFunc eps;
    RatFunc gamma;
    RatFunc gamma_abs;
};

WDLocalFactors local_factors(const std::vector<WeightString>& w, int s2, int ord_psi);
// Convenience: |gamma(0)|.
RatFunc gamma_abs_at_zero(const std::vector<WeightString>& w, int ord_psi);

struct HiiResult {
    bool holds = false;
    RatFunc lhs, rhs;
};

HiiResult hii_check(const RatFunc& fdeg, const RatFunc& gamma_abs, long long dim_rho, long long s_sharp);

}  // namespace cusp
