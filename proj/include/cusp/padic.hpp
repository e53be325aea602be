#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cusp/ratfunc.hpp"
#include "cusp/rootdata.hpp"

namespace cusp {

struct InnerForm {
    FinAbGroup::Element omega;
    std::string name;
    bool quasi_split = true;
    // Frobenius of the form: omega action composed with theta.
    Perm frobenius;
    bool transitive = false;
};

// One form per class in the theta-coinvariants of omega_ad, quasi-split first.
std::vector<InnerForm> enumerate_inner_forms(const UnramifiedGroup& G);

// An orbit of simple components of J under the Frobenius, of the given type,
// returning to itself after field_degree steps with a twist of order `twist`.
struct FiniteFactor {
    CartanType type;
    int twist = 1;
    int field_degree = 1;
    std::vector<std::vector<int>> components;
    std::string str() const;
};

struct FiniteQuotient {
    std::vector<FiniteFactor> factors;
    // |T(F_q)| of the central torus as a polynomial in q.
    IntPoly torus_order;
    int torus_dim = 0;
    int dimension = 0;
    IntPoly order() const;
    std::string str() const;
};

// Order polynomial in q of a connected finite reductive group of the given type and twist.
IntPoly finite_group_order(const CartanType& type, int twist);

FiniteQuotient finite_quotient(const UnramifiedGroup& G, const Perm& frobenius, const std::vector<int>& J,
                               const IntPoly& central_torus_order = IntPoly::constant(1), int central_torus_dim = 0);

struct CuspidalEntry {
    std::string id;
    std::optional<RatFunc> degree;
    std::vector<int> ns_candidates;
    std::string degree_class;
};

struct CuspidalDatum {
    std::vector<CuspidalEntry> entries;
    bool exists() const { return !entries.empty(); }
};

CuspidalDatum cuspidal_unipotent_data(const CartanType& type, int twist, int field_degree = 1);
CuspidalDatum cuspidal_unipotent_data(const FiniteQuotient& quotient);

struct ParahoricClass {
    std::vector<int> J;
    std::vector<int> orbit;
    // All complements in the association class, sorted.
    std::vector<std::vector<int>> association;
    FinAbGroup::Subgroup stabilizer;
    FinAbGroup::Subgroup stabilizer_ad;
    long long g_prime = 1;
    FiniteQuotient quotient;
    CuspidalDatum cuspidal;
};

std::vector<ParahoricClass> enumerate_parahoric_supports(const UnramifiedGroup& G, const InnerForm& form);

RatFunc parahoric_volume(const FiniteQuotient& quotient);

struct FDeg {
    RatFunc value;
    RatFunc dim_sigma;
    long long stabilizer_order = 1;
    RatFunc volume;
    RatFunc normalizer_form;
};

class DegreeUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FDeg formal_degree(const ParahoricClass& pc, const CuspidalEntry& entry);

// Entries of a class grouped by degree class, in order of first appearance.
std::vector<std::vector<CuspidalEntry>> degree_classes(const CuspidalDatum& datum);

std::string nodes_str(const UnramifiedGroup& G, const std::vector<int>& nodes);

}  // namespace cusp
