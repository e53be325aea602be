#pragma once

#include <string>
#include <vector>

#include "cusp/correspondence.hpp"

namespace cusp {

// A group over an unramified extension of degree d viewed over the base field.
struct ScalarRestriction {
    int degree = 1;
    UnramifiedGroup base;
    UnramifiedGroup restricted;
    // Order of the Frobenius of the restricted group on all nodes.
    long long frobenius_order = 1;
    // q_L = q^degree.
    RatFunc residue_relation() const;
};

ScalarRestriction restrict_spec(const UnramifiedGroup& base, int degree);

struct TransportRow {
    std::string base_spec;
    std::string restricted_form;
    std::string base_form;
    std::string support;
    std::string entry;
    PacketInvariants base_inv;
    PacketInvariants restricted_inv;
    long long base_orbit_count = 0;
    long long restricted_orbit_count = 0;
    bool fdeg_compared = false;
    std::vector<std::string> failures;
};

struct TransportReport {
    std::vector<TransportRow> rows;
    // Mismatches that are not attached to a row, such as unmatched forms or supports.
    std::vector<std::string> problems;
    bool ok() const;
};

// Compares every packet row of the restricted group with the corresponding row of the base group.
TransportReport transport_counts(const ScalarRestriction& restriction, int ord_psi = -1);

// Induction of an unramified representation from W_L to W_K on Frobenius eigenvalue strings.
std::vector<WeightString> induce_weights(const std::vector<WeightString>& w, int degree);

struct LocalFactorTransport {
    bool L_inductive = false;
    // eps(ind) = sign * eps_L(q -> q^d) with sign = (-1)^{(d-1) ord_psi dim}.
    bool eps_relation = false;
    int expected_sign = 1;
    // |gamma(ind)| = |gamma_L|(q -> q^d).
    bool gamma_abs_equal = false;
    // |gamma(ind)| = |gamma_L|(q -> q^d) * q_L^{ord_psi dim / 2}.
    bool gamma_abs_scaled = false;
    WDLocalFactors base;
    WDLocalFactors induced;
};

// `ramification` is the ramification index of L/K; only 1 is supported.
LocalFactorTransport transport_local_factors(const std::vector<WeightString>& w, int degree, int ord_psi, int s2 = 0,
                                             int ramification = 1);

}  // namespace cusp
