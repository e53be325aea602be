#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cusp/galois.hpp"
#include "cusp/padic.hpp"

namespace cusp {

// Galois-side data of a case row resolved on a concrete group.
struct GaloisData {
    FinAbGroup::Subgroup N;
    FinAbGroup::Subgroup M;
    long long b_ad = 1;
    long long ns = 1;
};

struct PacketInvariants {
    long long a = 0, b = 0, a_prime = 0, b_prime = 0, g = 0, g_prime = 0;
    // Theta-invariants of the fundamental group, as an abstract group, and its character group.
    FinAbGroup omega_theta;
    FinAbGroup::Subgroup stabilizer_lambda;
    FinAbGroup::Subgroup stabilizer_pair;
    friend bool same_counts(const PacketInvariants& x, const PacketInvariants& y) {
        return x.a == y.a && x.b == y.b && x.a_prime == y.a_prime && x.b_prime == y.b_prime && x.g == y.g && x.g_prime == y.g_prime;
    }
};

long long euler_phi(long long n);

// Theta-fixed part of the fundamental group of G inside omega_ad.
FinAbGroup::Subgroup omega_theta(const UnramifiedGroup& G);

// Galois side from (N, M, b_ad, n_s); p-adic side from the parahoric class and the number of cuspidal
// entries of one degree class.
PacketInvariants compute_invariants(const UnramifiedGroup& G, const ParahoricClass& pc, long long class_size, const GaloisData& gd);

// Failed identities of the invariant suite; empty when all hold.
std::vector<std::string> invariant_failures(const UnramifiedGroup& G, const ParahoricClass& pc, const PacketInvariants& inv,
                                            const GaloisData& gd);

// Invariants at one isogeny, with the data needed to move to a smaller fundamental group.
struct IsogenyLevel {
    PacketInvariants inv;
    FinAbGroup::Subgroup omega_theta;
    FinAbGroup::Subgroup stabilizer;
};

IsogenyLevel adjoint_level(const UnramifiedGroup& adjoint, const ParahoricClass& pc, long long class_size, const GaloisData& gd);

// Moves invariants from `source` (fundamental group containing the target's) to `target`.
IsogenyLevel isogeny_transfer(const UnramifiedGroup& target, const IsogenyLevel& source, const FinAbGroup::Subgroup& N);

// a'b' / a'_ad b'_ad = g' |stab| / |stab_ad| = ab / a_ad b_ad, as exact fractions.
bool double_ratio_holds(const IsogenyLevel& adjoint, const IsogenyLevel& target);

struct EnhancementSplit {
    // Extensions of a fixed adjoint enhancement to the component group of the target.
    long long extensions = 1;
    // dim rho / dim rho_ad.
    long long dimension_ratio = 1;
};

EnhancementSplit enhancement_count_split(const UnramifiedGroup& target, const GaloisData& gd);

enum class Status { Pass, Fail, Unverifiable };
std::string to_string(Status s);

struct PacketReport {
    std::string spec;
    std::string type_label;
    std::string isogeny;
    std::string form;
    FinAbGroup::Element omega;
    std::vector<int> J;
    // Frobenius orbit complementary to J and the other orbits of its class.
    std::vector<int> orbit;
    std::vector<std::vector<int>> association;
    std::string support;
    std::string quotient;
    std::string entry;
    std::string degree_class;
    std::string row;
    std::string geometric;
    int kac_node = -1;
    std::vector<int> kac_candidates;
    long long ns = 0;
    PacketInvariants inv;
    long long orbit_count = 0;
    std::optional<FDeg> fdeg;
    std::optional<std::vector<WeightString>> weights;
    std::optional<RatFunc> gamma_abs;
    Status thm_b = Status::Pass;
    Status equivariance = Status::Pass;
    std::vector<std::string> failures;
    Status hii = Status::Unverifiable;
    std::optional<HiiResult> hii_result;
    std::string orbit_id;
};

// Reports of one group, one per (form, parahoric class, cuspidal entry); form_filter is a glob
// over form names or "an" for forms with a transitive Frobenius.
std::vector<PacketReport> group_reports(const UnramifiedGroup& G, const std::string& form_filter, int ord_psi);

struct EquivarianceResult {
    bool consistent = true;
    // Report index to image report index; -1 when no image was found.
    std::vector<int> image;
    std::vector<std::string> problems;
};

// Reports must be the complete output of group_reports(G, "*", ...).
EquivarianceResult equivariance_check(const UnramifiedGroup& G, const std::vector<PacketReport>& reports, const Perm& tau);
// Diagram automorphisms commuting with theta and stabilizing the isogeny subgroup.
std::vector<Perm> admissible_automorphisms(const UnramifiedGroup& G);
// Runs all admissible automorphisms, fills orbit ids, returns the problems found.
std::vector<std::string> assign_orbits(const UnramifiedGroup& G, std::vector<PacketReport>& reports);

// Simple types of the catalogue up to the given classical rank. The file named by CUSP_CATALOGUE,
// when set, lists type labels one per line instead.
std::vector<std::pair<CartanType, int>> catalogue_types(int max_rank);

// Groups matched by a spec string with globs in each field.
std::vector<UnramifiedGroup> select_groups(const std::string& spec, int max_rank);

// Reports of one group with orbit ids and equivariance results; form_glob as in group_reports.
std::vector<PacketReport> group_full_report(const UnramifiedGroup& G, const std::string& form_glob, int ord_psi);

std::vector<PacketReport> full_report(const std::string& spec, int max_rank = 12, int ord_psi = -1);

struct CheckSummary {
    long long compared = 0;
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

// Transfers every adjoint row to each smaller isogeny, directly and through every intermediate
// isogeny, and compares with the rows computed on the target together with the double ratio.
CheckSummary isogeny_transfer_check(const CartanType& type, int outer_order);

// fdeg(target) / fdeg(adjoint) = |adjoint stabilizer| / |target stabilizer| on rows with degree polynomials.
CheckSummary isogeny_fdeg_ratio_check(const CartanType& type, int outer_order);

// fdeg with an anisotropic central torus / fdeg without = q^{dim/2} / |T(F_q)| on rows with degree polynomials.
CheckSummary central_torus_ratio_check(const CartanType& type, int outer_order, const IntPoly& torus_order, int torus_dim);

// Formal degree of the same representation after adjoining an anisotropic central torus.
FDeg formal_degree_with_central_torus(const ParahoricClass& pc, const CuspidalEntry& entry, const IntPoly& torus_order, int torus_dim);

}  // namespace cusp
