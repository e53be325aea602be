#include "cusp/weilres.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace cusp {

namespace {

using Element = FinAbGroup::Element;
using Subgroup = FinAbGroup::Subgroup;

WeightString reduced(long long order, long long exponent, int h) {
    exponent = ((exponent % order) + order) % order;
    long long g = std::gcd(order, exponent);
    if (exponent == 0) return {1, 0, h};
    return {order / g, exponent / g, h};
}

Element diagonal(const UnramifiedGroup& base, const UnramifiedGroup& R, const Element& x) {
    return R.special_element(std::vector<int>(static_cast<std::size_t>(R.factor_count()), base.special_nodes(x)[0]));
}

Subgroup diagonal(const UnramifiedGroup& base, const UnramifiedGroup& R, const Subgroup& H) {
    Subgroup out;
    for (const auto& x : H) out.insert(diagonal(base, R, x));
    return out;
}

// Return map of the Frobenius to the first factor, on local node indices.
Perm first_factor_return(const UnramifiedGroup& R, const Perm& frobenius) {
    const int m = R.nodes_per_factor();
    Perm p = perm_power(frobenius, R.factor_count());
    Perm out(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)];
    return out;
}

std::vector<int> local_part(const UnramifiedGroup& R, const std::vector<int>& nodes, const Perm& shift) {
    std::vector<int> out;
    for (int i : nodes)
        if (R.factor_of(i) == 0) out.push_back(shift[static_cast<std::size_t>(i)]);
    std::sort(out.begin(), out.end());
    return out;
}

struct FormMatch {
    const InnerForm* form = nullptr;
    Perm shift;
};

FormMatch match_form(const UnramifiedGroup& H, const std::vector<InnerForm>& forms, const Perm& ret) {
    for (const auto& f : forms)
        for (const auto& y : H.omega_ad().elements()) {
            const Perm& p = H.omega_perm(y);
            if (compose(compose(p, ret), inverse(p)) == f.frobenius) return {&f, p};
        }
    return {};
}

}  // namespace

RatFunc ScalarRestriction::residue_relation() const { return RatFunc::t_power(2 * degree); }

ScalarRestriction restrict_spec(const UnramifiedGroup& base, int degree) {
    ScalarRestriction sr;
    sr.degree = degree;
    sr.base = base;
    sr.restricted = UnramifiedGroup::restrict_scalars(base, degree);
    sr.frobenius_order = perm_order(sr.restricted.theta());
    return sr;
}

bool TransportReport::ok() const {
    if (!problems.empty()) return false;
    return std::all_of(rows.begin(), rows.end(), [](const TransportRow& r) { return r.failures.empty(); });
}

TransportReport transport_counts(const ScalarRestriction& sr, int ord_psi) {
    const UnramifiedGroup& H = sr.base;
    const UnramifiedGroup& R = sr.restricted;
    const int d = sr.degree;
    TransportReport out;

    const auto base_reports = group_reports(H, "*", ord_psi);
    const auto base_forms = enumerate_inner_forms(H);
    std::vector<bool> used(base_reports.size(), false);
    std::set<std::string> forms_hit;

    for (const auto& form : enumerate_inner_forms(R)) {
        FormMatch fm = match_form(H, base_forms, first_factor_return(R, form.frobenius));
        if (!fm.form) {
            out.problems.push_back("form " + form.name + " of the restricted group has no counterpart");
            continue;
        }
        if (!forms_hit.insert(fm.form->name).second)
            out.problems.push_back("form " + fm.form->name + " is hit twice");
        for (const auto& pc : enumerate_parahoric_supports(R, form)) {
            const std::vector<int> local = local_part(R, pc.orbit, fm.shift);
            // Indices of base reports on the matching parahoric class, grouped by degree class.
            std::vector<std::vector<std::size_t>> classes;
            std::string last;
            for (std::size_t i = 0; i < base_reports.size(); ++i) {
                const auto& br = base_reports[i];
                if (br.form != fm.form->name) continue;
                if (std::find(br.association.begin(), br.association.end(), local) == br.association.end()) continue;
                if (classes.empty() || br.degree_class != last) classes.emplace_back();
                last = br.degree_class;
                classes.back().push_back(i);
            }
            const auto rclasses = degree_classes(pc.cuspidal);
            const std::string where = form.name + " J=" + nodes_str(R, pc.J);
            if (rclasses.size() != classes.size()) {
                out.problems.push_back(where + ": " + std::to_string(rclasses.size()) + " degree classes against " +
                                       std::to_string(classes.size()));
                continue;
            }
            for (std::size_t c = 0; c < rclasses.size(); ++c) {
                const auto& cls = rclasses[c];
                if (cls.size() != classes[c].size()) {
                    out.problems.push_back(where + ": degree class sizes differ");
                    continue;
                }
                const auto& first = base_reports[classes[c][0]];
                const CaseRow& row = case_row(first.row);
                GaloisData gd;
                gd.N = diagonal(H, R, resolve_subgroup(H, *fm.form, row.N));
                gd.M = diagonal(H, R, resolve_subgroup(H, *fm.form, row.M));
                gd.ns = first.ns;
                gd.b_ad = row.b_ad == 0 ? euler_phi(gd.ns) : row.b_ad;
                PacketInvariants inv = compute_invariants(R, pc, static_cast<long long>(cls.size()), gd);
                std::vector<std::string> thm = invariant_failures(R, pc, inv, gd);
                long long orbits = static_cast<long long>(inv.a_prime * inv.b_prime) / static_cast<long long>(pc.stabilizer.size());

                for (std::size_t e = 0; e < cls.size(); ++e) {
                    const std::size_t bi = classes[c][e];
                    const auto& br = base_reports[bi];
                    used[bi] = true;
                    TransportRow tr;
                    tr.base_spec = br.spec;
                    tr.restricted_form = form.name;
                    tr.base_form = br.form;
                    tr.support = br.support;
                    tr.entry = br.entry;
                    tr.base_inv = br.inv;
                    tr.restricted_inv = inv;
                    tr.base_orbit_count = br.orbit_count;
                    tr.restricted_orbit_count = orbits;
                    tr.failures = thm;
                    if (!same_counts(inv, br.inv)) tr.failures.push_back("invariants differ");
                    if (orbits != br.orbit_count) tr.failures.push_back("orbit counts differ");
                    if (inv.omega_theta.size() != br.inv.omega_theta.size() ||
                        inv.stabilizer_lambda.size() != br.inv.stabilizer_lambda.size() ||
                        inv.stabilizer_pair.size() != br.inv.stabilizer_pair.size())
                        tr.failures.push_back("component group sizes differ");
                    std::optional<FDeg> fr;
                    try {
                        fr = formal_degree(pc, cls[e]);
                    } catch (const DegreeUnavailable&) {
                    }
                    if (fr.has_value() != br.fdeg.has_value()) {
                        tr.failures.push_back("formal degree available on one side only");
                    } else if (fr) {
                        tr.fdeg_compared = true;
                        if (fr->value != br.fdeg->value.inflate(d)) tr.failures.push_back("formal degrees differ under q -> q^d");
                    }
                    out.rows.push_back(std::move(tr));
                }
            }
        }
    }
    if (forms_hit.size() != base_forms.size()) out.problems.push_back("inner forms do not correspond bijectively");
    for (std::size_t i = 0; i < base_reports.size(); ++i)
        if (!used[i])
            out.problems.push_back("base row " + base_reports[i].spec + " J=" + base_reports[i].support + " " +
                                   base_reports[i].entry + " has no restricted counterpart");
    return out;
}

std::vector<WeightString> induce_weights(const std::vector<WeightString>& w, int degree) {
    std::vector<WeightString> out;
    for (const auto& x : w)
        for (int i = 0; i < degree; ++i) out.push_back(reduced(x.order * degree, x.exponent + x.order * i, x.h));
    std::sort(out.begin(), out.end());
    return out;
}

LocalFactorTransport transport_local_factors(const std::vector<WeightString>& w, int degree, int ord_psi, int s2,
                                             int ramification) {
    if (ramification != 1) throw Unavailable("ramified extensions are not supported");
    if (degree < 1) throw std::invalid_argument("extension degree must be positive");
    LocalFactorTransport r;
    r.base = local_factors(w, s2, ord_psi);
    r.induced = local_factors(induce_weights(w, degree), s2, ord_psi);
    const long long dim = weights_dimension(w);
    r.expected_sign = ((degree - 1) * ord_psi * dim) % 2 == 0 ? 1 : -1;
    r.L_inductive = r.induced.L_s == r.base.L_s.inflate(degree) && r.induced.L_dual == r.base.L_dual.inflate(degree);
    r.eps_relation = r.induced.eps == RatFunc(r.expected_sign) * r.base.eps.inflate(degree);
    r.gamma_abs_equal = r.induced.gamma_abs == r.base.gamma_abs.inflate(degree);
    r.gamma_abs_scaled =
        r.induced.gamma_abs == r.base.gamma_abs.inflate(degree) * RatFunc::t_power(static_cast<long long>(degree) * ord_psi * dim);
    return r;
}

}  // namespace cusp
