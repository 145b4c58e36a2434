#include "philos/incentive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "philos/errors.hpp"

namespace philos {

double SabotageScenario::rest_of_list() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < member_trusts.size(); ++i) {
        if (i != target) sum += member_trusts[i];
    }
    return sum;
}

double SabotageScenario::total() const {
    return std::accumulate(member_trusts.begin(), member_trusts.end(), 0.0) + outside_trust;
}

void SabotageScenario::validate() const {
    if (member_trusts.empty()) throw PreconditionError("sync list has no members");
    if (target >= member_trusts.size()) throw PreconditionError("target is not a list member");
    if (std::any_of(member_trusts.begin(), member_trusts.end(), [](double t) { return t < 0.0; }) ||
        outside_trust < 0.0) {
        throw PreconditionError("trusts must be nonnegative");
    }
    if (s_m < 0) throw PreconditionError("s_m must be nonnegative");
}

double utility(const SabotageScenario& s, Action a) {
    s.validate();
    const double t1 = s.target_trust();
    const double base = t1 + s.rest_of_list() + s.outside_trust;
    if (a == Action::Sabotage) {
        if (base <= 0.0) throw UndefinedFractionError("total system trust is zero");
        return t1 / base;
    }
    const double credit = static_cast<double>(s.s_m);
    const double denom = base + static_cast<double>(s.list_size()) * credit;
    if (denom <= 0.0) throw UndefinedFractionError("total system trust is zero");
    return (t1 + credit) / denom;
}

bool is_honesty_incentivized(double frac_hyp, std::size_t list_size) {
    return static_cast<double>(list_size) * frac_hyp <= 1.0;
}

namespace {

// floor() that treats a bound within 1e-12 relative of an integer as that integer,
// so L = c * T* certifies exactly c.
std::int64_t integer_bound(double bound) {
    const double nearest = std::round(bound);
    if (std::fabs(bound - nearest) <= 1e-12 * std::max(1.0, std::fabs(bound))) {
        return static_cast<std::int64_t>(nearest);
    }
    return static_cast<std::int64_t>(std::floor(bound));
}

}  // namespace

std::int64_t max_safe_list_size(double total_trust, const TrustParams& params) {
    params.validate();
    if (!(total_trust > 0.0)) throw PreconditionError("total trust must be positive");
    const double d = static_cast<double>(params.delta);
    return integer_bound(total_trust * -std::expm1(d * std::log(params.beta)) / d);
}

std::int64_t max_safe_list_size_avg(std::int64_t n_peers, double avg_trust,
                                    const TrustParams& params) {
    if (n_peers < 1) throw PreconditionError("need at least one peer");
    if (avg_trust < 0.0) throw PreconditionError("average trust must be nonnegative");
    return integer_bound(static_cast<double>(n_peers) * avg_trust / equilibrium_trust(params));
}

namespace {

// -1, 0, +1 with values within `incentive_tolerance` (relative to `scale`) treated as equal.
int compare(double a, double b, double scale) {
    const double diff = a - b;
    if (std::fabs(diff) <= incentive_tolerance * scale) return 0;
    return diff > 0.0 ? 1 : -1;
}

double share(const std::vector<double>& trusts, std::size_t i) {
    const double total = std::accumulate(trusts.begin(), trusts.end(), 0.0);
    if (total <= 0.0) throw UndefinedFractionError("total system trust is zero");
    return trusts[i] / total;
}

}  // namespace

IncentiveReport brute_force_incentive_check(const SabotageScenario& s) {
    s.validate();
    if (s.s_m == 0) {
        throw PreconditionError("s_m = 0: honest and sabotage outcomes coincide, inconclusive");
    }

    // Every peer of the system as an individual entry; the outside peers
    // collapse to one entry since they are held constant.
    std::vector<double> sabotaged = s.member_trusts;
    sabotaged.push_back(s.outside_trust);
    std::vector<double> honest = sabotaged;
    for (std::size_t i = 0; i < s.list_size(); ++i) honest[i] += static_cast<double>(s.s_m);

    IncentiveReport r;
    r.honest_utility = share(honest, s.target);
    r.sabotage_utility = share(sabotaged, s.target);
    r.scaled_fraction = static_cast<double>(s.list_size()) * share(sabotaged, s.target);

    const int condition = compare(1.0, r.scaled_fraction, 1.0);
    const int payoff = compare(r.honest_utility, r.sabotage_utility,
                               std::max(r.honest_utility, r.sabotage_utility));
    r.predicted_honest = condition >= 0;
    r.boundary = condition == 0;
    r.agree = condition == payoff;
    return r;
}

}  // namespace philos
