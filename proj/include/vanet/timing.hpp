#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "vanet/errors.hpp"

namespace vanet::timing {

inline constexpr double kInfiniteDelay = std::numeric_limits<double>::infinity();

/// Packet length, data rate and the tolerable delay that bounds how many
/// transmission opportunities a warning gets. One slot carries one packet,
/// so the slot duration is L/R exactly.
struct LinkBudget {
    double packet_bits = 3000.0;
    double rate_bps = 6.0e6;
    double tolerable_delay_s = 0.1;

    void validate() const {
        if (!(packet_bits > 0.0)) throw domain_error("LinkBudget: packet_bits must be > 0");
        if (!(rate_bps > 0.0)) throw domain_error("LinkBudget: rate_bps must be > 0");
        if (!(tolerable_delay_s > 0.0))
            throw domain_error("LinkBudget: tolerable_delay_s must be > 0");
    }

    double slot_seconds() const { return packet_bits / rate_bps; }
};

/// Average number of slots until the first successful reception. A slot
/// succeeds when the transmitter talks (p_tx), the receiver listens
/// (1 - p_rx) and the packet survives interference (packet_success), all
/// independent, so the count is geometric with that per-slot rate.
/// In SAP mode the caller passes the effective receiver probability.
inline double expected_slots(double packet_success, double p_tx, double p_rx) {
    if (!(packet_success >= 0.0 && packet_success <= 1.0))
        throw domain_error("expected_slots: packet success probability must be in [0,1]");
    if (!(p_tx >= 0.0 && p_tx <= 1.0) || !(p_rx >= 0.0 && p_rx <= 1.0))
        throw domain_error("expected_slots: access probabilities must be in [0,1]");
    const double rate = packet_success * p_tx * (1.0 - p_rx);
    if (rate <= 0.0)
        throw infeasible_link_error("expected_slots: per-slot success rate is zero");
    return 1.0 / rate;
}

/// Non-throwing variant used by the trial engine; an impossible link is an
/// infinite expected wait, handled by the deadline fallback.
inline double expected_slots_or_infinity(double packet_success, double p_tx, double p_rx) {
    const double rate = packet_success * p_tx * (1.0 - p_rx);
    return rate > 0.0 ? 1.0 / rate : kInfiniteDelay;
}

/// Number of transmission opportunities inside the tolerable delay:
/// floor(tau_tol * R / L). Zero means a single packet does not fit and the
/// caller must treat the link as deadline-infeasible.
inline int transmission_opportunities(const LinkBudget& budget) {
    budget.validate();
    const double q = budget.tolerable_delay_s * budget.rate_bps / budget.packet_bits;
    // tiny guard so exact integer products survive binary rounding
    return static_cast<int>(std::floor(q + 1e-9));
}

/// P(first success within D opportunities) for a geometric slot count with
/// mean s: 1 - (1 - 1/s)^D. Monotone nondecreasing in D, nonincreasing in s.
inline double success_within_deadline(double slots, int opportunities) {
    if (!(slots >= 1.0)) throw domain_error("success_within_deadline: slots must be >= 1");
    if (opportunities < 0)
        throw domain_error("success_within_deadline: opportunities must be >= 0");
    if (opportunities == 0) return 0.0;
    return 1.0 - std::pow(1.0 - 1.0 / slots, opportunities);
}

/// Reception delay of the warning at vehicle i, minimum over the direct
/// path, every single-relay split and the predecessor brake-light path:
///
///   D(i) = min( min_{j=1..i-2} [ slot*s(0,j) + tau_j + slot*s(j,i) ],
///               slot*s(0,i),
///               slot*s(0,i-1) + tau_{i-1} ),            i > 2
///   D(1) = 0,   D(2) = slot*s(0,2)
///
/// slots_fn(tx, rx) returns the expected slot count of the physical link
/// from chain index tx to rx (+infinity for an unusable link). The leg from
/// the source to its immediate follower costs zero slots: that vehicle sees
/// the brake lights and needs no message. taus[j-1] is the perception
/// reaction time of driver j. V2 has no relay and, by definition here, no
/// brake-light term; the braking recursion already covers the visual path.
template <class SlotsFn>
double reception_delay(int i, SlotsFn&& slots_fn, std::span<const double> taus,
                       double slot_seconds) {
    if (i < 1) throw domain_error("reception_delay: vehicle index must be >= 1");
    if (!(slot_seconds > 0.0)) throw domain_error("reception_delay: slot_seconds must be > 0");
    if (i == 1) return 0.0;

    auto leg = [&](int tx, int rx) -> double {
        if (tx == 0 && rx == 1) return 0.0; // brake lights, no message needed
        const double s = slots_fn(tx, rx);
        if (!(s >= 1.0) && std::isfinite(s))
            throw domain_error("reception_delay: expected slot counts must be >= 1");
        return slot_seconds * s;
    };

    if (i == 2) return leg(0, 2);

    if (static_cast<int>(taus.size()) < i - 1)
        throw domain_error("reception_delay: need reaction times up to driver i-1");

    double best = leg(0, i);                       // direct from the source
    best = std::min(best, leg(0, i - 1) + taus[i - 2]); // predecessor brake lights
    for (int j = 1; j <= i - 2; ++j)               // one relay at vehicle j
        best = std::min(best, leg(0, j) + taus[j - 1] + leg(j, i));
    return best;
}

/// Per-vehicle timing summary for a chain of n vehicles (index 0 is the
/// braking leader). expected_slots_direct[i] is s(i) for the source link,
/// with the s(1) = 0 sentinel; reception_delays[i] is D(i).
struct ChainTiming {
    std::vector<double> expected_slots_direct;
    std::vector<double> reaction_times; // [i] = tau_i, [0] unused (0)
    std::vector<double> reception_delays;
};

template <class SlotsFn>
ChainTiming compute_chain_timing(int n, SlotsFn&& slots_fn, std::span<const double> taus,
                                 double slot_seconds) {
    if (n < 2) throw domain_error("compute_chain_timing: need at least two vehicles");
    if (static_cast<int>(taus.size()) != n - 1)
        throw domain_error("compute_chain_timing: need exactly n-1 reaction times");
    ChainTiming out;
    out.expected_slots_direct.assign(n, 0.0);
    out.reaction_times.assign(n, 0.0);
    out.reception_delays.assign(n, 0.0);
    for (int i = 1; i < n; ++i) {
        out.reaction_times[i] = taus[i - 1];
        out.expected_slots_direct[i] = (i == 1) ? 0.0 : slots_fn(0, i);
        out.reception_delays[i] = reception_delay(i, slots_fn, taus, slot_seconds);
    }
    return out;
}

} // namespace vanet::timing
