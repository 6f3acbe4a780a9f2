#pragma once

#include <array>
#include <cmath>
#include <span>
#include <sstream>
#include <string>

#include "vanet/errors.hpp"

namespace vanet::channel {

enum class MacMode { Ssp, Sap };

inline const char* to_string(MacMode m) { return m == MacMode::Sap ? "sap" : "ssp"; }

/// Propagation and MAC constants of the closed-form success probability.
/// beta is held in linear units; dB appears only at the API boundary.
struct ChannelParams {
    double alpha = 3.0;        // path loss exponent, > 1
    double beta_linear = 1.0;  // SIR decoding threshold, linear ratio
    MacMode mode = MacMode::Ssp;
    bool sap_approx = false;   // use the 2p approximation instead of 2p - p^2

    void validate() const {
        if (!(alpha > 1.0))
            throw domain_error("ChannelParams: path loss exponent alpha must be > 1");
        if (!(beta_linear > 0.0))
            throw domain_error("ChannelParams: beta must be a positive linear ratio");
    }
};

/// One interfering node: distance to the receiver and per-slot access
/// probability. The Bernoulli transmit indicator is realized per slot only
/// inside the Monte Carlo oracle; the closed form consumes p directly.
struct Interferer {
    double distance_m = 1.0;
    double access_prob = 0.0;

    void validate() const {
        if (!(distance_m > 0.0))
            throw domain_error("Interferer: distance must be > 0");
        if (!(access_prob >= 0.0 && access_prob <= 1.0))
            throw domain_error("Interferer: access probability must be in [0,1]");
    }
};

inline double db_to_linear(double x_db) {
    if (!std::isfinite(x_db)) throw domain_error("db_to_linear: value must be finite");
    return std::pow(10.0, x_db / 10.0);
}

inline double linear_to_db(double x) {
    if (!(x > 0.0)) throw domain_error("linear_to_db: value must be > 0");
    return 10.0 * std::log10(x);
}

/// IEEE 802.11p data rates and the SIR decoding threshold each requires.
struct RateEntry {
    double rate_bps;
    double beta_db;
};

inline constexpr std::array<RateEntry, 7> kRateTable{{
    {3.0e6, 5.0},
    {4.5e6, 6.0},
    {6.0e6, 8.0},
    {9.0e6, 11.0},
    {12.0e6, 15.0},
    {18.0e6, 20.0},
    {24.0e6, 25.0},
}};

/// Threshold lookup, total over the seven table rates. Rates are matched
/// to within 1 kbps to absorb config round-trips.
inline double sir_threshold_for_rate(double rate_bps) {
    for (const auto& e : kRateTable)
        if (std::abs(e.rate_bps - rate_bps) < 1e3) return e.beta_db;
    std::ostringstream msg;
    msg << "unsupported data rate " << rate_bps / 1e6
        << " Mbps; supported rates (Mbps):";
    for (const auto& e : kRateTable) msg << ' ' << e.rate_bps / 1e6;
    throw domain_error(msg.str());
}

/// Asynchronous slotting lets an interferer overlap at most two slots of a
/// transmission; the effective access probability is the union
/// p' = p + p - p*p = 2p - p^2 (exact; always within [0,1]).
inline double sap_effective_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw domain_error("sap_effective_probability: p must be in [0,1]");
    return 2.0 * p - p * p;
}

/// The small-p approximation p' ~= 2p, clamped to 1.
inline double sap_effective_probability_approx(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw domain_error("sap_effective_probability_approx: p must be in [0,1]");
    return std::min(1.0, 2.0 * p);
}

inline double effective_access(double p, MacMode mode, bool approx = false) {
    if (mode == MacMode::Ssp) return p;
    return approx ? sap_effective_probability_approx(p) : sap_effective_probability(p);
}

/// Closed-form probability that a packet sent from distance r is decoded at
/// the receiver under Rayleigh fading, path loss r^-alpha and p-persistent
/// interference:
///
///   P_s = prod_i [ p_i / (1 + beta (r / r_i)^alpha) + (1 - p_i) ]
///
/// The unit-mean exponential fading power is already integrated out of the
/// product form, so no fading parameter appears. In SAP mode every
/// interferer probability is first mapped through the effective two-slot
/// union before entering its factor.
inline double packet_success(double r, std::span<const Interferer> interferers,
                             const ChannelParams& params) {
    params.validate();
    if (!(r > 0.0)) throw domain_error("packet_success: transmitter distance must be > 0");
    double prod = 1.0;
    for (const auto& it : interferers) {
        it.validate();
        const double p = effective_access(it.access_prob, params.mode, params.sap_approx);
        if (p == 0.0) continue; // contributes a factor of exactly 1
        const double u = params.beta_linear * std::pow(r / it.distance_m, params.alpha);
        // w = u / (1 + u), written to stay exact as u -> inf
        const double w = (u == 0.0) ? 0.0 : 1.0 / (1.0 + 1.0 / u);
        prod *= 1.0 - p * w;
    }
    return prod;
}

} // namespace vanet::channel
