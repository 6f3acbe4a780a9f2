#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "vanet/errors.hpp"
#include "vanet/types.hpp"

namespace vanet::kinematics {

/// One vehicle in the braking chain. Positions are longitudinal front
/// coordinates; vehicle length is folded into gap_to_predecessor, so
/// contact means positions coincide.
struct VehicleState {
    int index = 0;
    int lane = 0;
    double position_m = 0.0;
    double speed_mps = 30.0;
    double gap_to_predecessor_m = 0.0; // 0 for the leader
    double reaction_time_s = 1.0;
    double access_prob = 0.0;
    SafetyClass safety_class = SafetyClass::Safe;
};

/// Per-vehicle brake onset times and decelerations. The leader brakes at
/// time zero.
struct BrakeSchedule {
    std::vector<double> onset_times_s;
    std::vector<double> decelerations_mps2;

    void validate() const {
        if (onset_times_s.empty() || onset_times_s.size() != decelerations_mps2.size())
            throw domain_error("BrakeSchedule: onset and deceleration lists must match");
        if (onset_times_s.front() != 0.0)
            throw domain_error("BrakeSchedule: leader must brake at t = 0");
        for (double t : onset_times_s)
            if (!(t >= 0.0)) throw domain_error("BrakeSchedule: onset times must be >= 0");
        for (double a : decelerations_mps2)
            if (!(a > 0.0)) throw domain_error("BrakeSchedule: decelerations must be > 0");
    }
};

/// Brake onset times without communications: driver i reacts tau_i after
/// the predecessor starts braking, so t_i is the running sum of reaction
/// times. taus[i-1] belongs to vehicle i; the returned vector has
/// taus.size()+1 entries with t_0 = 0.
inline std::vector<double> brake_onset_no_comms(std::span<const double> taus) {
    std::vector<double> t(taus.size() + 1, 0.0);
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!(taus[i] > 0.0))
            throw domain_error("brake_onset_no_comms: reaction times must be > 0");
        t[i + 1] = t[i] + taus[i];
    }
    return t;
}

/// Brake onset times with warnings: driver i reacts tau_i after the
/// earlier of (a) the predecessor's brake lights, (b) the warning message,
/// i.e. t_i = tau_i + min(t_{i-1}, t_c(i)). comm_delays[i-1] is t_c for
/// vehicle i and must be 0 for vehicle 1 (adjacent, lights only);
/// +infinity disables the message path for that vehicle.
inline std::vector<double> brake_onset_with_comms(std::span<const double> taus,
                                                  std::span<const double> comm_delays) {
    if (comm_delays.size() != taus.size())
        throw domain_error("brake_onset_with_comms: need one comm delay per follower");
    if (!taus.empty() && comm_delays[0] != 0.0)
        throw domain_error("brake_onset_with_comms: vehicle 1 uses brake lights, t_c(1) must be 0");
    std::vector<double> t(taus.size() + 1, 0.0);
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!(taus[i] > 0.0))
            throw domain_error("brake_onset_with_comms: reaction times must be > 0");
        if (!(comm_delays[i] >= 0.0))
            throw domain_error("brake_onset_with_comms: comm delays must be >= 0");
        t[i + 1] = taus[i] + std::min(t[i], comm_delays[i]);
    }
    return t;
}

/// Piecewise trajectory: constant speed until brake onset, constant
/// deceleration to a stop, then stationary. freeze() truncates the motion
/// at a collision contact.
class BrakeTrajectory {
public:
    BrakeTrajectory(double x0, double speed, double brake_time, double decel)
        : x0_(x0), v_(speed), t_brake_(brake_time), decel_(decel) {
        if (!(speed > 0.0)) throw domain_error("BrakeTrajectory: speed must be > 0");
        if (!(decel > 0.0)) throw domain_error("BrakeTrajectory: deceleration must be > 0");
        if (!(brake_time >= 0.0)) throw domain_error("BrakeTrajectory: brake time must be >= 0");
        halt_time_ = t_brake_ + v_ / decel_;
        halt_pos_ = x0_ + v_ * t_brake_ + 0.5 * v_ * v_ / decel_;
    }

    double position(double t) const {
        if (t >= halt_time_) return halt_pos_;
        if (t <= t_brake_) return x0_ + v_ * t;
        const double dt = t - t_brake_;
        return x0_ + v_ * t_brake_ + v_ * dt - 0.5 * decel_ * dt * dt;
    }

    double velocity(double t) const {
        if (t >= halt_time_) return 0.0;
        if (t <= t_brake_) return v_;
        return v_ - decel_ * (t - t_brake_);
    }

    /// Stop in place at time t (inelastic contact).
    void freeze(double t) {
        if (t >= halt_time_) return; // already stationary
        halt_pos_ = position(t);
        halt_time_ = t;
    }

    double brake_time() const { return t_brake_; }
    double halt_time() const { return halt_time_; }
    double halt_position() const { return halt_pos_; }

private:
    double x0_, v_, t_brake_, decel_;
    double halt_time_, halt_pos_;
};

namespace detail {

/// Gap analysis between a leading and a following trajectory. The gap
/// (lead position minus follow position) is quadratic between trajectory
/// breakpoints; each segment is reconstructed exactly from three samples.
struct GapAnalysis {
    double min_gap;
    std::optional<double> first_contact; // earliest time the gap crosses below zero
};

inline GapAnalysis analyze_gap(const BrakeTrajectory& lead, const BrakeTrajectory& follow) {
    double bps[6] = {0.0, lead.brake_time(), lead.halt_time(),
                     follow.brake_time(), follow.halt_time(),
                     std::max(lead.halt_time(), follow.halt_time())};
    std::sort(std::begin(bps), std::end(bps));

    const auto gap = [&](double t) { return lead.position(t) - follow.position(t); };

    GapAnalysis out{gap(0.0), std::nullopt};
    for (int k = 0; k + 1 < 6; ++k) {
        const double t0 = bps[k], t1 = bps[k + 1];
        if (!(t1 > t0)) continue;
        const double h = t1 - t0;
        const double g0 = gap(t0), gm = gap(t0 + 0.5 * h), g1 = gap(t1);
        // exact quadratic through the three samples, u = (t - t0)/h in [0,1]
        const double A = 2.0 * g0 - 4.0 * gm + 2.0 * g1;
        const double B = -3.0 * g0 + 4.0 * gm - g1;
        const double C = g0;

        double seg_min = std::min(g0, g1);
        double u_min = g1 < g0 ? 1.0 : 0.0;
        if (A > 0.0) {
            const double u_star = -B / (2.0 * A);
            if (u_star > 0.0 && u_star < 1.0) {
                const double g_star = C + B * u_star + A * u_star * u_star;
                if (g_star < seg_min) {
                    seg_min = g_star;
                    u_min = u_star;
                }
            }
        }
        out.min_gap = std::min(out.min_gap, seg_min);

        if (!out.first_contact && seg_min < 0.0) {
            // earliest zero of the segment quadratic before the dip
            double u_root = u_min;
            if (std::abs(A) < 1e-300) {
                u_root = -C / B;
            } else {
                const double disc = B * B - 4.0 * A * C;
                const double sq = std::sqrt(std::max(0.0, disc));
                const double r1 = (-B - sq) / (2.0 * A);
                const double r2 = (-B + sq) / (2.0 * A);
                u_root = std::min(r1, r2);
                if (u_root < 0.0) u_root = std::max(r1, r2);
            }
            u_root = std::clamp(u_root, 0.0, 1.0);
            out.first_contact = t0 + u_root * h;
        }
        if (out.first_contact) break; // min gap after a freeze is the contact value
    }
    return out;
}

} // namespace detail

/// Minimum over time of (leader rear - follower front) for two vehicles at
/// common initial speed v and initial separation gap, braking at the given
/// times with decelerations a_lead / a_follow. Negative means collision.
/// With equal decelerations this reduces to gap - v * max(0, dt).
inline double min_gap_two_vehicles(double v, double gap, double lead_brake_time,
                                   double follow_brake_time, double a_lead,
                                   double a_follow) {
    if (!(v > 0.0)) throw domain_error("min_gap_two_vehicles: speed must be > 0");
    if (!(gap > 0.0)) throw domain_error("min_gap_two_vehicles: gap must be > 0");
    if (!(lead_brake_time >= 0.0 && follow_brake_time >= 0.0))
        throw domain_error("min_gap_two_vehicles: brake times must be >= 0");
    BrakeTrajectory lead(gap, v, lead_brake_time, a_lead);
    BrakeTrajectory follow(0.0, v, follow_brake_time, a_follow);
    return detail::analyze_gap(lead, follow).min_gap;
}

inline double min_gap_two_vehicles(double v, double gap, double lead_brake_time,
                                   double follow_brake_time, double a) {
    return min_gap_two_vehicles(v, gap, lead_brake_time, follow_brake_time, a, a);
}

struct CollisionEvent {
    int vehicle = 0; // the striking (following) vehicle
    double time_s = 0.0;
    double position_m = 0.0;
    double closing_speed_mps = 0.0;
};

struct ChainCollisionReport {
    std::vector<std::uint8_t> collided; // [i] = vehicle i struck its predecessor
    std::vector<CollisionEvent> events;

    bool any() const {
        return std::any_of(collided.begin(), collided.end(), [](auto c) { return c != 0; });
    }
};

/// Full chain braking simulation, processed front to back. Vehicle i
/// collides when the gap to its (possibly collision-stopped) predecessor
/// goes negative; a colliding pair freezes at the contact point, so a
/// wreck becomes a stationary obstacle for the vehicle behind it.
inline ChainCollisionReport simulate_chain_braking(std::span<const VehicleState> chain,
                                                   const BrakeSchedule& schedule) {
    const std::size_t n = chain.size();
    if (n < 2) throw domain_error("simulate_chain_braking: need at least two vehicles");
    if (schedule.onset_times_s.size() != n)
        throw domain_error("simulate_chain_braking: schedule size must match chain");
    schedule.validate();
    for (std::size_t i = 1; i < n; ++i) {
        if (!(chain[i].position_m < chain[i - 1].position_m))
            throw domain_error("simulate_chain_braking: positions must strictly decrease");
        if (!(chain[i].gap_to_predecessor_m > 0.0))
            throw domain_error("simulate_chain_braking: gaps must be > 0");
        if (chain[i].speed_mps != chain[0].speed_mps)
            throw domain_error("simulate_chain_braking: chain moves at a common speed");
    }

    std::vector<BrakeTrajectory> traj;
    traj.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        traj.emplace_back(chain[i].position_m, chain[i].speed_mps,
                          schedule.onset_times_s[i], schedule.decelerations_mps2[i]);

    ChainCollisionReport report;
    report.collided.assign(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
        const auto res = detail::analyze_gap(traj[i - 1], traj[i]);
        if (!res.first_contact) continue;
        const double tc = *res.first_contact;
        CollisionEvent ev;
        ev.vehicle = static_cast<int>(i);
        ev.time_s = tc;
        ev.position_m = traj[i - 1].position(tc);
        ev.closing_speed_mps = traj[i].velocity(tc) - traj[i - 1].velocity(tc);
        traj[i - 1].freeze(tc);
        traj[i].freeze(tc);
        report.collided[i] = 1;
        report.events.push_back(ev);
    }
    return report;
}

} // namespace vanet::kinematics
