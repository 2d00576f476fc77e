#pragma once

#include <vector>

#include "bbmlab/field.hpp"
#include "bbmlab/symbols.hpp"
#include "bbmlab/trace.hpp"

namespace bbmlab {

/// Mass, quadratic energy and cubic energy of one snapshot.
struct ConservedTriple {
    double e0;  ///< int u dx
    double e1;  ///< int u^2 + eps^2 u_x^2 dx (eps = 0 for KdV)
    double e2;  ///< int u_x^2 / 2 - u^3 / 3 dx
};

struct InvariantRecord {
    double time;
    ConservedTriple values;
};

using InvariantLog = std::vector<InvariantRecord>;

/// Quadratic parts by Parseval; the cubic term is a trapezoid sum of the
/// cube of the dealiased field.
ConservedTriple conserved(const Field& field, const DispersionModel& model);

/// max_t |E(t) - E(0)| / max(|E(0)|, 1e-14) for each functional.
struct DriftReport {
    double e0 = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;

    double max() const noexcept;
};

/// Throws InputError on an empty log.
DriftReport drift_report(const InvariantLog& log);

/// Default Gagliardo-Nirenberg constant for |u|_3^3 <= C |u|_2^{5/2} |u_x|_2^{1/2}:
/// the maximum of that ratio over the family sech^p, attained at p = 2,
/// (16/15)^{3/4} (3/4)^{5/4}.
inline constexpr double kDefaultGagliardoNirenberg = 0.73256830029694127;

/// |u|_3^3 / (|u|_2^{5/2} |u_x|_2^{1/2}) for a sampled field; 0 for the zero field.
double gagliardo_nirenberg_ratio(const Field& field);

/// H^1 ceiling sqrt(3 R^2 + 3 (C/3)^{4/3} R^{10/3}) that holds for all time
/// when the data has H^1 norm at most R. Throws ConfigError unless R, C > 0.
double h1_apriori_ceiling(double R, double c_gn);

struct H1MonitorResult {
    bool pass = true;
    double worst_ratio = 0.0;  ///< sup_t |u(t)|_{H^1} / ceiling
    double time_of_worst = 0.0;
    double sup_h1 = 0.0;
};

H1MonitorResult monitor_h1(const Trace& trace, double ceiling);

}  // namespace bbmlab
