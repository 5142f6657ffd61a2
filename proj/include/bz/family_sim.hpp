#pragma once

#include "bz/laurent.hpp"
#include "bz/twist_detect.hpp"
#include "bz/wd_eps.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bz {

struct FamilyPoint {
    std::string id;
    Assignment z;  // twist variable -> nonzero rational; missing means 1
};

struct SyntheticFamily {
    TwistSkeleton skeleton;
    std::vector<FamilyPoint> points;
    std::string base_point;
    /// Square root of q: a rational when q is a rational square, else the
    /// formal variable v.
    LaurentScalar v = LaurentScalar::var(kResidueVar);

    const FamilyPoint& point(const std::string& id) const;
    /// Values for every skeleton variable at the point.
    std::map<std::string, LaurentScalar> twist_values(const std::string& id) const;
    bool symbolic_v() const { return !v.is_constant(); }
};

/// q = nullopt selects the formal v. Otherwise q must be the square of a
/// positive rational.
SyntheticFamily make_family(TwistSkeleton skeleton, std::vector<FamilyPoint> points, std::string base_point,
                            std::optional<Rational> q = Rational(4));

enum class OracleImpl { ClosedForm, Enumeration };

/// Trace of a probe on the line's Jacquet module, twist values given
/// per variable (rational or formal), v possibly formal. tr(f_0 | tau) = 1.
LaurentScalar probe_trace(const TwistSkeleton& sk, const ProbeDescriptor& probe,
                          const std::map<std::string, LaurentScalar>& twists, const LaurentScalar& v,
                          OracleImpl impl = OracleImpl::ClosedForm);

LaurentScalar oracle_eval(const SyntheticFamily& fam, const ProbeDescriptor& probe, const std::string& point,
                          OracleImpl impl = OracleImpl::ClosedForm);

TraceOracle point_oracle(const SyntheticFamily& fam, const std::string& point,
                         OracleImpl impl = OracleImpl::ClosedForm);

/// Oracle with every twist left as its formal variable.
TraceOracle symbolic_oracle(const TwistSkeleton& sk, const LaurentScalar& v,
                            OracleImpl impl = OracleImpl::ClosedForm);

struct PointRatio {
    std::string id;
    LaurentScalar recovered;  // from probe traces only
    LaurentScalar direct;     // coeff of the family epsilon at x over its value at the base point
    bool match = false;
};

struct RecoveryReport {
    EpsilonFactor family;
    std::vector<PointRatio> rows;
    bool pass = true;
};

/// The multisegment a family realizes; segments with a nontrivial extra
/// twist w sit on their own cuspidal lines.
MultiSegment realized_multisegment(const TwistSkeleton& sk);

RecoveryReport run_epsilon_recovery(const SyntheticFamily& fam, std::int64_t psi_cond, const ExponentPolicy& policy);

struct RandomFamilyOptions {
    int max_lines = 2;
    int max_n = 5;
    int points = 20;
};

struct RandomFamily {
    SyntheticFamily family;
    ExponentPolicy policy;
    std::int64_t psi_cond = 0;
};

RandomFamily random_family(std::uint64_t seed, const RandomFamilyOptions& opt = {});

} // namespace bz
