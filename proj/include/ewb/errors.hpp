#ifndef EWB_ERRORS_HPP
#define EWB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ewb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonZeroMean : Error { using Error::Error; };
struct NegativePowerOnMean : Error { using Error::Error; };
struct OutOfBand : Error { using Error::Error; };
struct VacuumState : Error { using Error::Error; };
struct CflViolation : Error { using Error::Error; };
struct StencilOutOfRange : Error { using Error::Error; };
struct HypothesisViolation : Error { using Error::Error; };
struct LeftDomain : Error { using Error::Error; };
struct ConstraintDrift : Error { using Error::Error; };
struct FoldDetected : Error {
    FoldDetected(const std::string& msg, double t) : Error(msg), time(t) {}
    double time;
};
struct DegenerateFrame : Error { using Error::Error; };

struct BlowupDetected : Error {
    BlowupDetected(const std::string& msg, double t, double norm)
        : Error(msg), time(t), offending_norm(norm) {}
    double time;
    double offending_norm;
};

struct HyperbolicityLost : Error {
    HyperbolicityLost(const std::string& msg, double t, double norm)
        : Error(msg), time(t), offending_norm(norm) {}
    double time;
    double offending_norm;
};

struct ConfigError : Error { using Error::Error; };

}  // namespace ewb

#endif
