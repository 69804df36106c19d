#pragma once

#include <stdexcept>
#include <string>

namespace assoc7 {

// All library failures derive from Error so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DegeneratePlane : Error {
    using Error::Error;
};
struct ZeroVector : Error {
    using Error::Error;
};
struct NotInComplement : Error {
    using Error::Error;
};
struct ModulusOutOfRange : Error {
    using Error::Error;
};
struct InvalidCaseParams : Error {
    using Error::Error;
};
struct StepSizeUnderflow : Error {
    StepSizeUnderflow(const std::string& what, double t_fail) : Error(what), t(t_fail) {}
    double t;  // time at which step control gave up
};
struct OutOfSpan : Error {
    using Error::Error;
};
struct ModelPreconditionViolated : Error {
    using Error::Error;
};
struct AlphaConstraintViolated : Error {
    using Error::Error;
};
struct DegenerateEigenspace : Error {
    DegenerateEigenspace(const std::string& what, double res) : Error(what), residual(res) {}
    double residual;
};
struct ResonantFrequency : Error {
    using Error::Error;
};
struct InvalidFraction : Error {
    using Error::Error;
};
struct DriftPresent : Error {
    DriftPresent(const std::string& what, double d) : Error(what), drift(d) {}
    double drift;
};
struct NoCommonPeriod : Error {
    using Error::Error;
};
struct FitUnstable : Error {
    using Error::Error;
};
struct BlowUp : Error {
    using Error::Error;
};
struct GridTooCoarse : Error {
    using Error::Error;
};
struct UnsupportedFormat : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace assoc7
