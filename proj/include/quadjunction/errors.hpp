// Error taxonomy. Validation errors are bad inputs/configs; numerical errors
// are failures of an otherwise well-posed computation. The CLI maps the two
// categories to exit codes 2 and 3.
#pragma once

#include <stdexcept>
#include <string>

namespace qj {

enum class ErrorKind { validation, numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string what) : std::runtime_error(std::move(what)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct ClosenessViolation : Error {
    explicit ClosenessViolation(const std::string& w) : Error(ErrorKind::validation, w) {}
};
struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& w) : Error(ErrorKind::validation, w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorKind::validation, w) {}
};
struct InterpolantInfeasible : Error {
    explicit InterpolantInfeasible(const std::string& w) : Error(ErrorKind::numerical, w) {}
};
struct PatchOverlap : Error {
    explicit PatchOverlap(const std::string& w) : Error(ErrorKind::validation, w) {}
};
struct GoodnormalsViolation : Error {
    explicit GoodnormalsViolation(const std::string& w) : Error(ErrorKind::numerical, w) {}
};
struct ResolutionTooCoarse : Error {
    explicit ResolutionTooCoarse(const std::string& w) : Error(ErrorKind::validation, w) {}
};
struct NonconvergentPath : Error {
    explicit NonconvergentPath(const std::string& w) : Error(ErrorKind::numerical, w) {}
};
struct EnergyIncrease : Error {
    explicit EnergyIncrease(const std::string& w) : Error(ErrorKind::numerical, w) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorKind::validation, w) {}
};

}  // namespace qj
