#pragma once

#include <stdexcept>
#include <string>

namespace qst {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// linear algebra
struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& msg = "matrix is singular within tolerance") : Error(msg) {}
};
struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& msg = "iteration cap reached") : Error(msg) {}
};
struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& msg = "matrix is not positive definite") : Error(msg) {}
};

// polytopes
struct OriginNotInterior : Error {
    explicit OriginNotInterior(const std::string& msg = "origin is not interior to the body") : Error(msg) {}
};
struct Unbounded : Error {
    explicit Unbounded(const std::string& msg = "polyhedron is unbounded") : Error(msg) {}
};
struct EnumerationTooLarge : Error {
    explicit EnumerationTooLarge(const std::string& msg = "subset enumeration exceeds cap") : Error(msg) {}
};
struct CenterNotInterior : Error {
    explicit CenterNotInterior(const std::string& msg = "center is not strictly interior") : Error(msg) {}
};
struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& msg = "input is degenerate") : Error(msg) {}
};

// centers
struct DegenerateBody : Error {
    explicit DegenerateBody(const std::string& msg = "body has volume below tolerance") : Error(msg) {}
};
struct CenterVerificationFailed : Error {
    explicit CenterVerificationFailed(const std::string& msg = "center inclusion failed to verify") : Error(msg) {}
};

// sparse approximation
struct NotMember : Error {
    explicit NotMember(const std::string& msg = "point is not a member of the hull") : Error(msg) {}
};
struct CertificateViolated : Error {
    explicit CertificateViolated(const std::string& msg = "certificate verification failed") : Error(msg) {}
};

// selection pipeline
struct InputLacksUnitBall : Error {
    explicit InputLacksUnitBall(const std::string& msg = "input hull does not contain the unit ball") : Error(msg) {}
};

// upper bound
struct SpanFailure : Error {
    explicit SpanFailure(const std::string& msg = "vectors do not span the space") : Error(msg) {}
};
struct PropositionViolated : Error {
    explicit PropositionViolated(const std::string& msg = "guaranteed inequality failed numerically") : Error(msg) {}
};

// generation / misc
struct GenerationFailed : Error {
    explicit GenerationFailed(const std::string& msg = "instance generation exhausted rejection rounds") : Error(msg) {}
};
struct PreconditionViolation : Error {
    explicit PreconditionViolation(const std::string& msg = "caller precondition violated") : Error(msg) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& msg = "malformed input") : Error(msg) {}
};

} // namespace qst
