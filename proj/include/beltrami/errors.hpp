#pragma once

// Typed error hierarchy. Every failure mode callers are expected to branch on
// gets its own class; kind() returns a stable machine-readable tag used by the
// CLI's error JSON.

#include <stdexcept>
#include <string>

namespace beltrami {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// --- jet arithmetic ---------------------------------------------------------

// Binary operation on jets with different orders or base points.
struct MismatchedJets : Error {
    explicit MismatchedJets(const std::string& msg) : Error("MismatchedJets", msg) {}
};

// Reciprocal of a jet whose value is within eps_div of zero.
struct DivisionNearZero : Error {
    explicit DivisionNearZero(const std::string& msg) : Error("DivisionNearZero", msg) {}
};

// Elementary function evaluated outside its real domain (sqrt/log of <= 0).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error("DomainError", msg) {}
};

// A derivative or operator consumed more truncation orders than available.
struct OrderExhausted : Error {
    explicit OrderExhausted(const std::string& msg) : Error("OrderExhausted", msg) {}
};

// --- surfaces ----------------------------------------------------------------

struct UnknownSurface : Error {
    explicit UnknownSurface(const std::string& msg) : Error("UnknownSurface", msg) {}
};

struct BadParameter : Error {
    explicit BadParameter(const std::string& msg) : Error("BadParameter", msg) {}
};

// Parallel-offset surface would be singular: 1 - 2 rho H + rho^2 K vanishes.
struct InadmissibleOffset : Error {
    explicit InadmissibleOffset(const std::string& msg) : Error("InadmissibleOffset", msg) {}
};

// --- geometry ----------------------------------------------------------------

// |x_/1 x x_/2| below the regularity threshold: no tangent plane.
struct IrregularPoint : Error {
    explicit IrregularPoint(const std::string& msg) : Error("IrregularPoint", msg) {}
};

// |K| <= eps_K: second/third fundamental forms are degenerate here.
struct ParabolicPoint : Error {
    explicit ParabolicPoint(const std::string& msg) : Error("ParabolicPoint", msg) {}
};

// K < -eps_K while using the second fundamental form as a metric.
struct NonEllipticPoint : Error {
    explicit NonEllipticPoint(const std::string& msg) : Error("NonEllipticPoint", msg) {}
};

// --- type probe ---------------------------------------------------------------

struct IllConditioned : Error {
    explicit IllConditioned(const std::string& msg) : Error("IllConditioned", msg) {}
};

// Fewer usable sample points than unknowns in the fit.
struct TooFewSamples : Error {
    explicit TooFewSamples(const std::string& msg) : Error("TooFewSamples", msg) {}
};

// --- finite-difference oracle --------------------------------------------------

// A difference stencil would sample outside the surface's parameter domain.
struct StencilOutOfDomain : Error {
    explicit StencilOutOfDomain(const std::string& msg) : Error("StencilOutOfDomain", msg) {}
};

} // namespace beltrami
