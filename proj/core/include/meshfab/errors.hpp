#pragma once

#include <stdexcept>
#include <string>

namespace meshfab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// graph construction
struct OddStubCount : Error { using Error::Error; };
struct DegreeInfeasible : Error { using Error::Error; };
struct RetryExhausted : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };
struct BadTopologyFile : Error { using Error::Error; };

// routing
struct UnreachableNode : Error { using Error::Error; };
struct CycleDetected : Error { using Error::Error; };

// models
struct NotModeled : Error { using Error::Error; };
struct NoRoot : Error { using Error::Error; };

// flow
struct NoPath : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct PremiseViolated : Error { using Error::Error; };
struct BadTrafficSpec : Error { using Error::Error; };

// cabling
struct ProductMismatch : Error { using Error::Error; };
struct CapacityExceeded : Error { using Error::Error; };
struct MalformedPlan : Error { using Error::Error; };
struct EmptyPhase : Error { using Error::Error; };

// design / latency
struct Infeasible : Error {
    explicit Infeasible(const std::string& what, std::string constraint = "")
        : Error(what), binding_constraint(std::move(constraint)) {}
    std::string binding_constraint;
};
struct InfeasibleRatio : Error { using Error::Error; };
struct LayoutInfeasible : Error { using Error::Error; };
struct UnplacedNode : Error { using Error::Error; };

}  // namespace meshfab
