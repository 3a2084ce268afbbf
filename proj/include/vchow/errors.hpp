#pragma once
#include <stdexcept>
#include <string>

namespace vchow {

/* Malformed input (bad JSON field, unknown generator, bad rational literal, ...).
   The CLI maps this to exit code 2. */
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* A mathematical precondition was violated (non-unit constant term, ring
   mismatch, non-isotropic subspace, ...).  `precondition` names the contract
   that failed; the CLI maps this to exit code 3. */
class MathError : public std::runtime_error {
public:
    MathError(std::string precondition_, const std::string& detail = "")
        : std::runtime_error(detail.empty() ? precondition_
                                            : precondition_ + ": " + detail),
          precondition(std::move(precondition_)) {}
    const std::string precondition;
};

} // namespace vchow
