#pragma once

#include <stdexcept>
#include <string>

namespace pzeta {

enum class ErrorKind {
    invalid_input,
    domain,
    singularity_proximity,
    singular_local_factor,
    budget_exceeded,
    insufficient_data,
    unresolved_box,
    root_refinement,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so front ends can map
/// it to a stable exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace pzeta
