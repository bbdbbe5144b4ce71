#ifndef PHIENT_RUNNER_HPP
#define PHIENT_RUNNER_HPP

namespace phient {

/// CLI entry point.  Exit codes: 0 all margins within tolerance, 1 a check
/// failed, 2 usage or configuration error.
int run_command(int argc, const char* const* argv);

}  // namespace phient

#endif
