#pragma once

#include "weylglue/coxeter.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace weylglue {

constexpr std::uint64_t kDefaultSeed = 1729;
constexpr std::size_t kDefaultMaxOrder = 2000;

/// Named type ("B3") or a Cartan matrix literal ("2,-1;-1,2"), capped by WEYLGLUE_MAX_ORDER.
WeylGroup load_group(const std::string& type);

/// Entry point of the weylglue tool. Returns the process exit code:
/// 0 all checks pass, 1 a check failed, otherwise the ErrorKind value.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace weylglue
