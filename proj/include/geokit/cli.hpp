#pragma once

#include <iosfwd>

namespace geokit::cli {

/// Exit status: 0 success, 1 unexpected failure, 2 usage or domain error,
/// 3 solver did not converge.
int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

}  // namespace geokit::cli
