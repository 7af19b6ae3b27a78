#pragma once

namespace larmor {

/// "0.1.0+<git describe>" when built from a checkout.
const char* version();

}  // namespace larmor
