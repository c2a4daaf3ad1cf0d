#pragma once

#define GKDVBH_VERSION_STRING "1.0.0"

namespace gkdvbh {

inline const char* version() { return GKDVBH_VERSION_STRING; }

}  // namespace gkdvbh
