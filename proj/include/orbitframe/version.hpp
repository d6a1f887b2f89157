#pragma once

#define ORBITFRAME_VERSION "0.1.0"

namespace orbitframe {
inline const char* version() { return ORBITFRAME_VERSION; }
}
