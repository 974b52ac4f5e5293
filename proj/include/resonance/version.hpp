#pragma once

#define RESONANCE_VERSION "0.1.0"

namespace resonance {
inline const char* version() { return RESONANCE_VERSION; }
}
