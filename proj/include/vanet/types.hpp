#pragma once

namespace vanet {

/// Two-category driver classification used by the access adaptation.
enum class SafetyClass { Safe, Unsafe };

inline const char* to_string(SafetyClass c) {
    return c == SafetyClass::Unsafe ? "unsafe" : "safe";
}

} // namespace vanet
