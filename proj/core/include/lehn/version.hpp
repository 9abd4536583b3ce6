#ifndef LEHN_VERSION_HPP
#define LEHN_VERSION_HPP

namespace lehn {

// Keep in sync with the CMake project version.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace lehn

#endif  // LEHN_VERSION_HPP
