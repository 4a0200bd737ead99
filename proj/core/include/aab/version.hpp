#ifndef AAB_VERSION_HPP
#define AAB_VERSION_HPP

namespace aab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace aab

#endif  // AAB_VERSION_HPP
