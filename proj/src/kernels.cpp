#include "gbdm/kernels.hpp"

#include <cstdlib>

namespace gbdm::simd {

namespace {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* pick_default() {
  if (const char* env = std::getenv("GBDM_SIMD")) {
    std::string s(env);
    if (s == "scalar") return &scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
    if (s == "avx2" && cpu_has_avx2()) return &avx2_table();
#endif
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2()) return &avx2_table();
#endif
  return &scalar_table();
}

const KernelTable*& current() {
  static const KernelTable* t = pick_default();
  return t;
}

}  // namespace

const KernelTable& active() { return *current(); }

bool set_backend(const std::string& name) {
  if (name == "scalar") {
    current() = &scalar_table();
    return true;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (name == "avx2") {
    if (!cpu_has_avx2()) return false;
    current() = &avx2_table();
    return true;
  }
#endif
  return false;
}

}  // namespace gbdm::simd
