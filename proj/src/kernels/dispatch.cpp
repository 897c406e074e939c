#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"

namespace scmix::kernels {
namespace {

bool cpu_supports_avx2() {
#if defined(SCMIX_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* find(std::string_view name) {
  for (const KernelTable* t : available_kernels()) {
    if (name == t->name) return t;
  }
  return nullptr;
}

const KernelTable* initial_choice() {
  if (const char* env = std::getenv("SCMIX_KERNELS")) {
    if (const KernelTable* t = find(env)) return t;
  }
  return available_kernels().back();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_choice()};
  return table;
}

}  // namespace

const KernelTable* avx2_kernels() {
#if defined(SCMIX_HAVE_AVX2)
  static const bool supported = cpu_supports_avx2();
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> tables{&scalar_kernels()};
  if (const KernelTable* t = avx2_kernels()) tables.push_back(t);
  return tables;
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelTable* t = find(name);
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

}  // namespace scmix::kernels
