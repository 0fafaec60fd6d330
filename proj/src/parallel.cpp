#include "pararadon/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace pararadon {
namespace {

int initial_threads() {
  if (const char* env = std::getenv("PARARADON_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return 1;
}

std::atomic<int>& thread_setting() {
  static std::atomic<int> value{initial_threads()};
  return value;
}

}  // namespace

int num_threads() { return thread_setting().load(); }

void set_num_threads(int n) { thread_setting().store(n > 0 ? n : 1); }

}  // namespace pararadon
