#include "tradenet/threads.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tradenet/errors.hpp"

namespace tradenet {

std::optional<int> thread_cap_from_env() {
    const char* raw = std::getenv("TRADENET_THREADS");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    const std::string s(raw);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || value < 1)
        fail(Errc::domain_error,
             "TRADENET_THREADS must be a positive integer, got '" + s + "'");
    return value;
}

void apply_thread_cap() {
    const auto cap = thread_cap_from_env();
#ifdef _OPENMP
    if (cap) omp_set_num_threads(*cap);
#else
    (void)cap;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace tradenet
