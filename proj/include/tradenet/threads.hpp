#pragma once

#include <optional>

namespace tradenet {

// Parses TRADENET_THREADS. Empty/unset -> nullopt; anything that is not a
// positive integer throws DomainError.
std::optional<int> thread_cap_from_env();

// Applies the cap to OpenMP (no-op when built without OpenMP or unset).
void apply_thread_cap();

// Number of threads parallel regions will use (1 without OpenMP).
int max_threads();

} // namespace tradenet
