#pragma once

#include <cstddef>
#include <functional>

namespace psg {

/// Worker cap used by the raster and certificate kernels. 0 means
/// std::thread::hardware_concurrency().
void set_thread_count(unsigned n) noexcept;
unsigned thread_count() noexcept;

/// Runs body(i) for i in [0, n). Work items must be independent; results
/// must not depend on which thread runs which item.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace psg
