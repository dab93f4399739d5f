#pragma once

namespace micropolar {

/// Keep large temporaries on the heap instead of fresh mmap regions. Field
/// operations allocate and free multi-megabyte buffers every step, and with
/// glibc's default thresholds each one is mapped and unmapped again. Call once
/// at program start; a no-op on other C libraries.
void tune_allocator() noexcept;

}  // namespace micropolar
