#pragma once

namespace hg {

/// Worker threads used by the parallel sweeps; 0 means one per hardware thread.
/// Results do not depend on this value.
void set_worker_threads(unsigned n);
unsigned worker_threads();

}  // namespace hg
