#include "mwsn/parallel.hpp"

#include <algorithm>

namespace mwsn {

unsigned resolve_threads(Parallelism p) {
    if (p.threads != 0) return p.threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace mwsn
