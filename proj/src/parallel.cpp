#include "diskvolt/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace diskvolt {

int max_threads() {
    int cap = omp_get_max_threads();
    if (const char* env = std::getenv("DISKVOLT_THREADS")) {
        try {
            const int requested = std::stoi(env);
            if (requested >= 1 && requested < cap) cap = requested;
        } catch (...) {
            // unparseable cap values are ignored
        }
    }
    return cap < 1 ? 1 : cap;
}

}  // namespace diskvolt
