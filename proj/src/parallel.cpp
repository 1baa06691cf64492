#include "goursat/parallel.hpp"

#include <cstdlib>
#include <string>

namespace goursat {

int worker_count() {
    static const int cached = [] {
        int n = 0;
        if (const char* env = std::getenv("GOURSAT4D_THREADS")) {
            try {
                n = std::stoi(env);
            } catch (...) {
                n = 0;
            }
        }
        if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
        return n > 0 ? n : 1;
    }();
    return cached;
}

}  // namespace goursat
