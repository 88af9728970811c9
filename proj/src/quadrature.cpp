#include "rv/quadrature.hpp"

#include <map>
#include <mutex>

namespace rv {

namespace {

GLRule build_gl(int n) {
    GLRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        real_t x = std::cos(kPi * (i + 0.75L) / (n + 0.5L));
        real_t dp = 0;
        for (int it = 0; it < 100; ++it) {
            real_t p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                real_t p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            real_t dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-21L) break;
        }
        r.x[i] = x;
        r.w[i] = 2 / ((1 - x * x) * dp * dp);
    }
    return r;
}

}  // namespace

const GLRule& gl_rule(int n) {
    static std::mutex mu;
    static std::map<int, GLRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gl(n)).first;
    return it->second;
}

}  // namespace rv
