#include "core/welzl.hpp"

#include <algorithm>
#include <cmath>

#include "core/rng.hpp"

namespace rball {
namespace {

struct Support {
    int dim;
    std::vector<double> pts; // up to (dim + 1) * dim

    std::size_t count() const { return pts.size() / static_cast<std::size_t>(dim); }
    const double* at(std::size_t i) const { return pts.data() + i * static_cast<std::size_t>(dim); }
    void push(const double* p) { pts.insert(pts.end(), p, p + dim); }
    void pop() { pts.resize(pts.size() - static_cast<std::size_t>(dim)); }
};

// Circumsphere of the support set within its affine hull:
// center = p0 + sum(lambda_j (pj - p0)) with Gram system
// sum_j <pi-p0, pj-p0> lambda_j = |pi-p0|^2 / 2.
MinBall ball_of_support(const Support& s) {
    const int d = s.dim;
    const std::size_t k = s.count();
    MinBall mb;
    if (k == 0) {
        mb.center.assign(static_cast<std::size_t>(d), 0.0);
        mb.radius = -1.0;
        return mb;
    }
    if (k == 1) {
        mb.center.assign(s.at(0), s.at(0) + d);
        mb.radius = 0.0;
        return mb;
    }
    const std::size_t m = k - 1;
    std::vector<double> a(m * m, 0.0), rhs(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double g = 0.0;
            for (int c = 0; c < d; ++c)
                g += (s.at(i + 1)[c] - s.at(0)[c]) * (s.at(j + 1)[c] - s.at(0)[c]);
            a[i * m + j] = g;
        }
        rhs[i] = 0.5 * a[i * m + i];
    }
    // Gaussian elimination with partial pivoting
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i)
        perm[i] = i;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::fabs(a[r * m + col]) > std::fabs(a[piv * m + col]))
                piv = r;
        if (piv != col) {
            for (std::size_t c = 0; c < m; ++c)
                std::swap(a[col * m + c], a[piv * m + c]);
            std::swap(rhs[col], rhs[piv]);
        }
        const double p = a[col * m + col];
        if (std::fabs(p) < 1e-14) {
            // affinely dependent support; signal degenerate
            mb.radius = -1.0;
            mb.center.assign(static_cast<std::size_t>(d), 0.0);
            return mb;
        }
        for (std::size_t r = col + 1; r < m; ++r) {
            const double f = a[r * m + col] / p;
            for (std::size_t c = col; c < m; ++c)
                a[r * m + c] -= f * a[col * m + c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> lambda(m, 0.0);
    for (std::size_t i = m; i-- > 0;) {
        double v = rhs[i];
        for (std::size_t c = i + 1; c < m; ++c)
            v -= a[i * m + c] * lambda[c];
        lambda[i] = v / a[i * m + i];
    }
    mb.center.assign(s.at(0), s.at(0) + d);
    for (std::size_t j = 0; j < m; ++j)
        for (int c = 0; c < d; ++c)
            mb.center[static_cast<std::size_t>(c)] +=
                lambda[j] * (s.at(j + 1)[c] - s.at(0)[c]);
    double r2 = 0.0;
    for (int c = 0; c < d; ++c) {
        const double dc = mb.center[static_cast<std::size_t>(c)] - s.at(0)[c];
        r2 += dc * dc;
    }
    mb.radius = std::sqrt(r2);
    return mb;
}

bool in_ball(const MinBall& mb, const double* p, int d) {
    if (mb.radius < 0.0)
        return false;
    double r2 = 0.0;
    for (int c = 0; c < d; ++c) {
        const double dc = p[c] - mb.center[static_cast<std::size_t>(c)];
        r2 += dc * dc;
    }
    const double slack = mb.radius * mb.radius * (1.0 + 1e-12) + 1e-30;
    return r2 <= slack;
}

MinBall welzl(std::vector<const double*>& pts, std::size_t n, Support& support) {
    if (n == 0 || support.count() == static_cast<std::size_t>(support.dim) + 1)
        return ball_of_support(support);
    const double* p = pts[n - 1];
    MinBall mb = welzl(pts, n - 1, support);
    if (in_ball(mb, p, support.dim))
        return mb;
    support.push(p);
    MinBall mb2 = welzl(pts, n - 1, support);
    support.pop();
    if (mb2.radius < 0.0)
        return mb; // degenerate support; keep previous ball
    // move-to-front keeps boundary points near the recursion tail
    std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(n - 1),
                pts.begin() + static_cast<std::ptrdiff_t>(n));
    return mb2;
}

} // namespace

MinBall min_enclosing_ball(std::span<const double> flat_points, int dim) {
    if (dim < 1)
        throw std::domain_error("min_enclosing_ball: bad dimension");
    const std::size_t n = flat_points.size() / static_cast<std::size_t>(dim);
    if (n == 0)
        throw std::domain_error("min_enclosing_ball: empty point set");
    std::vector<const double*> pts(n);
    for (std::size_t i = 0; i < n; ++i)
        pts[i] = flat_points.data() + i * static_cast<std::size_t>(dim);
    // deterministic shuffle for the expected-linear behavior
    Rng rng(0x5eedc0de);
    for (std::size_t i = n; i > 1; --i)
        std::swap(pts[i - 1], pts[rng.next_u64() % i]);
    Support support{dim, {}};
    support.pts.reserve(static_cast<std::size_t>(dim + 1) * static_cast<std::size_t>(dim));
    return welzl(pts, n, support);
}

MinBall min_enclosing_ball(const PointSet& ps) {
    return min_enclosing_ball(ps.flat(), ps.dim());
}

MinBall min_enclosing_circle(std::span<const Vec2> points) {
    std::vector<double> flat;
    flat.reserve(points.size() * 2);
    for (Vec2 p : points) {
        flat.push_back(p.x);
        flat.push_back(p.y);
    }
    return min_enclosing_ball(flat, 2);
}

} // namespace rball
