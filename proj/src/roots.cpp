#include "jetgeo/roots.hpp"

#include "jetgeo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace jetgeo {

namespace {

using Coeffs = std::vector<double>;  // ascending, trimmed (nonzero lead)

double sup_norm(const Coeffs& c) {
    double m = 0.0;
    for (double v : c)
        m = std::max(m, std::abs(v));
    return m;
}

// Drop leading coefficients below rel * sup-norm. Empty result = zero poly.
Coeffs trim(const Coeffs& c, double rel = 1e-13) {
    const double cut = rel * sup_norm(c);
    size_t n = c.size();
    while (n > 0 && std::abs(c[n - 1]) <= cut)
        --n;
    return Coeffs(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n));
}

double eval_at(const Coeffs& c, double x) {
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 0;)
        acc = acc * x + c[i];
    return acc;
}

double eval_scale_at(const Coeffs& c, double x) {
    const double ax = std::abs(x);
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 0;)
        acc = acc * ax + std::abs(c[i]);
    return acc;
}

void normalize_sup(Coeffs& c) {
    const double m = sup_norm(c);
    if (m > 0.0)
        for (double& v : c)
            v /= m;
}

// Remainder of num / den (den trimmed, nonconstant or constant). The
// quotient is discarded.
Coeffs remainder(Coeffs num, const Coeffs& den) {
    const size_t nd = den.size();
    const double lead = den[nd - 1];
    while (num.size() >= nd) {
        const double q = num.back() / lead;
        const size_t off = num.size() - nd;
        for (size_t i = 0; i + 1 < nd; ++i)
            num[off + i] -= q * den[i];
        num.pop_back();
    }
    return num;
}

// Sturm chain: p0, p1 = p0', then negated remainders until the sequence
// degenerates (reaching the gcd when p0 has multiple roots).
std::vector<Coeffs> sturm_chain(const Coeffs& p0, const Coeffs& p1) {
    std::vector<Coeffs> chain{p0, p1};
    normalize_sup(chain[0]);
    normalize_sup(chain[1]);
    while (chain.back().size() > 1) {
        Coeffs r = remainder(chain[chain.size() - 2], chain.back());
        // Operands are sup-normalized, so a remainder this small can only be
        // an exact zero plus rounding: the chain has reached the gcd (p0 has
        // multiple roots). Stopping keeps the generalized Sturm property --
        // variation differences count distinct roots. Continuing would push
        // normalized rounding garbage into the chain and corrupt the counts
        // near every multiple root.
        if (sup_norm(r) <= 1e-11)
            break;
        for (double& v : r)
            v = -v;
        r = trim(r, 1e-11);
        if (r.empty())
            break;
        normalize_sup(r);
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_variations(const std::vector<Coeffs>& chain, double x) {
    int var = 0;
    int prev = 0;
    for (const Coeffs& p : chain) {
        const double v = eval_at(p, x);
        const int s = (v > 0.0) - (v < 0.0);
        if (s != 0) {
            if (prev != 0 && s != prev)
                ++var;
            prev = s;
        }
    }
    return var;
}

struct Isolator {
    const Coeffs& q;
    const std::vector<Coeffs>& chain;
    std::vector<std::pair<double, double>> brackets;  // one root cluster each

    // Nudge x off a root of q before using it as a count probe: a point in
    // (lo, hi) where |q| rises above evaluation noise, if one exists.
    std::optional<double> probe_point(double lo, double hi) const {
        static constexpr double offsets[] = {0.5,          0.50012207031, 0.49877929688,
                                             0.5014648437, 0.4926757813,  0.5234567901};
        for (double f : offsets) {
            const double x = lo + f * (hi - lo);
            if (std::abs(eval_at(q, x)) > 1e-12 * eval_scale_at(q, x))
                return x;
        }
        return std::nullopt;
    }

    void isolate(double lo, double hi, int vlo, int vhi) {
        const int count = vlo - vhi;
        if (count <= 0)
            return;
        if (count == 1) {
            brackets.emplace_back(lo, hi);
            return;
        }
        // A bracket that cannot be probed (q within noise throughout) or has
        // shrunk to cluster width holds what double precision must treat as
        // one multiple root; the polish stage pins it down.
        const std::optional<double> mid =
            (hi - lo < 1e-10 * std::max(1.0, std::abs(lo) + std::abs(hi)))
                ? std::nullopt
                : probe_point(lo, hi);
        if (!mid) {
            brackets.emplace_back(lo, hi);
            return;
        }
        const int vmid = sign_variations(chain, *mid);
        isolate(lo, *mid, vlo, vmid);
        isolate(*mid, hi, vmid, vhi);
    }

    // Bisection on the Sturm count inside a single-root bracket. Works for
    // any multiplicity, unlike sign bisection on q.
    double refine(double lo, double hi, int vlo) const {
        for (int it = 0; it < 200; ++it) {
            if (hi - lo <= 4e-16 * std::max(1.0, std::max(std::abs(lo), std::abs(hi))))
                break;
            double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            if (std::abs(eval_at(q, mid)) <= 1e-13 * eval_scale_at(q, mid)) {
                // Landed on (or within noise of) the root: try a skewed cut.
                const double alt = lo + 0.4921875 * (hi - lo);
                if (alt > lo && alt < hi && std::abs(eval_at(q, alt)) > 1e-13 * eval_scale_at(q, alt))
                    mid = alt;
                else
                    return mid;
            }
            if (sign_variations(chain, mid) < vlo)
                hi = mid;  // root in (lo, mid]
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    }
};

// Newton polish of r as a root of p, clamped to [lo, hi]. The generous
// iteration budget lets even the linear convergence at a multiple root of p
// reach machine precision from the bisection stopping distance.
double newton_polish(const Coeffs& p, const Coeffs& dp, double r, double lo, double hi) {
    double best = r;
    double best_res = std::abs(eval_at(p, r));
    for (int it = 0; it < 80; ++it) {
        const double v = eval_at(p, r);
        const double d = eval_at(dp, r);
        if (d == 0.0)
            break;
        double next = r - v / d;
        next = std::clamp(next, lo, hi);
        const double res = std::abs(eval_at(p, next));
        if (res < best_res) {
            best = next;
            best_res = res;
        }
        if (next == r)
            break;
        r = next;
    }
    return best;
}

Coeffs derivative_of(const Coeffs& c) {
    if (c.size() <= 1)
        return Coeffs{0.0};
    Coeffs d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i)
        d[i - 1] = static_cast<double>(i) * c[i];
    return d;
}

}  // namespace

RootList real_roots(const Polynomial& q, double simple_tol) {
    Coeffs p0 = trim(Coeffs(q.coeffs().begin(), q.coeffs().end()), 0.0);
    if (p0.empty())
        throw IdenticallyZeroError("real_roots: polynomial is identically zero");
    if (p0.size() == 1)
        return {};

    // A root at the origin is structural: a_0 = ... = a_{j-1} = 0 exactly.
    // Strip the x^j factor now; the relative-scale tests below lose their
    // floor at x = 0 (every term vanishes with x), so the origin must never
    // reach the iterative machinery.
    size_t zero_mult = 0;
    while (zero_mult < p0.size() && p0[zero_mult] == 0.0)
        ++zero_mult;
    p0.erase(p0.begin(), p0.begin() + static_cast<std::ptrdiff_t>(zero_mult));

    RootList out;
    if (zero_mult > 0)
        out.roots.push_back({0.0, zero_mult == 1});
    if (p0.size() == 1)
        return out;

    // Cauchy bound: every real root satisfies |r| < B.
    double maxa = 0.0;
    for (size_t i = 0; i + 1 < p0.size(); ++i)
        maxa = std::max(maxa, std::abs(p0[i]));
    const double bound = 1.0 + maxa / std::abs(p0.back());

    const Coeffs dp0 = derivative_of(p0);
    const std::vector<Coeffs> chain = sturm_chain(p0, dp0);

    Isolator iso{p0, chain, {}};
    const int vlo = sign_variations(chain, -bound);
    const int vhi = sign_variations(chain, bound);
    iso.isolate(-bound, bound, vlo, vhi);

    // Derivative ladder p0, p0', p0'', ... down to a (nonzero) constant.
    std::vector<Coeffs> derivs{p0};
    while (derivs.back().size() > 1) derivs.push_back(derivative_of(derivs.back()));

    // First derivative order that is clearly nonvanishing at r: the local
    // multiplicity estimate a floating-point evaluation supports.
    const auto multiplicity_at = [&derivs](double r) {
        // Terminates at the last entry: the trimmed leading coefficient
        // keeps the final constant nonzero.
        for (std::size_t m = 1; m + 1 < derivs.size(); ++m)
            if (std::abs(eval_at(derivs[m], r)) > 1e-7 * eval_scale_at(derivs[m], r))
                return m;
        return derivs.size() - 1;
    };

    const auto strict_sign = [&](const Coeffs& p, double x) {
        const double v = eval_at(p, x);
        return (v > 0.0) - (v < 0.0);
    };
    // Bisect a sign change of p0 in (a, b), where sa is the sign at a.
    const auto bisect_flip = [&](double a, double b, int sa) {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            const int sm = strict_sign(p0, mid);
            if (sm == 0) return mid;
            (sm == sa ? a : b) = mid;
        }
        return 0.5 * (a + b);
    };
    // Rescue a bracket whose polished point is not a root.  The Sturm chain
    // of a high-degree polynomial is cancellation noise near a tight pair of
    // roots, so a bracket counted as one root can actually hold two simple
    // ones with q of equal sign at both ends.  Simple roots still force
    // honest sign changes of q: probe the bracket (including the interior
    // extremum of q, located by bisecting q'), bisect every flip found, and
    // polish each as usual.  Returns false when no flip survives polishing.
    const auto recover_bracket = [&](double blo, double bhi, double r_hint, RootList& sink) {
        std::vector<double> pts{blo};
        if (r_hint > blo && r_hint < bhi) pts.push_back(r_hint);
        const int dlo = strict_sign(dp0, blo);
        const int dhi = strict_sign(dp0, bhi);
        if (dlo != 0 && dhi != 0 && dlo != dhi) {
            double a = blo, b = bhi;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                const int sm = strict_sign(dp0, mid);
                if (sm == 0) { a = b = mid; break; }
                (sm == dlo ? a : b) = mid;
            }
            pts.push_back(0.5 * (a + b));
        }
        for (int g = 1; g < 64; ++g) pts.push_back(blo + (bhi - blo) * (g / 64.0));
        pts.push_back(bhi);
        std::sort(pts.begin(), pts.end());

        bool found = false;
        double prev_x = pts.front();
        int prev_s = strict_sign(p0, prev_x);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const double x = pts[i];
            const int sx = strict_sign(p0, x);
            if (sx == 0) continue;  // within rounding of a root; the flip straddling it is found anyway
            if (prev_s != 0 && sx != prev_s) {
                const double rb = bisect_flip(prev_x, x, prev_s);
                const double rp = newton_polish(p0, dp0, rb, prev_x, x);
                if (std::abs(eval_at(p0, rp)) > 1e-14 * eval_scale_at(p0, rp)) return false;
                const bool simple2 = multiplicity_at(rp) == 1 &&
                                     std::abs(eval_at(dp0, rp)) > simple_tol * eval_scale_at(dp0, rp);
                sink.roots.push_back({rp, simple2});
                found = true;
            }
            prev_x = x;
            prev_s = sx;
        }
        return found;
    };

    for (auto [lo, hi] : iso.brackets) {
        const int v = sign_variations(chain, lo);
        double r = iso.refine(lo, hi, v);

        // Alternate multiplicity estimation with Newton polish on the
        // (m-1)-th derivative (which has a simple, well-conditioned root at
        // a multiplicity-m root of q). The estimate sharpens as the location
        // improves: a double root first looks simple from bisection
        // distance, then reveals itself once Newton closes in.
        std::size_t m = 0;
        for (int round = 0; round < 5; ++round) {
            const std::size_t m_now = multiplicity_at(r);
            const double r_new = newton_polish(derivs[m_now - 1], derivs[m_now], r, lo, hi);
            const double floor = 1e-14 * eval_scale_at(p0, r_new);
            if (std::abs(eval_at(p0, r_new)) > std::max(std::abs(eval_at(p0, r)), floor))
                break;  // derivative polish drifted off the actual root
            r = r_new;
            if (m_now == m) break;
            m = m_now;
        }

        const bool simple =
            m == 1 && std::abs(eval_at(dp0, r)) > simple_tol * eval_scale_at(dp0, r);

        if (std::abs(eval_at(p0, r)) > 1e-14 * eval_scale_at(p0, r)) {
            if (!recover_bracket(lo, hi, r, out))
                throw NoConvergenceError("real_roots: residual check failed after polish");
            continue;
        }
        out.roots.push_back({r, simple});
    }

    std::sort(out.roots.begin(), out.roots.end(),
              [](const RealRoot& a, const RealRoot& b) { return a.location < b.location; });

    // Collapse phantom duplicates: isolation near a multiple root can emit
    // the same location from two adjacent brackets.
    RootList dedup;
    for (const RealRoot& root : out.roots) {
        if (!dedup.roots.empty() &&
            root.location - dedup.roots.back().location <=
                1e-9 * std::max(1.0, std::abs(root.location))) {
            dedup.roots.back().simple = false;
            if (std::abs(eval_at(p0, root.location)) <
                std::abs(eval_at(p0, dedup.roots.back().location)))
                dedup.roots.back().location = root.location;
            continue;
        }
        dedup.roots.push_back(root);
    }
    return dedup;
}

}  // namespace jetgeo
