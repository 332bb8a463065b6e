#include "nsrad/regime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsrad::regime {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dim(int dim) {
    if (dim != 2 && dim != 3) throw std::domain_error("regime: dim must be 2 or 3");
}

// sqrt(16n^3 - 4n^2 - 4n + 1); the radicand equals 4n(4n^2 - n - 1) + 1.
double radical3(double n) {
    return std::sqrt(((16.0 * n - 4.0) * n - 4.0) * n + 1.0);
}

}  // namespace

double alpha_minus(int dim, double n) {
    require_dim(dim);
    if (!(n > 1.0)) throw std::domain_error("alpha_minus: requires n > 1");
    if (dim == 2) {
        const double s = std::sqrt(2.0 * n - 1.0);
        return 1.0 - s / (n + s);
    }
    return 1.0 - 2.0 * (2.0 * n - 1.0) / (radical3(n) + 6.0 * n - 3.0);
}

double alpha_plus(int dim, double n) {
    require_dim(dim);
    if (!(n > 1.0)) throw std::domain_error("alpha_plus: requires n > 1");
    const double d = (n - 1.0) * (n - 1.0);
    if (dim == 2) {
        const double s = std::sqrt(2.0 * n - 1.0);
        return 1.0 + s * (n + s) / d;
    }
    return 1.0 + (radical3(n) + 6.0 * n - 3.0) / (4.0 * d);
}

double n_critical(int dim, double alpha) {
    require_dim(dim);
    const double alpha_floor = dim == 2 ? 0.5 : 2.0 / 3.0;
    if (!(alpha > alpha_floor))
        throw std::domain_error("n_critical: alpha outside admissible range");
    if (alpha == 1.0) return kInf;

    // alpha_minus is strictly increasing, alpha_plus strictly decreasing, so
    // f has a single sign change on the bracket.
    const bool minus_branch = alpha < 1.0;
    auto f = [&](double n) {
        return (minus_branch ? alpha_minus(dim, n) : alpha_plus(dim, n)) - alpha;
    };
    double lo = 1.0 + 1e-12;
    double hi = 1e9;
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw std::domain_error("n_critical: alpha not bracketed on [1+1e-12, 1e9]");
    // The stated tolerance is 1e-12; the bracket is cheap to collapse further,
    // which the inverse-identity bound needs on the steep (plus) branch.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((hi - lo) <= 1e-15 * mid) return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (fm * flo < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

bool in_m_set(const Rational& q) {
    if (q <= Rational(1)) return false;
    return (q - Rational(1)).denominator_odd();
}

ExponentInterval artificial_exponent_interval(int dim, double p) {
    require_dim(dim);
    if (!(p > 1.0)) throw std::domain_error("artificial_exponent_interval: requires p > 1");
    const double n = (dim == 3 && p < 1.55) ? 1.55 : p;
    return {alpha_minus(dim, n), 1.0 - 1.0 / (2.0 * n)};
}

double select_artificial_exponent(int dim, double p) {
    if (dim == 3 && p < 1.55) return 0.677;
    const ExponentInterval iv = artificial_exponent_interval(dim, p);
    return 0.5 * (iv.lo + iv.hi);
}

const char* regime_name(RegimeKind kind) {
    switch (kind) {
        case RegimeKind::classical_existence: return "classical-existence";
        case RegimeKind::classical_longtime: return "classical-longtime";
        case RegimeKind::shallow_water_endpoint: return "shallow-water-endpoint";
        case RegimeKind::weak_2d: return "weak-2d";
        case RegimeKind::weak_3d: return "weak-3d";
        case RegimeKind::vacuum_vanishing: return "vacuum-vanishing";
        case RegimeKind::origin_vacuum_weak: return "origin-vacuum-weak";
    }
    return "?";
}

const RegimeVerdict& RegimeReport::verdict(RegimeKind kind) const {
    for (const auto& v : verdicts)
        if (v.kind == kind) return v;
    throw std::logic_error("RegimeReport: verdict missing");
}

namespace {

class VerdictBuilder {
public:
    explicit VerdictBuilder(RegimeKind kind) { v_.kind = kind; }

    VerdictBuilder& check(std::string cond, double lhs, double rhs, bool ok) {
        v_.checks.push_back({std::move(cond), lhs, rhs, ok});
        return *this;
    }
    VerdictBuilder& lt(std::string cond, double lhs, double rhs) {
        return check(std::move(cond), lhs, rhs, lhs < rhs);
    }
    VerdictBuilder& le(std::string cond, double lhs, double rhs) {
        return check(std::move(cond), lhs, rhs, lhs <= rhs);
    }
    VerdictBuilder& eq(std::string cond, double lhs, double rhs) {
        return check(std::move(cond), lhs, rhs, lhs == rhs);
    }
    VerdictBuilder& missing(const std::string& what) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return check(what + " provided", nan, nan, false);
    }

    RegimeVerdict done() {
        v_.satisfied = std::all_of(v_.checks.begin(), v_.checks.end(),
                                   [](const ConditionCheck& c) { return c.satisfied; });
        return std::move(v_);
    }

private:
    RegimeVerdict v_;
};

}  // namespace

RegimeReport classify_regime(int dim, double alpha, double gamma,
                             std::optional<double> p, std::optional<Rational> q) {
    require_dim(dim);
    RegimeReport rep;
    rep.dim = dim;
    rep.alpha = alpha;
    rep.gamma = gamma;
    rep.p = p;
    rep.q = q;

    const double qd = q ? q->to_double() : std::numeric_limits<double>::quiet_NaN();
    const bool q_in_m = q && in_m_set(*q);

    // n_N(alpha), defined for alpha above the physical floor; conditions that
    // compare against it are reported unsatisfied when it is undefined.
    const double alpha_floor = dim == 2 ? 0.5 : 2.0 / 3.0;
    const double n_of_alpha =
        alpha > alpha_floor ? n_critical(dim, alpha) : std::numeric_limits<double>::quiet_NaN();

    {  // classical existence, alpha < 1
        VerdictBuilder b(RegimeKind::classical_existence);
        if (dim == 2) {
            b.lt("0.5 < alpha", 0.5, alpha).lt("alpha < 1", alpha, 1.0).lt("gamma > 1", 1.0, gamma);
        } else {
            b.lt("0.686 < alpha", 0.686, alpha).lt("alpha < 1", alpha, 1.0);
            b.lt("gamma > 1", 1.0, gamma);
            const double gmax = std::isnan(n_of_alpha)
                                    ? std::numeric_limits<double>::quiet_NaN()
                                    : 6.0 * alpha - 3.0 + (3.0 - 5.0 * alpha) / (2.0 * n_of_alpha);
            b.lt("gamma < 6 alpha - 3 + (3 - 5 alpha)/(2 n3(alpha))", gamma, gmax);
        }
        rep.verdicts.push_back(b.done());
    }
    {  // classical with T-independent bounds and decay
        VerdictBuilder b(RegimeKind::classical_longtime);
        if (dim == 2) {
            b.lt("0.54 < alpha", 0.54, alpha).lt("alpha < 1", alpha, 1.0).lt("gamma > 1", 1.0, gamma);
        } else {
            b.lt("0.689 < alpha", 0.689, alpha).lt("alpha < 1", alpha, 1.0);
            b.lt("gamma > 1", 1.0, gamma).lt("gamma < 3 alpha - 1", gamma, 3.0 * alpha - 1.0);
        }
        rep.verdicts.push_back(b.done());
    }
    {  // 2-D endpoint alpha = 1
        VerdictBuilder b(RegimeKind::shallow_water_endpoint);
        b.eq("N = 2", dim, 2.0).eq("alpha = 1", alpha, 1.0).le("gamma >= 3/2", 1.5, gamma);
        rep.verdicts.push_back(b.done());
    }
    {  // 2-D weak solution with vacuum
        VerdictBuilder b(RegimeKind::weak_2d);
        b.eq("N = 2", dim, 2.0);
        b.le("alpha >= 1", 1.0, alpha);
        b.lt("gamma > max{1, alpha - 1/2}", std::max(1.0, alpha - 0.5), gamma);
        if (p && q) {
            b.lt("1 < q", 1.0, qd).lt("q < p", qd, *p);
            b.lt("p < n2(alpha)", *p, std::isnan(n_of_alpha) ? -kInf : n_of_alpha);
            b.check("q in M_set", qd, 0.0, q_in_m);
            const double gfloor =
                std::max((1.0 - 1.0 / (2.0 * *p)) * alpha, alpha - 1.0 + qd / *p);
            b.le("gamma >= max{(1 - 1/(2p)) alpha, alpha - 1 + q/p}", gfloor, gamma);
        } else {
            b.missing(p ? "q" : "p");
        }
        rep.verdicts.push_back(b.done());
    }
    {  // 3-D weak solution with vacuum
        VerdictBuilder b(RegimeKind::weak_3d);
        b.eq("N = 3", dim, 3.0);
        b.le("alpha >= 1", 1.0, alpha).lt("alpha < 11.7", alpha, 11.7);
        b.lt("gamma > max{1, alpha - 1/2}", std::max(1.0, alpha - 0.5), gamma);
        if (p && q) {
            b.lt("1.5 < q", 1.5, qd).lt("q < p", qd, *p);
            b.lt("p < n3(alpha)", *p, std::isnan(n_of_alpha) ? -kInf : n_of_alpha);
            b.check("q in M_set", qd, 0.0, q_in_m);
            b.le("gamma >= 2 alpha - 1", 2.0 * alpha - 1.0, gamma);
            const double gcap = 3.0 * alpha - 1.0 + (alpha - 1.0) / (2.0 * *p) +
                                std::min(2.0 * alpha - 1.0,
                                         (3.0 * alpha - 2.0) * (1.0 - 1.0 / qd));
            b.lt("gamma < 3 alpha - 1 + (alpha-1)/(2p) + min{2 alpha - 1, (3 alpha - 2)(1 - 1/q)}",
                 gamma, gcap);
        } else {
            b.missing(p ? "q" : "p");
        }
        rep.verdicts.push_back(b.done());
    }
    {  // vacuum vanishes in finite time
        VerdictBuilder b(RegimeKind::vacuum_vanishing);
        b.le("alpha >= 1", 1.0, alpha);
        if (dim == 2) {
            b.lt("alpha < 7.46", alpha, 7.46);
            b.lt("gamma > 1", 1.0, gamma).le("gamma >= 2 alpha - 1", 2.0 * alpha - 1.0, gamma);
        } else {
            b.lt("alpha < 5.81", alpha, 5.81);
            b.lt("gamma > 1", 1.0, gamma);
            b.le("gamma >= 2 alpha - 1", 2.0 * alpha - 1.0, gamma);
            b.lt("gamma < 3 alpha - 1", gamma, 3.0 * alpha - 1.0);
        }
        if (p && q) {
            b.eq("p = 2", *p, 2.0);
            b.lt("N/2 < q", dim / 2.0, qd).lt("q < 2", qd, 2.0);
            b.check("q in M_set", qd, 0.0, q_in_m);
        } else {
            b.missing(p ? "q" : "p");
        }
        rep.verdicts.push_back(b.done());
    }
    {  // alpha = 1 weak solution, vacuum confined near origin
        VerdictBuilder b(RegimeKind::origin_vacuum_weak);
        b.eq("alpha = 1", alpha, 1.0).lt("gamma > 1", 1.0, gamma);
        if (p && q) {
            b.lt("N/2 < q", dim / 2.0, qd).lt("q < p", qd, *p);
            b.check("q in M_set", qd, 0.0, q_in_m);
            b.le("gamma >= 1 + 1/p", 1.0 + 1.0 / *p, gamma);
            if (dim == 3) b.lt("gamma < 3 - 1/q", gamma, 3.0 - 1.0 / qd);
        } else {
            b.missing(p ? "q" : "p");
        }
        rep.verdicts.push_back(b.done());
    }
    return rep;
}

}  // namespace nsrad::regime
