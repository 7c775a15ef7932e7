#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "idem/errors.hpp"
#include "idem/measure.hpp"
#include "idem/space.hpp"

namespace idem {

/// A saturated subset of the cone over a finite metric space, stored as its
/// threshold function: the height tau(x) in [0,1] under which the column at
/// x belongs to the set. Some column must reach the top (max tau = 1).
class threshold_function {
  public:
    static threshold_function make(finite_metric metric, std::vector<rat> tau) {
        if (tau.size() != metric.space().size())
            raise(errc::unknown_point, "threshold needs a height for every point");
        rat top(0);
        for (const auto& t : tau) {
            if (t < rat(0) || t > rat(1))
                raise(errc::out_of_range, "threshold heights must lie in [0,1]");
            top = rat::max(top, t);
        }
        if (top != rat(1)) raise(errc::not_reaching_top, "some height must equal 1");
        return threshold_function(std::move(metric), std::move(tau));
    }

    /// Saturation of a finite point set: per-point maximum of the listed
    /// heights, zero elsewhere.
    static threshold_function saturate(const finite_metric& metric,
                                       const std::vector<std::pair<label, rat>>& points) {
        std::vector<rat> tau(metric.space().size(), rat(0));
        for (const auto& [pt, t] : points) {
            if (t < rat(0) || t > rat(1))
                raise(errc::out_of_range, "cone heights must lie in [0,1]");
            auto i = metric.space().require(pt);
            tau[i] = rat::max(tau[i], t);
        }
        return make(metric, std::move(tau));
    }

    const finite_metric& metric() const noexcept { return metric_; }
    const finite_space& space() const noexcept { return metric_.space(); }
    const std::vector<rat>& heights() const noexcept { return tau_; }
    const rat& tau(std::size_t i) const { return tau_[i]; }
    const rat& at(const label& l) const { return tau_[space().require(l)]; }

    friend bool operator==(const threshold_function& a, const threshold_function& b) {
        return a.metric_ == b.metric_ && a.tau_ == b.tau_;
    }

  private:
    threshold_function(finite_metric metric, std::vector<rat> tau)
        : metric_(std::move(metric)), tau_(std::move(tau)) {}

    finite_metric metric_;
    std::vector<rat> tau_;
};

/// A pluggable order-preserving homeomorphism [0,1] -> [-inf,inf] together
/// with its inverse and the induced weight bijection [-inf,0] -> [-inf,inf]
/// (beta maps to xi(exp beta)). Endpoints are exact; interior values cross
/// the float boundary and are snapped to dyadic rationals.
struct xi_map {
    std::string name;
    std::function<ext_scalar(const rat&)> forward;
    std::function<rat(const ext_scalar&)> inverse;
    std::function<ext_scalar(const ext_scalar&)> alpha;
    std::function<ext_scalar(const ext_scalar&)> alpha_inv;

    /// The default: xi(t) = ln(t/(1-t)), inverse the standard sigmoid.
    /// The induced alpha(beta) = logit(exp beta) is computed in one double
    /// pass per value to keep full precision near the ends.
    static const xi_map& logit();

    /// Checks endpoint exactness and that inverse(forward(t)) returns to t
    /// within 1e-12 on a probe grid.
    void validate() const {
        if (!forward(rat(0)).is_neg_inf() || !forward(rat(1)).is_pos_inf())
            raise(errc::not_strictly_increasing, "xi endpoints must hit -inf and +inf");
        if (inverse(ext_scalar::neg_inf()) != rat(0) || inverse(ext_scalar::pos_inf()) != rat(1))
            raise(errc::not_strictly_increasing, "xi inverse endpoints must hit 0 and 1");
        const rat tol(1, 1000000000000LL);
        ext_scalar prev = ext_scalar::neg_inf();
        for (int k = 1; k < 16; ++k) {
            rat t(k, 16);
            ext_scalar w = forward(t);
            if (!(prev < w)) raise(errc::not_strictly_increasing, "xi must be strictly increasing");
            prev = w;
            if (rat::abs(inverse(w) - t) > tol)
                raise(errc::not_strictly_increasing, "xi inverse does not return to the probe grid");
        }
    }
};

namespace detail {

/// Smallest positive snapped height. Weights below roughly -27 would
/// otherwise round their heights to 0 and silently lose the atom.
inline rat min_height() { return rat(1, std::int64_t(1) << 40); }

inline rat clamp_height(double t) {
    rat r = rat::from_double(t);
    if (r <= rat(0)) return min_height();
    if (r >= rat(1)) return rat(1);
    return r;
}

}  // namespace detail

inline const xi_map& xi_map::logit() {
    static const xi_map instance = [] {
        xi_map m;
        m.name = "logit";
        m.forward = [](const rat& t) -> ext_scalar {
            if (t < rat(0) || t > rat(1)) raise(errc::out_of_range, "xi input outside [0,1]");
            if (t == rat(0)) return ext_scalar::neg_inf();
            if (t == rat(1)) return ext_scalar::pos_inf();
            double td = t.to_double();
            return ext_scalar(rat::from_double(std::log(td / (1.0 - td))));
        };
        m.inverse = [](const ext_scalar& w) -> rat {
            if (w.is_neg_inf()) return rat(0);
            if (w.is_pos_inf()) return rat(1);
            return detail::clamp_height(1.0 / (1.0 + std::exp(-w.to_double())));
        };
        m.alpha = [](const ext_scalar& b) -> ext_scalar {
            if (b.is_neg_inf()) return ext_scalar::neg_inf();
            if (b > ext_scalar(rat(0))) raise(errc::out_of_range, "alpha input outside [-inf,0]");
            if (b == ext_scalar(rat(0))) return ext_scalar::pos_inf();
            double bd = b.to_double();
            if (bd < -700.0) return b;  // logit(exp b) = b to double precision
            return ext_scalar(rat::from_double(bd - std::log1p(-std::exp(bd))));
        };
        m.alpha_inv = [](const ext_scalar& w) -> ext_scalar {
            if (w.is_neg_inf()) return ext_scalar::neg_inf();
            if (w.is_pos_inf()) return ext_scalar(rat(0));
            double wd = w.to_double();
            if (wd < -700.0) return w;  // ln(sigmoid w) = w to double precision
            return ext_scalar(rat::from_double(-std::log1p(std::exp(-wd))));
        };
        m.validate();
        return m;
    }();
    return instance;
}

/// Threshold -> max-min measure: the weight at x is xi(tau(x)); columns of
/// height zero carry no atom.
inline max_min_measure h(const threshold_function& a, const xi_map& xi = xi_map::logit()) {
    std::vector<ext_scalar> w;
    w.reserve(a.space().size());
    for (std::size_t i = 0; i < a.space().size(); ++i)
        w.push_back(a.tau(i).is_zero() ? ext_scalar::neg_inf() : xi.forward(a.tau(i)));
    return max_min_measure::from_weights(a.space(), w);
}

/// Max-min measure -> threshold, inverting h over the supplied metric.
inline threshold_function h_inv(const max_min_measure& mu, const finite_metric& metric,
                                const xi_map& xi = xi_map::logit()) {
    require_same_space(mu.space(), metric.space(), "h_inv needs the metric on the measure's space");
    std::vector<rat> tau(mu.space().size(), rat(0));
    for (const auto& a : mu.atoms()) tau[a.point] = xi.inverse(a.weight);
    return threshold_function::make(metric, std::move(tau));
}

inline threshold_function h_inv(const max_min_measure& mu, const xi_map& xi = xi_map::logit()) {
    return h_inv(mu, finite_metric::discrete(mu.space()), xi);
}

/// Threshold -> max-plus measure: the weight at x is ln(tau(x)).
inline max_plus_measure g(const threshold_function& a) {
    std::vector<ext_scalar> w;
    w.reserve(a.space().size());
    for (std::size_t i = 0; i < a.space().size(); ++i) {
        const rat& t = a.tau(i);
        if (t.is_zero())
            w.push_back(ext_scalar::neg_inf());
        else if (t == rat(1))
            w.push_back(ext_scalar(rat(0)));
        else
            w.push_back(ext_scalar(rat::min(rat(0), rat::from_double(std::log(t.to_double())))));
    }
    return max_plus_measure::from_weights(a.space(), w);
}

/// Max-plus measure -> threshold: tau(x) = exp(weight(x)).
inline threshold_function g_inv(const max_plus_measure& nu, const finite_metric& metric) {
    require_same_space(nu.space(), metric.space(), "g_inv needs the metric on the measure's space");
    std::vector<rat> tau(nu.space().size(), rat(0));
    for (const auto& a : nu.atoms()) {
        if (a.weight == ext_scalar(rat(0)))
            tau[a.point] = rat(1);
        else
            tau[a.point] = detail::clamp_height(std::exp(a.weight.to_double()));
    }
    return threshold_function::make(metric, std::move(tau));
}

inline threshold_function g_inv(const max_plus_measure& nu) {
    return g_inv(nu, finite_metric::discrete(nu.space()));
}

/// The functor isomorphism, max-plus -> max-min: h after g_inv, which acts
/// atomwise by the weight bijection alpha(beta) = xi(exp beta).
inline max_min_measure k(const max_plus_measure& nu, const xi_map& xi = xi_map::logit()) {
    std::vector<ext_scalar> w(nu.space().size(), ext_scalar::neg_inf());
    for (const auto& a : nu.atoms()) w[a.point] = xi.alpha(a.weight);
    return max_min_measure::from_weights(nu.space(), w);
}

/// Inverse direction, max-min -> max-plus: atomwise ln(xi^-1(weight)).
inline max_plus_measure k_inv(const max_min_measure& mu, const xi_map& xi = xi_map::logit()) {
    std::vector<ext_scalar> w(mu.space().size(), ext_scalar::neg_inf());
    for (const auto& a : mu.atoms()) w[a.point] = xi.alpha_inv(a.weight);
    return max_plus_measure::from_weights(mu.space(), w);
}

/// Image threshold along a map: column heights join over fibers. This is
/// the hyperspace leg of the naturality squares for h and g.
inline threshold_function threshold_pushforward(const finite_map& f, const threshold_function& a,
                                                const finite_metric& target_metric) {
    require_same_space(a.space(), f.source(), "threshold pushforward needs f on the threshold's space");
    require_same_space(target_metric.space(), f.target(), "target metric on f's target");
    std::vector<rat> tau(f.target().size(), rat(0));
    for (std::size_t i = 0; i < a.space().size(); ++i) {
        auto t = f.image_index(i);
        tau[t] = rat::max(tau[t], a.tau(i));
    }
    return threshold_function::make(target_metric, std::move(tau));
}

/// The cone metric: d((x,s),(y,t)) = min(s,t) d(x,y) + |s-t|. All points of
/// height zero are one apex.
inline rat cone_dist(const std::pair<label, rat>& p, const std::pair<label, rat>& q,
                     const finite_metric& d) {
    const auto& [x, s] = p;
    const auto& [y, t] = q;
    if (s < rat(0) || s > rat(1) || t < rat(0) || t > rat(1))
        raise(errc::out_of_range, "cone heights must lie in [0,1]");
    return rat::min(s, t) * d.at(x, y) + rat::abs(s - t);
}

namespace detail {

/// Directed Hausdorff distance between saturated sets, exact closed form.
/// For a source column top (x, s) the best target in the column at y sits
/// at height min(s, tau_B(y)) because diam <= 1, so the candidate cost is
/// min(s, tau_B(y)) d(x,y) + (s - tau_B(y))^+; the supremum over a
/// saturated column is attained at its top since each candidate cost is
/// nondecreasing in s. The grid oracle below double-checks this reduction.
inline rat directed_hausdorff(const threshold_function& a, const threshold_function& b) {
    const auto& d = a.metric();
    const std::size_t n = a.space().size();
    rat worst(0);
    for (std::size_t x = 0; x < n; ++x) {
        const rat& s = a.tau(x);
        if (s.is_zero()) continue;  // only the apex, distance 0
        rat best = s;  // cost of retreating to the apex
        for (std::size_t y = 0; y < n; ++y) {
            const rat& t = b.tau(y);
            rat cost = rat::min(s, t) * d(x, y) + rat::max(rat(0), s - t);
            best = rat::min(best, cost);
        }
        worst = rat::max(worst, best);
    }
    return worst;
}

}  // namespace detail

/// Hausdorff distance between two saturated sets over one metric space,
/// exact in rationals.
inline rat hausdorff_dist(const threshold_function& a, const threshold_function& b) {
    if (!(a.metric() == b.metric()))
        raise(errc::mismatched_spaces, "Hausdorff distance needs one metric space");
    return rat::max(detail::directed_hausdorff(a, b), detail::directed_hausdorff(b, a));
}

/// Independent verification oracle: discretizes both saturated sets on the
/// height grid {k step} plus the apex and brute-forces the finite-set
/// Hausdorff distance under the cone metric. Within step of the true value
/// (heights are truncated by at most step and the cone metric is
/// 1-Lipschitz in each height). Runs on a common integer denominator.
inline rat hausdorff_oracle(const threshold_function& a, const threshold_function& b,
                            const rat& step) {
    if (!(a.metric() == b.metric()))
        raise(errc::mismatched_spaces, "Hausdorff oracle needs one metric space");
    if (!(step > rat(0)) || step > rat(1, 10))
        raise(errc::out_of_range, "oracle step must lie in (0, 1/10]");

    using i128 = __int128;
    const auto& d = a.metric();
    const std::size_t n = a.space().size();

    auto gcd128 = [](i128 x, i128 y) {
        while (y != 0) {
            i128 t = x % y;
            x = y;
            y = t;
        }
        return x;
    };

    // common denominator Q for all metric entries
    i128 q = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            i128 den = d(i, j).den();
            q = q / gcd128(q, den) * den;
            if (q > (i128(1) << 62)) raise(errc::overflow, "metric denominators too large for the oracle");
        }
    std::vector<i128> dq(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dq[i * n + j] = i128(d(i, j).num()) * (q / i128(d(i, j).den()));

    // grid column heights: k = 1 .. floor(tau/step)
    auto levels = [&](const threshold_function& f, std::size_t x) -> std::int64_t {
        rat r = f.tau(x) / step;  // floor
        return r.num() / r.den();
    };
    std::vector<std::int64_t> ka(n), kb(n);
    for (std::size_t x = 0; x < n; ++x) {
        ka[x] = levels(a, x);
        kb[x] = levels(b, x);
    }

    // directed distance on the grids, scaled by q/step
    auto directed = [&](const std::vector<std::int64_t>& src, const std::vector<std::int64_t>& tgt) {
        i128 worst = 0;
        for (std::size_t x = 0; x < n; ++x)
            for (std::int64_t i = 1; i <= src[x]; ++i) {
                i128 best = i128(i) * q;  // the apex is always a target
                for (std::size_t y = 0; y < n && best > worst; ++y) {
                    const i128 dxy = dq[x * n + y];
                    for (std::int64_t j = 1; j <= tgt[y]; ++j) {
                        i128 cost = i128(std::min(i, j)) * dxy + i128(i > j ? i - j : j - i) * q;
                        if (cost < best) {
                            best = cost;
                            if (best <= worst) break;
                        }
                    }
                }
                if (best > worst) worst = best;
            }
        return worst;
    };

    i128 scaled = directed(ka, kb);
    i128 other = directed(kb, ka);
    if (other > scaled) scaled = other;
    // value = scaled * step / q; keep exact by splitting q into the rational
    rat out(0);
    i128 hi = scaled / q, lo = scaled % q;
    out = rat(std::int64_t(hi)) * step + rat(std::int64_t(lo), 1) / rat(std::int64_t(q)) * step;
    return out;
}

/// Metrization of the measure space: the Hausdorff distance between the
/// threshold representations.
inline rat measure_dist(const max_min_measure& mu, const max_min_measure& nu,
                        const finite_metric& metric, const xi_map& xi = xi_map::logit()) {
    require_same_space(mu.space(), nu.space(), "measure distance needs one space");
    return hausdorff_dist(h_inv(mu, metric, xi), h_inv(nu, metric, xi));
}

}  // namespace idem
