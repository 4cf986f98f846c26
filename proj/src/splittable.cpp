#include "lip/splittable.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lip {

Rational PiecewiseLinear::eval(const Rational& load) const {
    if (points.empty()) throw DomainError("empty cost table");
    if (load < points.front().first || load > points.back().first)
        throw DomainError("load outside cost table domain");
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (load <= points[i].first) {
            const auto& [x0, y0] = points[i - 1];
            const auto& [x1, y1] = points[i];
            return y0 + (y1 - y0) * (load - x0) / (x1 - x0);
        }
    }
    return points.back().second;
}

bool PiecewiseLinear::non_decreasing() const {
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].second < points[i - 1].second) return false;
    return true;
}

bool PiecewiseLinear::strictly_increasing() const {
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].second <= points[i - 1].second) return false;
    return true;
}

bool PiecewiseLinear::convex() const {
    std::optional<Rational> prev_slope;
    for (std::size_t i = 1; i < points.size(); ++i) {
        Rational slope = (points[i].second - points[i - 1].second) /
                         (points[i].first - points[i - 1].first);
        if (prev_slope && slope < *prev_slope) return false;
        prev_slope = slope;
    }
    return true;
}

Rational PiecewiseLinear::max_value() const {
    Rational m = 0;
    for (const auto& [x, y] : points) m = std::max(m, y);
    return m;
}

Rational SplittableInstance::total_demand() const {
    Rational total = 0;
    for (const auto& d : demands) total += d;
    return total;
}

void SplittableInstance::validate(bool require_convex) const {
    if (n < 1 || m < 1) throw ValidationError("need at least one player and facility");
    if (static_cast<int>(strategies.size()) != n ||
        static_cast<int>(demands.size()) != n)
        throw DimensionError("strategies/demands must have one entry per player");
    if (static_cast<int>(costs.size()) != m)
        throw DimensionError("one cost table per facility required");
    for (int i = 0; i < n; ++i) {
        if (demands[i] <= 0)
            throw ValidationError("player " + std::to_string(i) +
                                  ": demand must be positive");
        if (strategies[i].empty())
            throw ValidationError("player " + std::to_string(i) + ": no strategies");
        for (const auto& strat : strategies[i]) {
            if (strat.empty()) throw ValidationError("empty strategy facility set");
            for (int f : strat)
                if (f < 0 || f >= m) throw ValidationError("facility index out of range");
        }
    }
    const Rational total = total_demand();
    for (int f = 0; f < m; ++f) {
        const auto& c = costs[f];
        if (c.points.size() < 2)
            throw ValidationError("facility " + std::to_string(f) +
                                  ": cost table needs at least two breakpoints");
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            if (c.points[i].second < 0)
                throw ValidationError("facility " + std::to_string(f) +
                                      ": negative cost (non-negativity)");
            if (c.points[i].second > cost_bound)
                throw ValidationError("facility " + std::to_string(f) +
                                      ": cost exceeds bound C");
            if (i > 0 && c.points[i].first <= c.points[i - 1].first)
                throw ValidationError("facility " + std::to_string(f) +
                                      ": breakpoint loads must increase");
        }
        if (c.points.front().first > 0 || c.points.back().first < total)
            throw ValidationError("facility " + std::to_string(f) +
                                  ": cost table must cover [0, total demand]");
        if (!c.non_decreasing())
            throw ValidationError("facility " + std::to_string(f) +
                                  ": decreasing cost (monotonicity)");
        if (require_convex && !c.convex())
            throw ValidationError("facility " + std::to_string(f) +
                                  ": non-convex cost table");
    }
}

SplittableState uniform_state(const SplittableInstance& inst) {
    SplittableState state;
    for (int i = 0; i < inst.n; ++i) {
        int k = static_cast<int>(inst.strategies[i].size());
        state.intensity.emplace_back(k, inst.demands[i] / k);
    }
    return state;
}

void validate_state(const SplittableInstance& inst, const SplittableState& state) {
    if (static_cast<int>(state.intensity.size()) != inst.n)
        throw DimensionError("state must have one intensity vector per player");
    for (int i = 0; i < inst.n; ++i) {
        if (state.intensity[i].size() != inst.strategies[i].size())
            throw DimensionError("intensity arity mismatch for player " +
                                 std::to_string(i));
        Rational sum = 0;
        for (const auto& v : state.intensity[i]) {
            if (v < 0) throw ValidationError("negative intensity");
            sum += v;
        }
        if (sum != inst.demands[i])
            throw ValidationError("intensities of player " + std::to_string(i) +
                                  " do not sum to the demand");
    }
}

std::vector<Rational> loads(const SplittableInstance& inst,
                            const SplittableState& state) {
    std::vector<Rational> l(inst.m, 0);
    for (int i = 0; i < inst.n; ++i)
        for (std::size_t j = 0; j < state.intensity[i].size(); ++j)
            for (int f : inst.strategies[i][j]) l[f] += state.intensity[i][j];
    return l;
}

namespace {

// Facilities player i touches with intensity strictly above the threshold.
std::vector<char> used_facilities(const SplittableInstance& inst,
                                  const SplittableState& state, int i,
                                  const Rational& rel_threshold) {
    std::vector<char> used(inst.m, 0);
    Rational threshold = rel_threshold * inst.demands[i];
    for (std::size_t j = 0; j < state.intensity[i].size(); ++j)
        if (state.intensity[i][j] > threshold)
            for (int f : inst.strategies[i][j]) used[f] = 1;
    return used;
}

}  // namespace

std::vector<Rational> private_costs(const SplittableInstance& inst,
                                    const SplittableState& state,
                                    const Rational& rel_threshold) {
    auto l = loads(inst, state);
    std::vector<Rational> facility_cost(inst.m);
    for (int f = 0; f < inst.m; ++f) facility_cost[f] = inst.costs[f].eval(l[f]);

    std::vector<Rational> pi(inst.n, 0);
    for (int i = 0; i < inst.n; ++i) {
        auto used = used_facilities(inst, state, i, rel_threshold);
        for (int f = 0; f < inst.m; ++f)
            if (used[f]) pi[i] = std::max(pi[i], facility_cost[f]);
    }
    return pi;
}

SplittableCertificates lip_certificates(const SplittableInstance& inst,
                                        const SplittableState& state,
                                        const Rational& rel_threshold) {
    auto l = loads(inst, state);
    SplittableCertificates cert;
    cert.nu.resize(inst.m);
    cert.alex.resize(inst.m);
    for (int f = 0; f < inst.m; ++f) {
        cert.nu[f] = inst.costs[f].eval(l[f]);
        cert.alex[f] = {cert.nu[f], l[f]};
    }
    cert.phi = private_costs(inst, state, rel_threshold);
    cert.psi.assign(static_cast<std::size_t>(inst.n) * inst.m, 0);
    for (int i = 0; i < inst.n; ++i) {
        auto used = used_facilities(inst, state, i, rel_threshold);
        for (int f = 0; f < inst.m; ++f)
            if (used[f]) cert.psi[static_cast<std::size_t>(i) * inst.m + f] = cert.nu[f];
    }
    return cert;
}

long alpha_exponent(const SplittableInstance& inst, const Rational& alpha) {
    if (alpha <= 0) throw DomainError("alpha must be positive");
    Rational psi_max = 0;
    for (const auto& c : inst.costs) psi_max = std::max(psi_max, c.max_value());
    long q = static_cast<long>(inst.n) * inst.m;
    if (q <= 1 || psi_max == 0) return 1;
    double value = (2.0 * static_cast<double>(psi_max / alpha) + 1.0) *
                   std::log(static_cast<double>(q));
    return std::max(1L, static_cast<long>(std::ceil(value)));
}

Rational alpha_potential(const SplittableInstance& inst, const SplittableState& state,
                         long exponent, const Rational& rel_threshold) {
    if (exponent < 1) throw DomainError("exponent must be a positive integer");
    auto cert = lip_certificates(inst, state, rel_threshold);
    Rational total = 0;
    for (const auto& v : cert.psi)
        total += pow_rational(v / inst.cost_bound,
                              static_cast<unsigned long>(exponent));
    return total;
}

namespace {

// max sum(y) s.t. A y <= b, y >= 0, by primal simplex with Bland's rule.
// Sizes here are tiny (strategies x facilities of one player).
Rational lp_max_sum(const std::vector<std::vector<Rational>>& A,
                    const std::vector<Rational>& b) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows ? A[0].size() : 0;
    if (rows == 0) throw DomainError("unbounded packing LP");

    // Tableau: [A | I | b] with objective row [-1 ... -1 | 0 ... 0 | 0].
    std::vector<std::vector<Rational>> t(rows + 1,
                                         std::vector<Rational>(cols + rows + 1, 0));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) t[r][c] = A[r][c];
        t[r][cols + r] = 1;
        t[r][cols + rows] = b[r];
    }
    for (std::size_t c = 0; c < cols; ++c) t[rows][c] = -1;

    std::vector<std::size_t> basis(rows);
    for (std::size_t r = 0; r < rows; ++r) basis[r] = cols + r;

    while (true) {
        std::size_t pivot_col = cols + rows;
        for (std::size_t c = 0; c < cols + rows; ++c)
            if (t[rows][c] < 0) {
                pivot_col = c;
                break;
            }
        if (pivot_col == cols + rows) break;  // optimal

        std::size_t pivot_row = rows;
        std::optional<Rational> best;
        for (std::size_t r = 0; r < rows; ++r) {
            if (t[r][pivot_col] <= 0) continue;
            Rational ratio = t[r][cols + rows] / t[r][pivot_col];
            if (!best || ratio < *best) {
                best = ratio;
                pivot_row = r;
            } else if (ratio == *best && basis[r] < basis[pivot_row]) {
                pivot_row = r;  // Bland's rule
            }
        }
        if (pivot_row == rows) throw DomainError("unbounded packing LP");

        Rational pivot = t[pivot_row][pivot_col];
        for (auto& v : t[pivot_row]) v /= pivot;
        for (std::size_t r = 0; r <= rows; ++r) {
            if (r == pivot_row || t[r][pivot_col] == 0) continue;
            Rational factor = t[r][pivot_col];
            for (std::size_t c = 0; c <= cols + rows; ++c)
                t[r][c] -= factor * t[pivot_row][c];
        }
        basis[pivot_row] = pivot_col;
    }
    return t[rows][cols + rows];
}

// Largest extra load u in [0, limit] with c(base + u) <= theta; nullopt if
// even u = 0 exceeds theta.
std::optional<Rational> capacity(const PiecewiseLinear& c, const Rational& base,
                                 const Rational& limit, const Rational& theta) {
    if (c.eval(base) > theta) return std::nullopt;
    if (c.eval(base + limit) <= theta) return limit;
    Rational best = 0;
    for (std::size_t i = 1; i < c.points.size(); ++i) {
        const auto& [x0, y0] = c.points[i - 1];
        const auto& [x1, y1] = c.points[i];
        Rational u;
        if (y1 == y0) {
            if (y0 > theta) continue;
            u = x1 - base;
        } else {
            if (theta < std::min(y0, y1) || theta > std::max(y0, y1)) {
                if (y1 <= theta) u = x1 - base;
                else continue;
            } else {
                u = x0 + (theta - y0) * (x1 - x0) / (y1 - y0) - base;
            }
        }
        u = std::min(u, limit);
        if (u > best) best = u;
    }
    return best;
}

// Can player i route their whole demand at bottleneck cost <= theta, other
// players' loads fixed?
bool threshold_feasible(const SplittableInstance& inst, int player,
                        const std::vector<Rational>& residual,
                        const Rational& theta) {
    const Rational d = inst.demands[player];
    std::vector<std::optional<Rational>> cap(inst.m);
    for (int f = 0; f < inst.m; ++f)
        cap[f] = capacity(inst.costs[f], residual[f], d, theta);

    const auto& strats = inst.strategies[player];
    std::vector<int> usable;  // strategies whose facilities all admit load
    for (std::size_t j = 0; j < strats.size(); ++j) {
        bool ok = true;
        for (int f : strats[j])
            if (!cap[f]) ok = false;
        if (ok) usable.push_back(static_cast<int>(j));
    }
    if (usable.empty()) return false;

    // Packing LP over the binding facilities.
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (int f = 0; f < inst.m; ++f) {
        if (!cap[f] || *cap[f] >= d) continue;
        std::vector<Rational> row(usable.size(), 0);
        bool touched = false;
        for (std::size_t jj = 0; jj < usable.size(); ++jj)
            for (int g : strats[usable[jj]])
                if (g == f) row[jj] = 1, touched = true;
        if (touched) {
            A.push_back(std::move(row));
            b.push_back(*cap[f]);
        }
    }
    if (A.empty()) return true;  // no binding constraint
    // Some usable strategy may avoid every binding facility entirely.
    for (std::size_t jj = 0; jj < usable.size(); ++jj) {
        bool unconstrained = true;
        for (const auto& row : A)
            if (row[jj] != 0) unconstrained = false;
        if (unconstrained) return true;
    }
    return lp_max_sum(A, b) >= d;
}

double best_response_cost(const SplittableInstance& inst,
                          const SplittableState& state, int player) {
    auto l = loads(inst, state);
    std::vector<Rational> residual = l;
    for (std::size_t j = 0; j < state.intensity[player].size(); ++j)
        for (int f : inst.strategies[player][j])
            residual[f] -= state.intensity[player][j];

    Rational hi = 0;
    for (const auto& c : inst.costs) hi = std::max(hi, c.max_value());
    if (threshold_feasible(inst, player, residual, 0)) return 0.0;
    Rational lo = 0;
    for (int iter = 0; iter < 80; ++iter) {
        Rational mid = (lo + hi) / 2;
        if (threshold_feasible(inst, player, residual, mid))
            hi = mid;
        else
            lo = mid;
    }
    return static_cast<double>(hi);
}

}  // namespace

VerifyResult verify_alpha_unilateral(const SplittableInstance& inst,
                                     const SplittableState& state,
                                     const Rational& alpha, int samples,
                                     std::uint64_t seed) {
    validate_state(inst, state);
    const Rational threshold("1/1000000000000");
    auto pi = private_costs(inst, state, threshold);
    const double a = static_cast<double>(alpha);
    const double slack = 1e-7;

    VerifyResult result;
    result.ok = true;
    for (int i = 0; i < inst.n; ++i) {
        double best = best_response_cost(inst, state, i);
        if (static_cast<double>(pi[i]) - best > a + slack) {
            result.ok = false;
            result.violation =
                UnilateralViolation{i, static_cast<double>(pi[i]), best};
            return result;
        }
    }

    // Heuristic screen: random coalition deviations.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < samples; ++s) {
        std::vector<int> coalition;
        for (int i = 0; i < inst.n; ++i)
            if (unit(rng) < 0.5) coalition.push_back(i);
        if (coalition.size() < 2) continue;

        SplittableState dev = state;
        for (int i : coalition) {
            double total = 0;
            std::vector<double> w(inst.strategies[i].size());
            for (auto& v : w) total += (v = -std::log(unit(rng)));
            Rational sum = 0;
            for (std::size_t j = 0; j + 1 < w.size(); ++j) {
                dev.intensity[i][j] = Rational(w[j] / total) * inst.demands[i];
                sum += dev.intensity[i][j];
            }
            dev.intensity[i].back() = inst.demands[i] - sum;
        }
        auto pi_dev = private_costs(inst, dev, threshold);
        bool all_better = true;
        for (int i : coalition)
            if (static_cast<double>(pi[i] - pi_dev[i]) <= a + slack) all_better = false;
        if (all_better && !coalition.empty()) {
            result.ok = false;
            result.violation = UnilateralViolation{
                coalition.front(), static_cast<double>(pi[coalition.front()]),
                static_cast<double>(pi_dev[coalition.front()])};
            return result;
        }
    }
    return result;
}

namespace {

struct SurrogateEval {
    std::vector<std::vector<double>> bx, by;  // per-facility breakpoints
    double bound;
    long M;

    double cost(int f, double load) const {
        const auto& x = bx[f];
        const auto& y = by[f];
        if (load <= x.front()) return y.front();
        for (std::size_t i = 1; i < x.size(); ++i)
            if (load <= x[i])
                return y[i - 1] + (y[i] - y[i - 1]) * (load - x[i - 1]) /
                                      (x[i] - x[i - 1]);
        return y.back();
    }
    double slope(int f, double load) const {
        const auto& x = bx[f];
        const auto& y = by[f];
        for (std::size_t i = 1; i < x.size(); ++i)
            if (load < x[i] || i + 1 == x.size())
                return (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
        return 0.0;
    }
    // h_f(l) = (c_f(l)/C)^M * l and its derivative.
    double h(int f, double load) const {
        return std::pow(cost(f, load) / bound, static_cast<double>(M)) * load;
    }
    double dh(int f, double load) const {
        double c = cost(f, load) / bound;
        double cM = std::pow(c, static_cast<double>(M));
        double dc = slope(f, load) / bound;
        double term = c > 0 ? M * cM / c * dc * load : 0.0;
        return term + cM;
    }
};

}  // namespace

ApproxSneResult approx_sne(const SplittableInstance& inst, const Rational& alpha,
                           double eps_solver) {
    inst.validate(/*require_convex=*/true);
    const long M = alpha_exponent(inst, alpha);
    if (eps_solver <= 0) {
        double target = std::pow(static_cast<double>(alpha / (2 * inst.cost_bound)),
                                 static_cast<double>(M)) /
                        4.0;
        eps_solver = std::clamp(target, 1e-10, 1e-8);
    }

    // The surrogate only steers the solver; the alpha-SNE property is
    // certified afterwards by the exact verifier. Clamp its exponent so
    // (c/C)^M stays representable in doubles, or the gradient underflows
    // and the iteration stalls at its starting point.
    long effective = M;
    {
        double ratio_min = 1.0;
        for (const auto& c : inst.costs)
            for (const auto& [l, v] : c.points)
                if (v > 0)
                    ratio_min = std::min(
                        ratio_min, static_cast<double>(v / inst.cost_bound));
        if (ratio_min < 1.0) {
            long cap = static_cast<long>(600.0 / -std::log2(ratio_min));
            effective = std::clamp(cap, 8L, M);
        }
    }

    SurrogateEval surr;
    surr.bound = static_cast<double>(inst.cost_bound);
    surr.M = effective;
    for (const auto& c : inst.costs) {
        std::vector<double> x, y;
        for (const auto& [l, v] : c.points) {
            x.push_back(static_cast<double>(l));
            y.push_back(static_cast<double>(v));
        }
        surr.bx.push_back(std::move(x));
        surr.by.push_back(std::move(y));
    }

    std::vector<double> demand(inst.n);
    for (int i = 0; i < inst.n; ++i) demand[i] = static_cast<double>(inst.demands[i]);
    std::vector<std::vector<double>> xi(inst.n);
    for (int i = 0; i < inst.n; ++i)
        xi[i].assign(inst.strategies[i].size(),
                     demand[i] / inst.strategies[i].size());

    auto facility_loads = [&](const std::vector<std::vector<double>>& z) {
        std::vector<double> l(inst.m, 0.0);
        for (int i = 0; i < inst.n; ++i)
            for (std::size_t j = 0; j < z[i].size(); ++j)
                for (int f : inst.strategies[i][j]) l[f] += z[i][j];
        return l;
    };
    auto objective = [&](const std::vector<double>& l) {
        double total = 0;
        for (int f = 0; f < inst.m; ++f) total += surr.h(f, l[f]);
        return total;
    };

    ApproxSneResult result;
    result.exponent = M;
    const int max_iters = 200'000;
    double gap = 0;
    int iter = 0;
    for (; iter < max_iters; ++iter) {
        auto l = facility_loads(xi);
        std::vector<double> marginal(inst.m);
        for (int f = 0; f < inst.m; ++f) marginal[f] = surr.dh(f, l[f]);

        // Linear minimization: all of d_i on the cheapest strategy.
        std::vector<std::vector<double>> vertex(inst.n);
        gap = 0;
        for (int i = 0; i < inst.n; ++i) {
            std::vector<double> grad(xi[i].size(), 0.0);
            for (std::size_t j = 0; j < xi[i].size(); ++j)
                for (int f : inst.strategies[i][j]) grad[j] += marginal[f];
            std::size_t best =
                std::min_element(grad.begin(), grad.end()) - grad.begin();
            vertex[i].assign(xi[i].size(), 0.0);
            vertex[i][best] = demand[i];
            for (std::size_t j = 0; j < xi[i].size(); ++j)
                gap += grad[j] * (xi[i][j] - vertex[i][j]);
        }
        // Relative test: the objective scale shrinks like (c/C)^M, so an
        // absolute threshold would accept wildly unconverged states.
        if (gap <= eps_solver * std::max(objective(l), 1e-280)) break;

        // Exact-ish line search on the segment toward the vertex.
        auto blend_loads = [&](double gamma) {
            std::vector<std::vector<double>> z(inst.n);
            for (int i = 0; i < inst.n; ++i) {
                z[i].resize(xi[i].size());
                for (std::size_t j = 0; j < xi[i].size(); ++j)
                    z[i][j] = (1 - gamma) * xi[i][j] + gamma * vertex[i][j];
            }
            return z;
        };
        double lo = 0, hi = 1;
        for (int t = 0; t < 60; ++t) {
            double g1 = lo + (hi - lo) / 3, g2 = hi - (hi - lo) / 3;
            if (objective(facility_loads(blend_loads(g1))) <=
                objective(facility_loads(blend_loads(g2))))
                hi = g2;
            else
                lo = g1;
        }
        double gamma = (lo + hi) / 2;
        // Prefer the exact vertex when it is at least as good; it lets the
        // iterate reach simplex faces instead of only approaching them.
        if (objective(facility_loads(blend_loads(1.0))) <=
            objective(facility_loads(blend_loads(gamma))))
            gamma = 1.0;
        if (objective(facility_loads(blend_loads(gamma))) >= objective(l))
            break;  // no further progress representable in doubles
        xi = blend_loads(gamma);
    }
    result.iterations = iter;
    result.gap = gap;

    // Exact renormalization: tiny entries drop to zero, the rest are scaled
    // so each simplex constraint holds as a rational identity.
    for (int i = 0; i < inst.n; ++i) {
        std::vector<Rational> row(xi[i].size(), 0);
        Rational sum = 0;
        for (std::size_t j = 0; j < xi[i].size(); ++j) {
            if (xi[i][j] > 1e-9 * demand[i]) {
                row[j] = Rational(xi[i][j]);
                sum += row[j];
            }
        }
        for (auto& v : row) v = v * inst.demands[i] / sum;
        result.state.intensity.push_back(std::move(row));
    }

    auto verdict = verify_alpha_unilateral(inst, result.state, alpha);
    result.verified = verdict.ok;
    result.violation = verdict.violation;
    return result;
}

}  // namespace lip
