// SPDX-License-Identifier: Apache-2.0
//
// irspilot: pilot power allocation and link-level simulation for multi-IRS links
// Copyright (C) 2026 The irspilot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "irspilot/allocation.hpp"
#include "irspilot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace irspilot
{
    std::size_t AllocationProblem::total_elements() const
    {
        return std::accumulate(elements.begin(), elements.end(), std::size_t{0});
    }

    void AllocationProblem::validate() const
    {
        if (beta.empty())
            throw InvalidArgument("allocation problem needs at least one IRS");
        if (beta.size() != elements.size())
            throw InvalidArgument("allocation problem: beta and element counts differ in length");
        for (std::size_t k = 0; k < beta.size(); ++k)
        {
            if (!(beta[k] > 0.0) || !std::isfinite(beta[k]))
                throw InvalidArgument("allocation problem: beta_" + std::to_string(k + 1) + " must be positive");
            if (elements[k] < 1)
                throw InvalidArgument("allocation problem: M_" + std::to_string(k + 1) + " must be >= 1");
        }
        if (!(budget > 0.0) || !std::isfinite(budget))
            throw InvalidArgument("allocation problem: budget must be positive");
        if (!(sigma_z2 > 0.0) || !std::isfinite(sigma_z2))
            throw InvalidArgument("allocation problem: sigma_z^2 must be positive");
        if (!(min_snr_gamma > 0.0))
            throw InvalidArgument("allocation problem: gamma must be positive");
    }

    AllocationProblem AllocationProblem::from_link(const LinkStatistics &stats, std::span<const IrsSpec> irs_list,
                                                   double budget, double sigma_z2, double min_snr_gamma)
    {
        if (stats.beta2.size() != irs_list.size())
            throw InvalidArgument("link statistics do not match the IRS list");
        AllocationProblem problem;
        for (std::size_t k = 0; k < irs_list.size(); ++k)
        {
            problem.beta.push_back(std::sqrt(stats.beta2[k]));
            problem.elements.push_back(irs_list[k].num_elements);
        }
        problem.budget = budget;
        problem.sigma_z2 = sigma_z2;
        problem.min_snr_gamma = min_snr_gamma;
        problem.validate();
        return problem;
    }

    std::vector<double> expand_per_element(std::span<const double> per_irs_powers, const AllocationProblem &problem)
    {
        if (per_irs_powers.size() != problem.num_irs())
            throw InvalidArgument("per-IRS powers do not match the problem");
        std::vector<double> out;
        out.reserve(problem.total_elements());
        for (std::size_t k = 0; k < per_irs_powers.size(); ++k)
            out.insert(out.end(), problem.elements[k], per_irs_powers[k]);
        return out;
    }

    namespace
    {
        inline double inv_sqrt_term(double beta2, double sigma2, double p)
        {
            return 1.0 / std::sqrt(beta2 + sigma2 / p);
        }

        void check_powers(std::span<const double> powers)
        {
            for (double p : powers)
                if (!(p > 0.0) || !std::isfinite(p))
                    throw InvalidArgument("pilot powers must be positive and finite");
        }

        PilotAllocation make_allocation(const AllocationProblem &problem, std::vector<double> power, Strategy s)
        {
            PilotAllocation out;
            out.power = std::move(power);
            out.elements = problem.elements;
            out.budget = problem.budget;
            out.strategy = s;
            return out;
        }

        // Scales `weights` so that sum_k M_k p_k equals the budget exactly (to rounding).
        std::vector<double> normalize_to_budget(std::vector<double> weights, const AllocationProblem &problem)
        {
            double used = 0.0;
            for (std::size_t k = 0; k < weights.size(); ++k)
                used += problem.elements[k] * weights[k];
            const double scale = problem.total_energy() / used;
            for (auto &w : weights)
                w *= scale;
            return weights;
        }
    }

    double objective_phi(std::span<const double> per_element_powers, const AllocationProblem &problem)
    {
        problem.validate();
        if (per_element_powers.size() != problem.total_elements())
            throw InvalidArgument("objective_phi expects one power per reflecting element");
        check_powers(per_element_powers);

        const std::size_t K = problem.num_irs();
        std::vector<std::size_t> offset(K + 1, 0);
        for (std::size_t k = 0; k < K; ++k)
            offset[k + 1] = offset[k] + problem.elements[k];

        std::vector<double> a(per_element_powers.size());
        for (std::size_t k = 0; k < K; ++k)
        {
            const double b2 = problem.beta[k] * problem.beta[k];
            for (std::size_t i = offset[k]; i < offset[k + 1]; ++i)
                a[i] = inv_sqrt_term(b2, problem.sigma_z2, per_element_powers[i]);
        }

        double intra = 0.0, inter = 0.0;
        for (std::size_t k = 0; k < K; ++k)
        {
            const double b2 = problem.beta[k] * problem.beta[k];
            for (std::size_t m = offset[k]; m < offset[k + 1]; ++m)
            {
                double same = 0.0;
                for (std::size_t n = offset[k]; n < offset[k + 1]; ++n)
                    if (n != m)
                        same += a[n];
                intra += b2 * b2 * a[m] * same;

                double other = 0.0;
                for (std::size_t j = 0; j < K; ++j)
                {
                    if (j == k)
                        continue;
                    const double bj2 = problem.beta[j] * problem.beta[j];
                    for (std::size_t n = offset[j]; n < offset[j + 1]; ++n)
                        other += bj2 * a[n];
                }
                inter += b2 * a[m] * other;
            }
        }
        return intra + inter;
    }

    double objective_phi_per_irs(std::span<const double> per_irs_powers, const AllocationProblem &problem)
    {
        problem.validate();
        if (per_irs_powers.size() != problem.num_irs())
            throw InvalidArgument("objective_phi_per_irs expects one power per IRS");
        check_powers(per_irs_powers);

        const std::size_t K = problem.num_irs();
        std::vector<double> c(K); // beta_k^2 a_k
        for (std::size_t k = 0; k < K; ++k)
        {
            const double b2 = problem.beta[k] * problem.beta[k];
            c[k] = b2 * inv_sqrt_term(b2, problem.sigma_z2, per_irs_powers[k]);
        }
        double phi = 0.0;
        for (std::size_t k = 0; k < K; ++k)
        {
            const double M = problem.elements[k];
            phi += M * (M - 1.0) * c[k] * c[k];
            for (std::size_t j = 0; j < K; ++j)
                if (j != k)
                    phi += M * c[k] * static_cast<double>(problem.elements[j]) * c[j];
        }
        return phi;
    }

    PilotAllocation allocate_identical(const AllocationProblem &problem)
    {
        problem.validate();
        return make_allocation(problem, std::vector<double>(problem.num_irs(), problem.budget), Strategy::identical);
    }

    PilotAllocation allocate_simplified(const AllocationProblem &problem)
    {
        problem.validate();
        const std::size_t K = problem.num_irs();
        if (K == 1)
            return make_allocation(problem, {problem.budget}, Strategy::simplified);

        double denom = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            denom += problem.elements[k] / std::sqrt(problem.beta[k]);
        const double numer = problem.total_energy();
        std::vector<double> p(K);
        for (std::size_t k = 0; k < K; ++k)
            p[k] = numer / (std::sqrt(problem.beta[k]) * denom);
        return make_allocation(problem, std::move(p), Strategy::simplified);
    }

    PilotAllocation allocate_refined(const AllocationProblem &problem)
    {
        problem.validate();
        const std::size_t K = problem.num_irs();
        if (K == 1)
            return make_allocation(problem, {problem.budget}, Strategy::refined);

        double weighted = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            weighted += problem.beta[k] * problem.elements[k];
        std::vector<double> root(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            const double radicand = weighted / problem.beta[k] - 1.0;
            if (!(radicand > 0.0))
                throw DegenerateAllocation("refined allocation degenerates at IRS " + std::to_string(k + 1) +
                                               ": it dominates the aggregate reflection so strongly that the "
                                               "radicand is not positive",
                                           k);
            root[k] = std::sqrt(radicand);
        }
        return make_allocation(problem, normalize_to_budget(std::move(root), problem), Strategy::refined);
    }

    std::vector<double> stationarity_gradient(const AllocationProblem &problem, std::span<const double> powers)
    {
        problem.validate();
        if (powers.size() != problem.num_irs())
            throw InvalidArgument("stationarity_gradient expects one power per IRS");
        check_powers(powers);

        const double s2 = problem.sigma_z2;
        const std::size_t K = problem.num_irs();
        double cross = 0.0;
        for (std::size_t j = 0; j < K; ++j)
        {
            const double b2 = problem.beta[j] * problem.beta[j];
            cross += b2 * problem.elements[j] * inv_sqrt_term(b2, s2, powers[j]);
        }
        std::vector<double> g(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            const double b2 = problem.beta[k] * problem.beta[k];
            const double t = b2 + s2 / powers[k];
            const double pp = powers[k] * powers[k];
            g[k] = b2 * s2 / (pp * t * std::sqrt(t)) * cross - b2 * b2 * s2 / (pp * t * t);
        }
        return g;
    }

    double stationarity_residual(const AllocationProblem &problem, std::span<const double> powers)
    {
        const auto g = stationarity_gradient(problem, powers);
        double weighted = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k)
            weighted += problem.elements[k] * g[k];
        const double lambda = weighted / static_cast<double>(problem.total_elements());
        double worst = 0.0;
        for (double gk : g)
            worst = std::max(worst, std::abs(gk - lambda) / lambda);
        return worst;
    }

    namespace
    {
        // Stationarity of IRS k with the other IRSs' contribution `cross` held fixed,
        // written in x = sigma^2 / p:
        //   G(x) = (x^2 / sigma^2) [b cross (b + x)^{-3/2} + (M - 1) b^2 (b + x)^{-2}]
        // Both bracketed terms times x^2 increase with x, so G is strictly monotone in p.
        struct FrozenIrs
        {
            double b = 0.0;     // beta_k^2
            double M = 1.0;     // M_k
            double cross = 0.0; // sum_{j != k} M_j beta_j^2 / sqrt(beta_j^2 + sigma^2 / p_j)
            double sigma2 = 0.0;

            double log_value(double x) const
            {
                const double s = b + x;
                const double bracket = b * cross / (s * std::sqrt(s)) + (M - 1.0) * b * b / (s * s);
                return 2.0 * std::log(x) - std::log(sigma2) + std::log(bracket);
            }

            // d ln G / d ln x
            double log_slope(double x) const
            {
                const double s = b + x;
                const double t1 = b * cross / (s * std::sqrt(s));
                const double t2 = (M - 1.0) * b * b / (s * s);
                // d/dx of x^2 * t1 and x^2 * t2, divided by x^2 * (t1 + t2), times x
                const double d1 = t1 * (2.0 - 1.5 * x / s);
                const double d2 = t2 * (2.0 - 2.0 * x / s);
                return (d1 + d2) / (t1 + t2);
            }
        };

        // Solves G(x) = lambda for ln x by Newton in log-log coordinates, falling back
        // to bisection whenever a step leaves the bracket.
        double solve_log_x(const FrozenIrs &irs, double log_lambda, double log_x_guess)
        {
            auto f = [&](double y) { return irs.log_value(std::exp(y)) - log_lambda; };

            double lo = log_x_guess, hi = log_x_guess;
            double f_lo = f(lo), f_hi = f_lo;
            double step = 1.0;
            while (f_lo > 0.0)
            {
                hi = lo;
                f_hi = f_lo;
                lo -= step;
                step *= 2.0;
                f_lo = f(lo);
                if (lo < -1400.0)
                    return lo;
            }
            step = 1.0;
            while (f_hi < 0.0)
            {
                lo = hi;
                f_lo = f_hi;
                hi += step;
                step *= 2.0;
                f_hi = f(hi);
                if (hi > 1400.0)
                    return hi;
            }
            if (f_lo == 0.0)
                return lo;
            if (f_hi == 0.0)
                return hi;

            double y = std::clamp(log_x_guess, lo, hi);
            for (int it = 0; it < 200; ++it)
            {
                const double fy = f(y);
                if (fy == 0.0)
                    return y;
                if (fy < 0.0)
                    lo = y;
                else
                    hi = y;

                const double slope = irs.log_slope(std::exp(y));
                double next = y - fy / slope;
                if (!(slope > 0.0) || !(next > lo && next < hi))
                    next = 0.5 * (lo + hi);
                if (std::abs(next - y) <= 1e-15 * std::max(1.0, std::abs(y)) || hi - lo <= 1e-15 * std::max(1.0, std::abs(y)))
                    return next;
                y = next;
            }
            return y;
        }

        struct LambdaSweep
        {
            std::vector<double> log_x;
            double log_lambda = 0.0;
        };

        // Finds lambda such that the frozen per-IRS solutions spend exactly the budget.
        LambdaSweep bisect_multiplier(const std::vector<FrozenIrs> &frozen, const AllocationProblem &problem,
                                      std::vector<double> log_x, double log_lambda_guess)
        {
            const double s2 = problem.sigma_z2;
            const double target = std::log(problem.total_energy());
            const std::size_t K = frozen.size();

            // ln of the energy spent at multiplier exp(ll); decreasing in ll.
            auto spend = [&](double ll, std::vector<double> &xs)
            {
                double total = 0.0;
                for (std::size_t k = 0; k < K; ++k)
                {
                    xs[k] = solve_log_x(frozen[k], ll, xs[k]);
                    total += problem.elements[k] * s2 / std::exp(xs[k]);
                }
                return std::log(total);
            };

            std::vector<double> xs = log_x;
            double lo = log_lambda_guess, hi = log_lambda_guess;
            double e = spend(lo, xs);
            double step = 0.5;
            if (e > target)
            {
                while (e > target && hi < 1400.0)
                {
                    lo = hi;
                    hi += step;
                    step *= 2.0;
                    e = spend(hi, xs);
                }
            }
            else
            {
                while (e < target && lo > -1400.0)
                {
                    hi = lo;
                    lo -= step;
                    step *= 2.0;
                    e = spend(lo, xs);
                }
            }

            // Regula falsi (Illinois) on ln lambda; the spend curve is smooth and monotone.
            double e_lo = spend(lo, xs) - target;
            std::vector<double> xs_hi = xs;
            double e_hi = spend(hi, xs_hi) - target;
            int side = 0;
            double mid = lo;
            for (int it = 0; it < 300; ++it)
            {
                mid = (e_lo == e_hi) ? 0.5 * (lo + hi) : (lo * e_hi - hi * e_lo) / (e_hi - e_lo);
                if (!(mid > std::min(lo, hi) && mid < std::max(lo, hi)))
                    mid = 0.5 * (lo + hi);
                const double e_mid = spend(mid, xs) - target;
                if (std::abs(e_mid) < 1e-15 || std::abs(hi - lo) < 1e-15 * std::max(1.0, std::abs(mid)))
                    break;
                if ((e_mid > 0.0) == (e_lo > 0.0))
                {
                    lo = mid;
                    e_lo = e_mid;
                    if (side == -1)
                        e_hi *= 0.5;
                    side = -1;
                }
                else
                {
                    hi = mid;
                    e_hi = e_mid;
                    if (side == 1)
                        e_lo *= 0.5;
                    side = 1;
                }
            }
            return {xs, mid};
        }
    }

    StationarySolution solve_stationarity(const AllocationProblem &problem, const ExactOptions &options)
    {
        problem.validate();
        if (!(options.tolerance > 0.0) || options.max_iterations < 1)
            throw InvalidArgument("exact solver needs a positive tolerance and at least one iteration");

        const std::size_t K = problem.num_irs();
        StationarySolution out;
        if (K == 1)
        {
            out.allocation = make_allocation(problem, {problem.budget}, Strategy::exact);
            out.multiplier = stationarity_gradient(problem, out.allocation.power)[0];
            return out;
        }

        const double s2 = problem.sigma_z2;
        std::vector<double> p(K, problem.budget);
        std::vector<double> log_x(K, std::log(s2 / problem.budget));
        std::vector<FrozenIrs> frozen(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            frozen[k].b = problem.beta[k] * problem.beta[k];
            frozen[k].M = problem.elements[k];
            frozen[k].sigma2 = s2;
        }

        auto g0 = stationarity_gradient(problem, p);
        double log_lambda = std::log(std::accumulate(g0.begin(), g0.end(), 0.0) / static_cast<double>(K));
        double residual = stationarity_residual(problem, p);
        double damping = 1.0;

        for (int it = 1; it <= options.max_iterations; ++it)
        {
            double total = 0.0;
            std::vector<double> contrib(K);
            for (std::size_t k = 0; k < K; ++k)
            {
                contrib[k] = problem.elements[k] * frozen[k].b * inv_sqrt_term(frozen[k].b, s2, p[k]);
                total += contrib[k];
            }
            for (std::size_t k = 0; k < K; ++k)
                frozen[k].cross = total - contrib[k];

            auto sweep = bisect_multiplier(frozen, problem, log_x, log_lambda);

            // Geometric damping in log-power; shrinks when a sweep makes things worse.
            std::vector<double> candidate(K);
            for (std::size_t k = 0; k < K; ++k)
            {
                const double log_p_new = std::log(s2) - sweep.log_x[k];
                candidate[k] = std::exp((1.0 - damping) * std::log(p[k]) + damping * log_p_new);
            }
            candidate = normalize_to_budget(std::move(candidate), problem);
            const double next_residual = stationarity_residual(problem, candidate);

            if (next_residual > residual && damping > 1.0 / 64.0)
            {
                damping *= 0.5;
                out.iterations = it;
                continue;
            }
            p = std::move(candidate);
            for (std::size_t k = 0; k < K; ++k)
                log_x[k] = std::log(s2 / p[k]);
            log_lambda = sweep.log_lambda;
            residual = next_residual;
            out.iterations = it;
            if (residual <= options.tolerance)
                break;
        }

        if (!(residual <= options.tolerance))
            throw NoConvergence("exact allocation did not converge within " + std::to_string(options.max_iterations) +
                                    " iterations (residual " + std::to_string(residual) + ")",
                                residual);

        out.residual = residual;
        const auto g = stationarity_gradient(problem, p);
        double weighted = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            weighted += problem.elements[k] * g[k];
        out.multiplier = weighted / static_cast<double>(problem.total_elements());
        out.allocation = make_allocation(problem, std::move(p), Strategy::exact);
        return out;
    }

    PilotAllocation allocate_exact(const AllocationProblem &problem, double tolerance, int max_iterations)
    {
        return solve_stationarity(problem, {tolerance, max_iterations}).allocation;
    }

    PilotAllocation allocate(Strategy strategy, const AllocationProblem &problem)
    {
        switch (strategy)
        {
        case Strategy::identical:
            return allocate_identical(problem);
        case Strategy::refined:
            return allocate_refined(problem);
        case Strategy::simplified:
            return allocate_simplified(problem);
        case Strategy::exact:
            return allocate_exact(problem);
        case Strategy::custom:
            break;
        }
        throw InvalidArgument("a custom allocation cannot be computed from a strategy tag");
    }

    bool in_moderate_snr_regime(const AllocationProblem &problem, const PilotAllocation &allocation)
    {
        if (allocation.power.size() != problem.num_irs())
            throw InvalidArgument("allocation does not match the problem");
        for (std::size_t k = 0; k < problem.num_irs(); ++k)
            if (allocation.power[k] * problem.beta[k] * problem.beta[k] / problem.sigma_z2 < problem.min_snr_gamma)
                return false;
        return true;
    }

    PaprReport papr(const PilotAllocation &allocation, const AllocationProblem &problem)
    {
        allocation.validate();
        problem.validate();
        PaprReport r;
        r.papr_linear = *std::max_element(allocation.power.begin(), allocation.power.end()) / allocation.budget;
        r.papr_db = 10.0 * std::log10(r.papr_linear);
        const auto [bmin, bmax] = std::minmax_element(problem.beta.begin(), problem.beta.end());
        r.upper_bound_linear = std::sqrt(*bmax / *bmin);
        r.upper_bound_db = 10.0 * std::log10(r.upper_bound_linear);
        return r;
    }
}
