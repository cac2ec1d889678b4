#ifndef SIEGEL_MEASURE_HPP
#define SIEGEL_MEASURE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <thread>
#include <vector>

#include "siegel/core.hpp"
#include "siegel/quadrature.hpp"
#include "siegel/reduction.hpp"
#include "siegel/rng.hpp"

namespace siegel {

// Fixed number of independent RNG streams; partial sums are combined in
// stream order, so estimates are bit-identical for any worker count.
inline constexpr int kNumStreams = 64;

struct MCResult {
    double estimate = 0;
    double std_error = 0;
    long long n_samples = 0;
    uint64_t seed = 0;
};

enum class WeightMode { Explicit, String };

// Genus weights lambda_g: explicit positive table, or the string weight
// lambda_g = exp(-alpha (2g - 2)).
struct StratifiedMeasureConfig {
    WeightMode mode = WeightMode::String;
    std::map<int, double> weights;  // Explicit mode
    double alpha = 1.0;             // String mode
    int truncation_genus = 2;       // volume-bearing strata: g <= 2
    uint64_t rng_seed = 0;
    long long n_samples = 100000;   // per stratum
    int workers = 1;
    bool include_genus0 = false;    // M_0 is a single point; opt-in atom

    void validate() const {
        if (truncation_genus < 1 || truncation_genus > 2)
            throw invalid_config("StratifiedMeasureConfig: truncation_genus must be 1 or 2");
        if (n_samples <= 0) throw invalid_config("StratifiedMeasureConfig: n_samples <= 0");
        if (workers < 1) throw invalid_config("StratifiedMeasureConfig: workers < 1");
        if (mode == WeightMode::String) {
            if (!(alpha > 0)) throw invalid_config("StratifiedMeasureConfig: alpha <= 0");
        } else {
            for (int g = include_genus0 ? 0 : 1; g <= truncation_genus; ++g)
                if (!(weight(g) > 0))
                    throw invalid_config("StratifiedMeasureConfig: non-positive weight");
        }
    }

    double weight(int g) const {
        if (mode == WeightMode::String) return std::exp(-alpha * (2.0 * g - 2.0));
        auto it = weights.find(g);
        if (it == weights.end())
            throw invalid_config("StratifiedMeasureConfig: missing weight for genus " +
                                 std::to_string(g));
        return it->second;
    }
};

struct TorusMapSpec {
    SiegelPoint tau = SiegelPoint::from_tau(complexd(0, 1));
    Vec p, q;  // images of the lattice generators 1 and tau in R^N
};

namespace detail {

// Mean of fn(rng) over n proposals, split across kNumStreams fixed streams.
// fn returns the per-proposal contribution (0 for rejected proposals).
template <class Fn>
MCResult mc_mean(long long n, uint64_t seed, uint64_t salt, int workers, Fn&& fn) {
    if (n <= 0) throw invalid_config("mc_mean: n <= 0");
    std::vector<double> sum(kNumStreams, 0.0), sumsq(kNumStreams, 0.0);
    auto run_stream = [&](int s) {
        long long ns = n / kNumStreams + (s < n % kNumStreams ? 1 : 0);
        rng::Xoshiro256 gen(rng::derive_seed(seed, salt, static_cast<uint64_t>(s)));
        double a = 0, a2 = 0;
        for (long long i = 0; i < ns; ++i) {
            const double v = fn(gen);
            a += v;
            a2 += v * v;
        }
        sum[s] = a;
        sumsq[s] = a2;
    };
    workers = std::max(1, std::min(workers, kNumStreams));
    if (workers == 1) {
        for (int s = 0; s < kNumStreams; ++s) run_stream(s);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int s = w; s < kNumStreams; s += workers) run_stream(s);
            });
        for (auto& t : pool) t.join();
    }
    double S = 0, S2 = 0;
    for (int s = 0; s < kNumStreams; ++s) {  // fixed combination order
        S += sum[s];
        S2 += sumsq[s];
    }
    MCResult r;
    r.estimate = S / static_cast<double>(n);
    const double var = std::max(0.0, S2 / static_cast<double>(n) - r.estimate * r.estimate);
    r.std_error = std::sqrt(var / static_cast<double>(n));
    r.n_samples = n;
    r.seed = seed;
    return r;
}

inline constexpr double kY0 = 0.8660254037844386;  // sqrt(3)/2

// Draw one proposal for genus g; returns the importance weight
// det(Y)^{-(g+1)} / q(proposal) if the point lies in the fundamental
// domain, 0 otherwise. On acceptance *out is filled when non-null.
inline double propose(int g, rng::Xoshiro256& gen, SiegelPoint* out) {
    if (g == 1) {
        const double x = gen.uniform(-0.5, 0.5);
        const double y = kY0 / (1.0 - gen.uniform());
        Mat X(1, 1), Y(1, 1);
        X(0, 0) = x;
        Y(0, 0) = y;
        SiegelPoint z(X, Y);
        if (!in_fundamental_domain(z)) return 0.0;
        if (out) *out = z;
        return 1.0 / kY0;  // (1/y^2) / (y0/y^2)
    }
    if (g == 2) {
        // product proposal over the Minkowski cone 0 <= 2 y12 <= y11 <= y22
        const double y11 = kY0 / (1.0 - gen.uniform());           // y0/y11^2
        const double y12 = gen.uniform(0.0, 0.5 * y11);           // 2/y11
        const double y22 = y11 / std::sqrt(1.0 - gen.uniform());  // 2 y11^2/y22^3
        const double x11 = gen.uniform(-0.5, 0.5);
        const double x12 = gen.uniform(-0.5, 0.5);
        const double x22 = gen.uniform(-0.5, 0.5);
        Mat X(2, 2), Y(2, 2);
        X << x11, x12, x12, x22;
        Y << y11, y12, y12, y22;
        const double det = y11 * y22 - y12 * y12;
        if (!(det > 0)) return 0.0;
        SiegelPoint z(X, Y);
        if (!in_fundamental_domain(z)) return 0.0;
        if (out) *out = z;
        const double q = 4.0 * kY0 / (y11 * y22 * y22 * y22);
        return std::pow(det, -3.0) / q;
    }
    throw unsupported("sampler: genus 1 or 2 only");
}

// MC estimate of int_{F_g} f dmu_g with mu_g = det(Y)^{-(g+1)} dX dY.
template <class F>
MCResult stratum_integral(int g, long long n, uint64_t seed, int workers, F&& f) {
    if (g != 1 && g != 2) throw unsupported("stratum integral: genus 1 or 2 only");
    return mc_mean(n, seed, static_cast<uint64_t>(g), workers,
                   [&](rng::Xoshiro256& gen) {
                       SiegelPoint z = SiegelPoint::from_tau(complexd(0, 1));
                       const double w = propose(g, gen, &z);
                       return w == 0.0 ? 0.0 : w * f(z);
                   });
}

} // namespace detail

struct WeightedSample {
    SiegelPoint point;
    double weight;  // importance weight relative to the proposal density
};

struct SampleSet {
    int genus = 1;
    long long n_proposals = 0;  // sum w_i f(z_i) / n_proposals estimates int f dmu_g
    uint64_t seed = 0;
    std::vector<WeightedSample> samples;
};

// Weighted samples of the genus-g fundamental domain. g=1: rejection from
// the proposal 1/y^2 on the strip (constant weight); g=2: importance
// sampling over the Minkowski cone with tracked weights.
inline SampleSet sample_fundamental_domain(int g, long long n, uint64_t seed) {
    if (g != 1 && g != 2) throw unsupported("sample_fundamental_domain: genus 1 or 2 only");
    if (n <= 0) throw invalid_config("sample_fundamental_domain: n <= 0");
    SampleSet out;
    out.genus = g;
    out.n_proposals = n;
    out.seed = seed;
    for (int s = 0; s < kNumStreams; ++s) {
        long long ns = n / kNumStreams + (s < n % kNumStreams ? 1 : 0);
        rng::Xoshiro256 gen(rng::derive_seed(seed, static_cast<uint64_t>(g),
                                             static_cast<uint64_t>(s)));
        for (long long i = 0; i < ns; ++i) {
            SiegelPoint z = SiegelPoint::from_tau(complexd(0, 1));
            const double w = detail::propose(g, gen, &z);
            if (w > 0) out.samples.push_back({z, w});
        }
    }
    return out;
}

// vol(A_g) under det(Y)^{-(g+1)} dX dY. With use_quadrature (g=1 only) the
// x-integral of 1/sqrt(1 - x^2) over [-1/2, 1/2] is evaluated directly.
inline MCResult stratum_volume(int g, long long n, uint64_t seed,
                               bool use_quadrature = false, int workers = 1) {
    if (g != 1 && g != 2) throw unsupported("stratum_volume: genus 1 or 2 only");
    if (use_quadrature) {
        if (g != 1) throw unsupported("stratum_volume: quadrature only for genus 1");
        // int dy/y^2 from sqrt(1-x^2) to inf = 1/sqrt(1-x^2)
        auto f = [](double x) { return 1.0 / std::sqrt(1.0 - x * x); };
        MCResult r;
        r.estimate = quad::legendre_adaptive(f, -0.5, 0.5, 1e-12);
        r.std_error = 0;
        r.n_samples = 0;
        r.seed = seed;
        return r;
    }
    return detail::stratum_integral(g, n, seed, workers,
                                    [](const SiegelPoint&) { return 1.0; });
}

// Integrand on the stratified space; point is null only for the genus-0 atom.
using StratifiedIntegrand = std::function<double(int genus, const SiegelPoint* point)>;

// int f dmu with mu = sum_g lambda_g mu_g, strata sampled independently and
// per-stratum errors combined in quadrature.
inline MCResult integrate_stratified(const StratifiedIntegrand& f,
                                     const StratifiedMeasureConfig& cfg) {
    cfg.validate();
    MCResult total;
    total.seed = cfg.rng_seed;
    double var = 0;
    if (cfg.include_genus0)
        total.estimate += cfg.weight(0) * f(0, nullptr);
    for (int g = 1; g <= cfg.truncation_genus; ++g) {
        const double lam = cfg.weight(g);
        const MCResult r = detail::stratum_integral(
            g, cfg.n_samples, cfg.rng_seed, cfg.workers,
            [&](const SiegelPoint& z) { return f(g, &z); });
        total.estimate += lam * r.estimate;
        var += lam * lam * r.std_error * r.std_error;
        total.n_samples += r.n_samples;
    }
    total.std_error = std::sqrt(var);
    return total;
}

// Dirichlet energy of the harmonic (affine) map of the flat torus C/(Z+tau Z)
// into R^N sending the generators 1, tau to p, q.
inline double dirichlet_energy_torus(const TorusMapSpec& spec) {
    if (spec.tau.genus() != 1)
        throw genus_mismatch("dirichlet_energy_torus: tau must have genus 1");
    if (spec.p.size() != spec.q.size())
        throw order_mismatch("dirichlet_energy_torus: p, q length mismatch");
    const complexd tau = spec.tau.tau();
    const double p2 = spec.p.squaredNorm();
    const double q2 = spec.q.squaredNorm();
    const double pq = spec.p.dot(spec.q);
    return (p2 * std::norm(tau) - 2.0 * pq * tau.real() + q2) / tau.imag();
}

struct PartitionResult {
    double value = 0;
    double std_error = 0;
    double tail_bound = 0;
    std::vector<double> per_genus;  // I_g for g = 1..G (the atom excluded)
    long long n_samples = 0;
    uint64_t seed = 0;
};

// Truncated genus-weighted sum sum_{g<=G} e^{-alpha(2g-2)} I_g with a
// geometric tail bound C e^{-2 alpha G} / (1 - e^{-2 alpha}), C = max I_g.
inline PartitionResult partition_function(const StratifiedMeasureConfig& cfg,
                                          const StratifiedIntegrand& f) {
    if (cfg.mode != WeightMode::String)
        throw invalid_config("partition_function: string weights required");
    cfg.validate();
    PartitionResult out;
    out.seed = cfg.rng_seed;
    double var = 0, C = 0;
    if (cfg.include_genus0)
        out.value += cfg.weight(0) * f(0, nullptr);
    for (int g = 1; g <= cfg.truncation_genus; ++g) {
        const MCResult r = detail::stratum_integral(
            g, cfg.n_samples, cfg.rng_seed, cfg.workers,
            [&](const SiegelPoint& z) { return f(g, &z); });
        const double lam = cfg.weight(g);
        out.per_genus.push_back(r.estimate);
        out.value += lam * r.estimate;
        var += lam * lam * r.std_error * r.std_error;
        out.n_samples += r.n_samples;
        C = std::max(C, std::abs(r.estimate));
    }
    out.std_error = std::sqrt(var);
    const double q = std::exp(-2.0 * cfg.alpha);
    out.tail_bound = C * std::pow(q, cfg.truncation_genus) / (1.0 - q);
    return out;
}

inline PartitionResult partition_function(const StratifiedMeasureConfig& cfg) {
    return partition_function(cfg, [](int, const SiegelPoint*) { return 1.0; });
}

} // namespace siegel

#endif
