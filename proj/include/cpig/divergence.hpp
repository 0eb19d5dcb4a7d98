#pragma once

#include <span>
#include <utility>

#include "cpig/distributions.hpp"
#include "cpig/measures.hpp"

namespace cpig {

/// L_q(z) = (z^(1-q) - 1) / (1 - q), ln z at q = 1. Throws Domain for z <= 0.
double generalized_log(double z, double q);

/// D_theta(F, G). For theta >= 1:
///   integral F^theta L_{1/theta}(F^theta / G^theta) - (cpig(F) - cpig(G)),
/// negated for 0 < theta < 1. Evaluated as one integral over the union of
/// supports. RatioSingularity when G = 0 where F > 1e-12.
MeasureResult cpig_divergence(const DistributionSpec& f, const DistributionSpec& g, Theta theta,
                              const EvalOptions& opts = {});

/// Jensen gap of CPIG over a finite mixture, oriented to be nonnegative:
/// cpig(mix) - sum p_i cpig(F_i) for theta <= 1, the reverse for theta > 1.
MeasureResult jcpig(std::span<const DistributionSpec> components, const MixWeights& weights, Theta theta,
                    const EvalOptions& opts = {});

struct DecompositionReport {
    double jcpig_value = 0.0;
    double weighted_divergence_sum = 0.0;  // sum p_i D_theta(F_i, mixture)
};

/// Both sides of the claimed identity jcpig = sum p_i D_theta(F_i, F_T).
/// Nothing is asserted.
DecompositionReport jcpig_mixture_decomposition(std::span<const DistributionSpec> components,
                                                const MixWeights& weights, Theta theta,
                                                const EvalOptions& opts = {});

/// Fractional cumulative past entropy, integral of F (-ln F)^q, q in (0, 1].
MeasureResult fcpe(const DistributionSpec& f, double q, const EvalOptions& opts = {});

/// fcpe(mix) - sum p_i fcpe(F_i).
MeasureResult jfcpe(std::span<const DistributionSpec> components, const MixWeights& weights, double q,
                    const EvalOptions& opts = {});

/// Cumulative past Taneja entropy -2^(q-1) integral F^q ln F, any q > 0.
MeasureResult cpte(const DistributionSpec& f, double q, const EvalOptions& opts = {});

/// cpte(mix) - sum p_i cpte(F_i). Nonnegative for q in (0, 1]; the sign is
/// not guaranteed for q > 1.
MeasureResult jcpte(std::span<const DistributionSpec> components, const MixWeights& weights, double q,
                    const EvalOptions& opts = {});

}  // namespace cpig
