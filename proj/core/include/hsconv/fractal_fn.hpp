#pragma once

#include <functional>
#include <limits>
#include <string>

#include "hsconv/types.hpp"

namespace hsconv {

using RealFn = std::function<double(double)>;

/// A real-valued function tagged with its fractal order, standing for
/// f : I -> R^alpha under the real-embedded semantics.
class FractalFn {
public:
    FractalFn(std::string id, RealFn eval, Alpha alpha,
              Interval domain = {-std::numeric_limits<double>::infinity(),
                                 std::numeric_limits<double>::infinity()});

    const std::string& id() const noexcept { return id_; }
    Alpha alpha() const noexcept { return alpha_; }
    const Interval& domain() const noexcept { return domain_; }

    /// Throws EvaluationError outside the domain or on a non-finite value.
    double operator()(double x) const;

private:
    std::string id_;
    RealFn eval_;
    Alpha alpha_;
    Interval domain_;
};

FractalFn operator+(const FractalFn& f, const FractalFn& g);
FractalFn operator*(double c, const FractalFn& f);
/// Pointwise product f * g.
FractalFn product(const FractalFn& f, const FractalFn& g);
/// x -> f(p x + q).
FractalFn compose_affine(const FractalFn& f, double p, double q);
FractalFn negate(const FractalFn& f);

}  // namespace hsconv
