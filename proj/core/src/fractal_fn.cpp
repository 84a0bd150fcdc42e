#include "hsconv/fractal_fn.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace hsconv {

FractalFn::FractalFn(std::string id, RealFn eval, Alpha alpha, Interval domain)
    : id_(std::move(id)), eval_(std::move(eval)), alpha_(alpha), domain_(domain) {
    if (!eval_) {
        throw DomainError("FractalFn '" + id_ + "' requires a callable");
    }
}

double FractalFn::operator()(double x) const {
    if (!domain_.contains(x)) {
        throw EvaluationError("'" + id_ + "' evaluated outside its domain at x=" + std::to_string(x),
                              x);
    }
    const double y = eval_(x);
    if (!std::isfinite(y)) {
        throw EvaluationError("'" + id_ + "' is not finite at x=" + std::to_string(x), x);
    }
    return y;
}

namespace {

Interval intersect(const Interval& a, const Interval& b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

void require_same_order(const FractalFn& f, const FractalFn& g) {
    if (!(f.alpha() == g.alpha())) {
        throw DomainError("cannot combine '" + f.id() + "' and '" + g.id() +
                          "': fractal orders differ");
    }
}

}  // namespace

FractalFn operator+(const FractalFn& f, const FractalFn& g) {
    require_same_order(f, g);
    return {"(" + f.id() + ")+(" + g.id() + ")", [f, g](double x) { return f(x) + g(x); },
            f.alpha(), intersect(f.domain(), g.domain())};
}

FractalFn operator*(double c, const FractalFn& f) {
    return {std::to_string(c) + "*(" + f.id() + ")", [c, f](double x) { return c * f(x); },
            f.alpha(), f.domain()};
}

FractalFn product(const FractalFn& f, const FractalFn& g) {
    require_same_order(f, g);
    return {"(" + f.id() + ")*(" + g.id() + ")", [f, g](double x) { return f(x) * g(x); },
            f.alpha(), intersect(f.domain(), g.domain())};
}

FractalFn compose_affine(const FractalFn& f, double p, double q) {
    if (p == 0.0) {
        throw DomainError("compose_affine: slope must be non-zero");
    }
    // Pull the domain back through x -> p x + q.
    double lo = (f.domain().lo - q) / p;
    double hi = (f.domain().hi - q) / p;
    if (lo > hi) std::swap(lo, hi);
    return {"(" + f.id() + ")o(" + std::to_string(p) + "x+" + std::to_string(q) + ")",
            [f, p, q](double x) { return f(p * x + q); }, f.alpha(), {lo, hi}};
}

FractalFn negate(const FractalFn& f) {
    return {"-(" + f.id() + ")", [f](double x) { return -f(x); }, f.alpha(), f.domain()};
}

}  // namespace hsconv
