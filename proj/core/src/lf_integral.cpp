#include "hsconv/lf_integral.hpp"

#include <cmath>
#include <string>

namespace hsconv {

std::string_view to_string(Backend backend) {
    switch (backend) {
        case Backend::GammaPowerRule: return "gamma_power_rule";
        case Backend::FractalMeasure: return "fractal_measure";
        case Backend::Classical: return "classical";
    }
    return "unknown";
}

Backend backend_from_string(std::string_view name) {
    if (name == "gamma_power_rule") return Backend::GammaPowerRule;
    if (name == "fractal_measure") return Backend::FractalMeasure;
    if (name == "classical") return Backend::Classical;
    throw DomainError("unknown backend '" + std::string(name) +
                      "' (expected gamma_power_rule, fractal_measure or classical)");
}

namespace {

// Distance from the anchor endpoint after the power substitution, as a
// fraction of the interval: u^(1/alpha), computed from whichever of u and
// 1-u is accurate.
double stretched(UnitPoint p, double inv_alpha) {
    if (p.u <= 0.5) {
        return std::pow(p.u, inv_alpha);
    }
    return std::exp(std::log1p(-p.one_minus_u) * inv_alpha);
}

// Complement 1 - u^(1/alpha), accurate near u = 1.
double stretched_complement(UnitPoint p, double inv_alpha) {
    if (p.u <= 0.5) {
        return 1.0 - std::pow(p.u, inv_alpha);
    }
    return -std::expm1(std::log1p(-p.one_minus_u) * inv_alpha);
}

}  // namespace

double lf_integral(const RealFn& f, double a, double b, Alpha alpha, Backend backend,
                   const QuadratureSpec& quad) {
    if (!(a < b)) {
        throw DomainError("lf_integral: need a < b, got [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
    }
    if (backend == Backend::Classical && !alpha.is_one()) {
        throw DomainError("lf_integral: the classical backend requires alpha = 1");
    }
    quad.validate();

    const double len = b - a;
    const double inv_alpha = 1.0 / alpha.value();

    auto abscissa = [&](UnitPoint p) -> double {
        switch (backend) {
            case Backend::GammaPowerRule:
                // b - tau = (b-a) u^(1/alpha)
                return p.u <= 0.5 ? b - len * stretched(p, inv_alpha)
                                  : a + len * stretched_complement(p, inv_alpha);
            case Backend::FractalMeasure:
                // tau - a = (b-a) u^(1/alpha)
                return p.u <= 0.5 ? a + len * stretched(p, inv_alpha)
                                  : b - len * stretched_complement(p, inv_alpha);
            case Backend::Classical:
                return p.u <= 0.5 ? a + len * p.u : b - len * p.one_minus_u;
        }
        return a;
    };

    auto integrand = [&](UnitPoint p) -> double {
        const double tau = abscissa(p);
        const bool on_endpoint = tau <= a || tau >= b;
        double v = 0.0;
        try {
            v = f(tau);
        } catch (const EvaluationError&) {
            // A node that rounded onto a singular endpoint carries measure far
            // below the grading floor.
            if (on_endpoint) return 0.0;
            throw;
        }
        if (!std::isfinite(v)) {
            if (on_endpoint) return 0.0;
            throw EvaluationError("lf_integral: integrand is not finite at interior node tau=" +
                                      std::to_string(tau),
                                  tau);
        }
        return v;
    };

    const double unit = integrate_unit(integrand, quad);
    if (backend == Backend::Classical) {
        return len * unit;
    }
    return std::pow(len, alpha.value()) / gamma(1.0 + alpha.value()) * unit;
}

double power_rule_oracle(double k, Alpha alpha, double x) {
    if (!(k >= 0.0)) throw DomainError("power_rule_oracle: k must be non-negative");
    if (!(x > 0.0)) throw DomainError("power_rule_oracle: x must be positive");
    const double a = alpha.value();
    return gamma(1.0 + k * a) / gamma(1.0 + (k + 1.0) * a) * std::pow(x, (k + 1.0) * a);
}

double unit_rho_integral(const RhoSpec& spec, Backend backend, const QuadratureSpec& quad) {
    return lf_integral([&spec](double t) { return rho(spec, t); }, 0.0, 1.0, spec.alpha, backend,
                       quad);
}

double reflection_residual(const RhoSpec& spec, Backend backend, const QuadratureSpec& quad) {
    return lf_integral([&spec](double t) { return rho(spec, t) - rho(spec, 1.0 - t); }, 0.0, 1.0,
                       spec.alpha, backend, quad);
}

}  // namespace hsconv
