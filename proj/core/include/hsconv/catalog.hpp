#pragma once

// Name resolution for configs. A name is either a catalog entry, optionally
// with numeric arguments such as power(1.5), or an arithmetic expression in
// x (see expression.hpp).
//
//   functions  square neg_square cube exp abs_centered x_alpha mittag_leffler
//              linear power(p) constant(c) e1(beta,gamma,sigma)
//   phi        identity exp sqrt affine(p,q)
//   h          one square mt power(p)
//   densities  uniform triangular_up triangular_down power(p)

#include <optional>
#include <string>
#include <vector>

#include "hsconv/convexity.hpp"
#include "hsconv/hh_engine.hpp"
#include "hsconv/probability.hpp"

namespace hsconv {

struct CatalogCall {
    std::string name;
    std::vector<double> args;
};

/// Splits "name" or "name(a, b, ...)" with numeric arguments; nullopt for
/// anything else.
std::optional<CatalogCall> parse_catalog_call(const std::string& text);

/// Throws DomainError or ParseError when the name does not resolve.
FractalFn resolve_function(const std::string& name, Alpha alpha, SParam s);
NamedFunction resolve_named_function(const std::string& name, SParam s);
PhiMap resolve_phi(const std::string& name);
HFunction resolve_h(const std::string& name);
RealFn resolve_density(const std::string& name, Interval support, Alpha alpha);

}  // namespace hsconv
