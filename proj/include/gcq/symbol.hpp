#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace gcq {

/// Parsed expression tree over the single free variable s, with +, -, *, /,
/// unary minus, powers (integer and rational exponents), exp and sqrt.
class SymbolExpr {
  public:
    virtual ~SymbolExpr() = default;
    virtual std::complex<double> eval(std::complex<double> s) const = 0;
    /// Fully parenthesized rendering; re-parsing it reproduces the tree.
    virtual std::string print() const = 0;
};

/// Laplace-domain transfer symbol K(s) on the right half-plane, with the
/// growth metadata mu (exponent) and sigma0 (abscissa). The metadata is
/// informational; only the evaluator is enforced (finiteness, Re s > 0).
struct TransferSymbol {
    std::function<std::complex<double>(std::complex<double>)> evaluator;
    double mu = 0.0;
    double sigma0 = 1.0;
    std::string label;
    /// True when K(conj(s)) = conj(K(s)); enables halving contour work.
    bool real_coefficients = true;
};

/// Parses a kernel expression such as "(1-exp(-2*s))/(2*s)".
///
/// Grammar: expr := term (('+'|'-') term)*; term := factor (('*'|'/')
/// factor)*; factor := ['-'] base ('^' exponent)?; base := number | 's' |
/// func '(' expr ')' | '(' expr ')'; func in {exp, sqrt}; exponent :=
/// signed number | '(' rational ')'. '^' binds tighter than unary minus,
/// so -s^2 means -(s^2). Throws std::invalid_argument with the offending
/// position on malformed input.
TransferSymbol parse_symbol(std::string_view text, double mu, double sigma0);

/// Evaluates K(s). Requires Re s > 0; throws EvaluationError when the
/// precondition fails or the result is not finite.
std::complex<double> evaluate_symbol(const TransferSymbol& symbol,
                                     std::complex<double> s);

/// Symbol s -> 1/K(s) with negated growth exponent. Zeros of K surface as
/// EvaluationError at evaluation time.
TransferSymbol reciprocal_symbol(const TransferSymbol& symbol);

/// Symbol s -> s^p K(s) (p = -rho gives the regularized K_rho, p = +rho the
/// backward K_{-rho}).
TransferSymbol scale_power(const TransferSymbol& symbol, int p);

/// Residue of K at s = 0 when K has a simple pole there, 0 otherwise
/// (detected numerically from s K(s) along the positive real axis). The
/// quadrature contour passes through the origin, where it picks up exactly
/// half of such a residue; consumers subtract that half to recover the
/// integral that excludes the origin.
std::complex<double> residue_at_origin(const TransferSymbol& symbol);

/// Built-in symbols, available without the parser:
///   "example1"          (1 - exp(-2s)) / (2s), series branch near s = 0
///   "power:p"           s^p for integer or real p
///   "shifted_power:p"   (1 + s)^p
/// Throws std::invalid_argument for unknown names.
TransferSymbol builtin_symbol(std::string_view name);

}  // namespace gcq
