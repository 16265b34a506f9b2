#include <potcap/asymptotics.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace potcap {

double powlog(double rho, double a, double b, double C) {
    if (!(rho > 0.0)) throw std::invalid_argument("powlog: rho must be positive");
    if (b == 0.0) return C * std::pow(rho, a);
    return C * std::pow(rho, a) * std::pow(std::fabs(std::log(rho)), b);
}

double evaluate_class(const AsymptoticClass& cls, double rho) {
    return powlog(rho, cls.exponent_a, cls.log_exponent_b, cls.constant_C);
}

bool exponent_eq(double x, double y) {
    const double scale = std::fmax(1.0, std::fmax(std::fabs(x), std::fabs(y)));
    return std::fabs(x - y) <= kExponentEps * scale;
}

bool integral_diverges_at_zero(double c, double d) {
    if (exponent_eq(c, -1.0)) return d >= -1.0 - kExponentEps;
    return c < -1.0;
}

bool integral_diverges_at_infinity(double c, double d) {
    if (exponent_eq(c, -1.0)) return d >= -1.0 - kExponentEps;
    return c > -1.0;
}

AsymptoticClass pole_integrand_class(const AsymptoticClass& growth, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("pole_integrand_class: p must exceed 1");
    AsymptoticClass out;
    out.exponent_a = (1.0 - growth.exponent_a) / (p - 1.0);
    out.log_exponent_b = -growth.log_exponent_b / (p - 1.0);
    out.constant_C = std::pow(growth.constant_C, -1.0 / (p - 1.0));
    out.side = growth.side;
    return out;
}

std::string to_string(const AsymptoticClass& cls) {
    std::ostringstream os;
    os << cls.constant_C << " * rho^" << cls.exponent_a;
    if (cls.log_exponent_b != 0.0) os << " * |log rho|^" << cls.log_exponent_b;
    os << (cls.side == Side::AtZero ? " (rho -> 0)" : " (rho -> inf)");
    return os.str();
}

}  // namespace potcap
