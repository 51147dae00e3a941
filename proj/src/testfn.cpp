#include "aszl/testfn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aszl {

namespace {
constexpr double kPi = std::numbers::pi;

double sinc(double x) { return std::abs(x) < 1e-10 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// integral of sigma^j cos(k sigma) on [0, c], j in {0, 1}
double cos_moment0(double k, double c) { return k == 0.0 ? c : std::sin(k * c) / k; }
double cos_moment1(double k, double c) {
    if (k == 0.0) return c * c / 2;
    return (std::cos(k * c) - 1.0) / (k * k) + c * std::sin(k * c) / k;
}
}  // namespace

TestFunction TestFunction::triangle(double beta) {
    if (beta <= 0) throw std::invalid_argument("test function needs beta > 0");
    return TestFunction{Shape::Triangle, beta, 0.0};
}

TestFunction TestFunction::trapezoid(double beta, double plateau) {
    if (beta <= 0) throw std::invalid_argument("test function needs beta > 0");
    if (plateau <= 0 || plateau >= 1)
        throw std::invalid_argument("trapezoid plateau must lie strictly between 0 and 1");
    return TestFunction{Shape::Trapezoid, beta, plateau};
}

TestFunction TestFunction::raised_cosine(double beta) {
    if (beta <= 0) throw std::invalid_argument("test function needs beta > 0");
    return TestFunction{Shape::RaisedCosine, beta, 0.0};
}

TestFunction TestFunction::from_name(const std::string& name, double beta, double plateau) {
    if (name == "triangle") return triangle(beta);
    if (name == "trapezoid") return trapezoid(beta, plateau);
    if (name == "raised-cosine") return raised_cosine(beta);
    throw std::invalid_argument("unknown test function shape: " + name);
}

std::string TestFunction::name() const {
    switch (shape) {
        case Shape::Triangle: return "triangle";
        case Shape::Trapezoid: return "trapezoid";
        case Shape::RaisedCosine: return "raised-cosine";
    }
    return "?";
}

double TestFunction::hat(double tau) const {
    const double a = std::abs(tau);
    if (a >= beta) return 0.0;
    switch (shape) {
        case Shape::Triangle:
            return 1.0 - a / beta;
        case Shape::Trapezoid: {
            const double flat = plateau * beta;
            if (a <= flat) return 1.0;
            return (beta - a) / (beta - flat);
        }
        case Shape::RaisedCosine:
            return 0.5 * (1.0 + std::cos(kPi * a / beta));
    }
    return 0.0;
}

double TestFunction::value(double t) const {
    switch (shape) {
        case Shape::Triangle: {
            const double s = sinc(kPi * beta * t);
            return beta * s * s;
        }
        case Shape::Trapezoid: {
            const double bo = beta, ai = plateau * beta;
            const double sb = sinc(kPi * bo * t), sa = sinc(kPi * ai * t);
            return (bo * bo * sb * sb - ai * ai * sa * sa) / (bo - ai);
        }
        case Shape::RaisedCosine: {
            const double den = 1.0 - 4.0 * beta * beta * t * t;
            if (std::abs(den) < 1e-8) return beta / 2.0;  // removable singularity
            return beta * sinc(2.0 * kPi * beta * t) / den;
        }
    }
    return 0.0;
}

double TestFunction::integral_hat(double c) const {
    c = std::min(std::abs(c), beta);
    switch (shape) {
        case Shape::Triangle:
            return 2.0 * (c - c * c / (2.0 * beta));
        case Shape::Trapezoid: {
            const double flat = plateau * beta;
            if (c <= flat) return 2.0 * c;
            const double tail =
                (beta * (c - flat) - 0.5 * (c * c - flat * flat)) / (beta - flat);
            return 2.0 * (flat + tail);
        }
        case Shape::RaisedCosine:
            return c + (beta / kPi) * std::sin(kPi * c / beta);
    }
    return 0.0;
}

double TestFunction::integral_hat_sq_bartlett() const {
    const double c = std::min(beta, 1.0);
    switch (shape) {
        case Shape::Triangle: {
            // 2 * integral_0^c (1 - s/beta)^2 (1 - s) ds
            const double b = beta;
            auto F = [&](double s) {
                return s - s * s / 2 - (2.0 / b) * (s * s / 2 - s * s * s / 3) +
                       (1.0 / (b * b)) * (s * s * s / 3 - s * s * s * s / 4);
            };
            return 2.0 * F(c);
        }
        case Shape::Trapezoid: {
            const double flat = plateau * beta;
            const double c1 = std::min(flat, 1.0);
            double total = c1 - c1 * c1 / 2;  // flat piece, hat = 1
            if (c > flat) {
                const double b = beta, a = flat;
                // (b-s)^2 (1-s) expanded; antiderivative evaluated on [a, c]
                auto F = [&](double s) {
                    return b * b * s - b * s * s + s * s * s / 3 - b * b * s * s / 2 +
                           2 * b * s * s * s / 3 - s * s * s * s / 4;
                };
                total += (F(c) - F(a)) / ((b - a) * (b - a));
            }
            return 2.0 * total;
        }
        case Shape::RaisedCosine: {
            // hat^2 = 3/8 + cos(k s)/2 + cos(2 k s)/8 with k = pi/beta
            const double k = kPi / beta;
            double total = (3.0 / 8.0) * (c - c * c / 2);
            total += 0.5 * (cos_moment0(k, c) - cos_moment1(k, c));
            total += 0.125 * (cos_moment0(2 * k, c) - cos_moment1(2 * k, c));
            return 2.0 * total;
        }
    }
    return 0.0;
}

}  // namespace aszl
