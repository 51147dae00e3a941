#pragma once

#include <string>

namespace aszl {

// Band-limited test functions given as closed-form pairs (Phi, Phi-hat),
// with hat(tau) supported on [-beta, beta], hat(0) = 1, Phi real and even.
// Fourier convention: hat(tau) = integral Phi(t) e^(-2 pi i tau t) dt.
struct TestFunction {
    enum class Shape { Triangle, Trapezoid, RaisedCosine };

    Shape shape = Shape::Triangle;
    double beta = 1.0;
    double plateau = 0.5;  // trapezoid: flat part ends at plateau*beta

    static TestFunction triangle(double beta);
    static TestFunction trapezoid(double beta, double plateau);
    static TestFunction raised_cosine(double beta);
    static TestFunction from_name(const std::string& name, double beta, double plateau = 0.5);

    double support() const { return beta; }
    double hat(double tau) const;
    double value(double t) const;

    // closed-form integral of hat over [-c, c] (clipped to the support)
    double integral_hat(double c) const;
    // closed-form integral of hat(s)^2 (1 - |s|) over [-1, 1]
    double integral_hat_sq_bartlett() const;

    std::string name() const;
};

}  // namespace aszl
