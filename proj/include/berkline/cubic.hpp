#ifndef BERKLINE_CUBIC_HPP
#define BERKLINE_CUBIC_HPP

#include <memory>

#include "berkline/ratfn.hpp"

namespace berkline {

// F = y^3 + A y^2 + B y + C with A, B, C in Q[x] (degrees <= 2, 3, 4 in the
// quartic pipeline, unconstrained here).
struct CubicForm {
    QPoly A, B, C;

    // y-polynomial over Q(x)
    Poly<RatFn> as_y_poly() const;
    bool is_irreducible() const; // over Q(x)
};

// Delta_F = A^2 B^2 - 4 B^3 - 4 A^3 C - 27 C^2 + 18 A B C
QPoly discriminant_cubic(const CubicForm& c);

// Element of Q(x)[y]/(F); representative reduced mod F.
class FunctionFieldElement {
  public:
    FunctionFieldElement(std::shared_ptr<const CubicForm> modulus, Poly<RatFn> rep);

    static FunctionFieldElement from_base(std::shared_ptr<const CubicForm> modulus, RatFn c);
    static FunctionFieldElement y(std::shared_ptr<const CubicForm> modulus);

    const Poly<RatFn>& rep() const { return rep_; }
    const std::shared_ptr<const CubicForm>& modulus() const { return mod_; }
    bool is_zero() const { return rep_.is_zero(); }

    FunctionFieldElement operator+(const FunctionFieldElement& o) const;
    FunctionFieldElement operator-(const FunctionFieldElement& o) const;
    FunctionFieldElement operator-() const;
    FunctionFieldElement operator*(const FunctionFieldElement& o) const;
    FunctionFieldElement inverse() const; // ZeroModulusError if F reducible and inversion fails
    FunctionFieldElement operator/(const FunctionFieldElement& o) const;

    // Nm_{F_Y/F_X}: resultant in y of F and the representative.
    RatFn norm() const;

    std::string str() const;

  private:
    std::shared_ptr<const CubicForm> mod_;
    Poly<RatFn> rep_;
};

} // namespace berkline

#endif
