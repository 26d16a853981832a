#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlbox {

/// Default tolerance for every equality and inequality check in the library.
inline constexpr double kDefaultTol = 1e-9;

/// Raised when a constructor parameter or an operation precondition is violated.
class BoxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Index of the input pair (x, y) as a table row: 00, 01, 10, 11.
constexpr int row_index(int x, int y) { return 2 * x + y; }
/// Index of the output pair (a, b) as a table column: 00, 01, 10, 11.
constexpr int col_index(int a, int b) { return 2 * a + b; }

using Table = std::array<std::array<double, 4>, 4>;

/// A bipartite binary-input/binary-output system P(ab|xy).
///
/// Rows are indexed by the input pair xy in the order 00, 01, 10, 11 and
/// columns by the output pair ab in the same order. A Box holds whatever
/// table it was given; use validate() to check that rows are distributions.
class Box {
 public:
  Box() = default;
  explicit Box(const Table& matrix) : matrix_(matrix) {}

  double p(int a, int b, int x, int y) const { return matrix_[row_index(x, y)][col_index(a, b)]; }
  const Table& matrix() const { return matrix_; }

  friend bool operator==(const Box&, const Box&) = default;

 private:
  Table matrix_{};
};

struct Correlators {
  double x00 = 0.0;
  double x01 = 0.0;
  double x10 = 0.0;
  double x11 = 0.0;

  double at(int x, int y) const;
  std::array<double, 4> as_array() const { return {x00, x01, x10, x11}; }
  friend bool operator==(const Correlators&, const Correlators&) = default;
};

/// One signed CHSH expression: X_xy + X_x̄y + X_xȳ - X_x̄ȳ, times sign.
struct ChshValue {
  int x = 0;
  int y = 0;
  int sign = 1;
  double value = 0.0;
};

struct Violation {
  enum class Kind { kNegativeEntry, kEntryAboveOne, kRowSum, kNotFinite };
  Kind kind;
  int row = 0;
  int col = -1;  // -1 for row-level constraints
  double residual = 0.0;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

struct SignalingCheck {
  bool non_signaling = false;
  double max_discrepancy = 0.0;
};

ValidationReport validate(const Box& box, double tol = kDefaultTol);

/// Throws BoxError with the rendered report if the box is not valid.
void require_valid(const Box& box, double tol = kDefaultTol);

/// Marginals P(a=0|x) and P(b=0|y) must not depend on the other party's input.
/// Throws BoxError if the box fails validate().
SignalingCheck is_non_signaling(const Box& box, double tol = kDefaultTol);

Correlators correlators(const Box& box);

/// The eight signed CHSH expressions, ordered by (x, y) then sign (+ before -).
std::array<ChshValue, 8> chsh_values(const Correlators& c);

/// S = X00 + X01 + X10 - X11, the CHSH functional that depolarization preserves.
double chsh_s(const Correlators& c);

double nl(const Correlators& c);
double nl(const Box& box);

/// Throws BoxError for signaling boxes; the eight CHSH inequalities only
/// characterize locality inside the non-signaling polytope.
bool is_local(const Box& box, double tol = kDefaultTol);

/// Marginal P(a=0|x) for Alice (party 0) or P(b=0|y) for Bob (party 1),
/// read off the row with the other input set to 0.
double marginal_zero(const Box& box, int party, int input);

// Constructors. All throw BoxError on out-of-range parameters.
Box pr();
Box noise();
Box p_eps(double eps);
Box p_eps_delta(double eps, double delta);
Box isotropic(double eta);
/// Deterministic local box a = fa(x), b = fb(y). Each function is encoded as
/// a 2-bit truth table: bit x of fa is the output for input x.
Box deterministic(unsigned fa, unsigned fb);
/// lambda * first + (1 - lambda) * second.
Box mix(const Box& first, const Box& second, double lambda);

/// Box with uniform marginals and the given correlators. Errors if any
/// correlator lies outside [-1, 1] by more than tol.
Box from_correlators(const Correlators& c, double tol = kDefaultTol);

/// Clamps entries within -tol of zero to zero and renormalizes rows.
Box cleaned(const Box& box, double tol = kDefaultTol);

}  // namespace nlbox
