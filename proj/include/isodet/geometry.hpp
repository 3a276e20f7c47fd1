#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace isodet {

// Closed curve x(t), y(t), t in [0, 2pi), stored as a truncated real Fourier
// series. Orientation is normalised to counter-clockwise on construction.
class ObstacleCurve {
 public:
  enum class Kind { Disc, General };

  static ObstacleCurve disc(double r);
  static ObstacleCurve ellipse(double a, double b);
  // r(t) = r0 (1 + eps cos(k t)).
  static ObstacleCurve star(double r0, double eps, int k);
  // Radial function sampled and transformed; exact for trigonometric r(t).
  static ObstacleCurve from_polar(const std::function<double(double)>& r, int degree);
  // Cosine/sine coefficients, index m = 0..M (sine m = 0 ignored).
  static ObstacleCurve from_trig(std::vector<double> xc, std::vector<double> xs,
                                 std::vector<double> yc, std::vector<double> ys);

  Kind kind() const { return kind_; }
  bool is_disc() const { return kind_ == Kind::Disc; }
  double radius() const { return radius_; }  // disc only
  int degree() const { return static_cast<int>(xc_.size()) - 1; }

  Eigen::Vector2d point(double t) const;
  Eigen::Vector2d d1(double t) const;
  Eigen::Vector2d d2(double t) const;

  // Stable text form used for hashing and for the curve file format.
  std::string canonical() const;

 private:
  Kind kind_ = Kind::General;
  double radius_ = 0.0;
  std::vector<double> xc_, xs_, yc_, ys_;
  void normalise_orientation();
  Eigen::Vector2d eval(double t, int deriv) const;
};

struct CurveMetrics {
  double length = 0.0;
  double area = 0.0;
  double kappa_sq_integral = 0.0;  // int k^2 ds
  std::vector<double> arclength;   // equally spaced s in [0, L)
  std::vector<double> kappa;       // k at those arclengths
};

// Throws std::invalid_argument for self-intersecting or degenerate curves.
CurveMetrics curve_metrics(const ObstacleCurve& curve, int n_resample = 256);
bool self_intersects(const ObstacleCurve& curve, int n = 1024);

enum class HeatSide { Interior, ExteriorRegularized };

struct HeatInvariants {
  double a_minus2 = 0.0;
  double a_minus1 = 0.0;
  double a_0 = 0.0;
  double a_1 = 0.0;
  HeatSide side = HeatSide::Interior;
};

// Coefficient c1 in a_1 = c1 int k^2 ds; reproduced by the disc heat fit.
double a1_curvature_coefficient();
HeatInvariants heat_invariants(const ObstacleCurve& curve, HeatSide side);
HeatInvariants heat_invariants(double area, double length, double kappa_sq_integral, HeatSide side);

double inradius_lower_bound(double area, double length);
// Largest distance from an interior grid point to the boundary, refined by
// local search. A lower estimate of the true inradius.
double inradius_sampled(const ObstacleCurve& curve, int grid = 160);
// max |x(t)| about the origin.
double circumradius(const ObstacleCurve& curve);

std::vector<std::pair<std::string, ObstacleCurve>> shape_corpus();

// `disc r` or lines `m, Re(x_m), Im(x_m), Re(y_m), Im(y_m)`; '#' comments.
ObstacleCurve parse_curve_text(const std::string& text);
ObstacleCurve read_curve_file(const std::string& path);

}  // namespace isodet
