#pragma once

// Numerical ground truth for system solutions: Taylor-series continuation
// along complex paths, argument-principle zero counting on disks, and an
// independent companion-matrix root oracle for cross-checking the counts.
//
// Nothing here is validated arithmetic. Error control is heuristic
// (step-halving comparison); the reports carry estimates, and rigor is the
// job of the algebraic bounds elsewhere in the library.

#include <stdexcept>
#include <string>
#include <vector>

#include "oscbound/models.hpp"
#include "oscbound/unipoly.hpp"

namespace oscbound {

// --- paths ---

struct PathSeg {
  enum class Kind { line, arc };
  Kind kind = Kind::line;
  // line: straight from a to b
  cplx a, b;
  // arc: center + radius * exp(i theta), theta from theta0 to theta1
  // (counterclockwise when theta1 > theta0)
  cplx center;
  double radius = 0.0;
  double theta0 = 0.0;
  double theta1 = 0.0;

  cplx point(double s) const;  // s in [0,1] along the segment
  double length() const;
};

using Path = std::vector<PathSeg>;

PathSeg line_seg(cplx a, cplx b);
PathSeg arc_seg(cplx center, double radius, double theta0, double theta1);
Path circle_path(cplx center, double r);  // one full counterclockwise turn

// --- integration ---

struct PoleOnPath : std::runtime_error {
  explicit PoleOnPath(const std::string &what) : std::runtime_error(what) {}
};

struct ContourConfig {
  int order = 20;        // Taylor order per step
  double hmax = 0.0;     // hard cap on |step|; 0 means no explicit cap
  double delta = 1e-6;   // contour-proximity threshold, relative to max|y|
  double zero_floor = 1e-280;  // absolute scale below which y is "identically zero"
  double winding_tol = 1e-3;   // max distance of winding/2pi from an integer
  int radius_attempts = 8;     // perturbation schedule length for close contours
};

struct StepRecord {
  cplx t;             // step start
  double h = 0.0;     // |step|
  double local_error = 0.0;
};

struct PathNode {
  cplx t;
  // jet[k] = k-th Taylor coefficient of x about t (so x^{(k)}(t) = k! jet[k])
  std::vector<std::vector<cplx>> jet;
};

struct PathSolution {
  Path path;
  std::vector<PathNode> nodes;
  std::vector<StepRecord> steps;
  double rel_tol = 0.0;
  double local_error_sum = 0.0;
  // endpoint discrepancy against a re-run with halved steps
  double global_error_estimate = 0.0;
  double scale = 0.0;  // max node sup-norm, the reference for relative errors
  std::string failure;  // empty on success ("step-underflow", ...)
  bool ok = false;

  const std::vector<cplx> &x_end() const { return nodes.back().jet[0]; }
};

// Core integrator: chi(t) x'(t) = num(t) x(t) with chi nonvanishing on the
// path. `sing` lists known singular points (roots of chi) used for step
// control and path preflight; it may be empty when chi is constant.
PathSolution integrate(const SysMat<CPoly> &num, const CPoly &chi,
                       const std::vector<cplx> &sing,
                       const std::vector<cplx> &x0, const Path &path,
                       double rel_tol, const ContourConfig &cfg = {});

PathSolution integrate(const PolySystem &s, const std::vector<cplx> &x0,
                       const Path &path, double rel_tol,
                       const ContourConfig &cfg = {});
PathSolution integrate(const FuchsSystem &f, const std::vector<cplx> &x0,
                       const Path &path, double rel_tol,
                       const ContourConfig &cfg = {});
PathSolution integrate(const HypergeomSystem &h, const std::vector<cplx> &x0,
                       const Path &path, double rel_tol,
                       const ContourConfig &cfg = {});

// --- zero counting ---

enum class DiskStatus { ok, contour_too_close, integration_failed, identically_zero };

const char *to_string(DiskStatus s);

struct DiskReport {
  cplx center;
  double r = 0.0;  // radius actually used (after any perturbation)
  std::vector<cplx> c;  // combination vector; empty in polynomial mode
  long zero_count = -1;  // valid only when status == ok
  double winding = 0.0;  // total argument variation along the contour, radians
  double min_modulus_on_contour = 0.0;
  double max_modulus_on_contour = 0.0;
  DiskStatus status = DiskStatus::integration_failed;
  size_t samples = 0;
};

// Counts zeros of y(t) = c . x(t) in the open disk |t - center| < r by the
// argument principle. x0 is the solution value at the disk center.
DiskReport count_zeros_disk(const PolySystem &s, const std::vector<cplx> &x0,
                            const std::vector<cplx> &c, cplx center, double r,
                            double rel_tol, const ContourConfig &cfg = {});
DiskReport count_zeros_disk(const FuchsSystem &f, const std::vector<cplx> &x0,
                            const std::vector<cplx> &c, cplx center, double r,
                            double rel_tol, const ContourConfig &cfg = {});
DiskReport count_zeros_disk(const HypergeomSystem &h, const std::vector<cplx> &x0,
                            const std::vector<cplx> &c, cplx center, double r,
                            double rel_tol, const ContourConfig &cfg = {});

// Polynomial mode: y(t) = p(t) evaluated directly, no integration.
DiskReport count_zeros_disk(const CPoly &p, cplx center, double r,
                            const ContourConfig &cfg = {});

// --- residual of a derived equation against an integrated solution ---

// max over nodes of |sum_j a_j(t) y^(n-j)(t)| / (sum_j ||a_j||_1 * max_k |y^(k)(t)|)
// with y = x_1; derivatives come from the stored Taylor jets.
double residual_check(const std::vector<CPoly> &a, const PathSolution &sol);
double residual_check(const Principal<CPoly> &eq, const PathSolution &sol);

// --- independent root oracle ---

struct BoundaryAmbiguous : std::runtime_error {
  explicit BoundaryAmbiguous(const std::string &what)
      : std::runtime_error(what) {}
};

// All roots of p (multiplicity as repetition): companion-matrix eigenvalues
// with Newton polish; exact deflation of the t^k factor.
std::vector<cplx> poly_roots(const CPoly &p);

// Exact count of roots in the open disk, multiplicity counted. Throws
// BoundaryAmbiguous when a root sits within 1e-9 of the circle.
long oracle_count(const CPoly &p, cplx center, double r);

}  // namespace oscbound
